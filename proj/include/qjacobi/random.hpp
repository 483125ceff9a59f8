#pragma once

#include <cstdint>
#include <random>

#include "qjacobi/qmatrix.hpp"

namespace qjacobi {

using Rng = std::mt19937_64;

/// Every component drawn independently from U(0, 1).
QMatrix random_uniform(Eigen::Index rows, Eigen::Index cols, Rng& rng);

/// Every component drawn independently from N(0, 1).
QMatrix random_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng);

Quaternion random_quaternion(Rng& rng);

/// rows x cols (rows >= cols) with orthonormal columns: modified Gram-Schmidt
/// with reorthogonalization applied to a Gaussian matrix.
QMatrix random_orthonormal(Eigen::Index rows, Eigen::Index cols, Rng& rng);

/// rows x cols matrix U diag(sigma) V^* with random orthonormal U, V.
QMatrix with_singular_values(Eigen::Index rows, Eigen::Index cols, const RealVector& sigma, Rng& rng);

} // namespace qjacobi
