#pragma once

// Independent verification path. Everything here works on explicit real
// counterparts with a textbook two-sided Jacobi eigensolver and shares no
// code with the one-sided quaternion kernels in jacobi.hpp.

#include "qjacobi/qmatrix.hpp"

namespace qjacobi::oracle {

struct SymmetricEigenResult {
    RealVector eigenvalues;  // descending
    int iterations = 0;      // sweeps performed
};

/// Cyclic two-sided Jacobi on a real symmetric matrix (symmetrized internally).
/// Throws DimensionMismatch for non-square input, InvalidInput if the matrix
/// is visibly non-symmetric and Error after 100 sweeps without convergence.
SymmetricEigenResult real_symmetric_eigen(const RealMatrix& m);

/// Singular values of A (descending) from the eigenvalues of Γ_A^T Γ_A.
/// Every eigenvalue must appear four times; throws MultiplicityViolation
/// when a sorted block of four spreads more than 1e-8 relative.
RealVector singular_values_via_counterpart(const QMatrix& a);

/// The structure matrices J_n, R_n, S_n (each 4n x 4n).
RealMatrix structure_j(Eigen::Index n);
RealMatrix structure_r(Eigen::Index n);
RealMatrix structure_s(Eigen::Index n);

/// Max-abs deviations of X M X^T = M (symmetry) and M X M^T = X
/// (symplecticity) for X in {J, R, S}.
struct JrsReport {
    double symmetric_j = 0.0;
    double symmetric_r = 0.0;
    double symmetric_s = 0.0;
    double symplectic_j = 0.0;
    double symplectic_r = 0.0;
    double symplectic_s = 0.0;

    double max_symmetric() const;
    double max_symplectic() const;
};

/// Throws DimensionMismatch unless M is square with size divisible by 4.
JrsReport check_jrs(const RealMatrix& m);

} // namespace qjacobi::oracle
