#include "qjacobi/random.hpp"

namespace qjacobi {

namespace {

template <class Dist>
QMatrix fill(Eigen::Index rows, Eigen::Index cols, Rng& rng, Dist dist) {
    QMatrix a(rows, cols);
    for (int k = 0; k < 4; ++k) {
        for (Eigen::Index c = 0; c < cols; ++c) {
            for (Eigen::Index r = 0; r < rows; ++r) {
                a.comp(k)(r, c) = dist(rng);
            }
        }
    }
    return a;
}

} // namespace

QMatrix random_uniform(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    return fill(rows, cols, rng, std::uniform_real_distribution<double>(0.0, 1.0));
}

QMatrix random_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    return fill(rows, cols, rng, std::normal_distribution<double>(0.0, 1.0));
}

Quaternion random_quaternion(Rng& rng) {
    std::normal_distribution<double> d(0.0, 1.0);
    const double w = d(rng), x = d(rng), y = d(rng), z = d(rng);
    return {w, x, y, z};
}

QMatrix random_orthonormal(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    if (cols > rows) {
        throw InvalidInput("orthonormal columns need rows >= cols");
    }
    QMatrix q = random_gaussian(rows, cols, rng);
    for (Eigen::Index w = 0; w < cols; ++w) {
        for (int pass = 0; pass < 2; ++pass) {
            for (Eigen::Index k = 0; k < w; ++k) {
                // q_w <- q_w - q_k (q_k^* q_w)
                const Quaternion c = gram_entry(q, k, w);
                for (Eigen::Index r = 0; r < rows; ++r) {
                    q.set(r, w, q(r, w) - q(r, k) * c);
                }
            }
        }
        const double nrm = std::sqrt(gram_entry(q, w, w).w);
        for (int k = 0; k < 4; ++k) {
            q.comp(k).col(w) /= nrm;
        }
    }
    return q;
}

QMatrix with_singular_values(Eigen::Index rows, Eigen::Index cols, const RealVector& sigma, Rng& rng) {
    const Eigen::Index r = sigma.size();
    QMatrix u = random_orthonormal(rows, r, rng);
    const QMatrix v = random_orthonormal(cols, r, rng);
    for (int k = 0; k < 4; ++k) {
        u.comp(k) = u.comp(k) * sigma.asDiagonal();
    }
    return matmul(u, conj_transpose(v));
}

} // namespace qjacobi
