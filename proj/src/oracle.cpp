#include "qjacobi/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace qjacobi::oracle {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffTarget = 1e-14;
constexpr double kGroupSpread = 1e-8;

double off_diagonal(const RealMatrix& m) {
    double sum = 0.0;
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            if (r != c) {
                sum += m(r, c) * m(r, c);
            }
        }
    }
    return std::sqrt(sum);
}

// M <- J^T M J for the plane rotation J acting on coordinates p, q.
void rotate(RealMatrix& m, Eigen::Index p, Eigen::Index q, double c, double s) {
    for (Eigen::Index k = 0; k < m.rows(); ++k) {
        const double mkp = m(k, p), mkq = m(k, q);
        m(k, p) = c * mkp - s * mkq;
        m(k, q) = s * mkp + c * mkq;
    }
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
        const double mpk = m(p, k), mqk = m(q, k);
        m(p, k) = c * mpk - s * mqk;
        m(q, k) = s * mpk + c * mqk;
    }
}

RealMatrix structure(Eigen::Index n, const std::function<void(RealMatrix&, const RealMatrix&)>& fill) {
    RealMatrix x = RealMatrix::Zero(4 * n, 4 * n);
    fill(x, RealMatrix::Identity(n, n));
    return x;
}

} // namespace

SymmetricEigenResult real_symmetric_eigen(const RealMatrix& input) {
    if (input.rows() != input.cols()) {
        throw DimensionMismatch("eigensolver needs a square matrix");
    }
    const double scale = input.norm();
    if ((input - input.transpose()).norm() > 1e-12 * scale) {
        throw InvalidInput("eigensolver needs a symmetric matrix");
    }
    RealMatrix m = 0.5 * (input + input.transpose());
    const Eigen::Index n = m.rows();

    SymmetricEigenResult out;
    while (off_diagonal(m) > kOffTarget * scale) {
        if (out.iterations == kMaxSweeps) {
            throw Error("symmetric Jacobi did not converge in " + std::to_string(kMaxSweeps) + " sweeps");
        }
        for (Eigen::Index p = 0; p + 1 < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double mpq = m(p, q);
                if (mpq == 0.0) {
                    continue;
                }
                const double tau = (m(q, q) - m(p, p)) / (2.0 * mpq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                rotate(m, p, q, c, t * c);
                m(p, q) = 0.0;
                m(q, p) = 0.0;
            }
        }
        ++out.iterations;
    }
    out.eigenvalues = m.diagonal();
    std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), std::greater<>());
    return out;
}

RealVector singular_values_via_counterpart(const QMatrix& a) {
    if (a.rows() < a.cols()) {
        throw InvalidInput("counterpart oracle expects rows >= cols");
    }
    const RealMatrix gamma = real_counterpart(a);
    const RealMatrix gram = gamma.transpose() * gamma;
    const RealVector ev = real_symmetric_eigen(gram).eigenvalues;

    const Eigen::Index n = a.cols();
    const double top = ev.size() > 0 ? std::max(ev(0), 0.0) : 0.0;
    RealVector sigma(n);
    for (Eigen::Index w = 0; w < n; ++w) {
        const auto group = ev.segment(4 * w, 4);
        const double spread = group.maxCoeff() - group.minCoeff();
        if (spread > kGroupSpread * top) {
            throw MultiplicityViolation("eigenvalue group " + std::to_string(w) + " spreads " + std::to_string(spread) +
                                        " against scale " + std::to_string(top));
        }
        sigma(w) = std::sqrt(std::max(group.mean(), 0.0));
    }
    return sigma;
}

RealMatrix structure_j(Eigen::Index n) {
    return structure(n, [n](RealMatrix& x, const RealMatrix& id) {
        x.block(0, 2 * n, n, n) = -id;
        x.block(n, 3 * n, n, n) = -id;
        x.block(2 * n, 0, n, n) = id;
        x.block(3 * n, n, n, n) = id;
    });
}

RealMatrix structure_r(Eigen::Index n) {
    return structure(n, [n](RealMatrix& x, const RealMatrix& id) {
        x.block(0, n, n, n) = -id;
        x.block(n, 0, n, n) = id;
        x.block(2 * n, 3 * n, n, n) = id;
        x.block(3 * n, 2 * n, n, n) = -id;
    });
}

RealMatrix structure_s(Eigen::Index n) {
    return structure(n, [n](RealMatrix& x, const RealMatrix& id) {
        x.block(0, 3 * n, n, n) = -id;
        x.block(n, 2 * n, n, n) = id;
        x.block(2 * n, n, n, n) = -id;
        x.block(3 * n, 0, n, n) = id;
    });
}

double JrsReport::max_symmetric() const { return std::max({symmetric_j, symmetric_r, symmetric_s}); }
double JrsReport::max_symplectic() const { return std::max({symplectic_j, symplectic_r, symplectic_s}); }

JrsReport check_jrs(const RealMatrix& m) {
    if (m.rows() != m.cols() || m.rows() % 4 != 0) {
        throw DimensionMismatch("JRS check needs a square matrix of size 4n");
    }
    const Eigen::Index n = m.rows() / 4;
    const RealMatrix j = structure_j(n), r = structure_r(n), s = structure_s(n);
    auto dev = [](const RealMatrix& lhs, const RealMatrix& rhs) { return (lhs - rhs).cwiseAbs().maxCoeff(); };
    JrsReport rep;
    rep.symmetric_j = dev(j * m * j.transpose(), m);
    rep.symmetric_r = dev(r * m * r.transpose(), m);
    rep.symmetric_s = dev(s * m * s.transpose(), m);
    rep.symplectic_j = dev(m * j * m.transpose(), j);
    rep.symplectic_r = dev(m * r * m.transpose(), r);
    rep.symplectic_s = dev(m * s * m.transpose(), s);
    return rep;
}

} // namespace qjacobi::oracle
