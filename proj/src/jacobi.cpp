#include "qjacobi/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace qjacobi {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_pair(const QMatrix& a, Eigen::Index p, Eigen::Index q) {
    if (p < 0 || q < 0 || p >= a.cols() || q >= a.cols()) {
        throw IndexOutOfRange("rotation pair (" + std::to_string(p) + ", " + std::to_string(q) + ") outside " +
                              std::to_string(a.cols()) + " columns");
    }
    if (p == q) {
        throw InvalidInput("rotation pair needs two distinct columns");
    }
}

double column_norm(const QMatrix& a, Eigen::Index w) {
    return std::sqrt(a.comp(0).col(w).squaredNorm() + a.comp(1).col(w).squaredNorm() +
                     a.comp(2).col(w).squaredNorm() + a.comp(3).col(w).squaredNorm());
}

// r <- r - u (u^* r), with u a unit column of `basis`.
void project_out(QMatrix& r, const QMatrix& basis, Eigen::Index k) {
    Quaternion c{};
    for (Eigen::Index i = 0; i < r.rows(); ++i) {
        c += conjugate(basis(i, k)) * r(i, 0);
    }
    for (Eigen::Index i = 0; i < r.rows(); ++i) {
        r.set(i, 0, r(i, 0) - basis(i, k) * c);
    }
}

// Fills the columns of `u` not flagged in `accepted` with unit vectors
// orthogonal to every accepted column. Candidates are the standard basis
// vectors, reorthogonalized twice; the candidate with the largest residual wins.
void complete_orthonormal(QMatrix& u, std::vector<bool>& accepted) {
    const Eigen::Index m = u.rows();
    for (Eigen::Index w = 0; w < u.cols(); ++w) {
        if (accepted[static_cast<std::size_t>(w)]) {
            continue;
        }
        QMatrix best;
        double best_norm = -1.0;
        for (Eigen::Index i = 0; i < m; ++i) {
            QMatrix r(m, 1);
            r.comp(0)(i, 0) = 1.0;
            for (int pass = 0; pass < 2; ++pass) {
                for (Eigen::Index k = 0; k < u.cols(); ++k) {
                    if (accepted[static_cast<std::size_t>(k)]) {
                        project_out(r, u, k);
                    }
                }
            }
            const double nr = frobenius(r);
            if (nr > best_norm) {
                best_norm = nr;
                best = std::move(r);
            }
        }
        for (int k = 0; k < 4; ++k) {
            u.comp(k).col(w) = best.comp(k).col(0) / best_norm;
        }
        accepted[static_cast<std::size_t>(w)] = true;
    }
}

QSvd assemble(const QMatrix& rotated, QMatrix v, SortOrder sort) {
    const Eigen::Index m = rotated.rows(), n = rotated.cols();
    RealVector sigma(n);
    for (Eigen::Index w = 0; w < n; ++w) {
        sigma(w) = column_norm(rotated, w);
    }
    const double sigma_max = n > 0 ? sigma.maxCoeff() : 0.0;
    const double rank_floor = static_cast<double>(n) * kEps * sigma_max;

    QMatrix u(m, n);
    std::vector<bool> accepted(static_cast<std::size_t>(n), false);
    for (Eigen::Index w = 0; w < n; ++w) {
        if (sigma(w) > rank_floor) {
            for (int k = 0; k < 4; ++k) {
                u.comp(k).col(w) = rotated.comp(k).col(w) / sigma(w);
            }
            accepted[static_cast<std::size_t>(w)] = true;
        } else {
            sigma(w) = 0.0;
        }
    }
    complete_orthonormal(u, accepted);

    if (sort == SortOrder::Descending) {
        std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), Eigen::Index{0});
        std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return sigma(a) > sigma(b); });
        QSvd sorted{QMatrix(m, n), RealVector(n), QMatrix(v.rows(), n)};
        for (Eigen::Index w = 0; w < n; ++w) {
            const Eigen::Index from = order[static_cast<std::size_t>(w)];
            sorted.sigma(w) = sigma(from);
            for (int k = 0; k < 4; ++k) {
                sorted.u.comp(k).col(w) = u.comp(k).col(from);
                sorted.v.comp(k).col(w) = v.comp(k).col(from);
            }
        }
        return sorted;
    }
    return {std::move(u), std::move(sigma), std::move(v)};
}

SvdOutcome solve_tall(const QMatrix& a, const JacobiConfig& cfg) {
    QMatrix work = a;
    QMatrix v = QMatrix::identity(a.cols());
    ConvergenceReport report;

    auto measure = [&] {
        const QMatrix b = gram(work);
        const double off = off_norm(b);
        report.gram_norm = frobenius(b);
        report.off_history.push_back(off);
        return off <= cfg.tol * report.gram_norm;
    };

    report.converged = measure();
    while (!report.converged && report.sweeps < cfg.max_sweeps) {
        const long long applied =
            cfg.pivot == Pivot::Cyclic ? sweep_cyclic(work, v) : sweep_classical(work, v);
        report.rotations += applied;
        ++report.sweeps;
        report.converged = measure();
        if (applied == 0) {
            // Every pair is already orthogonal to working precision.
            break;
        }
    }

    SvdOutcome out{assemble(work, std::move(v), cfg.sort), std::move(report)};
    if (!out.report.converged) {
        throw NotConverged(std::move(out));
    }
    return out;
}

// Factors of A from those of A^*: A^* U' = V' S  =>  A V' = U' S.
SvdOutcome transpose_outcome(SvdOutcome o) {
    std::swap(o.svd.u, o.svd.v);
    return o;
}

} // namespace

void JacobiConfig::validate() const {
    if (!(tol > 0.0) || !std::isfinite(tol)) {
        throw InvalidInput("tolerance must be positive");
    }
    if (max_sweeps < 1) {
        throw InvalidInput("max_sweeps must be at least 1");
    }
}

NotConverged::NotConverged(SvdOutcome partial)
    : Error("one-sided Jacobi did not converge in " + std::to_string(partial.report.sweeps) + " sweeps"),
      partial_(std::move(partial)) {}

CosineSineGroup generate_rotation(double app, double aqq, const Quaternion& apq) {
    if (!std::isfinite(app) || !std::isfinite(aqq) || !apq.is_finite()) {
        throw InvalidInput("rotation statistics must be finite");
    }
    if (app < 0.0 || aqq < 0.0) {
        throw InvalidInput("column norms must be nonnegative");
    }
    const double mod = abs(apq);
    if (mod <= kEps * std::sqrt(app) * std::sqrt(aqq)) {
        return {};
    }
    const double tau = (aqq - app) / (2.0 * mod);
    const double t = tau >= 0.0 ? 1.0 / (tau + std::hypot(1.0, tau)) : 1.0 / (tau - std::hypot(1.0, tau));
    const double c = 1.0 / std::hypot(1.0, t);
    const double delta = t * c / mod;
    return {c, apq * delta};
}

void apply_rotation_columns(QMatrix& a, Eigen::Index p, Eigen::Index q, const CosineSineGroup& g) {
    require_pair(a, p, q);
    if (g.is_identity()) {
        return;
    }
    const double c = g.c;
    const double s0 = g.s.w, s1 = g.s.x, s2 = g.s.y, s3 = g.s.z;
    double* xp[4];
    double* xq[4];
    for (int k = 0; k < 4; ++k) {
        xp[k] = a.comp(k).col(p).data();
        xq[k] = a.comp(k).col(q).data();
    }
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        const double x0 = xp[0][r], x1 = xp[1][r], x2 = xp[2][r], x3 = xp[3][r];
        const double y0 = xq[0][r], y1 = xq[1][r], y2 = xq[2][r], y3 = xq[3][r];
        // c x - y s̄
        xp[0][r] = c * x0 - (y0 * s0 + y1 * s1 + y2 * s2 + y3 * s3);
        xp[1][r] = c * x1 - (-y0 * s1 + y1 * s0 - y2 * s3 + y3 * s2);
        xp[2][r] = c * x2 - (-y0 * s2 + y1 * s3 + y2 * s0 - y3 * s1);
        xp[3][r] = c * x3 - (-y0 * s3 - y1 * s2 + y2 * s1 + y3 * s0);
        // x s + c y
        xq[0][r] = (x0 * s0 - x1 * s1 - x2 * s2 - x3 * s3) + c * y0;
        xq[1][r] = (x0 * s1 + x1 * s0 + x2 * s3 - x3 * s2) + c * y1;
        xq[2][r] = (x0 * s2 - x1 * s3 + x2 * s0 + x3 * s1) + c * y2;
        xq[3][r] = (x0 * s3 + x1 * s2 - x2 * s1 + x3 * s0) + c * y3;
    }
}

long long sweep_cyclic(QMatrix& a, QMatrix& v, const RotationObserver& observer) {
    const Eigen::Index n = a.cols();
    if (v.cols() != n) {
        throw DimensionMismatch("accumulator must have as many columns as the matrix");
    }
    long long applied = 0;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
        for (Eigen::Index q = p + 1; q < n; ++q) {
            RotationEvent ev;
            ev.p = p;
            ev.q = q;
            ev.app = gram_entry(a, p, p).w;
            ev.aqq = gram_entry(a, q, q).w;
            ev.apq = gram_entry(a, p, q);
            ev.g = generate_rotation(ev.app, ev.aqq, ev.apq);
            if (!ev.g.is_identity()) {
                apply_rotation_columns(a, p, q, ev.g);
                apply_rotation_columns(v, p, q, ev.g);
                ++applied;
            }
            if (observer) {
                observer(ev, a);
            }
        }
    }
    return applied;
}

long long sweep_classical(QMatrix& a, QMatrix& v, const RotationObserver& observer) {
    const Eigen::Index n = a.cols();
    if (v.cols() != n) {
        throw DimensionMismatch("accumulator must have as many columns as the matrix");
    }
    const long long steps = static_cast<long long>(n) * (n - 1) / 2;
    long long applied = 0;
    for (long long step = 0; step < steps; ++step) {
        const QMatrix b = gram(a);
        Eigen::Index bp = 0, bq = 1;
        double best = -1.0;
        for (Eigen::Index p = 0; p + 1 < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double mod = abs(b(p, q));
                if (mod > best) {
                    best = mod;
                    bp = p;
                    bq = q;
                }
            }
        }
        RotationEvent ev;
        ev.p = bp;
        ev.q = bq;
        ev.app = b(bp, bp).w;
        ev.aqq = b(bq, bq).w;
        ev.apq = b(bp, bq);
        ev.g = generate_rotation(ev.app, ev.aqq, ev.apq);
        if (ev.g.is_identity()) {
            if (observer) {
                observer(ev, a);
            }
            break;
        }
        apply_rotation_columns(a, bp, bq, ev.g);
        apply_rotation_columns(v, bp, bq, ev.g);
        ++applied;
        if (observer) {
            observer(ev, a);
        }
    }
    return applied;
}

SvdOutcome svd(const QMatrix& a, const JacobiConfig& cfg) {
    cfg.validate();
    if (a.empty()) {
        throw InvalidInput("cannot decompose an empty matrix");
    }
    if (!a.all_finite()) {
        throw InvalidInput("matrix has non-finite entries");
    }
    if (a.rows() >= a.cols()) {
        return solve_tall(a, cfg);
    }
    try {
        return transpose_outcome(solve_tall(conj_transpose(a), cfg));
    } catch (const NotConverged& e) {
        throw NotConverged(transpose_outcome(e.partial()));
    }
}

double svd_residual(const QMatrix& a, const QSvd& f) {
    QMatrix us = f.u;
    for (int k = 0; k < 4; ++k) {
        us.comp(k) = us.comp(k) * f.sigma.asDiagonal();
    }
    return frobenius(matmul(a, f.v) - us);
}

QMatrix low_rank(const QSvd& f, Eigen::Index rank) {
    if (rank < 1 || rank > f.sigma.size()) {
        throw IndexOutOfRange("rank " + std::to_string(rank) + " outside [1, " + std::to_string(f.sigma.size()) + "]");
    }
    QMatrix us(f.u.rows(), rank);
    QMatrix vs(f.v.rows(), rank);
    for (int k = 0; k < 4; ++k) {
        us.comp(k) = f.u.comp(k).leftCols(rank) * f.sigma.head(rank).asDiagonal();
        vs.comp(k) = f.v.comp(k).leftCols(rank);
    }
    return matmul(us, conj_transpose(vs));
}

} // namespace qjacobi
