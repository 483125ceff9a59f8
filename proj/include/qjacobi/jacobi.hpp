#pragma once

#include <functional>
#include <vector>

#include "qjacobi/qmatrix.hpp"

namespace qjacobi {

/// Parameters (c, s) of the 2x2 unitary quaternion rotation
///
///   G = [  c     s ]
///       [ -s̄     c ]
///
/// with c real, c^2 + |s|^2 = 1 and c >= 1/sqrt(2) (rotation angle at most pi/4).
struct CosineSineGroup {
    double c = 1.0;
    Quaternion s{};

    bool is_identity() const noexcept { return c == 1.0 && s == Quaternion{}; }
};

enum class Pivot { Cyclic, ClassicalMaxPivot };
enum class SortOrder { Descending, None };

struct JacobiConfig {
    double tol = 1e-12;  // converged when off(A^*A) <= tol * ||A^*A||_F
    int max_sweeps = 30;
    Pivot pivot = Pivot::Cyclic;
    SortOrder sort = SortOrder::Descending;

    /// Throws InvalidInput unless tol > 0 and max_sweeps >= 1.
    void validate() const;
};

/// A V = U diag(sigma). For m >= n: U is m x n, sigma has n entries, V is n x n.
/// For m < n the thin factors have min(m, n) columns.
struct QSvd {
    QMatrix u;
    RealVector sigma;
    QMatrix v;
};

struct ConvergenceReport {
    int sweeps = 0;
    long long rotations = 0;             // non-identity rotations applied
    std::vector<double> off_history;     // off(A^*A) before the first sweep and after each one
    double gram_norm = 0.0;              // ||A^*A||_F, unchanged by the rotations
    bool converged = false;
};

struct SvdOutcome {
    QSvd svd;
    ConvergenceReport report;
};

/// Raised when the off-norm criterion is still unmet after max_sweeps.
/// Carries the factors assembled from the last iterate.
class NotConverged : public Error {
public:
    explicit NotConverged(SvdOutcome partial);
    const SvdOutcome& partial() const noexcept { return partial_; }

private:
    SvdOutcome partial_;
};

/// One visited pivot, reported after the rotation has been applied.
struct RotationEvent {
    Eigen::Index p = 0;
    Eigen::Index q = 0;
    double app = 0.0;     // ||a_p||^2 before the rotation
    double aqq = 0.0;     // ||a_q||^2 before the rotation
    Quaternion apq{};     // a_p^* a_q before the rotation
    CosineSineGroup g{};
};

using RotationObserver = std::function<void(const RotationEvent&, const QMatrix& a_after)>;

/// Rotation that makes columns p and q orthogonal, from their Gram statistics
/// app = a_p^* a_p, aqq = a_q^* a_q and apq = a_p^* a_q.
///
/// tau = (aqq - app) / (2|apq|) and t is the smaller-magnitude root of
/// t^2 + 2 tau t - 1 = 0; then c = 1/sqrt(1 + t^2) and s = (t c / |apq|) apq.
/// Returns the identity when |apq| <= eps * sqrt(app * aqq).
/// Throws InvalidInput for negative or non-finite statistics.
CosineSineGroup generate_rotation(double app, double aqq, const Quaternion& apq);

/// Overwrites columns p, q with [c a_p - a_q s̄, a_p s + c a_q] (scalars act on the right).
void apply_rotation_columns(QMatrix& a, Eigen::Index p, Eigen::Index q, const CosineSineGroup& g);

/// One row-cyclic pass over all pairs p < q. The same rotations are applied to
/// the columns of `v`. Returns the number of non-identity rotations.
long long sweep_cyclic(QMatrix& a, QMatrix& v, const RotationObserver& observer = {});

/// n(n-1)/2 max-pivot rotations; each picks the pair maximizing |a_p^* a_q|,
/// ties going to the lexicographically smallest (p, q). Stops early once the
/// best pivot yields the identity.
long long sweep_classical(QMatrix& a, QMatrix& v, const RotationObserver& observer = {});

/// Singular value decomposition by one-sided Jacobi rotations.
/// Throws InvalidInput for empty or non-finite input and NotConverged when
/// max_sweeps passes do not reach the tolerance.
SvdOutcome svd(const QMatrix& a, const JacobiConfig& cfg = {});

/// ||A V - U diag(sigma)||_F.
double svd_residual(const QMatrix& a, const QSvd& f);

/// Rank-`rank` truncation sum_{w < rank} sigma_w u_w v_w^* over the leading columns.
QMatrix low_rank(const QSvd& f, Eigen::Index rank);

} // namespace qjacobi
