#include "qjacobi/qmatrix.hpp"

#include <ostream>
#include <string>

namespace qjacobi {

namespace {

void require_same_shape(const QMatrix& a, const QMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionMismatch(std::string(op) + ": " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()));
    }
}

void require_column(const QMatrix& a, Eigen::Index w) {
    if (w < 0 || w >= a.cols()) {
        throw IndexOutOfRange("column " + std::to_string(w) + " outside [0, " + std::to_string(a.cols()) + ")");
    }
}

} // namespace

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
    return os << '(' << q.w << ", " << q.x << ", " << q.y << ", " << q.z << ')';
}

QMatrix::QMatrix(Eigen::Index rows, Eigen::Index cols) {
    if (rows < 0 || cols < 0) {
        throw InvalidInput("negative matrix dimension");
    }
    for (auto& c : comp_) {
        c = RealMatrix::Zero(rows, cols);
    }
}

QMatrix::QMatrix(RealMatrix a0, RealMatrix a1, RealMatrix a2, RealMatrix a3)
    : comp_{std::move(a0), std::move(a1), std::move(a2), std::move(a3)} {
    for (int k = 1; k < 4; ++k) {
        if (comp_[k].rows() != comp_[0].rows() || comp_[k].cols() != comp_[0].cols()) {
            throw DimensionMismatch("quaternion components must share dimensions");
        }
    }
}

QMatrix QMatrix::identity(Eigen::Index n) {
    QMatrix id(n, n);
    id.comp_[0].setIdentity();
    return id;
}

Quaternion QMatrix::at(Eigen::Index r, Eigen::Index c) const {
    if (r < 0 || r >= rows() || c < 0 || c >= cols()) {
        throw IndexOutOfRange("entry (" + std::to_string(r) + ", " + std::to_string(c) + ") outside " +
                              std::to_string(rows()) + "x" + std::to_string(cols()));
    }
    return (*this)(r, c);
}

bool QMatrix::all_finite() const {
    for (const auto& c : comp_) {
        if (!c.allFinite()) {
            return false;
        }
    }
    return true;
}

bool operator==(const QMatrix& a, const QMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return false;
    }
    for (int k = 0; k < 4; ++k) {
        if (a.comp(k) != b.comp(k)) {
            return false;
        }
    }
    return true;
}

QMatrix operator+(const QMatrix& a, const QMatrix& b) {
    require_same_shape(a, b, "add");
    return {a.comp(0) + b.comp(0), a.comp(1) + b.comp(1), a.comp(2) + b.comp(2), a.comp(3) + b.comp(3)};
}

QMatrix operator-(const QMatrix& a, const QMatrix& b) {
    require_same_shape(a, b, "sub");
    return {a.comp(0) - b.comp(0), a.comp(1) - b.comp(1), a.comp(2) - b.comp(2), a.comp(3) - b.comp(3)};
}

QMatrix operator*(double s, const QMatrix& a) {
    return {s * a.comp(0), s * a.comp(1), s * a.comp(2), s * a.comp(3)};
}

Quaternion gram_entry(const QMatrix& a, Eigen::Index p, Eigen::Index q) {
    require_column(a, p);
    require_column(a, q);
    const auto p0 = a.comp(0).col(p), p1 = a.comp(1).col(p), p2 = a.comp(2).col(p), p3 = a.comp(3).col(p);
    if (p == q) {
        return Quaternion(p0.squaredNorm() + p1.squaredNorm() + p2.squaredNorm() + p3.squaredNorm());
    }
    const auto q0 = a.comp(0).col(q), q1 = a.comp(1).col(q), q2 = a.comp(2).col(q), q3 = a.comp(3).col(q);
    return {p0.dot(q0) + p1.dot(q1) + p2.dot(q2) + p3.dot(q3),
            p0.dot(q1) - p1.dot(q0) - p2.dot(q3) + p3.dot(q2),
            p0.dot(q2) + p1.dot(q3) - p2.dot(q0) - p3.dot(q1),
            p0.dot(q3) - p1.dot(q2) + p2.dot(q1) - p3.dot(q0)};
}

QMatrix gram(const QMatrix& a) {
    const Eigen::Index n = a.cols();
    QMatrix b(n, n);
    for (Eigen::Index q = 0; q < n; ++q) {
        b.set(q, q, gram_entry(a, q, q));
        for (Eigen::Index p = 0; p < q; ++p) {
            const Quaternion bpq = gram_entry(a, p, q);
            b.set(p, q, bpq);
            b.set(q, p, conjugate(bpq));
        }
    }
    return b;
}

double off_norm(const QMatrix& b) {
    if (b.rows() != b.cols()) {
        throw DimensionMismatch("off_norm requires a square matrix");
    }
    double sum = 0.0;
    for (int k = 0; k < 4; ++k) {
        const RealMatrix& c = b.comp(k);
        for (Eigen::Index q = 0; q < c.cols(); ++q) {
            for (Eigen::Index p = 0; p < c.rows(); ++p) {
                if (p != q) {
                    sum += c(p, q) * c(p, q);
                }
            }
        }
    }
    return std::sqrt(sum);
}

RealMatrix real_counterpart(const QMatrix& a) {
    const Eigen::Index m = a.rows(), n = a.cols();
    const RealMatrix& a0 = a.comp(0);
    const RealMatrix& a1 = a.comp(1);
    const RealMatrix& a2 = a.comp(2);
    const RealMatrix& a3 = a.comp(3);
    RealMatrix g(4 * m, 4 * n);
    // clang-format off
    g.block(0,     0, m, n) =  a0; g.block(0,     n, m, n) =  a2; g.block(0,     2 * n, m, n) =  a1; g.block(0,     3 * n, m, n) =  a3;
    g.block(m,     0, m, n) = -a2; g.block(m,     n, m, n) =  a0; g.block(m,     2 * n, m, n) =  a3; g.block(m,     3 * n, m, n) = -a1;
    g.block(2 * m, 0, m, n) = -a1; g.block(2 * m, n, m, n) = -a3; g.block(2 * m, 2 * n, m, n) =  a0; g.block(2 * m, 3 * n, m, n) =  a2;
    g.block(3 * m, 0, m, n) = -a3; g.block(3 * m, n, m, n) =  a1; g.block(3 * m, 2 * n, m, n) = -a2; g.block(3 * m, 3 * n, m, n) =  a0;
    // clang-format on
    return g;
}

QMatrix from_real_counterpart(const RealMatrix& gamma) {
    if (gamma.rows() % 4 != 0 || gamma.cols() % 4 != 0) {
        throw DimensionMismatch("real counterpart dimensions must be multiples of 4");
    }
    const Eigen::Index m = gamma.rows() / 4, n = gamma.cols() / 4;
    return {gamma.block(0, 0, m, n), gamma.block(0, 2 * n, m, n), gamma.block(0, n, m, n),
            gamma.block(0, 3 * n, m, n)};
}

QMatrix matmul(const QMatrix& a, const QMatrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionMismatch("matmul: inner dimensions " + std::to_string(a.cols()) + " and " +
                                std::to_string(b.rows()));
    }
    const RealMatrix& a0 = a.comp(0);
    const RealMatrix& a1 = a.comp(1);
    const RealMatrix& a2 = a.comp(2);
    const RealMatrix& a3 = a.comp(3);
    const RealMatrix& b0 = b.comp(0);
    const RealMatrix& b1 = b.comp(1);
    const RealMatrix& b2 = b.comp(2);
    const RealMatrix& b3 = b.comp(3);
    return {a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0};
}

QMatrix conj_transpose(const QMatrix& a) {
    return {a.comp(0).transpose(), -a.comp(1).transpose(), -a.comp(2).transpose(), -a.comp(3).transpose()};
}

double frobenius(const QMatrix& a) {
    double sum = 0.0;
    for (int k = 0; k < 4; ++k) {
        sum += a.comp(k).squaredNorm();
    }
    return std::sqrt(sum);
}

QMatrix column(const QMatrix& a, Eigen::Index w) {
    require_column(a, w);
    return {a.comp(0).col(w), a.comp(1).col(w), a.comp(2).col(w), a.comp(3).col(w)};
}

void scale_column_right(QMatrix& a, Eigen::Index w, const Quaternion& s) {
    require_column(a, w);
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        a.set(r, w, a(r, w) * s);
    }
}

double orthonormality_defect(const QMatrix& a) {
    return frobenius(gram(a) - QMatrix::identity(a.cols()));
}

std::ostream& operator<<(std::ostream& os, const QMatrix& a) {
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
            os << (c ? " " : "") << a(r, c);
        }
        os << '\n';
    }
    return os;
}

} // namespace qjacobi
