#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>

#include <Eigen/Dense>

#include "qjacobi/quaternion.hpp"

namespace qjacobi {

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// An m x n quaternion matrix A = A0 + A1 i + A2 j + A3 k held as four real
/// column-major component matrices.
///
/// This is exactly the first block row of the real counterpart, so the
/// Jacobi kernels work on real component columns and never build the
/// 4m x 4n matrix.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(Eigen::Index rows, Eigen::Index cols);
    QMatrix(RealMatrix a0, RealMatrix a1, RealMatrix a2, RealMatrix a3);

    static QMatrix zero(Eigen::Index rows, Eigen::Index cols) { return QMatrix(rows, cols); }
    static QMatrix identity(Eigen::Index n);

    Eigen::Index rows() const noexcept { return comp_[0].rows(); }
    Eigen::Index cols() const noexcept { return comp_[0].cols(); }
    bool empty() const noexcept { return rows() == 0 || cols() == 0; }

    /// Component k in {0,1,2,3}: scalar, i, j, k parts.
    const RealMatrix& comp(int k) const { return comp_[static_cast<std::size_t>(k)]; }
    RealMatrix& comp(int k) { return comp_[static_cast<std::size_t>(k)]; }

    Quaternion operator()(Eigen::Index r, Eigen::Index c) const {
        return {comp_[0](r, c), comp_[1](r, c), comp_[2](r, c), comp_[3](r, c)};
    }
    void set(Eigen::Index r, Eigen::Index c, const Quaternion& q) {
        comp_[0](r, c) = q.w;
        comp_[1](r, c) = q.x;
        comp_[2](r, c) = q.y;
        comp_[3](r, c) = q.z;
    }

    /// Bounds-checked element access; throws IndexOutOfRange.
    Quaternion at(Eigen::Index r, Eigen::Index c) const;

    bool all_finite() const;

    friend bool operator==(const QMatrix& a, const QMatrix& b);

private:
    std::array<RealMatrix, 4> comp_;
};

QMatrix operator+(const QMatrix& a, const QMatrix& b);
QMatrix operator-(const QMatrix& a, const QMatrix& b);
QMatrix operator*(double s, const QMatrix& a);

/// a_p^* a_q for columns p, q (0-based), expanded into four real dot products.
/// For p == q the imaginary parts are exactly zero.
Quaternion gram_entry(const QMatrix& a, Eigen::Index p, Eigen::Index q);

/// Hermitian n x n Gram matrix A^* A.
QMatrix gram(const QMatrix& a);

/// Square root of the summed squared moduli of the off-diagonal entries.
double off_norm(const QMatrix& b);

/// The 4m x 4n real counterpart
///
///   [ A0  A2  A1  A3 ]
///   [-A2  A0  A3 -A1 ]
///   [-A1 -A3  A0  A2 ]
///   [-A3  A1 -A2  A0 ]
///
/// Multiplicative: real_counterpart(F*G) == real_counterpart(F) * real_counterpart(G).
RealMatrix real_counterpart(const QMatrix& a);

/// Inverse of real_counterpart: reads the first block row.
QMatrix from_real_counterpart(const RealMatrix& gamma);

QMatrix matmul(const QMatrix& a, const QMatrix& b);
QMatrix conj_transpose(const QMatrix& a);
double frobenius(const QMatrix& a);

/// Column w as an m x 1 matrix.
QMatrix column(const QMatrix& a, Eigen::Index w);

/// Multiplies every entry of column w on the right by s.
void scale_column_right(QMatrix& a, Eigen::Index w, const Quaternion& s);

/// ||A^* A - I||_F.
double orthonormality_defect(const QMatrix& a);

/// QMAT text format: `QMAT <m> <n>` then m*n row-major lines `<a0> <a1> <a2> <a3>`.
/// Blank lines and lines starting with `#` are ignored.
QMatrix read_qmat(std::istream& in);
void write_qmat(std::ostream& out, const QMatrix& a);
QMatrix load_qmat(const std::filesystem::path& path);
void save_qmat(const QMatrix& a, const std::filesystem::path& path);

std::ostream& operator<<(std::ostream& os, const QMatrix& a);

} // namespace qjacobi
