#pragma once

#include <filesystem>
#include <iosfwd>
#include <limits>

#include "qjacobi/jacobi.hpp"

namespace qjacobi::imaging {

/// RGB image with real channel values in [0, 255]; channels are height x width.
struct ColorImage {
    RealMatrix r, g, b;

    ColorImage() = default;
    ColorImage(Eigen::Index height, Eigen::Index width);
    ColorImage(RealMatrix r_, RealMatrix g_, RealMatrix b_);

    Eigen::Index height() const noexcept { return r.rows(); }
    Eigen::Index width() const noexcept { return r.cols(); }
};

/// Leading singular triplets of a pure quaternion image matrix.
struct CompressedImage {
    Eigen::Index rows = 0;  // m (image height)
    Eigen::Index cols = 0;  // n (image width)
    RealVector sigma;       // S values
    QMatrix u;              // m x S
    QMatrix v;              // n x S

    Eigen::Index rank() const noexcept { return sigma.size(); }

    /// Real scalars held: S (4m + 4n + 1).
    long long storage_units() const noexcept { return rank() * (4 * rows + 4 * cols + 1); }
};

struct CompressionResult {
    CompressedImage compressed;
    ColorImage reconstructed;
    double psnr_db = 0.0;
};

/// A = R i + G j + B k.
QMatrix image_to_qmatrix(const ColorImage& img);

/// Drops the scalar part and clamps every channel to [0, 255].
ColorImage qmatrix_to_image(const QMatrix& a);

/// Rank-`rank` approximation via the quaternion SVD. Throws IndexOutOfRange
/// unless 1 <= rank <= min(height, width). NotConverged propagates.
CompressionResult compress(const ColorImage& img, Eigen::Index rank, const JacobiConfig& cfg = {});

/// Truncated factors from an existing decomposition of the image matrix.
CompressedImage truncate(const QSvd& f, Eigen::Index rank);

/// sum_w sigma_w u_w v_w^* mapped back to a clamped image.
ColorImage reconstruct(const CompressedImage& c);

/// Mean squared error over all 3 * height * width channel values.
double mse(const ColorImage& f, const ColorImage& g);

/// 10 log10(255^2 / MSE); +infinity when the images are identical.
double psnr(const ColorImage& f, const ColorImage& g);

inline constexpr double kInfinitePsnr = std::numeric_limits<double>::infinity();

/// QSVDC text format: `QSVDC <m> <n> <S>`, a line of S sigmas, then S*m lines
/// of U column entries followed by S*n lines of V column entries, each
/// `<a0> <a1> <a2> <a3>`.
void write_compressed(std::ostream& out, const CompressedImage& c);
CompressedImage read_compressed(std::istream& in);
void save_compressed(const CompressedImage& c, const std::filesystem::path& path);
CompressedImage load_compressed(const std::filesystem::path& path);

/// 8-bit RGB PNG. Palette, gray and 16-bit inputs are converted; alpha is ignored.
ColorImage read_png(const std::filesystem::path& path);
/// Channels are rounded to the nearest integer after clamping.
void write_png(const ColorImage& img, const std::filesystem::path& path);

/// Rounds and clamps every channel value, the effect of a PNG write/read cycle.
ColorImage quantize(const ColorImage& img);

/// Deterministic test scene: soft colored blobs over a gradient with a faint
/// texture, quantized to 8 bits. Its spectrum decays quickly but stays full rank.
ColorImage synthetic_scene(Eigen::Index height, Eigen::Index width);

} // namespace qjacobi::imaging
