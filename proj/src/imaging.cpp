#include "qjacobi/imaging.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <string>

#include "text_format.hpp"

namespace qjacobi::imaging {

namespace {

RealMatrix clamp_channel(const RealMatrix& c) { return c.cwiseMax(0.0).cwiseMin(255.0); }

void check_channel(const RealMatrix& c, const char* name) {
    if (!c.allFinite() || (c.size() > 0 && (c.minCoeff() < 0.0 || c.maxCoeff() > 255.0))) {
        throw InvalidInput(std::string(name) + " channel values must lie in [0, 255]");
    }
}

void write_columns(std::ostream& out, const QMatrix& a) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
        for (Eigen::Index r = 0; r < a.rows(); ++r) {
            const Quaternion q = a(r, c);
            out << detail::format_real(q.w) << ' ' << detail::format_real(q.x) << ' ' << detail::format_real(q.y)
                << ' ' << detail::format_real(q.z) << '\n';
        }
    }
}

void read_columns(detail::LineReader& reader, QMatrix& a) {
    std::string line;
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
        for (Eigen::Index r = 0; r < a.rows(); ++r) {
            if (!reader.next(line)) {
                throw ParseError("truncated singular vector block", reader.line_no());
            }
            const auto v = detail::parse_reals(line, 4, reader.line_no());
            a.set(r, c, {v[0], v[1], v[2], v[3]});
        }
    }
}

} // namespace

ColorImage::ColorImage(Eigen::Index height, Eigen::Index width)
    : r(RealMatrix::Zero(height, width)), g(RealMatrix::Zero(height, width)), b(RealMatrix::Zero(height, width)) {}

ColorImage::ColorImage(RealMatrix r_, RealMatrix g_, RealMatrix b_)
    : r(std::move(r_)), g(std::move(g_)), b(std::move(b_)) {
    if (g.rows() != r.rows() || g.cols() != r.cols() || b.rows() != r.rows() || b.cols() != r.cols()) {
        throw DimensionMismatch("color channels must share dimensions");
    }
    check_channel(r, "red");
    check_channel(g, "green");
    check_channel(b, "blue");
}

QMatrix image_to_qmatrix(const ColorImage& img) {
    return {RealMatrix::Zero(img.height(), img.width()), img.r, img.g, img.b};
}

ColorImage qmatrix_to_image(const QMatrix& a) {
    return {clamp_channel(a.comp(1)), clamp_channel(a.comp(2)), clamp_channel(a.comp(3))};
}

CompressedImage truncate(const QSvd& f, Eigen::Index rank) {
    if (rank < 1 || rank > f.sigma.size()) {
        throw IndexOutOfRange("rank " + std::to_string(rank) + " outside [1, " + std::to_string(f.sigma.size()) + "]");
    }
    CompressedImage c;
    c.rows = f.u.rows();
    c.cols = f.v.rows();
    c.sigma = f.sigma.head(rank);
    c.u = QMatrix(c.rows, rank);
    c.v = QMatrix(c.cols, rank);
    for (int k = 0; k < 4; ++k) {
        c.u.comp(k) = f.u.comp(k).leftCols(rank);
        c.v.comp(k) = f.v.comp(k).leftCols(rank);
    }
    return c;
}

ColorImage reconstruct(const CompressedImage& c) {
    return qmatrix_to_image(low_rank(QSvd{c.u, c.sigma, c.v}, c.rank()));
}

CompressionResult compress(const ColorImage& img, Eigen::Index rank, const JacobiConfig& cfg) {
    const Eigen::Index limit = std::min(img.height(), img.width());
    if (rank < 1 || rank > limit) {
        throw IndexOutOfRange("rank " + std::to_string(rank) + " outside [1, " + std::to_string(limit) + "]");
    }
    JacobiConfig sorted = cfg;
    sorted.sort = SortOrder::Descending;
    const SvdOutcome out = svd(image_to_qmatrix(img), sorted);
    CompressionResult res;
    res.compressed = truncate(out.svd, rank);
    res.reconstructed = reconstruct(res.compressed);
    res.psnr_db = psnr(img, res.reconstructed);
    return res;
}

double mse(const ColorImage& f, const ColorImage& g) {
    if (f.height() != g.height() || f.width() != g.width()) {
        throw DimensionMismatch("images differ in size");
    }
    const double count = 3.0 * static_cast<double>(f.height() * f.width());
    if (count == 0.0) {
        throw InvalidInput("empty image");
    }
    return ((f.r - g.r).squaredNorm() + (f.g - g.g).squaredNorm() + (f.b - g.b).squaredNorm()) / count;
}

double psnr(const ColorImage& f, const ColorImage& g) {
    const double e = mse(f, g);
    if (e == 0.0) {
        return kInfinitePsnr;
    }
    return 10.0 * std::log10(255.0 * 255.0 / e);
}

void write_compressed(std::ostream& out, const CompressedImage& c) {
    out << "QSVDC " << c.rows << ' ' << c.cols << ' ' << c.rank() << '\n';
    for (Eigen::Index w = 0; w < c.rank(); ++w) {
        out << (w ? " " : "") << detail::format_real(c.sigma(w));
    }
    out << '\n';
    write_columns(out, c.u);
    write_columns(out, c.v);
}

CompressedImage read_compressed(std::istream& in) {
    detail::LineReader reader(in);
    std::string line;
    if (!reader.next(line)) {
        throw ParseError("empty input, expected 'QSVDC <m> <n> <S>' header", reader.line_no());
    }
    const auto header = detail::split_ws(line);
    if (header.size() != 4 || header[0] != "QSVDC") {
        throw ParseError("expected 'QSVDC <m> <n> <S>' header", reader.line_no());
    }
    CompressedImage c;
    c.rows = detail::parse_count(header[1], reader.line_no());
    c.cols = detail::parse_count(header[2], reader.line_no());
    const auto rank = detail::parse_count(header[3], reader.line_no());
    if (rank > std::min(c.rows, c.cols)) {
        throw ParseError("rank exceeds the smaller image dimension", reader.line_no());
    }
    if (!reader.next(line)) {
        throw ParseError("missing singular value line", reader.line_no());
    }
    const auto sig = detail::parse_reals(line, static_cast<std::size_t>(rank), reader.line_no());
    c.sigma = Eigen::Map<const RealVector>(sig.data(), rank);
    c.u = QMatrix(c.rows, rank);
    c.v = QMatrix(c.cols, rank);
    read_columns(reader, c.u);
    read_columns(reader, c.v);
    if (reader.next(line)) {
        throw ParseError("unexpected trailing data", reader.line_no());
    }
    return c;
}

void save_compressed(const CompressedImage& c, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    write_compressed(out, c);
    if (!out) {
        throw IoError("write failed for " + path.string());
    }
}

CompressedImage load_compressed(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    return read_compressed(in);
}

ColorImage quantize(const ColorImage& img) {
    auto q = [](const RealMatrix& c) -> RealMatrix { return clamp_channel(c).array().round().matrix(); };
    return {q(img.r), q(img.g), q(img.b)};
}

ColorImage synthetic_scene(Eigen::Index height, Eigen::Index width) {
    struct Blob {
        double cx, cy, radius, r, g, b;
    };
    static constexpr Blob blobs[] = {
        {0.30, 0.35, 0.18, 110.0, 35.0, -20.0},
        {0.72, 0.60, 0.22, -30.0, 90.0, 40.0},
        {0.55, 0.20, 0.10, 60.0, 60.0, 100.0},
        {0.20, 0.80, 0.14, 20.0, -25.0, 85.0},
    };
    constexpr double two_pi = 2.0 * std::numbers::pi;
    ColorImage img(height, width);
    for (Eigen::Index y = 0; y < height; ++y) {
        const double v = height > 1 ? static_cast<double>(y) / static_cast<double>(height - 1) : 0.0;
        for (Eigen::Index x = 0; x < width; ++x) {
            const double u = width > 1 ? static_cast<double>(x) / static_cast<double>(width - 1) : 0.0;
            double r = 40.0 + 100.0 * u;
            double g = 60.0 + 70.0 * v;
            double b = 90.0 + 50.0 * (1.0 - u) * v;
            for (const Blob& bl : blobs) {
                const double d2 = (u - bl.cx) * (u - bl.cx) + (v - bl.cy) * (v - bl.cy);
                const double e = std::exp(-d2 / (2.0 * bl.radius * bl.radius));
                r += bl.r * e;
                g += bl.g * e;
                b += bl.b * e;
            }
            const double texture = 6.0 * std::sin(two_pi * 5.0 * u) * std::cos(two_pi * 3.0 * v) +
                                   3.0 * std::sin(two_pi * (7.0 * u + 4.0 * v));
            img.r(y, x) = r + texture;
            img.g(y, x) = g + 0.5 * texture;
            img.b(y, x) = b - texture;
        }
    }
    return quantize(img);
}

} // namespace qjacobi::imaging
