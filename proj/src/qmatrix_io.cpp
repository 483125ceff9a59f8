#include <fstream>
#include <sstream>

#include "qjacobi/qmatrix.hpp"
#include "text_format.hpp"

namespace qjacobi {

QMatrix read_qmat(std::istream& in) {
    detail::LineReader reader(in);
    std::string line;
    if (!reader.next(line)) {
        throw ParseError("empty input, expected 'QMAT <m> <n>' header", reader.line_no());
    }
    const auto header = detail::split_ws(line);
    if (header.size() != 3 || header[0] != "QMAT") {
        throw ParseError("expected 'QMAT <m> <n>' header", reader.line_no());
    }
    const auto m = detail::parse_count(header[1], reader.line_no());
    const auto n = detail::parse_count(header[2], reader.line_no());
    const long long expected = m * n;

    QMatrix a(m, n);
    long long found = 0;
    while (reader.next(line)) {
        if (found == expected) {
            throw ParseError("expected " + std::to_string(expected) + " entries, found more", reader.line_no());
        }
        const auto v = detail::parse_reals(line, 4, reader.line_no());
        a.set(found / n, found % n, {v[0], v[1], v[2], v[3]});
        ++found;
    }
    if (found != expected) {
        throw ParseError("expected " + std::to_string(expected) + " entries, found " + std::to_string(found),
                         reader.line_no());
    }
    return a;
}

void write_qmat(std::ostream& out, const QMatrix& a) {
    out << "QMAT " << a.rows() << ' ' << a.cols() << '\n';
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
            const Quaternion q = a(r, c);
            out << detail::format_real(q.w) << ' ' << detail::format_real(q.x) << ' ' << detail::format_real(q.y)
                << ' ' << detail::format_real(q.z) << '\n';
        }
    }
}

QMatrix load_qmat(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    return read_qmat(in);
}

void save_qmat(const QMatrix& a, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    write_qmat(out, a);
    if (!out) {
        throw IoError("write failed for " + path.string());
    }
}

} // namespace qjacobi
