#pragma once

// Shared helpers for the QMAT and QSVDC text formats.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "qjacobi/errors.hpp"

namespace qjacobi::detail {

/// 17 significant digits: enough to round-trip any finite double.
inline std::string format_real(double v) {
    char buf[40];
    const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf, static_cast<std::size_t>(n));
}

/// Yields non-blank, non-comment lines with their 1-based line numbers.
class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    bool next(std::string& line) {
        while (std::getline(in_, line)) {
            ++line_no_;
            if (!line.empty() && line.back() == '\r') {
                line.pop_back();
            }
            const auto first = line.find_first_not_of(" \t");
            if (first == std::string::npos || line[first] == '#') {
                continue;
            }
            return true;
        }
        return false;
    }

    std::size_t line_no() const noexcept { return line_no_; }

private:
    std::istream& in_;
    std::size_t line_no_ = 0;
};

inline std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) {
            ++i;
        }
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') {
            ++j;
        }
        if (j > i) {
            out.push_back(s.substr(i, j - i));
        }
        i = j;
    }
    return out;
}

inline double parse_real(std::string_view tok, std::size_t line) {
    double v = 0.0;
    const auto* end = tok.data() + tok.size();
    const auto [ptr, ec] = std::from_chars(tok.data(), end, v);
    if (ec != std::errc{} || ptr != end) {
        throw ParseError("not a number: '" + std::string(tok) + "'", line);
    }
    if (!std::isfinite(v)) {
        throw ParseError("non-finite value: '" + std::string(tok) + "'", line);
    }
    return v;
}

inline long long parse_count(std::string_view tok, std::size_t line) {
    long long v = 0;
    const auto* end = tok.data() + tok.size();
    const auto [ptr, ec] = std::from_chars(tok.data(), end, v);
    if (ec != std::errc{} || ptr != end || v <= 0) {
        throw ParseError("expected a positive integer, found '" + std::string(tok) + "'", line);
    }
    return v;
}

/// Parses exactly `expected` reals from one line.
inline std::vector<double> parse_reals(const std::string& line, std::size_t expected, std::size_t line_no) {
    const auto toks = split_ws(line);
    if (toks.size() != expected) {
        throw ParseError("expected " + std::to_string(expected) + " values, found " + std::to_string(toks.size()),
                         line_no);
    }
    std::vector<double> out;
    out.reserve(expected);
    for (auto t : toks) {
        out.push_back(parse_real(t, line_no));
    }
    return out;
}

} // namespace qjacobi::detail
