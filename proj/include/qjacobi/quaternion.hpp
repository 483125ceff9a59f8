#pragma once

#include <algorithm>
#include <cmath>
#include <iosfwd>

#include "qjacobi/errors.hpp"

namespace qjacobi {

/// A quaternion w + x i + y j + z k over the reals.
///
/// Multiplication is the Hamilton product: associative, not commutative.
struct Quaternion {
    double w = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}
    constexpr explicit Quaternion(double real) : w(real) {}

    static constexpr Quaternion i() { return {0.0, 1.0, 0.0, 0.0}; }
    static constexpr Quaternion j() { return {0.0, 0.0, 1.0, 0.0}; }
    static constexpr Quaternion k() { return {0.0, 0.0, 0.0, 1.0}; }

    bool is_finite() const noexcept {
        return std::isfinite(w) && std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
    }

    constexpr Quaternion& operator+=(const Quaternion& o) {
        w += o.w;
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    constexpr Quaternion& operator-=(const Quaternion& o) {
        w -= o.w;
        x -= o.x;
        y -= o.y;
        z -= o.z;
        return *this;
    }
    constexpr Quaternion& operator*=(double s) {
        w *= s;
        x *= s;
        y *= s;
        z *= s;
        return *this;
    }

    friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
constexpr Quaternion operator-(const Quaternion& a) { return {-a.w, -a.x, -a.y, -a.z}; }
constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }

/// Hamilton product.
constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

constexpr Quaternion multiply(const Quaternion& a, const Quaternion& b) { return a * b; }

constexpr Quaternion conjugate(const Quaternion& a) { return {a.w, -a.x, -a.y, -a.z}; }

constexpr double norm_squared(const Quaternion& a) {
    return a.w * a.w + a.x * a.x + a.y * a.y + a.z * a.z;
}

/// Modulus |a|, scaled by the largest component so squares cannot overflow.
inline double abs(const Quaternion& a) {
    const double scale = std::max({std::fabs(a.w), std::fabs(a.x), std::fabs(a.y), std::fabs(a.z)});
    if (scale == 0.0 || !std::isfinite(scale)) {
        return scale;
    }
    const Quaternion u = a * (1.0 / scale);
    return scale * std::sqrt(norm_squared(u));
}

/// Multiplicative inverse conj(a)/|a|^2. Throws ZeroDivision for a = 0.
inline Quaternion inverse(const Quaternion& a) {
    const double n = abs(a);
    if (n == 0.0) {
        throw ZeroDivision("inverse of the zero quaternion");
    }
    // Divide twice by |a| rather than once by |a|^2 to stay in range.
    return conjugate(a) * (1.0 / n) * (1.0 / n);
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q);

} // namespace qjacobi
