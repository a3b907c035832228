#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "subfinsler/errors.hpp"

// Compactly supported cutoff profiles with analytic derivatives, used for
// variation fields, test functions of the quadratic form, and 1-d witnesses.
// profile(r) lives on (-1, 1): cos2 is C^1 (enough where only first
// derivatives enter), cos4 is C^2.

namespace subfinsler {

enum class BumpProfile { cos2, cos4 };

inline BumpProfile bump_profile_from_string(const std::string& s) {
    if (s == "cos2") return BumpProfile::cos2;
    if (s == "cos4") return BumpProfile::cos4;
    throw validation_error("unknown bump profile: " + s);
}

inline double bump_value(BumpProfile p, double r) {
    if (std::abs(r) >= 1.0) return 0.0;
    double c = std::cos(0.5 * std::numbers::pi * r);
    double c2 = c * c;
    return p == BumpProfile::cos2 ? c2 : c2 * c2;
}

inline double bump_d1(BumpProfile p, double r) {
    if (std::abs(r) >= 1.0) return 0.0;
    double a = 0.5 * std::numbers::pi;
    double c = std::cos(a * r), s = std::sin(a * r);
    if (p == BumpProfile::cos2) return -2.0 * a * c * s;
    return -4.0 * a * c * c * c * s;
}

inline double bump_d2(BumpProfile p, double r) {
    if (std::abs(r) >= 1.0) return 0.0;
    double a = 0.5 * std::numbers::pi;
    double c = std::cos(a * r), s = std::sin(a * r);
    if (p == BumpProfile::cos2) return -2.0 * a * a * (c * c - s * s);
    return -4.0 * a * a * c * c * (c * c - 3.0 * s * s);
}

// One-dimensional bump centered at c with half-width w.
struct Bump1D {
    double center = 0.0;
    double halfwidth = 1.0;
    BumpProfile profile = BumpProfile::cos4;

    Bump1D() = default;
    Bump1D(double c, double w, BumpProfile p = BumpProfile::cos4)
        : center(c), halfwidth(w), profile(p) {
        if (!(w > 0.0)) throw validation_error("bump halfwidth must be positive");
    }

    double operator()(double x) const { return bump_value(profile, (x - center) / halfwidth); }
    double d1(double x) const { return bump_d1(profile, (x - center) / halfwidth) / halfwidth; }
    double d2(double x) const {
        return bump_d2(profile, (x - center) / halfwidth) / (halfwidth * halfwidth);
    }
    double lo() const { return center - halfwidth; }
    double hi() const { return center + halfwidth; }
};

// Tensor-product bump on a rectangle, C^2 for the cos4 profile.
struct Bump2D {
    Bump1D bx;
    Bump1D by;

    Bump2D() = default;
    Bump2D(const Bump1D& bx, const Bump1D& by) : bx(bx), by(by) {}

    double operator()(double x, double y) const { return bx(x) * by(y); }
    double dx(double x, double y) const { return bx.d1(x) * by(y); }
    double dy(double x, double y) const { return bx(x) * by.d1(y); }
};

}  // namespace subfinsler
