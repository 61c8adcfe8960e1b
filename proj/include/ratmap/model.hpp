#pragma once

// The map phi(x) = (a x^3 + b x^2 + c x + d) / x^3 on x > 0.

#include <cmath>
#include <optional>
#include <string>

#include "ratmap/error.hpp"
#include "ratmap/params.hpp"
#include "ratmap/thresholds.hpp"

namespace ratmap {

/// Guard band on the strict inequality c > c_minus.
inline constexpr double validation_guard = 1e-12;

inline bool is_validated(const Params& p) {
    return p.positive() && p.c > c_minus(p.a, p.b, p.d) + validation_guard;
}

/// Checked construction: throws unless a, b, d > 0 and c > c_minus + 1e-12.
inline Params make_validated(double a, double b, double c, double d) {
    const Params p{a, b, c, d};
    require_positive(p);
    const double cm = c_minus(a, b, d);
    if (!(c > cm + validation_guard)) {
        throw precondition_error("c = " + std::to_string(c) + " is not above c_minus = " +
                                 std::to_string(cm) + "; nonpositive iterates are possible");
    }
    return p;
}

namespace detail {

// Fixed nested evaluation order shared by every module.
inline double phi_raw(const Params& p, double x) {
    return p.a + (p.b + (p.c + p.d / x) / x) / x;
}

inline void require_x_positive(double x, const char* op) {
    if (!(x > 0.0)) throw precondition_error(std::string(op) + " requires x > 0");
}

}  // namespace detail

inline double phi(const Params& p, double x) {
    detail::require_x_positive(x, "phi");
    return detail::phi_raw(p, x);
}

/// phi'(x) = -(b x^2 + 2c x + 3d) / x^4
inline double phi_prime(const Params& p, double x) {
    detail::require_x_positive(x, "phi_prime");
    return -(p.b + (2.0 * p.c + 3.0 * p.d / x) / x) / (x * x);
}

inline double phi2(const Params& p, double x) {
    const double y = phi(p, x);
    if (!(y > 0.0)) throw precondition_error("phi2: intermediate iterate is not positive");
    return detail::phi_raw(p, y);
}

/// True iff F(x) = a x^3 + b x^2 + c x + d > 0 for every x > 0. Uses the
/// closed-form minimiser of F rather than c_minus.
inline bool numerator_positive(const Params& p) {
    require_positive(p);
    if (p.c >= 0.0) return true;
    const double xmin = -p.c / (p.b + std::sqrt(p.b * p.b - 3.0 * p.a * p.c));
    return ((p.a * xmin + p.b) * xmin + p.c) * xmin + p.d > 0.0;
}

/// Interior critical points of phi; both solve b x^2 + 2c x + 3d = 0.
struct Extrema {
    double x_m = 0.0;  ///< local minimum
    double x_M = 0.0;  ///< local maximum
};

/// Present only for c < c_star; at or above c_star phi is decreasing.
inline std::optional<Extrema> extrema(const Params& p) {
    require_positive(p);
    if (!(p.c < c_star(p.b, p.d))) return std::nullopt;
    const double disc = p.c * p.c - 3.0 * p.b * p.d;
    if (!(disc > 0.0)) return std::nullopt;
    const double s = std::sqrt(disc);
    const double big = -p.c + s;
    // Product of the roots is 3d/b, which avoids cancellation in -c - s.
    return Extrema{3.0 * p.d / big, big / p.b};
}

}  // namespace ratmap
