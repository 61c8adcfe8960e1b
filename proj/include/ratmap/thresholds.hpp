#pragma once

// Critical values of the parameter c for fixed (a, b, d).

#include <cmath>
#include <limits>
#include <optional>

#include "ratmap/error.hpp"
#include "ratmap/params.hpp"
#include "ratmap/poly.hpp"

namespace ratmap {

/// Cubic in c whose unique negative root is the positivity threshold c_minus.
inline poly::Poly q_poly(double a, double b, double d) {
    require_positive(a, b, d);
    return poly::Poly{27.0 * a * a * d * d + 4.0 * d * b * b * b, -18.0 * a * b * d, -b * b,
                      4.0 * a};
}

/// For c > c_minus the numerator a x^3 + b x^2 + c x + d is positive on
/// (0, inf), so no orbit ever leaves the positive half-line.
inline double c_minus(double a, double b, double d) {
    const auto rs =
        poly::isolate_real_roots(q_poly(a, b, d), -std::numeric_limits<double>::infinity(), 0.0);
    if (rs.size() != 1 || rs[0].multiplicity != 1) {
        throw numeric_failure("c_minus: expected exactly one simple negative root of Q, found " +
                              std::to_string(rs.size()));
    }
    return rs[0].value;
}

/// Below c_star the map has an interior local minimum and maximum.
inline double c_star(double b, double d) {
    require_positive(1.0, b, d);
    return -std::sqrt(3.0 * b * d);
}

/// phi(x_m) > a exactly when c > c1_star.
inline double c1_star(double b, double d) {
    require_positive(1.0, b, d);
    return -2.0 * std::sqrt(b * d);
}

inline poly::Poly h_poly(double a, double b) {
    require_positive(a, b, 1.0);
    return poly::Poly{-9.0 * a * a * b * b - 32.0 * b * b * b, 108.0 * a * b + 27.0 * a * a * a,
                      108.0};
}

/// Negative root of H: the c at which P' = 4t^3 - 3a t^2 - 2b t - c has a
/// double positive root.
inline double c_b(double a, double b) {
    const poly::Poly h = h_poly(a, b);
    const double qa = h[2];
    const double qb = h[1];
    const double qc = h[0];
    // qb > 0, so -qb - sqrt(.) involves no cancellation.
    return (-qb - std::sqrt(qb * qb - 4.0 * qa * qc)) / (2.0 * qa);
}

/// Location of the double root of P' when c = c_b.
inline double t_star(double a, double b) {
    return -(6.0 * c_b(a, b) + a * b) / (3.0 * a * a + 8.0 * b);
}

/// Tangency point of the numerator F(x) = a x^3 + b x^2 + c x + d with the
/// axis when c = c_minus; empty when the denominator vanishes. Requires c < 0.
inline std::optional<double> x_star(const Params& p) {
    require_positive(p);
    if (!(p.c < 0.0)) throw precondition_error("x_star requires c < 0");
    const double den = 6.0 * p.a * p.c - 2.0 * p.b * p.b;
    if (den == 0.0) return std::nullopt;
    return (p.b * p.c - 9.0 * p.a * p.d) / den;
}

/// Fold of the equilibrium quartic: at c = c_m the quartic touches zero at
/// its local minimum t_m, at c = c_M at its local maximum t_M.
struct Fold {
    double c_m = 0.0;
    double c_M = 0.0;
    double t_m = 0.0;
    double t_M = 0.0;
};

struct FoldResult {
    std::optional<Fold> fold;
    bool near_degenerate = false;  ///< c_M - c_m below 1e-9: reported absent
};

/// Threshold on c_b that decides whether the fold exists.
inline double fold_condition(double a, double b, double d) {
    return (b * b - 12.0 * d) / (3.0 * a);
}

/// Eliminating c from P = P' = 0 leaves R(t) = 3t^4 - 2a t^3 - b t^2 + d; its
/// two positive roots are t_M < t_m and c is recovered as 4t^3 - 3a t^2 - 2b t.
inline FoldResult fold_cs(double a, double b, double d) {
    require_positive(a, b, d);
    FoldResult out;
    if (!(c_b(a, b) < fold_condition(a, b, d))) return out;

    const poly::Poly r{d, 0.0, -b, -2.0 * a, 3.0};
    const auto rs = poly::isolate_real_roots(r, 0.0, std::numeric_limits<double>::infinity());
    if (rs.size() == 1 && rs[0].multiplicity == 2) {
        out.near_degenerate = true;
        return out;
    }
    if (rs.size() != 2) {
        throw numeric_failure("fold_cs: expected two positive tangency points, found " +
                              std::to_string(rs.size()));
    }
    auto c_at = [&](double t) { return ((4.0 * t - 3.0 * a) * t - 2.0 * b) * t; };
    Fold f;
    f.t_M = rs[0].value;
    f.t_m = rs[1].value;
    f.c_M = c_at(f.t_M);
    f.c_m = c_at(f.t_m);
    if (f.c_M - f.c_m < 1e-9) {
        out.near_degenerate = true;
        return out;
    }
    out.fold = f;
    return out;
}

struct Thresholds {
    double c_minus = 0.0;
    double c_star = 0.0;
    double c1_star = 0.0;
    double c_b = 0.0;
    double t_star = 0.0;
    std::optional<Fold> fold;
    bool fold_near_degenerate = false;
};

inline Thresholds compute_thresholds(double a, double b, double d) {
    Thresholds t;
    t.c_minus = c_minus(a, b, d);
    t.c_star = c_star(b, d);
    t.c1_star = c1_star(b, d);
    t.c_b = c_b(a, b);
    t.t_star = t_star(a, b);
    const FoldResult f = fold_cs(a, b, d);
    t.fold = f.fold;
    t.fold_near_degenerate = f.near_degenerate;
    return t;
}

inline Thresholds compute_thresholds(const Params& p) { return compute_thresholds(p.a, p.b, p.d); }

}  // namespace ratmap
