#pragma once

// Equilibria, 2-cycles and the auxiliary quantities used to classify orbits
// when c lies between c_minus and c_star.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ratmap/error.hpp"
#include "ratmap/model.hpp"
#include "ratmap/params.hpp"
#include "ratmap/poly.hpp"
#include "ratmap/thresholds.hpp"

namespace ratmap {

/// G-roots closer than this (relative to max(1, value)) to an equilibrium are
/// treated as fixed points, not cycle points.
inline constexpr double cycle_equilibrium_separation = 1e-7;

enum class Stability { attracting, repelling, neutral, semistable };

inline const char* to_string(Stability s) {
    switch (s) {
        case Stability::attracting: return "attracting";
        case Stability::repelling: return "repelling";
        case Stability::neutral: return "neutral";
        case Stability::semistable: return "semistable";
    }
    return "unknown";
}

struct Equilibrium {
    double value = 0.0;
    double multiplier = 0.0;  ///< phi'(value)
    bool tangent = false;     ///< repeated root of P
    Stability stability = Stability::neutral;
};

struct TwoCycle {
    double p = 0.0;  ///< p < q, phi(p) = q, phi(q) = p
    double q = 0.0;
    double multiplier = 0.0;  ///< phi'(p) * phi'(q)
    bool tangent = false;     ///< even-multiplicity root of G
};

inline Stability classify_stability(double multiplier, bool tangent) {
    if (tangent) return Stability::semistable;
    if (std::abs(multiplier) < 1.0) return Stability::attracting;
    if (std::abs(multiplier) > 1.0) return Stability::repelling;
    return Stability::neutral;
}

/// Fixed points of phi are the positive roots of t^4 - a t^3 - b t^2 - c t - d.
inline poly::Poly p_poly(const Params& p) { return poly::Poly{-p.d, -p.c, -p.b, -p.a, 1.0}; }

/// 1 to 3 positive equilibria, ascending.
inline std::vector<Equilibrium> equilibria(const Params& p) {
    require_positive(p);
    const auto rs =
        poly::isolate_real_roots(p_poly(p), 0.0, std::numeric_limits<double>::infinity());
    if (rs.empty() || rs.size() > 3) {
        throw numeric_failure("equilibria: found " + std::to_string(rs.size()) +
                              " positive roots of P, expected 1 to 3");
    }
    std::vector<Equilibrium> out;
    out.reserve(rs.size());
    for (const auto& r : rs) {
        Equilibrium e;
        e.value = r.value;
        e.multiplier = phi_prime(p, r.value);
        e.tangent = r.multiplicity >= 2;
        e.stability = classify_stability(e.multiplier, e.tangent);
        out.push_back(e);
    }
    return out;
}

/// Degree-6 factor of phi^2(t) - t that carries the prime period-two points:
/// phi^2(t) - t = t^3 / F(t)^3 * (phi(t) - t) * G(t).
inline poly::Poly g_poly(const Params& p) {
    const double a = p.a, b = p.b, c = p.c, d = p.d;
    return poly::Poly{
        a * d * d,
        2.0 * a * c * d - d * d,
        a * c * c + 2.0 * a * b * d - 2.0 * c * d,
        2.0 * a * a * d + 2.0 * a * b * c - c * c - b * d,
        a * b * b - a * d - b * c + 2.0 * a * a * c,
        2.0 * a * a * b - a * c - d,
        a * a * a,
    };
}

/// 2-cycles from the positive roots of the supplied G, each pair reported
/// once with p < q, sorted by p.
inline std::vector<TwoCycle> two_cycles(const Params& p, const poly::Poly& g) {
    require_positive(p);
    const auto eqs = equilibria(p);
    const auto rs = poly::isolate_real_roots(g, 0.0, std::numeric_limits<double>::infinity());

    std::vector<poly::Root> pts;
    for (const auto& r : rs) {
        const bool is_fixed = std::any_of(eqs.begin(), eqs.end(), [&](const Equilibrium& e) {
            return std::abs(e.value - r.value) <=
                   cycle_equilibrium_separation * std::max(1.0, e.value);
        });
        if (!is_fixed) pts.push_back(r);
    }

    std::vector<TwoCycle> cycles;
    std::vector<bool> used(pts.size(), false);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (used[i]) continue;
        const double image = detail::phi_raw(p, pts[i].value);
        std::size_t best = pts.size();
        double best_gap = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (j == i || used[j]) continue;
            const double gap = std::abs(pts[j].value - image);
            if (gap < best_gap) {
                best_gap = gap;
                best = j;
            }
        }
        if (best == pts.size() || best_gap > 1e-5 * std::max(1.0, std::abs(image))) {
            throw numeric_failure("two_cycles: root " + std::to_string(pts[i].value) +
                                  " of G has no partner near phi(root) = " +
                                  std::to_string(image));
        }
        used[i] = used[best] = true;
        TwoCycle cyc;
        cyc.p = std::min(pts[i].value, pts[best].value);
        cyc.q = std::max(pts[i].value, pts[best].value);
        cyc.multiplier = phi_prime(p, cyc.p) * phi_prime(p, cyc.q);
        cyc.tangent = pts[i].multiplicity % 2 == 0 || pts[best].multiplicity % 2 == 0;
        cycles.push_back(cyc);
    }
    std::sort(cycles.begin(), cycles.end(),
              [](const TwoCycle& x, const TwoCycle& y) { return x.p < y.p; });
    if (cycles.size() > 3) {
        throw numeric_failure("two_cycles: more than three cycles found");
    }
    return cycles;
}

inline std::vector<TwoCycle> two_cycles(const Params& p) { return two_cycles(p, g_poly(p)); }

// ---------------------------------------------------------------------------
// Quantities defined for c in (c_minus, c_star).

namespace detail {

inline Extrema require_fold_regime(const Params& p, const char* op) {
    require_positive(p);
    if (!is_validated(p)) throw precondition_error(std::string(op) + " requires c > c_minus");
    const auto ext = extrema(p);
    if (!ext) throw precondition_error(std::string(op) + " requires c < c_star");
    return *ext;
}

/// Solves phi(x) = target on [lo, hi], where phi is monotone, to adjacent doubles.
inline double invert_monotone(const Params& p, double target, double lo, double hi,
                              bool decreasing) {
    for (int i = 0; i < 2000; ++i) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) break;
        const double v = phi_raw(p, mid);
        if (v == target) return mid;
        if ((v > target) == decreasing) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo + 0.5 * (hi - lo);
}

/// Point x in (0, x_max] with phi(x) > target, on the decreasing branch next to 0.
inline double left_bracket(const Params& p, double target, double x_max) {
    double x = 0.5 * x_max;
    for (int i = 0; i < 2000 && !(phi_raw(p, x) > target); ++i) x *= 0.5;
    return x;
}

}  // namespace detail

struct G1G2Values {
    double g1 = 0.0;
    double g2 = 0.0;
};

/// The two auxiliary polynomials evaluated at x_M; G(x) = a G2(x) + x G1(x).
inline G1G2Values g1_g2(const Params& p) {
    const Extrema ext = detail::require_fold_regime(p, "g1_g2");
    const auto eqs = equilibria(p);
    const bool has_upper = std::any_of(eqs.begin(), eqs.end(),
                                       [&](const Equilibrium& e) { return e.value >= ext.x_M; });
    if (!has_upper) throw precondition_error("g1_g2 requires an equilibrium at or above x_M");
    const double a = p.a, b = p.b, c = p.c, d = p.d, x = ext.x_M;
    G1G2Values v;
    v.g1 = (((-d * x + (a * d - b * c)) * x - (c * c + b * d)) * x - 2.0 * c * d) * x - d * d;
    v.g2 = (((((a * a * x + (2.0 * a * b - c)) * x + (b * b - 2.0 * d + 2.0 * a * c)) * x +
              (2.0 * a * d + 2.0 * b * c)) *
                 x +
             (c * c + 2.0 * b * d)) *
                x +
            2.0 * c * d) *
               x +
           d * d;
    return v;
}

/// The point beyond x_M with phi(eta) = phi(x_m). Requires c1_star < c < c_star.
inline double eta(const Params& p) {
    const Extrema ext = detail::require_fold_regime(p, "eta");
    if (!(p.c > c1_star(p.b, p.d))) throw precondition_error("eta requires c > c1_star");
    const double den = p.c * ext.x_m + 2.0 * p.d;
    if (!(den < 0.0)) throw precondition_error("eta: c x_m + 2d must be negative");
    return -p.d * ext.x_m / den;
}

struct InvariantInterval {
    double lo = 0.0;  ///< phi(x_m)
    double hi = 0.0;  ///< phi^2(x_m)
    bool hypothesis_h = false;
    bool grid_checked = false;     ///< grid check ran (only under the hypothesis)
    double grid_max_escape = 0.0;  ///< max distance of phi(t) from I over the grid
};

/// I = [phi(x_m), phi^2(x_m)] for a unique equilibrium below x_m. The
/// hypothesis holds when c <= c1_star, or c > c1_star and phi^2(x_m) <= eta.
inline InvariantInterval invariant_interval(const Params& p) {
    const Extrema ext = detail::require_fold_regime(p, "invariant_interval");
    const auto eqs = equilibria(p);
    if (eqs.size() != 1 || !(eqs[0].value < ext.x_m)) {
        throw precondition_error(
            "invariant_interval requires a unique equilibrium below the local minimum x_m");
    }
    InvariantInterval iv;
    iv.lo = phi(p, ext.x_m);
    iv.hi = phi(p, iv.lo);
    const double c1 = c1_star(p.b, p.d);
    iv.hypothesis_h = p.c <= c1 || iv.hi <= eta(p);
    if (iv.hypothesis_h) {
        iv.grid_checked = true;
        constexpr int n = 64;
        for (int i = 0; i < n; ++i) {
            const double t = iv.lo + (iv.hi - iv.lo) * i / (n - 1);
            const double y = phi(p, t);
            const double slack = 1e-12 * std::max(1.0, std::abs(y));
            double escape = 0.0;
            if (y < iv.lo - slack) escape = iv.lo - y;
            if (y > iv.hi + slack) escape = y - iv.hi;
            iv.grid_max_escape = std::max(iv.grid_max_escape, escape);
        }
    }
    return iv;
}

/// The unique delta in (0, x_m] with phi(delta) = target; phi decreases on
/// that branch from +inf to phi(x_m).
inline double preimage_below_xm(const Params& p, double target) {
    const Extrema ext = detail::require_fold_regime(p, "preimage_below_xm");
    const double floor_value = phi(p, ext.x_m);
    if (target < floor_value) {
        throw precondition_error("preimage_below_xm: target below phi(x_m)");
    }
    if (target == floor_value) return ext.x_m;
    const double lo = detail::left_bracket(p, target, ext.x_m);
    return detail::invert_monotone(p, target, lo, ext.x_m, true);
}

struct PreimageTriviality {
    bool trivial = false;           ///< t < -d x_M / (c x_M + 2d)
    bool phi_xM_below_t = false;    ///< equivalent form phi(x_M) < t
    bool boundary_warning = false;  ///< within 1e-12 of the bound; trivial forced false
    double bound = 0.0;
};

/// Whether the backward orbit of the unique equilibrium is just itself.
/// Requires c in (c_minus, c_star), a unique equilibrium below x_m and
/// exactly one 2-cycle.
inline PreimageTriviality preimage_set_is_trivial(const Params& p) {
    const Extrema ext = detail::require_fold_regime(p, "preimage_set_is_trivial");
    const auto eqs = equilibria(p);
    if (eqs.size() != 1 || !(eqs[0].value < ext.x_m) || two_cycles(p).size() != 1) {
        throw precondition_error(
            "preimage_set_is_trivial requires one equilibrium below x_m and one 2-cycle");
    }
    const double t = eqs[0].value;
    PreimageTriviality out;
    out.bound = -p.d * ext.x_M / (p.c * ext.x_M + 2.0 * p.d);
    out.phi_xM_below_t = phi(p, ext.x_M) < t;
    if (std::abs(t - out.bound) <= 1e-12 * std::max(1.0, std::abs(out.bound))) {
        out.boundary_warning = true;
        out.trivial = false;
    } else {
        out.trivial = t < out.bound;
    }
    return out;
}

}  // namespace ratmap
