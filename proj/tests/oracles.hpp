#pragma once

// Test-only reference computations. Nothing here calls into the library's
// root isolation or refinement code; each oracle is a plain brute-force
// method that the library results are checked against.

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

/// Plain bisection on a sign-change bracket, run to adjacent doubles.
inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
    double flo = f(lo);
    for (int i = 0; i < 2000; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// All sign changes of f on a uniform grid of n cells over [lo, hi],
/// each refined by bisection.
inline std::vector<double> scan_roots(const std::function<double(double)>& f, double lo, double hi,
                                      int n) {
    std::vector<double> out;
    double x0 = lo;
    double f0 = f(x0);
    for (int i = 1; i <= n; ++i) {
        const double x1 = lo + (hi - lo) * i / n;
        const double f1 = f(x1);
        if (f0 == 0.0) {
            out.push_back(x0);
        } else if ((f0 < 0) != (f1 < 0) && f1 != 0.0) {
            out.push_back(bisect(f, x0, x1));
        }
        x0 = x1;
        f0 = f1;
    }
    return out;
}

/// Same as scan_roots but on a logarithmic grid over [lo, hi], lo > 0.
inline std::vector<double> scan_roots_log(const std::function<double(double)>& f, double lo,
                                          double hi, int n) {
    std::vector<double> out;
    const double ll = std::log(lo);
    const double lh = std::log(hi);
    double x0 = lo;
    double f0 = f(x0);
    for (int i = 1; i <= n; ++i) {
        const double x1 = std::exp(ll + (lh - ll) * i / n);
        const double f1 = f(x1);
        if (f0 != 0.0 && f1 != 0.0 && (f0 < 0) != (f1 < 0)) out.push_back(bisect(f, x0, x1));
        x0 = x1;
        f0 = f1;
    }
    return out;
}

/// Minimum of f over a uniform grid on [lo, hi].
inline double grid_min(const std::function<double(double)>& f, double lo, double hi, int n) {
    double m = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= n; ++i) m = std::min(m, f(lo + (hi - lo) * i / n));
    return m;
}

inline double central_difference(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Values of c at which t^4 - a t^3 - b t^2 - c t - d has a positive double
/// root, found by a brute-force search: for each t on a grid, the c that makes
/// P(t) = 0 is c(t) = (t^4 - a t^3 - b t^2 - d) / t; tangencies are the local
/// extrema of c(t). Returned as (t, c) pairs refined by golden-section search.
inline std::vector<std::pair<double, double>> tangency_grid_search(double a, double b, double d,
                                                                   double tmax, int n) {
    auto c_of = [&](double t) { return (t * t * t * t - a * t * t * t - b * t * t - d) / t; };
    std::vector<std::pair<double, double>> out;
    const double h = tmax / n;
    for (int i = 2; i < n; ++i) {
        const double t0 = (i - 1) * h;
        const double t1 = i * h;
        const double t2 = (i + 1) * h;
        const double c0 = c_of(t0);
        const double c1 = c_of(t1);
        const double c2 = c_of(t2);
        const bool is_max = c1 > c0 && c1 >= c2;
        const bool is_min = c1 < c0 && c1 <= c2;
        if (!is_max && !is_min) continue;
        double lo = t0;
        double hi = t2;
        const double g = 0.5 * (std::sqrt(5.0) - 1.0);
        for (int k = 0; k < 200; ++k) {
            const double m1 = hi - g * (hi - lo);
            const double m2 = lo + g * (hi - lo);
            const double v1 = is_max ? -c_of(m1) : c_of(m1);
            const double v2 = is_max ? -c_of(m2) : c_of(m2);
            if (v1 < v2) {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        const double t = 0.5 * (lo + hi);
        out.emplace_back(t, c_of(t));
    }
    return out;
}

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(20261019);
    return gen;
}

inline double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng());
}

/// Q(x) = 4a x^3 - b^2 x^2 - 18abd x + 27a^2 d^2 + 4d b^3, written out directly.
inline double q_cubic(double a, double b, double d, double x) {
    return 4 * a * x * x * x - b * b * x * x - 18 * a * b * d * x + 27 * a * a * d * d +
           4 * d * b * b * b;
}

/// Negative root of Q by bracketing from 0 outward and bisecting.
inline double c_minus(double a, double b, double d) {
    double lo = -1.0;
    while (q_cubic(a, b, d, lo) > 0) lo *= 2.0;
    return bisect([&](double x) { return q_cubic(a, b, d, x); }, lo, 0.0);
}

/// Minimum of F(x) = a x^3 + b x^2 + c x + d over a log grid on (1e-6, 1e6).
inline double numerator_min(double a, double b, double c, double d) {
    double m = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 200000; ++i) {
        const double x = std::exp(std::log(1e-6) + i * (std::log(1e12) / 200000));
        m = std::min(m, ((a * x + b) * x + c) * x + d);
    }
    return m;
}

struct Draw {
    double a, b, c, d;
};

/// a, b, d uniform in [lo, hi]; c uniform in (c_minus + margin, c_hi).
inline Draw random_valid(double lo, double hi, double c_hi, double margin = 1e-6) {
    Draw p{uniform(lo, hi), uniform(lo, hi), 0.0, uniform(lo, hi)};
    const double cm = c_minus(p.a, p.b, p.d);
    p.c = uniform(cm + margin * std::max(1.0, std::abs(cm)), c_hi);
    return p;
}

/// Equilibria by sign changes of t^4 - a t^3 - b t^2 - c t - d on a log grid.
/// Misses tangent (double) roots by construction.
inline std::vector<double> equilibria_scan(double a, double b, double c, double d) {
    return scan_roots_log(
        [&](double t) { return (((t - a) * t - b) * t - c) * t - d; }, 1e-6, 1e6, 200000);
}

}  // namespace oracle
