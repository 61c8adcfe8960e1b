#pragma once

// Dense low-degree real polynomials with deterministic real-root isolation:
// a Euclidean gcd with an explicit zero cutoff for squarefree decomposition,
// Sturm sequences for counting, and a bracketed Newton/bisection refinement.

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ratmap/error.hpp"

namespace ratmap::poly {

inline constexpr int max_degree = 6;

/// Absolute bracket width every refined root is driven to.
inline constexpr double tol_root = 1e-12;

/// Remainder coefficients below gcd_cutoff * max|coeff| count as zero.
inline constexpr double gcd_cutoff = 1e-10;

/// A gcd candidate must divide both inputs with remainder below this, relative.
inline constexpr double gcd_verify_tol = 1e-6;

/// Dense polynomial, coefficients in ascending degree order. Exact trailing
/// zeros are trimmed on construction, so the leading coefficient of a
/// nonzero Poly is nonzero.
class Poly {
public:
    Poly() = default;

    explicit Poly(std::vector<double> ascending) : c_(std::move(ascending)) {
        trim();
        if (degree() > max_degree) {
            throw precondition_error("polynomial degree " + std::to_string(degree()) +
                                     " exceeds the supported maximum of 6");
        }
    }

    Poly(std::initializer_list<double> ascending) : Poly(std::vector<double>(ascending)) {}

    static Poly constant(double v) { return Poly({v}); }

    /// Monic polynomial with the given roots (repeated entries give multiplicity).
    static Poly from_roots(std::span<const double> roots) {
        std::vector<double> c{1.0};
        for (double r : roots) {
            std::vector<double> next(c.size() + 1, 0.0);
            for (std::size_t k = 0; k < c.size(); ++k) {
                next[k + 1] += c[k];
                next[k] -= r * c[k];
            }
            c = std::move(next);
        }
        return Poly(std::move(c));
    }

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }

    std::span<const double> coeffs() const { return c_; }

    double operator[](int k) const {
        return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : 0.0;
    }

    double leading() const { return c_.empty() ? 0.0 : c_.back(); }

    double max_abs_coeff() const {
        double m = 0.0;
        for (double v : c_) m = std::max(m, std::abs(v));
        return m;
    }

    double operator()(double x) const;

    Poly scaled(double s) const {
        std::vector<double> c = c_;
        for (double& v : c) v *= s;
        return Poly(std::move(c));
    }

    /// Divides by max|coeff|; the root set and the sign pattern are unchanged.
    Poly normalized() const {
        const double m = max_abs_coeff();
        return m > 0.0 ? scaled(1.0 / m) : *this;
    }

    Poly monic() const { return is_zero() ? *this : scaled(1.0 / leading()); }

    friend Poly operator*(const Poly& p, const Poly& q) {
        if (p.is_zero() || q.is_zero()) return Poly();
        std::vector<double> c(p.c_.size() + q.c_.size() - 1, 0.0);
        for (std::size_t i = 0; i < p.c_.size(); ++i)
            for (std::size_t j = 0; j < q.c_.size(); ++j) c[i + j] += p.c_[i] * q.c_[j];
        return Poly(std::move(c));
    }

    friend bool operator==(const Poly&, const Poly&) = default;

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
    }

    std::vector<double> c_;
};

/// Horner evaluation.
inline double eval(const Poly& p, double x) {
    const auto c = p.coeffs();
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

inline double Poly::operator()(double x) const { return eval(*this, x); }

inline Poly derivative(const Poly& p) {
    if (p.degree() < 1) return Poly();
    std::vector<double> d(static_cast<std::size_t>(p.degree()));
    for (int k = 1; k <= p.degree(); ++k) d[k - 1] = k * p[k];
    return Poly(std::move(d));
}

/// Cauchy bound 1 + max|c_i / c_n|: every complex root lies strictly inside it.
inline double cauchy_bound(const Poly& p) {
    if (p.degree() < 1) return 1.0;
    double m = 0.0;
    for (int k = 0; k < p.degree(); ++k) m = std::max(m, std::abs(p[k] / p.leading()));
    return 1.0 + m;
}

struct DivMod {
    Poly quotient;
    Poly remainder;
};

namespace detail {

// Drops leading coefficients with |c| <= cutoff; returns the trimmed vector.
inline std::vector<double> trim_small_leading(std::vector<double> c, double cutoff) {
    while (!c.empty() && std::abs(c.back()) <= cutoff) c.pop_back();
    return c;
}

inline int sign(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace detail

/// Long division; the remainder has degree < deg(divisor) by construction.
inline DivMod divmod(const Poly& num, const Poly& den) {
    if (den.is_zero()) throw precondition_error("polynomial division by zero");
    if (num.degree() < den.degree()) return {Poly(), num};
    std::vector<double> r(num.coeffs().begin(), num.coeffs().end());
    std::vector<double> q(static_cast<std::size_t>(num.degree() - den.degree() + 1), 0.0);
    const int dd = den.degree();
    for (int k = num.degree(); k >= dd; --k) {
        const double f = r[k] / den.leading();
        q[k - dd] = f;
        for (int j = 0; j <= dd; ++j) r[k - dd + j] -= f * den[j];
        r[k] = 0.0;
    }
    r.resize(static_cast<std::size_t>(dd));
    return {Poly(std::move(q)), Poly(std::move(r))};
}

/// Monic gcd by the Euclidean remainder sequence. Operands are rescaled to
/// max|coeff| = 1 at every step; remainder coefficients at or below
/// `rel_cutoff` are treated as zero.
namespace detail {

inline bool divides(const Poly& d, const Poly& p) {
    const Poly r = divmod(p, d).remainder;
    return r.is_zero() || r.max_abs_coeff() <= gcd_verify_tol * p.max_abs_coeff();
}

}  // namespace detail

inline Poly gcd(const Poly& p, const Poly& q, double rel_cutoff = gcd_cutoff) {
    Poly a = p.normalized();
    Poly b = q.normalized();
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.degree() < b.degree()) std::swap(a, b);
    while (b.degree() > 0) {
        Poly r = divmod(a, b).remainder;
        std::vector<double> rc(r.coeffs().begin(), r.coeffs().end());
        rc = detail::trim_small_leading(std::move(rc), rel_cutoff);
        if (rc.empty()) {
            // Euclid can stop on amplified rounding noise; keep b only if it divides both.
            const Poly g = b.monic();
            if (detail::divides(g, p.normalized()) && detail::divides(g, q.normalized())) return g;
            return Poly::constant(1.0);
        }
        a = std::move(b);
        b = Poly(std::move(rc)).normalized();
    }
    return Poly::constant(1.0);
}

struct Squarefree {
    Poly sf;        ///< same root locations as the input, all simple
    Poly repeated;  ///< gcd(p, p'); constant when there were no repeats
    bool had_repeats = false;
};

inline Squarefree squarefree_part(const Poly& p) {
    if (p.is_zero()) throw precondition_error("squarefree_part of the zero polynomial");
    if (p.degree() < 2) return {p, Poly::constant(1.0), false};
    Poly g = gcd(p, derivative(p));
    if (g.degree() < 1) return {p, Poly::constant(1.0), false};
    return {divmod(p.normalized(), g).quotient, g, true};
}

/// Sturm chain s0 = p, s1 = p', s_{k+1} = -rem(s_{k-1}, s_k), each member
/// rescaled to max|coeff| = 1. Intended for squarefree input.
inline std::vector<Poly> sturm_sequence(const Poly& p) {
    std::vector<Poly> seq;
    if (p.is_zero()) return seq;
    seq.push_back(p.normalized());
    if (p.degree() < 1) return seq;
    seq.push_back(derivative(p).normalized());
    while (seq.back().degree() > 0) {
        const Poly r = divmod(seq[seq.size() - 2], seq.back()).remainder;
        std::vector<double> rc(r.coeffs().begin(), r.coeffs().end());
        rc = detail::trim_small_leading(std::move(rc), gcd_cutoff);
        if (rc.empty()) break;
        for (double& v : rc) v = -v;
        seq.push_back(Poly(std::move(rc)).normalized());
    }
    return seq;
}

inline int sign_variations(std::span<const Poly> seq, double x) {
    int changes = 0;
    int last = 0;
    for (const Poly& s : seq) {
        const int sg = detail::sign(eval(s, x));
        if (sg == 0) continue;
        if (last != 0 && sg != last) ++changes;
        last = sg;
    }
    return changes;
}

/// Number of distinct real roots in (lo, hi], by Sturm's theorem on the
/// squarefree part. Infinite ends are clamped to the Cauchy bound. The chain
/// is evaluated in floating point and can miscount when the polynomial has
/// nearly repeated complex roots; isolate_real_roots guards against that.
inline int count_real_roots(const Poly& p, double lo, double hi) {
    if (p.is_zero()) throw precondition_error("count_real_roots of the zero polynomial");
    const Poly sf = squarefree_part(p).sf;
    if (sf.degree() < 1) return 0;
    const double bound = cauchy_bound(sf);
    lo = std::max(lo, -bound);
    hi = std::min(hi, bound);
    if (!(lo < hi)) return 0;
    const auto seq = sturm_sequence(sf);
    return sign_variations(seq, lo) - sign_variations(seq, hi);
}

/// Bracketed Newton iteration with bisection fallback: a Newton step is taken
/// only when it stays inside the current sign-change bracket and at least
/// halves the previous step. Returns the midpoint of a sign-change bracket of
/// width <= tol (or of two adjacent doubles when tol is below their spacing).
inline double refine_root(const Poly& p, double lo, double hi, double tol = tol_root) {
    if (!(lo < hi)) throw precondition_error("refine_root: empty bracket");
    double flo = eval(p, lo);
    const double fhi = eval(p, hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (detail::sign(flo) == detail::sign(fhi)) {
        throw precondition_error("refine_root: no sign change on bracket");
    }
    const Poly dp = derivative(p);
    double x = lo + 0.5 * (hi - lo);
    double prev_step = hi - lo;
    for (int iter = 0; iter < 400; ++iter) {
        const double mid = lo + 0.5 * (hi - lo);
        if (hi - lo <= tol || mid <= lo || mid >= hi) break;
        const double fx = eval(p, x);
        if (fx == 0.0) return x;
        if (x > lo && x < hi) {
            if (detail::sign(fx) == detail::sign(flo)) {
                lo = x;
                flo = fx;
            } else {
                hi = x;
            }
        }
        const double d = eval(dp, x);
        const double xn = d != 0.0 ? x - fx / d : std::numeric_limits<double>::quiet_NaN();
        if (std::isfinite(xn) && xn > lo && xn < hi && std::abs(xn - x) <= 0.5 * prev_step) {
            prev_step = std::abs(xn - x);
            x = xn;
            if (prev_step < tol) {
                // Newton has converged; try to close the bracket around x.
                const double a = std::max(lo, x - 0.5 * tol);
                const double b = std::min(hi, x + 0.5 * tol);
                const double fa = eval(p, a);
                const double fb = eval(p, b);
                if (fa == 0.0) return a;
                if (fb == 0.0) return b;
                if (detail::sign(fa) != detail::sign(fb)) {
                    lo = a;
                    hi = b;
                }
            }
        } else {
            prev_step = hi - lo;
            x = lo + 0.5 * (hi - lo);
        }
    }
    return lo + 0.5 * (hi - lo);
}

struct Root {
    double value = 0.0;
    int multiplicity = 1;
    double residual_bound = 0.0;  ///< >= |p(value)|, includes Horner rounding
};

struct RootSet {
    std::vector<Root> roots;  ///< strictly increasing in value

    std::size_t size() const { return roots.size(); }
    bool empty() const { return roots.empty(); }
    const Root& operator[](std::size_t i) const { return roots[i]; }
    auto begin() const { return roots.begin(); }
    auto end() const { return roots.end(); }

    int total_multiplicity() const {
        int m = 0;
        for (const Root& r : roots) m += r.multiplicity;
        return m;
    }
};

namespace detail {

inline double horner_error_bound(const Poly& p, double x) {
    double s = 0.0;
    const double ax = std::abs(x);
    const auto c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * ax + std::abs(*it);
    return 2.0 * (p.degree() + 1) * std::numeric_limits<double>::epsilon() * s;
}

// Simple roots of a squarefree polynomial in (lo, hi), ascending.
inline void isolate_simple(const Poly& sf, const std::vector<Poly>& seq, double lo, double hi,
                           int vlo, int vhi, int depth, std::vector<double>& out) {
    const int n = vlo - vhi;
    if (n <= 0) return;
    const double mid = lo + 0.5 * (hi - lo);
    const bool splittable = mid > lo && mid < hi && depth < 2000;
    if (n == 1) {
        const double fl = eval(sf, lo);
        const double fh = eval(sf, hi);
        if (fh == 0.0) {
            out.push_back(hi);
            return;
        }
        if (fl != 0.0 && sign(fl) != sign(fh)) {
            out.push_back(refine_root(sf, lo, hi));
            return;
        }
    }
    if (!splittable) {
        // Cluster below double resolution: report it once, unless the value
        // there is clearly nonzero and the count came from an ill-conditioned chain.
        if (std::abs(eval(sf, mid)) <= 1e3 * horner_error_bound(sf, mid)) out.push_back(mid);
        return;
    }
    const int vmid = sign_variations(seq, mid);
    isolate_simple(sf, seq, lo, mid, vlo, vmid, depth + 1, out);
    isolate_simple(sf, seq, mid, hi, vmid, vhi, depth + 1, out);
}

inline std::vector<Root> isolate(const Poly& p, double lo, double hi);

// Roots of a squarefree polynomial in (lo, hi) from sign changes between
// consecutive critical points, where it is monotone. A critical point with
// a rounding-level value and no neighbouring sign change is a root cluster.
inline std::vector<double> monotone_roots(const Poly& sf, double lo, double hi) {
    std::vector<double> pts{lo};
    for (const Root& c : isolate(derivative(sf), lo, hi)) pts.push_back(c.value);
    pts.push_back(hi);
    std::vector<double> f(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) f[i] = eval(sf, pts[i]);
    std::vector<bool> change(pts.size() - 1, false);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        change[i] = f[i] != 0.0 && f[i + 1] != 0.0 && sign(f[i]) != sign(f[i + 1]);
    }
    std::vector<double> out;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (i > 0) {
            const bool zero = f[i] == 0.0 || (!change[i - 1] && !change[i] &&
                                              std::abs(f[i]) <= 1e3 * horner_error_bound(sf, pts[i]));
            if (zero) out.push_back(pts[i]);
        }
        if (change[i]) out.push_back(refine_root(sf, pts[i], pts[i + 1]));
    }
    return out;
}

inline std::vector<Root> isolate(const Poly& p, double lo, double hi) {
    std::vector<Root> roots;
    if (p.degree() < 1) return roots;
    const Squarefree dec = squarefree_part(p);
    const Poly& sf = dec.sf;
    const double bound = cauchy_bound(sf);
    const double l = std::max(lo, -bound);
    const double h = std::min(hi, bound);
    if (!(l < h)) return roots;

    const auto seq = sturm_sequence(sf);
    std::vector<double> values;
    isolate_simple(sf, seq, l, h, sign_variations(seq, l), sign_variations(seq, h), 0, values);
    // A floating-point Sturm chain can miscount when sf has nearly repeated
    // complex roots; the sign-certified count takes precedence.
    if (sf.degree() > 1) {
        auto certified = monotone_roots(sf, l, h);
        if (certified.size() != values.size()) values = std::move(certified);
    }

    std::vector<Root> inner;
    if (dec.had_repeats) {
        const double margin = 1e-6 * std::max({1.0, std::abs(l), std::abs(h)});
        inner = isolate(dec.repeated, l - margin, h + margin);
    }
    for (double v : values) {
        if (!(v > lo && v < hi)) continue;
        Root r{v, 1, 0.0};
        for (const Root& s : inner) {
            if (std::abs(s.value - v) <= 1e-6 * std::max(1.0, std::abs(v))) {
                r.multiplicity += s.multiplicity;
                break;
            }
        }
        roots.push_back(r);
    }
    return roots;
}

}  // namespace detail

/// Every distinct real root of p in the open interval (lo, hi), ascending,
/// with multiplicities from the squarefree decomposition. Either end may be
/// infinite.
inline RootSet isolate_real_roots(const Poly& p, double lo, double hi) {
    if (p.is_zero()) throw precondition_error("isolate_real_roots: degenerate (zero) polynomial");
    if (!(lo < hi)) throw precondition_error("isolate_real_roots: requires lo < hi");
    RootSet rs;
    rs.roots = detail::isolate(p, lo, hi);
    for (Root& r : rs.roots) {
        r.residual_bound = std::abs(eval(p, r.value)) + detail::horner_error_bound(p, r.value);
    }
    return rs;
}

}  // namespace ratmap::poly
