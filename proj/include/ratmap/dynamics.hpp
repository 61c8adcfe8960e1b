#pragma once

// Orbit simulation, theorem-backed fate prediction and the harness that
// compares the two.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ratmap/error.hpp"
#include "ratmap/model.hpp"
#include "ratmap/params.hpp"
#include "ratmap/structures.hpp"
#include "ratmap/thresholds.hpp"

namespace ratmap {

// ---------------------------------------------------------------------------
// Fates

namespace fate {

struct FixedPoint {
    double value = 0.0;
};

struct Cycle {
    double p = 0.0;
    double q = 0.0;
};

struct NonpositiveIterate {
    std::size_t step = 0;
    double value = 0.0;
};

struct Undecided {
    std::string reason;
};

}  // namespace fate

using Fate = std::variant<fate::FixedPoint, fate::Cycle, fate::NonpositiveIterate, fate::Undecided>;

inline std::string fate_kind(const Fate& f) {
    struct {
        std::string operator()(const fate::FixedPoint&) const { return "FixedPoint"; }
        std::string operator()(const fate::Cycle&) const { return "TwoCycle"; }
        std::string operator()(const fate::NonpositiveIterate&) const { return "NonpositiveIterate"; }
        std::string operator()(const fate::Undecided&) const { return "Undecided"; }
    } v;
    return std::visit(v, f);
}

inline std::string describe(const Fate& f, int precision = 6) {
    auto num = [precision](double x) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*g", precision, x);
        return std::string(buf);
    };
    if (const auto* fp = std::get_if<fate::FixedPoint>(&f)) return "FixedPoint(" + num(fp->value) + ")";
    if (const auto* c = std::get_if<fate::Cycle>(&f)) {
        return "TwoCycle(" + num(c->p) + ", " + num(c->q) + ")";
    }
    if (const auto* n = std::get_if<fate::NonpositiveIterate>(&f)) {
        return "NonpositiveIterate(step " + std::to_string(n->step) + ")";
    }
    return "Undecided(" + std::get<fate::Undecided>(f).reason + ")";
}

inline bool close_rel(double x, double y, double rel) {
    return std::abs(x - y) <= rel * std::max(1.0, std::max(std::abs(x), std::abs(y)));
}

/// Same attractor: same kind and coordinates within `rel`. The loose default
/// absorbs the sub-geometric approach to semistable points.
inline bool same_attractor(const Fate& x, const Fate& y, double rel = 1e-3) {
    if (x.index() != y.index()) return false;
    if (const auto* a = std::get_if<fate::FixedPoint>(&x)) {
        return close_rel(a->value, std::get<fate::FixedPoint>(y).value, rel);
    }
    if (const auto* a = std::get_if<fate::Cycle>(&x)) {
        const auto& b = std::get<fate::Cycle>(y);
        return close_rel(a->p, b.p, rel) && close_rel(a->q, b.q, rel);
    }
    return true;
}

// ---------------------------------------------------------------------------
// Orbit simulation

inline constexpr std::size_t default_max_iter = 1'000'000;
inline constexpr double default_tol_conv = 1e-10;

struct OrbitOptions {
    std::size_t max_iter = default_max_iter;
    double tol_conv = default_tol_conv;
    std::size_t trace_limit = 0;  ///< keep at most this many iterates (x0 first)
};

struct OrbitResult {
    Fate fate;
    std::size_t iterations = 0;
    std::array<double, 2> final_points{};  ///< last two iterates
    std::vector<double> trace;
};

/// Iterates phi from x0 until successive iterates agree (fixed point), every
/// second iterate agrees while the odd gap stays open and has stopped
/// shrinking (2-cycle), an iterate is nonpositive, or the budget runs out.
inline OrbitResult iterate_orbit(const Params& p, double x0, const OrbitOptions& opt = {}) {
    if (!(x0 > 0.0) || !std::isfinite(x0)) throw precondition_error("iterate_orbit requires x0 > 0");
    const double tol = opt.tol_conv;
    OrbitResult res;
    auto record = [&](double v) {
        if (res.trace.size() < opt.trace_limit) res.trace.push_back(v);
    };
    record(x0);

    double x = x0;
    double prev = std::nan("");
    double prev_gap = std::nan("");  // |x_{n} - x_{n-1}| one step back
    for (std::size_t n = 0; n < opt.max_iter; ++n) {
        const double y = detail::phi_raw(p, x);
        res.iterations = n + 1;
        res.final_points = {x, y};
        if (!std::isfinite(y)) {
            res.fate = fate::Undecided{"nonfinite iterate at step " + std::to_string(n + 1)};
            return res;
        }
        if (!(y > 0.0)) {
            res.fate = fate::NonpositiveIterate{n + 1, y};
            return res;
        }
        record(y);
        const double gap = std::abs(y - x);
        if (gap <= tol) {
            res.fate = fate::FixedPoint{y};
            return res;
        }
        if (std::isfinite(prev)) {
            const double odd_gap = std::abs(x - prev);
            const double even_gap = std::abs(y - prev);
            // A fixed point approached with multiplier near -1 also closes the
            // even gap; it is told apart by a still-shrinking odd gap.
            const bool settled = odd_gap > 1e3 * tol || !(odd_gap < prev_gap);
            if (even_gap <= tol && odd_gap > 10.0 * tol && settled) {
                res.fate = fate::Cycle{std::min(x, y), std::max(x, y)};
                return res;
            }
        }
        prev_gap = std::isfinite(prev) ? std::abs(x - prev) : std::nan("");
        prev = x;
        x = y;
    }
    res.fate = fate::Undecided{"iteration budget exhausted"};
    return res;
}

// ---------------------------------------------------------------------------
// Regimes

enum class Regime {
    T4a,
    T4b,
    T4c,
    T4d,
    T5b,
    T5c,
    T6b,
    T6c,
    T7a1,
    T7a21,
    T7a22,
    T7b,
    ThreeEquilibria_Unclassified,
    Unclassified,
};

inline const char* to_string(Regime r) {
    switch (r) {
        case Regime::T4a: return "T4a";
        case Regime::T4b: return "T4b";
        case Regime::T4c: return "T4c";
        case Regime::T4d: return "T4d";
        case Regime::T5b: return "T5b";
        case Regime::T5c: return "T5c";
        case Regime::T6b: return "T6b";
        case Regime::T6c: return "T6c";
        case Regime::T7a1: return "T7a1";
        case Regime::T7a21: return "T7a21";
        case Regime::T7a22: return "T7a22";
        case Regime::T7b: return "T7b";
        case Regime::ThreeEquilibria_Unclassified: return "ThreeEquilibria_Unclassified";
        case Regime::Unclassified: return "Unclassified";
    }
    return "Unclassified";
}

inline std::optional<Regime> regime_from_string(const std::string& s) {
    for (int i = 0; i <= static_cast<int>(Regime::Unclassified); ++i) {
        const auto r = static_cast<Regime>(i);
        if (s == to_string(r)) return r;
    }
    return std::nullopt;
}

inline constexpr std::size_t preimage_depth = 32;
inline constexpr std::size_t preimage_cap = 4096;

/// Backward orbit {phi^-n(target)}, n <= depth, found branch by branch on the
/// monotone pieces of phi. Requires c < c_star (three branches).
inline std::vector<double> backward_orbit(const Params& p, double target,
                                          std::size_t depth = preimage_depth,
                                          std::size_t cap = preimage_cap) {
    const auto ext = extrema(p);
    if (!ext) throw precondition_error("backward_orbit requires c < c_star");
    const double xm = ext->x_m;
    const double xM = ext->x_M;
    const double fm = phi(p, xm);
    const double fM = phi(p, xM);

    std::vector<double> all{target};
    std::vector<double> frontier{target};
    auto known = [&](double v) {
        return std::any_of(all.begin(), all.end(), [&](double w) { return close_rel(v, w, 1e-12); });
    };
    for (std::size_t level = 0; level < depth && !frontier.empty() && all.size() < cap; ++level) {
        std::vector<double> next;
        for (double y : frontier) {
            std::vector<double> pre;
            if (y >= fm) {
                const double lo = detail::left_bracket(p, y, xm);
                pre.push_back(detail::invert_monotone(p, y, lo, xm, true));
            }
            if (y >= fm && y <= fM) pre.push_back(detail::invert_monotone(p, y, xm, xM, false));
            if (y > p.a && y <= fM) {
                double hi = 2.0 * xM;
                while (detail::phi_raw(p, hi) >= y && hi < 1e300) hi *= 2.0;
                if (hi < 1e300) pre.push_back(detail::invert_monotone(p, y, xM, hi, true));
            }
            for (double v : pre) {
                if (v > 0.0 && !known(v) && all.size() < cap) {
                    all.push_back(v);
                    next.push_back(v);
                }
            }
        }
        frontier = std::move(next);
    }
    std::sort(all.begin(), all.end());
    return all;
}

/// Everything about a parameter set that does not depend on x0.
struct RegimeAnalysis {
    Params params;
    bool valid = false;
    Thresholds thresholds;
    std::optional<Extrema> extrema;
    std::vector<Equilibrium> equilibria;
    std::vector<TwoCycle> cycles;
    Regime regime = Regime::Unclassified;
    std::vector<std::string> notes;

    std::optional<double> delta;        ///< phi(delta) = upper equilibrium, delta < x_m
    std::optional<double> delta_prime;  ///< phi(delta') = lower equilibrium, delta' < x_m
    std::optional<InvariantInterval> interval;
    std::optional<PreimageTriviality> preimage_test;
    std::vector<double> preimages;  ///< truncated preimage set of the repelling equilibrium

    /// Points where the predicted fate changes or is decided by exact equality.
    std::vector<double> boundaries() const {
        std::vector<double> b;
        for (const auto& e : equilibria) b.push_back(e.value);
        for (const auto& c : cycles) {
            b.push_back(c.p);
            b.push_back(c.q);
        }
        if (delta) b.push_back(*delta);
        if (delta_prime) b.push_back(*delta_prime);
        b.insert(b.end(), preimages.begin(), preimages.end());
        std::sort(b.begin(), b.end());
        return b;
    }
};

namespace detail {

inline bool nested(const std::vector<TwoCycle>& cs, double t) {
    for (std::size_t i = 0; i < cs.size(); ++i) {
        if (!(cs[i].p < t && t < cs[i].q)) return false;
        if (i > 0 && !(cs[i - 1].p < cs[i].p && cs[i].q < cs[i - 1].q)) return false;
    }
    return true;
}

inline bool any_tangent(const std::vector<TwoCycle>& cs) {
    return std::any_of(cs.begin(), cs.end(), [](const TwoCycle& c) { return c.tangent; });
}

inline void classify_decreasing(RegimeAnalysis& r) {
    const double t = r.equilibria[0].value;
    if (detail::any_tangent(r.cycles)) {
        r.notes.push_back("tangent case - semistable 2-cycle; no basin prediction");
        return;
    }
    if (!nested(r.cycles, t)) {
        r.notes.push_back("2-cycles are not nested around the equilibrium");
        return;
    }
    static constexpr Regime by_count[] = {Regime::T4a, Regime::T4b, Regime::T4c, Regime::T4d};
    r.regime = by_count[r.cycles.size()];
}

inline void classify_unique(RegimeAnalysis& r) {
    const Params& p = r.params;
    const double t = r.equilibria[0].value;
    const Extrema& ext = *r.extrema;
    if (r.equilibria[0].tangent) {
        r.notes.push_back("unique equilibrium is tangent; no basin prediction");
        return;
    }
    if (t >= ext.x_m) {
        if (r.cycles.empty()) {
            r.regime = Regime::T5b;
        } else if (any_tangent(r.cycles)) {
            r.notes.push_back("tangent case - semistable 2-cycle; no basin prediction");
        } else if (r.cycles.size() == 2 && nested(r.cycles, t)) {
            r.regime = Regime::T5c;
        } else {
            r.notes.push_back("cycle pattern not covered for an equilibrium at or above x_m");
        }
        return;
    }
    r.interval = invariant_interval(p);
    if (r.cycles.empty()) {
        r.regime = Regime::T6b;
        return;
    }
    const TwoCycle& c = r.cycles[0];
    if (r.cycles.size() == 1 && !c.tangent && c.p < t && t < c.q && c.q <= ext.x_m) {
        r.regime = Regime::T6c;
        r.preimage_test = preimage_set_is_trivial(p);
        if (r.preimage_test->boundary_warning) {
            r.notes.push_back("equilibrium within 1e-12 of the preimage-triviality bound");
        }
        r.preimages = r.preimage_test->trivial ? std::vector<double>{t} : backward_orbit(p, t);
        if (!r.preimage_test->trivial) {
            r.notes.push_back("preimage set truncated at " + std::to_string(preimage_depth) +
                              " backward levels");
        }
        return;
    }
    r.notes.push_back("cycle pattern not covered for an equilibrium below x_m");
}

// A tangent root is only located to about 1e-11 relative.
inline constexpr double tangent_slack = 1e-9;

inline void classify_two(RegimeAnalysis& r) {
    const Params& p = r.params;
    const Extrema& ext = *r.extrema;
    const Equilibrium& e1 = r.equilibria[0];
    const Equilibrium& e2 = r.equilibria[1];
    const double floor_value = phi(p, ext.x_m);
    if (e2.tangent && !e1.tangent) {
        // c = c_m: the upper equilibrium is the tangency.
        if (e2.value > p.a * (1 + tangent_slack)) {
            r.notes.push_back("upper equilibrium exceeds a; prediction needs it <= a");
            return;
        }
        if (e2.value < floor_value) {
            r.notes.push_back("upper equilibrium has no preimage below x_m");
            return;
        }
        r.delta = preimage_below_xm(p, e2.value);
        if (ext.x_m <= e1.value) {
            r.regime = Regime::T7a1;
        } else if (r.cycles.empty()) {
            r.regime = Regime::T7a21;
        } else {
            const TwoCycle& c = r.cycles[0];
            if (r.cycles.size() == 1 && !c.tangent && c.p < e1.value && e1.value < c.q &&
                c.q <= ext.x_m) {
                r.regime = Regime::T7a22;
                r.preimages = backward_orbit(p, e1.value);
                r.notes.push_back("preimage set truncated at " + std::to_string(preimage_depth) +
                                  " backward levels");
            } else {
                r.notes.push_back("cycle pattern not covered for two equilibria");
            }
        }
        return;
    }
    if (e1.tangent && !e2.tangent) {
        // c = c_M: the lower equilibrium is the tangency.
        if (e1.value > p.a * (1 + tangent_slack)) {
            r.notes.push_back("lower equilibrium exceeds a; prediction needs it <= a");
            return;
        }
        if (e1.value < floor_value) {
            r.notes.push_back("lower equilibrium has no preimage below x_m");
            return;
        }
        r.delta_prime = preimage_below_xm(p, e1.value);
        r.regime = Regime::T7b;
        return;
    }
    r.notes.push_back("two equilibria without a single tangency");
}

}  // namespace detail

/// Computes thresholds and structures and selects the applicable theorem.
/// Parameter sets the theorems do not cover come back Unclassified (or
/// ThreeEquilibria_Unclassified) with a note, never a nearest-theorem guess.
inline RegimeAnalysis classify(const Params& p) {
    require_positive(p);
    RegimeAnalysis r;
    r.params = p;
    r.thresholds = compute_thresholds(p);
    r.valid = p.c > r.thresholds.c_minus + validation_guard;
    if (!r.valid) {
        r.notes.push_back("invalid - nonpositive iterates possible (c <= c_minus)");
        return r;
    }
    r.extrema = extrema(p);
    r.equilibria = equilibria(p);
    r.cycles = two_cycles(p);

    if (!r.extrema) {
        if (r.equilibria.size() != 1) {
            throw numeric_failure("c >= c_star must give a unique equilibrium");
        }
        detail::classify_decreasing(r);
    } else if (r.equilibria.size() == 1) {
        detail::classify_unique(r);
    } else if (r.equilibria.size() == 2) {
        detail::classify_two(r);
    } else {
        r.regime = Regime::ThreeEquilibria_Unclassified;
        r.notes.push_back("three equilibria: simulation only");
    }
    return r;
}

struct FatePrediction {
    Regime regime = Regime::Unclassified;
    Fate predicted = fate::Undecided{"unclassified"};
    std::string basin_note;
};

namespace detail {

inline bool in_set(double x, const std::vector<double>& pts) {
    return std::any_of(pts.begin(), pts.end(), [&](double s) { return close_rel(x, s, 1e-12); });
}

inline Fate to_fate(const TwoCycle& c) { return fate::Cycle{c.p, c.q}; }

}  // namespace detail

/// The theorem's conclusion for the orbit starting at x0.
inline FatePrediction predict_fate(const RegimeAnalysis& r, double x0) {
    if (!(x0 > 0.0)) throw precondition_error("predict_fate requires x0 > 0");
    FatePrediction out;
    out.regime = r.regime;
    const auto& eq = r.equilibria;
    const auto& cy = r.cycles;
    switch (r.regime) {
        case Regime::T4a:
        case Regime::T5b:
        case Regime::T6b:
            out.predicted = fate::FixedPoint{eq[0].value};
            out.basin_note = "every orbit converges to the equilibrium";
            break;
        case Regime::T4b:
            out.predicted = x0 == eq[0].value ? Fate{fate::FixedPoint{eq[0].value}}
                                              : detail::to_fate(cy[0]);
            out.basin_note = "every orbit except the equilibrium converges to the 2-cycle";
            break;
        case Regime::T4c:
        case Regime::T5c:
            if (x0 > cy[1].p && x0 < cy[1].q) {
                out.predicted = fate::FixedPoint{eq[0].value};
            } else if (x0 == cy[1].p || x0 == cy[1].q) {
                out.predicted = detail::to_fate(cy[1]);
            } else {
                out.predicted = detail::to_fate(cy[0]);
            }
            out.basin_note = "(p2, q2) -> equilibrium; {p2, q2} -> inner cycle; rest -> outer cycle";
            break;
        case Regime::T4d:
            if (x0 == eq[0].value) {
                out.predicted = fate::FixedPoint{eq[0].value};
            } else if (x0 > cy[1].p && x0 < cy[1].q) {
                out.predicted = detail::to_fate(cy[2]);
            } else if (x0 == cy[1].p || x0 == cy[1].q) {
                out.predicted = detail::to_fate(cy[1]);
            } else {
                out.predicted = detail::to_fate(cy[0]);
            }
            out.basin_note = "(p2, q2) minus equilibrium -> innermost cycle; rest -> outer cycle";
            break;
        case Regime::T6c:
            out.predicted = detail::in_set(x0, r.preimages) ? Fate{fate::FixedPoint{eq[0].value}}
                                                            : detail::to_fate(cy[0]);
            out.basin_note = "preimages of the equilibrium -> equilibrium; rest -> 2-cycle";
            break;
        case Regime::T7a1:
        case Regime::T7a21:
            out.predicted = (x0 > *r.delta && x0 < eq[1].value) ? fate::FixedPoint{eq[0].value}
                                                                : fate::FixedPoint{eq[1].value};
            out.basin_note = "(delta, upper equilibrium) -> lower equilibrium; rest -> upper";
            break;
        case Regime::T7a22:
            if (x0 > *r.delta && x0 < eq[1].value) {
                out.predicted = detail::in_set(x0, r.preimages) ? Fate{fate::FixedPoint{eq[0].value}}
                                                                : detail::to_fate(cy[0]);
            } else {
                out.predicted = fate::FixedPoint{eq[1].value};
            }
            out.basin_note =
                "(delta, upper equilibrium) -> 2-cycle except preimages of the lower equilibrium; "
                "rest -> upper equilibrium";
            break;
        case Regime::T7b:
            out.predicted = (x0 >= *r.delta_prime && x0 <= eq[0].value)
                                ? fate::FixedPoint{eq[0].value}
                                : fate::FixedPoint{eq[1].value};
            out.basin_note = "[delta', lower equilibrium] -> lower equilibrium; rest -> upper";
            break;
        case Regime::ThreeEquilibria_Unclassified:
        case Regime::Unclassified:
            out.predicted = fate::Undecided{"no theorem covers this parameter set"};
            out.basin_note = r.notes.empty() ? "unclassified" : r.notes.front();
            break;
    }
    return out;
}

inline FatePrediction predict_fate(const Params& p, double x0) {
    return predict_fate(classify(p), x0);
}

// ---------------------------------------------------------------------------
// Prediction vs simulation

/// Relative distance from a basin boundary inside which samples are skipped.
inline constexpr double boundary_margin = 1e-4;

struct SampleOutcome {
    double x0 = 0.0;
    Fate predicted;
    Fate simulated;
    std::size_t iterations = 0;
    bool excluded = false;     ///< within boundary_margin of a boundary point
    bool unclassified = false; ///< no prediction available
    bool whitelisted = false;  ///< hit a deep preimage of the repelling equilibrium
    bool agree = false;
};

struct CrossValidation {
    Regime regime = Regime::Unclassified;
    std::vector<SampleOutcome> samples;
    std::size_t compared = 0;
    std::size_t agreed = 0;
    std::size_t excluded = 0;
    std::size_t unclassified = 0;
    std::size_t whitelisted = 0;
    std::vector<std::size_t> mismatches;  ///< indices into samples

    double agreement_rate() const {
        return compared == 0 ? 1.0 : static_cast<double>(agreed) / static_cast<double>(compared);
    }
};

inline std::vector<double> log_spaced(double lo, double hi, std::size_t n) {
    if (!(lo > 0.0) || !(hi >= lo)) throw precondition_error("log_spaced requires 0 < lo <= hi");
    std::vector<double> xs;
    if (n == 0) return xs;
    if (n == 1) return {lo};
    const double l = std::log(lo);
    const double h = std::log(hi);
    xs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs.push_back(std::exp(l + (h - l) * static_cast<double>(i) / static_cast<double>(n - 1)));
    }
    xs.front() = lo;
    xs.back() = hi;
    return xs;
}

inline CrossValidation cross_validate(const RegimeAnalysis& r, std::span<const double> x0s,
                                      const OrbitOptions& opt = {}) {
    CrossValidation cv;
    cv.regime = r.regime;
    const auto bounds = r.boundaries();
    for (double x0 : x0s) {
        SampleOutcome s;
        s.x0 = x0;
        s.excluded = std::any_of(bounds.begin(), bounds.end(), [&](double b) {
            return std::abs(x0 - b) <= boundary_margin * std::abs(b);
        });
        const FatePrediction pred = predict_fate(r, x0);
        s.predicted = pred.predicted;
        const OrbitResult orbit = iterate_orbit(r.params, x0, opt);
        s.simulated = orbit.fate;
        s.iterations = orbit.iterations;
        s.unclassified = std::holds_alternative<fate::Undecided>(pred.predicted);
        if (s.excluded) {
            ++cv.excluded;
        } else if (s.unclassified) {
            ++cv.unclassified;
        } else {
            s.agree = same_attractor(s.predicted, s.simulated);
            const bool preimage_regime = r.regime == Regime::T6c || r.regime == Regime::T7a22;
            if (!s.agree && preimage_regime && std::holds_alternative<fate::Cycle>(s.predicted) &&
                same_attractor(s.simulated, fate::FixedPoint{r.equilibria[0].value})) {
                s.whitelisted = true;
                ++cv.whitelisted;
            } else {
                ++cv.compared;
                if (s.agree) {
                    ++cv.agreed;
                } else {
                    cv.mismatches.push_back(cv.samples.size());
                }
            }
        }
        cv.samples.push_back(std::move(s));
    }
    return cv;
}

inline CrossValidation cross_validate(const Params& p, std::span<const double> x0s,
                                      const OrbitOptions& opt = {}) {
    return cross_validate(classify(p), x0s, opt);
}

// ---------------------------------------------------------------------------
// Empirical basin map

struct BasinCell {
    double x0 = 0.0;
    OrbitResult orbit;
};

struct BasinScan {
    std::vector<BasinCell> cells;
    std::vector<std::size_t> boundaries;  ///< i such that cells i and i+1 differ in fate
};

/// Fates on a log-spaced grid of n points over [lo, hi].
inline BasinScan basin_scan(const Params& p, double lo, double hi, std::size_t n,
                            const OrbitOptions& opt = {}) {
    if (!(lo > 0.0)) throw precondition_error("basin_scan requires lo > 0");
    BasinScan scan;
    for (double x0 : log_spaced(lo, hi, n)) scan.cells.push_back({x0, iterate_orbit(p, x0, opt)});
    for (std::size_t i = 0; i + 1 < scan.cells.size(); ++i) {
        if (!same_attractor(scan.cells[i].orbit.fate, scan.cells[i + 1].orbit.fate)) {
            scan.boundaries.push_back(i);
        }
    }
    return scan;
}

}  // namespace ratmap
