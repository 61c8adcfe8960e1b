#pragma once

// Embedded reference examples with published four-decimal values.

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ratmap/dynamics.hpp"
#include "ratmap/structures.hpp"

namespace ratmap::golden {

inline constexpr double tolerance = 5e-4;

struct Case {
    std::string group;
    std::string id;
    Params params;
    std::vector<std::pair<double, double>> cycles;  ///< exact count, coordinates within tolerance
    std::optional<Regime> regime;
    std::optional<bool> hypothesis_h;
    std::optional<std::size_t> n_equilibria;
};

inline const std::vector<Case>& cases() {
    static const std::vector<Case> all{
        {"decreasing", "i", {1, 1, 1, 1}, {}, Regime::T4a, std::nullopt, 1},
        {"decreasing", "ii", {0.1, 2, 1, 0.1}, {{0.1118, 169.4132}}, Regime::T4b, std::nullopt, 1},
        {"decreasing",
         "iii",
         {0.21, 2.1, -2.8, 1.3},
         {{0.2593, 41.2206}, {0.3525, 13.3090}},
         Regime::T4c,
         std::nullopt,
         1},
        {"decreasing",
         "iv",
         {0.18, 2.1, -2.8, 1.3},
         {{0.2001, 102.9321}, {0.4058, 7.8071}, {0.7646, 1.0453}},
         Regime::T4d,
         std::nullopt,
         1},
        {"above-xm", "i", {1, 5, -4, 1}, {}, Regime::T5b, std::nullopt, 1},
        {"above-xm",
         "ii",
         {0.1, 5, -4, 1},
         {{0.1111, 450.5876}, {0.2019, 48.2751}},
         Regime::T5c,
         std::nullopt,
         1},
        {"above-xm", "iii", {0.15, 4, -4, 1.1}, {}, Regime::T5b, std::nullopt, 1},
        {"above-xm",
         "iv",
         {0.1, 4, -4, 1.1},
         {{0.1068, 590.5885}, {0.2378, 28.0116}},
         Regime::T5c,
         std::nullopt,
         1},
        {"below-xm", "i", {0.7, 2.2, -3, 1}, {}, Regime::T6b, true, 1},
        {"below-xm", "ii", {1, 1, -3.3, 3}, {{1.1687, 1.3190}}, Regime::T6c, true, 1},
        {"two-equilibria", "i", {1, 2.4, -3.8, 1.4}, {}, Regime::T7a1, std::nullopt, 2},
        {"two-equilibria", "ii", {1, 2, -3, 1}, {}, Regime::T7a21, std::nullopt, 2},
        {"two-equilibria", "iii", {1, 1.9, -2.8, 0.9}, {{0.5573, 0.5937}}, Regime::T7a22,
         std::nullopt, 2},
        {"two-equilibria", "iv", {2, 0.5, -3, 1.5}, {}, Regime::T7b, std::nullopt, 2},
    };
    return all;
}

struct Result {
    const Case* golden = nullptr;
    bool pass = false;
    std::vector<TwoCycle> cycles;
    std::string regime;
    std::optional<bool> hypothesis_h;
    std::size_t n_equilibria = 0;
    std::vector<std::string> failures;
};

/// Source of the 2-cycle polynomial; replaceable so a broken G is caught.
using GSource = std::function<poly::Poly(const Params&)>;

inline Result run_case(const Case& gc, const GSource& g = g_poly) {
    Result r;
    r.golden = &gc;
    auto fail = [&](std::string msg) { r.failures.push_back(std::move(msg)); };
    try {
        r.cycles = two_cycles(gc.params, g(gc.params));
        if (r.cycles.size() != gc.cycles.size()) {
            fail("cycle count " + std::to_string(r.cycles.size()) + " != " +
                 std::to_string(gc.cycles.size()));
        } else {
            for (std::size_t i = 0; i < r.cycles.size(); ++i) {
                // Published cycles are listed outermost first, as two_cycles sorts them.
                const auto& [p, q] = gc.cycles[i];
                if (std::abs(r.cycles[i].p - p) > tolerance || std::abs(r.cycles[i].q - q) > tolerance) {
                    fail("cycle " + std::to_string(i + 1) + " off by more than 5e-4");
                }
            }
        }
        const RegimeAnalysis ra = classify(gc.params);
        r.regime = to_string(ra.regime);
        r.n_equilibria = ra.equilibria.size();
        if (ra.interval) r.hypothesis_h = ra.interval->hypothesis_h;
        if (gc.regime && ra.regime != *gc.regime) {
            fail(std::string("regime ") + r.regime + " != " + to_string(*gc.regime));
        }
        if (gc.n_equilibria && r.n_equilibria != *gc.n_equilibria) {
            fail("equilibrium count " + std::to_string(r.n_equilibria) + " != " +
                 std::to_string(*gc.n_equilibria));
        }
        if (gc.hypothesis_h && r.hypothesis_h != gc.hypothesis_h) fail("hypothesis (H) mismatch");
    } catch (const std::exception& e) {
        fail(std::string("exception: ") + e.what());
    }
    r.pass = r.failures.empty();
    return r;
}

inline std::vector<Result> run_all(const GSource& g = g_poly) {
    std::vector<Result> out;
    for (const auto& gc : cases()) out.push_back(run_case(gc, g));
    return out;
}

}  // namespace ratmap::golden
