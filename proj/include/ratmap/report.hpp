#pragma once

// Per-parameter analysis records, their JSON form, and c-sweeps.

#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ratmap/dynamics.hpp"
#include "ratmap/model.hpp"
#include "ratmap/structures.hpp"
#include "ratmap/thresholds.hpp"

namespace ratmap {

inline constexpr const char* invalid_label = "invalid";

struct AnalysisReport {
    Params params;
    Thresholds thresholds;
    std::string regime = invalid_label;
    std::optional<Extrema> extrema;
    std::vector<Equilibrium> equilibria;
    std::vector<TwoCycle> cycles;
    std::optional<InvariantInterval> invariant_interval;
    std::optional<double> delta;
    std::optional<double> delta_prime;
    std::optional<bool> preimage_set_trivial;
    std::vector<std::string> notes;

    bool valid() const { return regime != invalid_label; }
};

inline AnalysisReport make_report(const RegimeAnalysis& r) {
    AnalysisReport rep;
    rep.params = r.params;
    rep.thresholds = r.thresholds;
    rep.notes = r.notes;
    if (!r.valid) return rep;
    rep.regime = to_string(r.regime);
    rep.extrema = r.extrema;
    rep.equilibria = r.equilibria;
    rep.cycles = r.cycles;
    rep.invariant_interval = r.interval;
    rep.delta = r.delta;
    rep.delta_prime = r.delta_prime;
    if (r.preimage_test) rep.preimage_set_trivial = r.preimage_test->trivial;
    if (r.thresholds.fold_near_degenerate) rep.notes.push_back("fold below numeric resolution");
    return rep;
}

/// Requires a, b, d > 0. c <= c_minus yields regime "invalid" with
/// thresholds only.
inline AnalysisReport analyze(const Params& p) { return make_report(classify(p)); }

// ---------------------------------------------------------------------------
// JSON

namespace detail {

template <class T>
nlohmann::json opt_json(const std::optional<T>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

template <class T>
void opt_from(const nlohmann::json& j, const char* key, std::optional<T>& out) {
    if (j.contains(key) && !j.at(key).is_null()) {
        out = j.at(key).get<T>();
    } else {
        out.reset();
    }
}

inline Stability stability_from_string(const std::string& s) {
    for (Stability st : {Stability::attracting, Stability::repelling, Stability::neutral,
                         Stability::semistable}) {
        if (s == to_string(st)) return st;
    }
    throw precondition_error("unknown stability label: " + s);
}

}  // namespace detail

inline void to_json(nlohmann::json& j, const Params& p) {
    j = {{"a", p.a}, {"b", p.b}, {"c", p.c}, {"d", p.d}};
}
inline void from_json(const nlohmann::json& j, Params& p) {
    p = Params{j.at("a").get<double>(), j.at("b").get<double>(), j.at("c").get<double>(),
               j.at("d").get<double>()};
}

inline void to_json(nlohmann::json& j, const Fold& f) {
    j = {{"c_m", f.c_m}, {"c_M", f.c_M}, {"t_m", f.t_m}, {"t_M", f.t_M}};
}
inline void from_json(const nlohmann::json& j, Fold& f) {
    f = Fold{j.at("c_m").get<double>(), j.at("c_M").get<double>(), j.at("t_m").get<double>(),
             j.at("t_M").get<double>()};
}

inline void to_json(nlohmann::json& j, const Thresholds& t) {
    j = {{"c_minus", t.c_minus},
         {"c_star", t.c_star},
         {"c1_star", t.c1_star},
         {"c_b", t.c_b},
         {"t_star", t.t_star},
         {"fold", detail::opt_json(t.fold)},
         {"fold_near_degenerate", t.fold_near_degenerate}};
}
inline void from_json(const nlohmann::json& j, Thresholds& t) {
    j.at("c_minus").get_to(t.c_minus);
    j.at("c_star").get_to(t.c_star);
    j.at("c1_star").get_to(t.c1_star);
    j.at("c_b").get_to(t.c_b);
    j.at("t_star").get_to(t.t_star);
    detail::opt_from(j, "fold", t.fold);
    j.at("fold_near_degenerate").get_to(t.fold_near_degenerate);
}

inline void to_json(nlohmann::json& j, const Extrema& e) { j = {{"x_m", e.x_m}, {"x_M", e.x_M}}; }
inline void from_json(const nlohmann::json& j, Extrema& e) {
    e = Extrema{j.at("x_m").get<double>(), j.at("x_M").get<double>()};
}

inline void to_json(nlohmann::json& j, const Equilibrium& e) {
    j = {{"value", e.value},
         {"multiplier", e.multiplier},
         {"tangent", e.tangent},
         {"stability", to_string(e.stability)}};
}
inline void from_json(const nlohmann::json& j, Equilibrium& e) {
    j.at("value").get_to(e.value);
    j.at("multiplier").get_to(e.multiplier);
    j.at("tangent").get_to(e.tangent);
    e.stability = detail::stability_from_string(j.at("stability").get<std::string>());
}

inline void to_json(nlohmann::json& j, const TwoCycle& c) {
    j = {{"p", c.p}, {"q", c.q}, {"multiplier", c.multiplier}, {"tangent", c.tangent}};
}
inline void from_json(const nlohmann::json& j, TwoCycle& c) {
    j.at("p").get_to(c.p);
    j.at("q").get_to(c.q);
    j.at("multiplier").get_to(c.multiplier);
    j.at("tangent").get_to(c.tangent);
}

inline void to_json(nlohmann::json& j, const InvariantInterval& i) {
    j = {{"lo", i.lo},
         {"hi", i.hi},
         {"hypothesis_h", i.hypothesis_h},
         {"grid_checked", i.grid_checked},
         {"grid_max_escape", i.grid_max_escape}};
}
inline void from_json(const nlohmann::json& j, InvariantInterval& i) {
    j.at("lo").get_to(i.lo);
    j.at("hi").get_to(i.hi);
    j.at("hypothesis_h").get_to(i.hypothesis_h);
    j.at("grid_checked").get_to(i.grid_checked);
    j.at("grid_max_escape").get_to(i.grid_max_escape);
}

inline void to_json(nlohmann::json& j, const AnalysisReport& r) {
    j = {{"params", r.params},
         {"thresholds", r.thresholds},
         {"regime", r.regime},
         {"extrema", detail::opt_json(r.extrema)},
         {"equilibria", r.equilibria},
         {"cycles", r.cycles},
         {"invariant_interval", detail::opt_json(r.invariant_interval)},
         {"delta", detail::opt_json(r.delta)},
         {"delta_prime", detail::opt_json(r.delta_prime)},
         {"preimage_set_trivial", detail::opt_json(r.preimage_set_trivial)},
         {"notes", r.notes}};
}
inline void from_json(const nlohmann::json& j, AnalysisReport& r) {
    j.at("params").get_to(r.params);
    j.at("thresholds").get_to(r.thresholds);
    j.at("regime").get_to(r.regime);
    detail::opt_from(j, "extrema", r.extrema);
    j.at("equilibria").get_to(r.equilibria);
    j.at("cycles").get_to(r.cycles);
    detail::opt_from(j, "invariant_interval", r.invariant_interval);
    detail::opt_from(j, "delta", r.delta);
    detail::opt_from(j, "delta_prime", r.delta_prime);
    detail::opt_from(j, "preimage_set_trivial", r.preimage_set_trivial);
    j.at("notes").get_to(r.notes);
}

namespace fate {

// Found by argument-dependent lookup through the variant's alternatives.
inline void to_json(nlohmann::json& j, const Fate& f) {
    j = {{"kind", fate_kind(f)}};
    if (const auto* fp = std::get_if<fate::FixedPoint>(&f)) j["value"] = fp->value;
    if (const auto* c = std::get_if<fate::Cycle>(&f)) {
        j["p"] = c->p;
        j["q"] = c->q;
    }
    if (const auto* n = std::get_if<fate::NonpositiveIterate>(&f)) {
        j["step"] = n->step;
        j["value"] = n->value;
    }
    if (const auto* u = std::get_if<fate::Undecided>(&f)) j["reason"] = u->reason;
}

}  // namespace fate

inline void to_json(nlohmann::json& j, const OrbitResult& o) {
    j = {{"fate", o.fate},
         {"iterations", o.iterations},
         {"final_points", o.final_points},
         {"trace", o.trace}};
}

/// Numbers are written with 17 significant digits.
inline std::string to_json_string(const AnalysisReport& r, int indent = 2) {
    return nlohmann::json(r).dump(indent);
}

inline AnalysisReport report_from_json(const std::string& text) {
    return nlohmann::json::parse(text).get<AnalysisReport>();
}

// ---------------------------------------------------------------------------
// Text

inline std::string fmt6(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

inline void write_text(std::ostream& os, const AnalysisReport& r) {
    const Params& p = r.params;
    os << "params     a=" << fmt6(p.a) << " b=" << fmt6(p.b) << " c=" << fmt6(p.c)
       << " d=" << fmt6(p.d) << '\n';
    os << "regime     " << r.regime << '\n';
    const Thresholds& t = r.thresholds;
    os << "c_minus    " << fmt6(t.c_minus) << '\n';
    os << "c_star     " << fmt6(t.c_star) << '\n';
    os << "c1_star    " << fmt6(t.c1_star) << '\n';
    os << "c_b        " << fmt6(t.c_b) << '\n';
    if (t.fold) {
        os << "fold       c_m=" << fmt6(t.fold->c_m) << " c_M=" << fmt6(t.fold->c_M) << '\n';
    } else {
        os << "fold       none\n";
    }
    if (r.extrema) {
        os << "extrema    x_m=" << fmt6(r.extrema->x_m) << " x_M=" << fmt6(r.extrema->x_M) << '\n';
    }
    for (const auto& e : r.equilibria) {
        os << "equilibrium " << fmt6(e.value) << " multiplier=" << fmt6(e.multiplier) << ' '
           << to_string(e.stability) << '\n';
    }
    for (const auto& c : r.cycles) {
        os << "2-cycle    (" << fmt6(c.p) << ", " << fmt6(c.q) << ") multiplier=" << fmt6(c.multiplier)
           << (c.tangent ? " tangent" : "") << '\n';
    }
    if (r.invariant_interval) {
        const auto& i = *r.invariant_interval;
        os << "interval   [" << fmt6(i.lo) << ", " << fmt6(i.hi) << "] hypothesis_h="
           << (i.hypothesis_h ? "true" : "false") << '\n';
    }
    if (r.delta) os << "delta      " << fmt6(*r.delta) << '\n';
    if (r.delta_prime) os << "delta'     " << fmt6(*r.delta_prime) << '\n';
    for (const auto& n : r.notes) os << "note       " << n << '\n';
}

// ---------------------------------------------------------------------------
// Sweeps

struct SweepRow {
    double c = 0.0;
    double c_minus = 0.0;
    double c_star = 0.0;
    std::size_t n_equilibria = 0;
    std::size_t n_cycles = 0;
    std::string regime;
};

inline SweepRow sweep_row(const AnalysisReport& r) {
    return SweepRow{r.params.c,          r.thresholds.c_minus, r.thresholds.c_star,
                    r.equilibria.size(), r.cycles.size(),      r.regime};
}

/// One row per c on an evenly spaced grid over [lo, hi]; steps = 1 gives lo.
/// A numeric failure at one grid point is recorded as an Unclassified row.
inline std::vector<SweepRow> sweep(double a, double b, double d, double lo, double hi,
                                   std::size_t steps) {
    require_positive(a, b, d);
    if (!(hi >= lo)) throw precondition_error("sweep requires c-from <= c-to");
    std::vector<SweepRow> rows;
    rows.reserve(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        const double c = steps == 1 ? lo
                                    : lo + (hi - lo) * static_cast<double>(i) /
                                               static_cast<double>(steps - 1);
        const Params p{a, b, i + 1 == steps && steps > 1 ? hi : c, d};
        try {
            rows.push_back(sweep_row(analyze(p)));
        } catch (const numeric_failure&) {
            const Thresholds t = compute_thresholds(p);
            rows.push_back(SweepRow{p.c, t.c_minus, t.c_star, 0, 0, to_string(Regime::Unclassified)});
        }
    }
    return rows;
}

inline const char* sweep_csv_header = "c,c_minus,c_star,n_equilibria,n_cycles,regime";

inline std::string csv_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline void write_csv_row(std::ostream& os, const SweepRow& r) {
    os << csv_number(r.c) << ',' << csv_number(r.c_minus) << ',' << csv_number(r.c_star) << ','
       << r.n_equilibria << ',' << r.n_cycles << ',' << r.regime << '\n';
}

inline void write_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << sweep_csv_header << '\n';
    for (const auto& r : rows) write_csv_row(os, r);
}

inline void to_json(nlohmann::json& j, const SweepRow& r) {
    j = {{"c", r.c},
         {"c_minus", r.c_minus},
         {"c_star", r.c_star},
         {"n_equilibria", r.n_equilibria},
         {"n_cycles", r.n_cycles},
         {"regime", r.regime}};
}

}  // namespace ratmap
