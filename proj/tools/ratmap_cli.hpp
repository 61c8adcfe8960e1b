#pragma once

// Command-line front end: analyze, orbit, sweep, verify.
// Exit codes: 0 success, 1 usage error, 2 numeric failure or failed verification.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ratmap/ratmap.hpp"

namespace ratmap::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_numeric = 2;

inline constexpr const char* max_iter_env = "RATMAP_MAX_ITER";

/// Default iteration budget, overridden by RATMAP_MAX_ITER when set.
inline std::size_t default_budget() {
    const char* env = std::getenv(max_iter_env);
    if (env == nullptr || *env == '\0') return default_max_iter;
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (*end != '\0' || v <= 0) {
        throw precondition_error(std::string(max_iter_env) + " must be a positive integer");
    }
    return static_cast<std::size_t>(v);
}

struct CliConfig {
    std::string command;
    Params params;
    std::string format;
    std::string out_path;
    // orbit
    double x0 = 0.0;
    std::optional<std::size_t> max_iter;
    double tol = default_tol_conv;
    std::string trace_path;
    std::size_t trace_limit = 100000;
    // sweep
    double c_from = 0.0;
    double c_to = 0.0;
    std::size_t steps = 101;
};

namespace detail {

inline void add_params(CLI::App* sub, CliConfig& cfg, bool with_c) {
    sub->add_option("--a", cfg.params.a, "coefficient a (> 0)")->required();
    sub->add_option("--b", cfg.params.b, "coefficient b (> 0)")->required();
    if (with_c) sub->add_option("--c", cfg.params.c, "coefficient c")->required();
    sub->add_option("--d", cfg.params.d, "coefficient d (> 0)")->required();
}

inline void add_format(CLI::App* sub, CliConfig& cfg, std::vector<std::string> choices,
                       std::string fallback) {
    cfg.format = fallback;
    sub->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember(choices))
        ->capture_default_str();
}

inline void render_orbit(std::ostream& os, const CliConfig& cfg, const OrbitResult& r) {
    if (cfg.format == "json") {
        nlohmann::json j{{"params", cfg.params},
                         {"x0", cfg.x0},
                         {"max_iter", *cfg.max_iter},
                         {"tol", cfg.tol},
                         {"result", r}};
        j["result"].erase("trace");
        os << j.dump(2) << '\n';
    } else if (cfg.format == "csv") {
        std::string value, p, q, step;
        if (const auto* f = std::get_if<fate::FixedPoint>(&r.fate)) value = csv_number(f->value);
        if (const auto* c = std::get_if<fate::Cycle>(&r.fate)) {
            p = csv_number(c->p);
            q = csv_number(c->q);
        }
        if (const auto* n = std::get_if<fate::NonpositiveIterate>(&r.fate)) {
            step = std::to_string(n->step);
            value = csv_number(n->value);
        }
        os << "fate,value,p,q,step,iterations\n"
           << fate_kind(r.fate) << ',' << value << ',' << p << ',' << q << ',' << step << ','
           << r.iterations << '\n';
    } else {
        os << describe(r.fate, 10) << " after " << r.iterations << " iterations\n";
    }
}

inline void render_verify(std::ostream& os, const std::string& format,
                          const std::vector<golden::Result>& results) {
    std::size_t passed = 0;
    for (const auto& r : results) passed += r.pass ? 1 : 0;
    if (format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : results) {
            nlohmann::json expected = nlohmann::json::array();
            for (const auto& [p, q] : r.golden->cycles) expected.push_back({p, q});
            nlohmann::json computed = nlohmann::json::array();
            for (const auto& c : r.cycles) computed.push_back({c.p, c.q});
            arr.push_back({{"id", r.golden->group + "-" + r.golden->id},
                           {"params", r.golden->params},
                           {"pass", r.pass},
                           {"expected_cycles", expected},
                           {"computed_cycles", computed},
                           {"regime", r.regime},
                           {"n_equilibria", r.n_equilibria},
                           {"failures", r.failures}});
        }
        nlohmann::json j{{"results", arr},
                         {"passed", passed},
                         {"total", results.size()},
                         {"tolerance", golden::tolerance}};
        os << j.dump(2) << '\n';
        return;
    }
    for (const auto& r : results) {
        os << (r.pass ? "PASS " : "FAIL ") << r.golden->group << '-' << r.golden->id << "  cycles:";
        for (const auto& c : r.cycles) os << " (" << fmt6(c.p) << ", " << fmt6(c.q) << ')';
        if (r.cycles.empty()) os << " none";
        os << "  regime: " << r.regime;
        for (const auto& f : r.failures) os << "  [" << f << ']';
        os << '\n';
    }
    os << passed << '/' << results.size() << " passed\n";
}

}  // namespace detail

/// Runs one invocation. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
               const golden::GSource& g_source = g_poly) {
    CliConfig cfg;
    CLI::App app{"Analysis of the rational map (a x^3 + b x^2 + c x + d) / x^3", "ratmap"};
    app.require_subcommand(1);

    auto* analyze_cmd = app.add_subcommand("analyze", "thresholds, structures and regime");
    detail::add_params(analyze_cmd, cfg, true);
    detail::add_format(analyze_cmd, cfg, {"json", "csv", "text"}, "text");
    analyze_cmd->add_option("--out", cfg.out_path, "write output to this file");

    auto* orbit_cmd = app.add_subcommand("orbit", "simulate one orbit");
    detail::add_params(orbit_cmd, cfg, true);
    orbit_cmd->add_option("--x0", cfg.x0, "initial value (> 0)")->required();
    orbit_cmd->add_option("--max-iter", cfg.max_iter, "iteration budget");
    orbit_cmd->add_option("--tol", cfg.tol, "convergence tolerance")->capture_default_str();
    orbit_cmd->add_option("--trace", cfg.trace_path, "write iterates as CSV (n,x_n) to this file");
    orbit_cmd->add_option("--trace-limit", cfg.trace_limit, "maximum iterates kept in the trace")
        ->capture_default_str();
    detail::add_format(orbit_cmd, cfg, {"json", "csv", "text"}, "text");
    orbit_cmd->add_option("--out", cfg.out_path, "write output to this file");

    auto* sweep_cmd = app.add_subcommand("sweep", "table of structures over a range of c");
    detail::add_params(sweep_cmd, cfg, false);
    sweep_cmd->add_option("--c-from", cfg.c_from, "first c")->required();
    sweep_cmd->add_option("--c-to", cfg.c_to, "last c")->required();
    sweep_cmd->add_option("--steps", cfg.steps, "number of grid points")->capture_default_str();
    detail::add_format(sweep_cmd, cfg, {"json", "csv"}, "csv");
    sweep_cmd->add_option("--out", cfg.out_path, "write output to this file");

    auto* verify_cmd = app.add_subcommand("verify", "run the embedded reference examples");
    detail::add_format(verify_cmd, cfg, {"json", "text"}, "text");
    verify_cmd->add_option("--out", cfg.out_path, "write output to this file");

    std::vector<const char*> argv{"ratmap"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    cfg.command = app.get_subcommands().front()->get_name();

    try {
        if (cfg.command != "verify") require_positive(cfg.params.a, cfg.params.b, cfg.params.d);
        if (cfg.command == "orbit") {
            if (!(cfg.x0 > 0.0)) throw precondition_error("--x0 must be positive");
            if (!(cfg.tol > 0.0)) throw precondition_error("--tol must be positive");
            if (!cfg.max_iter) cfg.max_iter = default_budget();
            if (*cfg.max_iter == 0) throw precondition_error("--max-iter must be positive");
        }
        if (cfg.command == "sweep") {
            if (cfg.steps == 0) throw precondition_error("--steps must be positive");
            if (!(cfg.c_to >= cfg.c_from)) throw precondition_error("--c-to must be >= --c-from");
        }

        std::unique_ptr<std::ofstream> file;
        if (!cfg.out_path.empty()) {
            file = std::make_unique<std::ofstream>(cfg.out_path);
            if (!*file) throw precondition_error("cannot open " + cfg.out_path);
        }
        std::ostream& os = file ? *file : out;

        if (cfg.command == "analyze") {
            const AnalysisReport rep = analyze(cfg.params);
            if (cfg.format == "json") {
                os << to_json_string(rep) << '\n';
            } else if (cfg.format == "csv") {
                write_csv(os, {sweep_row(rep)});
            } else {
                write_text(os, rep);
            }
        } else if (cfg.command == "orbit") {
            OrbitOptions opt;
            opt.max_iter = *cfg.max_iter;
            opt.tol_conv = cfg.tol;
            opt.trace_limit = cfg.trace_path.empty() ? 0 : cfg.trace_limit;
            const OrbitResult r = iterate_orbit(cfg.params, cfg.x0, opt);
            if (!cfg.trace_path.empty()) {
                std::ofstream tf(cfg.trace_path);
                if (!tf) throw precondition_error("cannot open " + cfg.trace_path);
                tf << "n,x_n\n";
                for (std::size_t i = 0; i < r.trace.size(); ++i) {
                    tf << i << ',' << csv_number(r.trace[i]) << '\n';
                }
            }
            detail::render_orbit(os, cfg, r);
        } else if (cfg.command == "sweep") {
            const auto rows = sweep(cfg.params.a, cfg.params.b, cfg.params.d, cfg.c_from, cfg.c_to,
                                    cfg.steps);
            if (cfg.format == "json") {
                os << nlohmann::json{{"rows", rows}}.dump(2) << '\n';
            } else {
                write_csv(os, rows);
            }
        } else {
            const auto results = golden::run_all(g_source);
            detail::render_verify(os, cfg.format, results);
            for (const auto& r : results) {
                if (!r.pass) return exit_numeric;
            }
        }
    } catch (const precondition_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const numeric_failure& e) {
        err << "numeric failure: " << e.what() << '\n';
        return exit_numeric;
    }
    return exit_ok;
}

}  // namespace ratmap::cli
