#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "ratmap/report.hpp"

using namespace ratmap;

TEST(Analyze, Examples) {
    const auto r1 = analyze({1, 1, 1, 1});
    EXPECT_EQ(r1.regime, "T4a");
    EXPECT_EQ(r1.equilibria.size(), 1u);
    EXPECT_TRUE(r1.cycles.empty());
    EXPECT_FALSE(r1.extrema);

    const auto r2 = analyze({0.1, 5, -4, 1});
    EXPECT_EQ(r2.regime, "T5c");
    EXPECT_EQ(r2.cycles.size(), 2u);
    ASSERT_TRUE(r2.extrema);

    const auto r3 = analyze({0.7, 2.2, -3, 1});
    EXPECT_EQ(r3.regime, "T6b");
    ASSERT_TRUE(r3.invariant_interval);
    EXPECT_TRUE(r3.invariant_interval->hypothesis_h);
    ASSERT_TRUE(r3.preimage_set_trivial.has_value() || r3.cycles.empty());

    const auto r4 = analyze({2, 0.5, -3, 1.5});
    EXPECT_EQ(r4.regime, "T7b");
    EXPECT_TRUE(r4.delta_prime);
    EXPECT_FALSE(r4.delta);

    EXPECT_THROW(analyze({-1, 1, 1, 1}), precondition_error);
}

TEST(Analyze, InvalidCarriesThresholdsOnly) {
    const auto r = analyze({1, 1, -100, 1});
    EXPECT_EQ(r.regime, invalid_label);
    EXPECT_FALSE(r.valid());
    EXPECT_TRUE(r.equilibria.empty());
    EXPECT_TRUE(r.cycles.empty());
    EXPECT_FALSE(r.extrema);
    EXPECT_NEAR(r.thresholds.c_minus, oracle::c_minus(1, 1, 1), 1e-12);
    ASSERT_EQ(r.notes.size(), 1u);
    EXPECT_NE(r.notes[0].find("c_minus"), std::string::npos);
}

TEST(Analyze, RegimeLabelsMatchThresholds) {
    for (int i = 0; i < 300; ++i) {
        const auto d = oracle::random_valid(0.05, 10, 10.0, 1e-3);
        const auto r = analyze({d.a, d.b, d.c, d.d});
        const bool decreasing = d.c >= r.thresholds.c_star;
        EXPECT_EQ(r.regime.rfind("T4", 0) == 0, decreasing) << r.regime << ' ' << d.c;
        EXPECT_EQ(r.extrema.has_value(), !decreasing);
        if (r.regime.rfind("T6", 0) == 0) {
            EXPECT_LE(d.c, r.thresholds.c1_star);
        }
        if (r.regime.rfind("T7", 0) == 0) {
            EXPECT_EQ(r.equilibria.size(), 2u);
        }
        if (r.regime == "ThreeEquilibria_Unclassified") {
            EXPECT_EQ(r.equilibria.size(), 3u);
        }
        EXPECT_TRUE(regime_from_string(r.regime).has_value()) << r.regime;
    }
}

TEST(Json, RoundTrip) {
    const Params sets[] = {{1, 1, 1, 1},     {0.21, 2.1, -2.8, 1.3}, {0.1, 5, -4, 1},
                           {0.7, 2.2, -3, 1}, {1, 1.9, -2.8, 0.9},   {2, 0.5, -3, 1.5},
                           {1, 1, -100, 1}};
    for (const auto& p : sets) {
        const auto r = analyze(p);
        const std::string text = to_json_string(r);
        const auto back = report_from_json(text);
        EXPECT_EQ(to_json_string(back), text);
        EXPECT_EQ(back.regime, r.regime);
        ASSERT_EQ(back.equilibria.size(), r.equilibria.size());
        for (std::size_t i = 0; i < r.equilibria.size(); ++i) {
            EXPECT_NEAR(back.equilibria[i].value, r.equilibria[i].value,
                        1e-15 * std::abs(r.equilibria[i].value));
            EXPECT_EQ(back.equilibria[i].stability, r.equilibria[i].stability);
        }
        ASSERT_EQ(back.cycles.size(), r.cycles.size());
        for (std::size_t i = 0; i < r.cycles.size(); ++i) {
            EXPECT_NEAR(back.cycles[i].p, r.cycles[i].p, 1e-15 * r.cycles[i].p);
            EXPECT_NEAR(back.cycles[i].q, r.cycles[i].q, 1e-15 * r.cycles[i].q);
        }
        EXPECT_EQ(back.thresholds.c_minus, r.thresholds.c_minus);
        EXPECT_EQ(back.notes, r.notes);
    }
}

TEST(Json, FieldsPresent) {
    const auto j = nlohmann::json::parse(to_json_string(analyze({1, 1, 1, 1})));
    for (const char* k : {"params", "thresholds", "regime", "extrema", "equilibria", "cycles",
                          "invariant_interval", "delta", "delta_prime", "preimage_set_trivial",
                          "notes"}) {
        EXPECT_TRUE(j.contains(k)) << k;
    }
    EXPECT_TRUE(j["extrema"].is_null());
    EXPECT_EQ(j["params"]["c"], 1.0);
    EXPECT_EQ(j["equilibria"][0]["stability"], "attracting");
}

TEST(Json, OrbitResult) {
    const auto o = iterate_orbit({0.1, 2, 1, 0.1}, 1.0);
    const nlohmann::json j = o;
    EXPECT_EQ(j["fate"]["kind"], "TwoCycle");
    EXPECT_NEAR(j["fate"]["p"].get<double>(), 0.1118, 5e-4);
    EXPECT_EQ(j["iterations"], o.iterations);
    const nlohmann::json u = Fate{fate::Undecided{"x"}};
    EXPECT_EQ(u["reason"], "x");
}

TEST(Text, ContainsRegimeAndEquilibria) {
    std::ostringstream os;
    write_text(os, analyze({0.21, 2.1, -2.8, 1.3}));
    const std::string s = os.str();
    EXPECT_NE(s.find("regime     T4c"), std::string::npos);
    EXPECT_NE(s.find("equilibrium"), std::string::npos);
    EXPECT_NE(s.find("2-cycle"), std::string::npos);
}

TEST(Sweep, FoldCountSequence) {
    const auto f = fold_cs(1, 2, 1);
    ASSERT_TRUE(f.fold);
    const double L = f.fold->c_M - f.fold->c_m;
    ASSERT_GT(f.fold->c_m - L / 2, c_minus(1, 2, 1));
    const auto rows = sweep(1, 2, 1, f.fold->c_m - L / 2, f.fold->c_M + L / 2, 5);
    ASSERT_EQ(rows.size(), 5u);
    const std::size_t expected[] = {1, 2, 3, 2, 1};
    for (std::size_t i = 0; i < 5; ++i) {
        EXPECT_EQ(rows[i].n_equilibria, expected[i]) << "row " << i << " c=" << rows[i].c;
    }
    EXPECT_EQ(rows[2].regime, "ThreeEquilibria_Unclassified");
    EXPECT_EQ(rows.back().c, f.fold->c_M + L / 2);
}

TEST(Sweep, DecreasingRangeHasOneEquilibrium) {
    const auto rows = sweep(1, 3, 1, -3, 5, 41);
    ASSERT_EQ(rows.size(), 41u);
    for (const auto& r : rows) {
        EXPECT_EQ(r.n_equilibria, 1u);
        EXPECT_EQ(r.regime.substr(0, 2), "T4");
        EXPECT_EQ(r.c_star, -3.0);
    }
    EXPECT_EQ(rows.front().c, -3.0);
    EXPECT_EQ(rows.back().c, 5.0);
}

TEST(Sweep, SingleStepMatchesAnalyze) {
    const auto rows = sweep(0.1, 5, 1, -4, 7, 1);
    ASSERT_EQ(rows.size(), 1u);
    const auto r = analyze({0.1, 5, -4, 1});
    EXPECT_EQ(rows[0].c, -4.0);
    EXPECT_EQ(rows[0].regime, r.regime);
    EXPECT_EQ(rows[0].n_cycles, r.cycles.size());
    EXPECT_EQ(rows[0].n_equilibria, r.equilibria.size());
    EXPECT_EQ(rows[0].c_minus, r.thresholds.c_minus);
    EXPECT_TRUE(sweep(1, 1, 1, 0, 1, 0).empty());
    EXPECT_THROW(sweep(1, 1, 1, 1, 0, 3), precondition_error);
    EXPECT_THROW(sweep(0, 1, 1, 0, 1, 3), precondition_error);
}

TEST(Sweep, InvalidRowsAreLabelled) {
    const double cm = c_minus(1, 1, 1);
    const auto rows = sweep(1, 1, 1, cm - 1, cm + 1, 3);
    EXPECT_EQ(rows[0].regime, invalid_label);
    EXPECT_EQ(rows[0].n_equilibria, 0u);
    EXPECT_NE(rows[2].regime, invalid_label);
}

TEST(Csv, ConstantColumnCount) {
    std::ostringstream os;
    write_csv(os, sweep(0.2, 3, 0.2, -3, 1, 60));
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    EXPECT_EQ(line, sweep_csv_header);
    std::size_t n = 0;
    std::set<std::size_t> widths;
    while (std::getline(is, line)) {
        ++n;
        widths.insert(static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')));
    }
    EXPECT_EQ(n, 60u);
    EXPECT_EQ(widths, std::set<std::size_t>{5});
}

TEST(Csv, NumbersRoundTrip) {
    for (double x : {0.1, -3.0, 1.0 / 3.0, 169.41315561, 1e-300}) {
        EXPECT_EQ(std::stod(csv_number(x)), x);
    }
}
