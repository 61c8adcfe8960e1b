#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "ratmap/structures.hpp"
#include "ratmap/thresholds.hpp"

using namespace ratmap;

namespace {

double h_direct(double a, double b, double x) {
    return 108 * x * x + (108 * a * b + 27 * a * a * a) * x - 9 * a * a * b * b - 32 * b * b * b;
}

double p_direct(double a, double b, double c, double d, double t) {
    return (((t - a) * t - b) * t - c) * t - d;
}

double dp_direct(double a, double b, double c, double t) {
    return ((4 * t - 3 * a) * t - 2 * b) * t - c;
}

}  // namespace

TEST(QPoly, Examples) {
    EXPECT_EQ(q_poly(1, 1, 1), (poly::Poly{31, -18, -1, 4}));
    EXPECT_EQ(q_poly(1, 2, 1), (poly::Poly{59, -36, -4, 4}));
    for (int i = 0; i < 100; ++i) {
        const double a = oracle::uniform(0.05, 10), b = oracle::uniform(0.05, 10),
                     d = oracle::uniform(0.05, 10);
        EXPECT_GT(q_poly(a, b, d)[0], 0.0);
        const double x = oracle::uniform(-5, 5);
        EXPECT_NEAR(poly::eval(q_poly(a, b, d), x), oracle::q_cubic(a, b, d, x),
                    1e-12 * std::abs(oracle::q_cubic(a, b, d, x)) + 1e-9);
    }
    EXPECT_THROW(q_poly(0, 1, 1), precondition_error);
}

TEST(CMinus, Examples) {
    const double cm = c_minus(1, 1, 1);
    EXPECT_GT(cm, -3.0);
    EXPECT_LT(cm, -2.0);
    EXPECT_NEAR(cm, oracle::c_minus(1, 1, 1), 1e-12);
    EXPECT_LE(std::abs(oracle::q_cubic(1, 1, 1, cm)), 1e-9);

    EXPECT_LT(c_minus(0.1, 2, 0.1), -0.894);
    EXPECT_GT(oracle::q_cubic(0.1, 2, 0.1, -0.894), 0.0);
}

TEST(CStar, Examples) {
    EXPECT_DOUBLE_EQ(c_star(1, 3), -3.0);
    EXPECT_DOUBLE_EQ(c_star(3, 1), -3.0);
    EXPECT_NEAR(c_star(5, 1), -3.8730, 1e-4);
    EXPECT_LT(-4.0, c_star(5, 1));
}

TEST(C1Star, Examples) {
    EXPECT_DOUBLE_EQ(c1_star(1, 1), -2.0);
    EXPECT_NEAR(c1_star(5, 1), -4.4721, 1e-4);
    EXPECT_GT(-4.0, c1_star(5, 1));
    EXPECT_NEAR(c1_star(4, 1.1), -4.1952, 1e-4);
    // c = -4 lies above c1_star for (b, d) = (4, 1.1).
    EXPECT_GT(-4.0, c1_star(4, 1.1));
}

TEST(HPoly, ExamplesAndCb) {
    EXPECT_EQ(h_poly(1, 5), (poly::Poly{-4225, 567, 108}));
    const double cb = c_b(1, 5);
    EXPECT_NEAR(cb, -9.408, 1e-3);
    const double oracle_cb = oracle::bisect([](double x) { return h_direct(1, 5, x); }, -20, 0);
    EXPECT_NEAR(cb, oracle_cb, 1e-12 * std::abs(oracle_cb));
    const auto rs = poly::isolate_real_roots(h_poly(1, 5), -100, 0);
    ASSERT_EQ(rs.size(), 1u);
    EXPECT_NEAR(rs[0].value, cb, 1e-10);
    EXPECT_LE(std::abs(h_direct(1, 5, cb)), 1e-9 * 4225);
}

TEST(HPoly, NegativeAtMinusAbOverSix) {
    for (int i = 0; i < 1000; ++i) {
        const double a = oracle::uniform(0.05, 10), b = oracle::uniform(0.05, 10);
        EXPECT_LT(h_direct(a, b, -a * b / 6), 0.0);
        EXPECT_LT(c_b(a, b), -a * b / 6);
    }
}

TEST(TStar, Examples) {
    EXPECT_NEAR(t_star(1, 5), 1.196, 1e-3);
    for (int i = 0; i < 1000; ++i) {
        const double a = oracle::uniform(0.05, 10), b = oracle::uniform(0.05, 10);
        const double ts = t_star(a, b);
        const double cb = c_b(a, b);
        EXPECT_GT(ts, 0.0);
        // P'(t*) = P''(t*) = 0 at c = c_b.
        const double scale = 4 * ts * ts * ts + 3 * a * ts * ts + 2 * b * ts + std::abs(cb);
        EXPECT_LE(std::abs(dp_direct(a, b, cb, ts)), 1e-8 * scale);
        EXPECT_LE(std::abs((12 * ts - 6 * a) * ts - 2 * b), 1e-8 * (12 * ts * ts + 6 * a * ts + 2 * b));
    }
}

TEST(XStar, Examples) {
    const double cm = oracle::c_minus(1, 1, 1);
    const auto xs = x_star({1, 1, cm, 1});
    ASSERT_TRUE(xs);
    const double x = *xs;
    EXPECT_NEAR(((x + 1) * x + cm) * x + 1, 0.0, 1e-7);
    EXPECT_NEAR((3 * x + 2) * x + cm, 0.0, 1e-7);
    EXPECT_DOUBLE_EQ(*x_star({1, 1, -1, 1}), 1.25);
    EXPECT_THROW(x_star({1, 1, 1, 1}), precondition_error);
    for (int i = 0; i < 200; ++i) {
        const Params p{oracle::uniform(0.05, 10), oracle::uniform(0.05, 10), oracle::uniform(-20, -1e-3),
                       oracle::uniform(0.05, 10)};
        EXPECT_GT(*x_star(p), 0.0);
    }
}

TEST(FoldCs, PresentForTwoEquilibriaFamily) {
    const auto f = fold_cs(1, 2, 1);
    ASSERT_TRUE(f.fold);
    EXPECT_LE(f.fold->c_m, -3.0 + 1e-9);
    EXPECT_GE(f.fold->c_M, -3.0 - 1e-9);
    const auto tang = oracle::tangency_grid_search(1, 2, 1, 10.0, 20000);
    ASSERT_EQ(tang.size(), 2u);
    // c(t) has a local max at t_M (giving c_M) and a local min at t_m (c_m).
    EXPECT_NEAR(f.fold->t_M, tang[0].first, 1e-6);
    EXPECT_NEAR(f.fold->c_M, tang[0].second, 1e-9);
    EXPECT_NEAR(f.fold->t_m, tang[1].first, 1e-6);
    EXPECT_NEAR(f.fold->c_m, tang[1].second, 1e-9);
    const double tm = f.fold->t_m, cm = f.fold->c_m;
    EXPECT_LE(std::abs(p_direct(1, 2, cm, 1, tm)), 1e-8);
    EXPECT_LE(std::abs(dp_direct(1, 2, cm, tm)), 1e-8);
}

TEST(FoldCs, PresenceFollowsCbCondition) {
    EXPECT_FALSE(fold_cs(1, 1, 1).fold);
    EXPECT_FALSE(c_b(1, 1) < (1.0 - 12.0) / 3.0);
    EXPECT_FALSE(fold_cs(1, 1, 1).near_degenerate);
}

TEST(FoldCs, AgreesWithTangencySearch) {
    int present = 0;
    for (int i = 0; i < 300; ++i) {
        const double a = oracle::uniform(0.05, 10), b = oracle::uniform(0.05, 10),
                     d = oracle::uniform(0.05, 10);
        const auto f = fold_cs(a, b, d);
        if (f.near_degenerate) continue;
        const auto tang = oracle::tangency_grid_search(a, b, d, 50.0, 50000);
        if (!f.fold) {
            EXPECT_TRUE(tang.empty()) << a << ' ' << b << ' ' << d;
            continue;
        }
        ++present;
        ASSERT_EQ(tang.size(), 2u) << a << ' ' << b << ' ' << d;
        const double scale = std::max(1.0, std::abs(f.fold->c_m));
        EXPECT_NEAR(f.fold->c_M, tang[0].second, 1e-7 * scale);
        EXPECT_NEAR(f.fold->c_m, tang[1].second, 1e-7 * scale);
    }
    EXPECT_GT(present, 0);
}

TEST(ThresholdProperty, OrderingsOnRandomDraws) {
    for (int i = 0; i < 1000; ++i) {
        const double a = oracle::uniform(0.05, 10), b = oracle::uniform(0.05, 10),
                     d = oracle::uniform(0.05, 10);
        const Thresholds t = compute_thresholds(a, b, d);
        EXPECT_GT(oracle::q_cubic(a, b, d, t.c_star), 0.0);
        EXPECT_GT(oracle::q_cubic(a, b, d, t.c1_star), 0.0);
        EXPECT_LT(t.c_minus, t.c1_star);
        EXPECT_LT(t.c_minus, t.c_star);
        EXPECT_LT(t.c1_star, t.c_star);
        EXPECT_EQ(t.c_star, -std::sqrt(3 * b * d));
        if (t.fold) {
            EXPECT_LT(t.c_b, t.fold->c_m);
            EXPECT_LT(t.fold->c_m, t.fold->c_M);
            EXPECT_LT(t.fold->c_M, t.c_star);
            EXPECT_LT(t.c_minus, t.fold->c_M);
            EXPECT_GT(t.fold->t_M, 0.0);
            EXPECT_LT(t.fold->t_M, t.fold->t_m);
        }
    }
}

TEST(ThresholdProperty, EquilibriumCountAcrossFold) {
    int checked = 0;
    for (int i = 0; i < 1000; ++i) {
        const double a = oracle::uniform(0.05, 10), b = oracle::uniform(0.05, 10),
                     d = oracle::uniform(0.05, 10);
        const Thresholds t = compute_thresholds(a, b, d);
        if (!t.fold) continue;
        const double cm = t.fold->c_m, cM = t.fold->c_M;
        const double eps = 1e-3 * (cM - cm);
        auto count = [&](double c) { return equilibria({a, b, c, d}).size(); };
        if (cm - eps > t.c_minus) {
            EXPECT_EQ(count(cm - eps), 1u);
            EXPECT_EQ(count(cm), 2u);
        }
        EXPECT_EQ(count(0.5 * (cm + cM)), 3u);
        EXPECT_EQ(count(cm + eps), 3u);
        EXPECT_EQ(count(cM - eps), 3u);
        EXPECT_EQ(count(cM), 2u);
        EXPECT_EQ(count(cM + eps), 1u);
        ++checked;
    }
    EXPECT_GT(checked, 100);
}
