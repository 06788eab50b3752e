#include <cmath>

#include "doctest.h"
#include "hslattice/analytic.hpp"
#include "hslattice/engine.hpp"
#include "oracles.hpp"

using namespace hsl;

TEST_CASE("lambda = 0 reduces to the CRR binomial converging to Black-Scholes") {
    MarketParams mkt = test::table1_panel_a();
    mkt.lambda = 0;
    const double bs = black_scholes_price(mkt, OptionKind::put);
    double err_small = 0, err_large = 0;
    for (int n : {400, 1600}) {
        const auto spec = build_lattice(mkt, n, 1, 1.0);
        const double v = price_european_full(mkt, spec, OptionKind::put).value;
        (n == 400 ? err_small : err_large) = std::fabs(v - bs);
    }
    CHECK(err_large < err_small);
    CHECK(err_large < 1e-3);
}

TEST_CASE("expected-value price equals exhaustive enumeration at n = 3, nu = 1") {
    auto mkt = test::table1_panel_a();
    mkt.lambda = 1;  // lambda dt must stay below 1 at n = 3
    const auto spec = build_lattice(mkt, 3, 1, 1.0);
    const auto oracle = test::enumerate_paths(mkt, spec, 3, 3, OptionKind::put);
    const auto ev = price_european_full(mkt, spec, OptionKind::put);
    CHECK(std::fabs(ev.value - oracle.price) < 1e-13);
    const auto bw = price_european_full_backward(mkt, spec, OptionKind::put);
    CHECK(std::fabs(bw.value - oracle.price) < 1e-13);
}

TEST_CASE("expected-value and backward prices coincide up to n = 200") {
    const auto mkt = test::table1_panel_a();
    for (int n : {100, 200}) {
        const auto spec = build_lattice(mkt, n, 3, 1.0);
        for (OptionKind kind : {OptionKind::call, OptionKind::put}) {
            const double ev = price_european_full(mkt, spec, kind).value;
            const double bw = price_european_full_backward(mkt, spec, kind).value;
            CHECK(std::fabs(ev - bw) < 1e-10);
        }
    }
}

TEST_CASE("type-a elimination: trivial bounds, ordering chain and enumeration") {
    const auto mkt = test::table1_panel_a();
    const auto spec = build_lattice(mkt, 40, 3, 1.0);
    TruncationBounds wide;
    wide.kbar = wide.lbar = spec.max_level();
    const double v = price_european_full(mkt, spec, OptionKind::put).value;
    CHECK(price_european_type_a(mkt, spec, wide, OptionKind::put).value ==
          doctest::Approx(v).epsilon(1e-14));
    CHECK(price_european_truncated(mkt, spec, wide, OptionKind::put).value ==
          doctest::Approx(v).epsilon(1e-14));

    for (OptionKind kind : {OptionKind::call, OptionKind::put}) {
        for (long b : {5L, 15L, 40L}) {
            TruncationBounds tb;
            tb.kbar = tb.lbar = b;
            const double vt = price_european_type_a(mkt, spec, tb, kind).value;
            const double vtt = price_european_truncated(mkt, spec, tb, kind).value;
            const double vfull = price_european_full(mkt, spec, kind).value;
            CHECK(vtt <= vt + 1e-12);
            CHECK(vt <= vfull + 1e-12);
        }
    }

    // n = 4, nu = 1, kbar = lbar = 2 against the oracle restricted by terminal level
    auto mkt4 = mkt;
    mkt4.lambda = 1;
    const auto spec4 = build_lattice(mkt4, 4, 1, 1.0);
    const auto oracle = test::enumerate_paths(mkt4, spec4, 2, 2, OptionKind::put);
    TruncationBounds tb2;
    tb2.kbar = tb2.lbar = 2;
    CHECK(std::fabs(price_european_type_a(mkt4, spec4, tb2, OptionKind::put).value -
                    oracle.price_type_a) < 1e-13);
    CHECK(std::fabs(price_european_truncated(mkt4, spec4, tb2, OptionKind::put).value -
                    oracle.price_within) < 1e-13);
}

TEST_CASE("V^TT is monotone in the barriers") {
    const auto mkt = test::table1_panel_a();
    const auto spec = build_lattice(mkt, 60, 3, 1.0);
    double prev = -1.0;
    for (long b : {2L, 4L, 8L, 16L, 32L, 64L}) {
        TruncationBounds tb;
        tb.kbar = tb.lbar = b;
        const double v = price_european_truncated(mkt, spec, tb, OptionKind::put).value;
        CHECK(v >= prev - 1e-15);
        prev = v;
    }
}

TEST_CASE("boundary recursion: b = 0 with wide barriers reproduces the full price") {
    const auto mkt = test::table1_panel_a();
    const auto spec = build_lattice(mkt, 40, 3, 1.0);
    TruncationBounds wide;
    wide.kbar = wide.lbar = spec.max_level();
    const double vfull = price_european_full(mkt, spec, OptionKind::put).value;
    const auto vb = price_backward_boundary(mkt, spec, wide, 0.0, Exercise::european,
                                            OptionKind::put);
    CHECK(vb.value == doctest::Approx(vfull).epsilon(1e-12));
    CHECK_THROWS_AS(price_backward_boundary(mkt, spec, wide, -1.0, Exercise::european,
                                            OptionKind::put),
                    std::invalid_argument);
}

TEST_CASE("boundary recursion: V_E^0 = V^TT and V_E^K >= V_E >= V_E^0 for puts") {
    const auto mkt = test::table1_panel_a();
    const auto spec = build_lattice(mkt, 50, 3, 1.0);
    const auto qt = enlarged_jump_distribution(spec);
    const auto nb = numerical_bounds(spec, qt, mkt, 1.0 / 50, OptionKind::put);
    const double vtt = price_european_truncated(mkt, spec, nb, OptionKind::put).value;
    const double ve0 =
        price_backward_boundary(mkt, spec, nb, 0.0, Exercise::european, OptionKind::put).value;
    const double veK =
        price_backward_boundary(mkt, spec, nb, mkt.K, Exercise::european, OptionKind::put).value;
    const double ve = price_european_full_backward(mkt, spec, OptionKind::put).value;
    CHECK(std::fabs(ve0 - vtt) < 1e-10);
    CHECK(veK >= ve - 1e-12);
    CHECK(ve >= ve0 - 1e-12);
}

TEST_CASE("American pricing basics") {
    const auto mkt = test::table1_panel_a();
    const auto spec = build_lattice(mkt, 50, 3, 1.0);

    // no dividend: American call carries no early-exercise premium
    const double ac = price_american_full(mkt, spec, OptionKind::call).value;
    const double ec = price_european_full_backward(mkt, spec, OptionKind::call).value;
    CHECK(ac == doctest::Approx(ec).epsilon(1e-12));

    const double ap = price_american_full(mkt, spec, OptionKind::put).value;
    const double ep = price_european_full_backward(mkt, spec, OptionKind::put).value;
    CHECK(ap >= ep - 1e-12);
}

TEST_CASE("American truncation error is dominated by the European error") {
    const auto mkt = test::table1_panel_a();
    for (int n : {50, 100}) {
        const auto spec = build_lattice(mkt, n, 3, 1.0);
        const auto qt = enlarged_jump_distribution(spec);
        const auto nb = numerical_bounds(spec, qt, mkt, 1.0 / n, OptionKind::put);
        const double va = price_american_full(mkt, spec, OptionKind::put).value;
        const double ve = price_european_full_backward(mkt, spec, OptionKind::put).value;
        const double vaK =
            price_backward_boundary(mkt, spec, nb, mkt.K, Exercise::american, OptionKind::put)
                .value;
        const double veK =
            price_backward_boundary(mkt, spec, nb, mkt.K, Exercise::european, OptionKind::put)
                .value;
        CHECK(std::fabs(vaK - va) <= std::fabs(veK - ve) + 1e-12);
        CHECK(std::fabs(vaK - va) < 1.0 / n);
    }
}

TEST_CASE("American put truncation: composition against the full backward") {
    const auto mkt = test::table1_panel_a();
    const auto spec = build_lattice(mkt, 100, 3, 1.0);
    const double vfull = price_american_full(mkt, spec, OptionKind::put).value;
    for (BoundsChoice choice : {BoundsChoice::numerical, BoundsChoice::theoretical}) {
        const auto res = price_american_put_truncated(mkt, spec, 1.0 / 100, choice);
        CHECK(std::fabs(res.value - vfull) < 1.0 / 100);
        CHECK(res.boundary_b == mkt.K);
    }
    // wide barriers (tiny epsilon drives the numerical search to nu*n) reproduce it exactly
    const auto wide = price_american_put_truncated(mkt, spec, 1e-300, BoundsChoice::numerical);
    CHECK(wide.value == doctest::Approx(vfull).epsilon(1e-13));

    // dominance carries through under the same truncation
    const auto qt = enlarged_jump_distribution(spec);
    const auto nb = numerical_bounds(spec, qt, mkt, 1.0 / 100, OptionKind::put);
    const double am =
        price_backward_boundary(mkt, spec, nb, mkt.K, Exercise::american, OptionKind::put).value;
    const double eu =
        price_backward_boundary(mkt, spec, nb, mkt.K, Exercise::european, OptionKind::put).value;
    CHECK(am >= eu - 1e-12);
}

TEST_CASE("price bounds: values stay inside no-arbitrage limits") {
    const auto mkt = test::table1_panel_a();
    for (int n : {25, 80}) {
        const auto spec = build_lattice(mkt, n, 3, 1.0);
        for (OptionKind kind : {OptionKind::call, OptionKind::put}) {
            const double cap = kind == OptionKind::put ? mkt.K : mkt.S0;
            for (double v : {price_european_full(mkt, spec, kind).value,
                             price_american_full(mkt, spec, kind).value}) {
                CHECK(v >= 0.0);
                CHECK(v <= cap);
            }
        }
    }
}

TEST_CASE("reflection bounds via enumeration (single and general width)") {
    const auto mkt = test::table1_panel_a();
    // nu = 1, n up to 8: crossing mass is dominated by the reflected enlarged mass
    {
        const auto spec = build_lattice(mkt, 8, 1, 1.0);
        const long kbar = 2, lbar = 2;
        const auto oracle = test::enumerate_paths(mkt, spec, kbar, lbar, OptionKind::put);
        const auto qt = enlarged_jump_distribution(spec);
        for (long k = -lbar; k <= kbar; ++k) {
            CHECK(oracle.at(oracle.cross_up, k) <= qt.at(2 * kbar - k + 2) + 1e-15);
            CHECK(oracle.at(oracle.cross_dn, k) <= qt.at(2 * lbar + k + 2) + 1e-15);
        }
    }
    // general nu: crossing mass <= sum_{i=1..nu} qt(2 kbar - k + 2i)
    {
        auto mkt3 = mkt;
        mkt3.lambda = 1;
        const auto spec = build_lattice(mkt3, 4, 3, 1.0);
        const long kbar = 3, lbar = 4;
        const auto oracle = test::enumerate_paths(mkt3, spec, kbar, lbar, OptionKind::put);
        const auto qt = enlarged_jump_distribution(spec);
        for (long k = -lbar; k <= kbar; ++k) {
            double up_bound = 0, dn_bound = 0;
            for (int i = 1; i <= 3; ++i) {
                up_bound += qt.at(2 * kbar - k + 2 * i);
                dn_bound += qt.at(2 * lbar + k + 2 * i);
            }
            CHECK(oracle.at(oracle.cross_up, k) <= up_bound + 1e-15);
            CHECK(oracle.at(oracle.cross_dn, k) <= dn_bound + 1e-15);
        }
    }
}

TEST_CASE("oracle price caps enforce the enumeration limits") {
    const auto mkt = test::table1_panel_a();
    const auto spec = build_lattice(mkt, 60, 3, 1.0);
    CHECK_THROWS_AS(test::enumerate_paths(mkt, spec, 5, 5, OptionKind::put),
                    std::invalid_argument);
}
