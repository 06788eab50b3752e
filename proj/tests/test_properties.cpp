#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "hslattice/analytic.hpp"
#include "hslattice/engine.hpp"
#include "oracles.hpp"

using namespace hsl;

namespace {

// Seeded generator over the method's validity domain: lambda dt has to stay
// well below c^2 = 1 so the one-step law remains a pmf.
struct RandomConfig {
    MarketParams mkt;
    int n, nu;
};

std::vector<RandomConfig> random_configs(int count, unsigned seed) {
    std::mt19937 rng(seed);
    auto uni = [&](double a, double b) {
        return std::uniform_real_distribution<double>(a, b)(rng);
    };
    std::vector<RandomConfig> out;
    while (static_cast<int>(out.size()) < count) {
        RandomConfig c;
        c.mkt.S0 = uni(20, 120);
        c.mkt.K = uni(20, 120);
        c.mkt.r = uni(0.0, 0.1);
        c.mkt.d = uni(0.0, 0.04);
        c.mkt.sigma = std::sqrt(uni(0.01, 0.2));
        c.mkt.lambda = uni(0.2, 5.0);
        c.mkt.gamma_prime = uni(-0.08, 0.08);
        c.mkt.delta = std::sqrt(uni(0.005, 0.1));
        c.mkt.tau = uni(0.25, 2.0);
        c.n = 30 + static_cast<int>(uni(0, 80));
        c.nu = 1 + static_cast<int>(uni(0, 3.999));
        if (c.mkt.lambda * c.mkt.tau / c.n > 0.5) continue;  // stay in-domain
        out.push_back(c);
    }
    return out;
}

}  // namespace

TEST_CASE("random configurations: distribution invariants hold") {
    for (const auto& cfg : random_configs(25, 20240811)) {
        CAPTURE(cfg.n);
        CAPTURE(cfg.nu);
        CAPTURE(cfg.mkt.lambda);
        CAPTURE(cfg.mkt.gamma_prime);
        const auto spec = build_lattice(cfg.mkt, cfg.n, cfg.nu, 1.0);

        // one-step law: pmf, and moments match the cumulants
        const double step_mass = std::accumulate(spec.q.begin(), spec.q.end(), 0.0);
        CHECK(std::fabs(step_mass - 1.0) < 1e-12);
        const auto mus = normal_raw_moments(cfg.mkt.gamma_prime, cfg.mkt.delta, 2 * cfg.nu);
        const auto kap = compound_poisson_cumulants(cfg.mkt.lambda, spec.dt, mus);
        for (int i = 1; i <= 2 * cfg.nu; ++i) {
            double lhs = 0.0;
            for (int l = -cfg.nu; l <= cfg.nu; ++l)
                lhs += std::pow(l * spec.h, i) * spec.q_at(l);
            CHECK(std::fabs(lhs - kap[static_cast<size_t>(i - 1)]) <
                  1e-10 * std::max(1.0, std::fabs(kap[static_cast<size_t>(i - 1)])));
        }

        const auto qn = forward_jump_distribution(spec);
        const double mass = std::accumulate(qn.probs.begin(), qn.probs.end(), 0.0);
        CHECK(std::fabs(mass - 1.0) < 1e-10);

        const auto qt = enlarged_jump_distribution(spec);
        for (long l = 0; l <= qn.hi; ++l) {
            CHECK(qt.at(l) == qt.at(-l));
            CHECK(qn.at(l) <= qt.at(l) * (1 + 1e-12) + 1e-300);
            CHECK(qn.at(-l) <= qt.at(l) * (1 + 1e-12) + 1e-300);
        }

        const long kb = 1 + static_cast<long>(qn.hi / 3), lb = 1 + static_cast<long>(qn.hi / 4);
        const auto qb = within_barrier_distribution(spec, kb, lb);
        for (long l = qb.lo; l <= qb.hi; ++l) CHECK(qb.at(l) <= qn.at(l) * (1 + 1e-12));
    }
}

TEST_CASE("random configurations: pricing invariants hold") {
    for (const auto& cfg : random_configs(12, 77001)) {
        CAPTURE(cfg.n);
        CAPTURE(cfg.nu);
        const auto spec = build_lattice(cfg.mkt, cfg.n, cfg.nu, 1.0);
        const auto qt = enlarged_jump_distribution(spec);
        const double eps = 1.0 / cfg.n;
        for (OptionKind kind : {OptionKind::call, OptionKind::put}) {
            const double v = price_european_full(cfg.mkt, spec, kind).value;
            const double bw = price_european_full_backward(cfg.mkt, spec, kind).value;
            CHECK(std::fabs(v - bw) < 1e-10);

            const auto nb = numerical_bounds(spec, qt, cfg.mkt, eps, kind);
            const double vt = price_european_type_a(cfg.mkt, spec, nb, kind).value;
            const double vtt = price_european_truncated(cfg.mkt, spec, nb, kind).value;
            CHECK(vtt <= vt * (1 + 1e-12) + 1e-12);
            CHECK(vt <= v * (1 + 1e-12) + 1e-12);
            CHECK(std::fabs(v - vtt) < eps);

            const double cap = kind == OptionKind::put ? cfg.mkt.K : cfg.mkt.S0;
            CHECK(v >= 0.0);
            CHECK(v <= cap * (1 + 1e-12));
        }
        // American put dominance and truncation guarantee
        const double va = price_american_full(cfg.mkt, spec, OptionKind::put).value;
        const double ve = price_european_full_backward(cfg.mkt, spec, OptionKind::put).value;
        CHECK(va >= ve - 1e-12);
        const auto trunc = price_american_put_truncated(cfg.mkt, spec, eps);
        CHECK(std::fabs(trunc.value - va) < eps);
    }
}

TEST_CASE("random parameters: Merton parity against Black-Scholes forward") {
    std::mt19937 rng(5150);
    auto uni = [&](double a, double b) {
        return std::uniform_real_distribution<double>(a, b)(rng);
    };
    for (int i = 0; i < 40; ++i) {
        MarketParams m;
        m.S0 = uni(20, 150);
        m.K = uni(20, 150);
        m.r = uni(0, 0.12);
        m.d = uni(0, 0.05);
        m.sigma = std::sqrt(uni(0.005, 0.3));
        m.lambda = uni(0, 8);
        m.gamma_prime = uni(-0.1, 0.1);
        m.delta = std::sqrt(uni(0, 0.15));
        m.tau = uni(0.1, 5);
        const double call = merton_series_price(m, OptionKind::call);
        const double put = merton_series_price(m, OptionKind::put);
        const double fwd = m.S0 * std::exp(-m.d * m.tau) - m.K * std::exp(-m.r * m.tau);
        CHECK(std::fabs(call - put - fwd) < 1e-8);
    }
}
