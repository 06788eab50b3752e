#include "hslattice/engine.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace hsl {

const char* to_string(PriceMethod m) {
    switch (m) {
        case PriceMethod::expected_value_full: return "expected_value_full";
        case PriceMethod::expected_value_type_a: return "expected_value_type_a";
        case PriceMethod::expected_value_truncated: return "expected_value_truncated";
        case PriceMethod::backward_full: return "backward_full";
        case PriceMethod::backward_boundary: return "backward_boundary";
    }
    return "?";
}

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

std::vector<double> diffusion_factors(const LatticeSpec& spec) {
    std::vector<double> diff(static_cast<size_t>(spec.n) + 1);
    for (int j = 0; j <= spec.n; ++j)
        diff[static_cast<size_t>(j)] = std::exp((2.0 * j - spec.n) * spec.sig_sqdt);
    return diff;
}

PriceResult expected_value_price(const MarketParams& mkt, const LatticeSpec& spec,
                                 const JumpDistribution& dist, OptionKind kind,
                                 PriceMethod method, Exec exec) {
    PriceResult res;
    res.method = method;
    res.nodes_visited = dist.cells;
    const auto diff = diffusion_factors(spec);
    const auto pmf = terminal_brownian_pmf(spec);
    const double sum = terminal_payoff_sum(dist.probs, dist.lo, diff, pmf, mkt.S0, spec.h,
                                           mkt.K, kind, exec, &res.nodes_visited);
    res.value = std::exp(-mkt.r * mkt.tau) * sum;
    return res;
}

struct BackwardConfig {
    long kbar, lbar;      // level window kept; spec.max_level() for the full tree
    OutsidePolicy outside = OutsidePolicy::none;
    double b = 0.0;
    Exercise exercise = Exercise::european;
};

PriceResult run_backward(const MarketParams& mkt, const LatticeSpec& spec, OptionKind kind,
                         const BackwardConfig& cfg, Exec exec) {
    PriceResult res;
    const int n = spec.n, nu = spec.nu;
    const double disc = std::exp(-mkt.r * spec.dt);
    auto window = [&](int i) {
        const long reach = static_cast<long>(nu) * i;
        return std::pair<long, long>{std::max(-reach, -cfg.lbar), std::min(reach, cfg.kbar)};
    };

    auto [lo, hi] = window(n);
    std::vector<double> cur(static_cast<size_t>(n + 1) * static_cast<size_t>(hi - lo + 1));
    for (int j = 0; j <= n; ++j) {
        const double dj = std::exp((2.0 * j - n) * spec.sig_sqdt);
        for (long l = lo; l <= hi; ++l)
            cur[static_cast<size_t>(j) * static_cast<size_t>(hi - lo + 1) +
                static_cast<size_t>(l - lo)] =
                payoff(mkt.S0 * dj * std::exp(spec.h * static_cast<double>(l)), mkt.K, kind);
    }
    res.nodes_visited += static_cast<std::uint64_t>(n + 1) * static_cast<std::uint64_t>(hi - lo + 1);

    std::vector<double> next;
    for (int i = n - 1; i >= 0; --i) {
        const auto [dlo, dhi] = window(i);
        next.resize(static_cast<size_t>(i + 1) * static_cast<size_t>(dhi - dlo + 1));
        BackwardStep bs;
        bs.i_src = i + 1;
        bs.nu = nu;
        bs.p = spec.p;
        bs.disc = disc;
        bs.taps = spec.q;
        bs.src = cur;
        bs.src_lo = lo;
        bs.src_hi = hi;
        bs.dst = next;
        bs.dst_lo = dlo;
        bs.dst_hi = dhi;
        bs.outside = cfg.outside;
        bs.outside_value = cfg.b;
        bs.s0 = mkt.S0;
        bs.sig_sqdt = spec.sig_sqdt;
        bs.h = spec.h;
        bs.strike = mkt.K;
        bs.kind = kind;
        bs.early_exercise = cfg.exercise == Exercise::american;
        backward_step(bs, exec);
        res.nodes_visited +=
            static_cast<std::uint64_t>(i + 1) * static_cast<std::uint64_t>(dhi - dlo + 1);
        std::swap(cur, next);
        lo = dlo;
        hi = dhi;
    }
    res.value = cur[0];
    return res;
}

}  // namespace

PriceResult price_european_full(const MarketParams& mkt, const LatticeSpec& spec,
                                OptionKind kind, Exec exec) {
    const auto t0 = clock_type::now();
    const auto qn = forward_jump_distribution(spec, exec);
    PriceResult res = expected_value_price(mkt, spec, qn, kind,
                                           PriceMethod::expected_value_full, exec);
    res.elapsed_s = seconds_since(t0);
    return res;
}

PriceResult price_european_full_backward(const MarketParams& mkt, const LatticeSpec& spec,
                                         OptionKind kind, Exec exec) {
    const auto t0 = clock_type::now();
    BackwardConfig cfg;
    cfg.kbar = cfg.lbar = spec.max_level();
    PriceResult res = run_backward(mkt, spec, kind, cfg, exec);
    res.method = PriceMethod::backward_full;
    res.elapsed_s = seconds_since(t0);
    return res;
}

PriceResult price_european_type_a(const MarketParams& mkt, const LatticeSpec& spec,
                                  const TruncationBounds& bounds, OptionKind kind, Exec exec) {
    const auto t0 = clock_type::now();
    const auto qn = forward_jump_distribution(spec, exec);
    // keep the full q_n weights, restrict the terminal levels to [-lbar, kbar]
    JumpDistribution typea;
    typea.kind = DistKind::full;
    typea.lo = std::max(qn.lo, -bounds.lbar);
    typea.hi = std::min(qn.hi, bounds.kbar);
    typea.cells = qn.cells;
    typea.probs.assign(qn.probs.begin() + (typea.lo - qn.lo),
                       qn.probs.begin() + (typea.hi - qn.lo + 1));
    PriceResult res = expected_value_price(mkt, spec, typea, kind,
                                           PriceMethod::expected_value_type_a, exec);
    res.bounds = bounds;
    res.elapsed_s = seconds_since(t0);
    return res;
}

PriceResult price_european_truncated(const MarketParams& mkt, const LatticeSpec& spec,
                                     const TruncationBounds& bounds, OptionKind kind, Exec exec) {
    const auto t0 = clock_type::now();
    const auto qbar = within_barrier_distribution(spec, bounds.kbar, bounds.lbar, exec);
    PriceResult res = expected_value_price(mkt, spec, qbar, kind,
                                           PriceMethod::expected_value_truncated, exec);
    res.bounds = bounds;
    res.elapsed_s = seconds_since(t0);
    return res;
}

PriceResult price_backward_boundary(const MarketParams& mkt, const LatticeSpec& spec,
                                    const TruncationBounds& bounds, double b,
                                    Exercise exercise, OptionKind kind, Exec exec) {
    if (b < 0.0) throw std::invalid_argument("price_backward_boundary: b must be >= 0");
    if (bounds.kbar < 1 || bounds.lbar < 1)
        throw std::invalid_argument("price_backward_boundary: barriers must be >= 1");
    const auto t0 = clock_type::now();
    BackwardConfig cfg;
    cfg.kbar = std::min(bounds.kbar, spec.max_level());
    cfg.lbar = std::min(bounds.lbar, spec.max_level());
    cfg.outside = OutsidePolicy::constant;
    cfg.b = b;
    cfg.exercise = exercise;
    PriceResult res = run_backward(mkt, spec, kind, cfg, exec);
    res.method = PriceMethod::backward_boundary;
    res.bounds = bounds;
    res.boundary_b = b;
    res.elapsed_s = seconds_since(t0);
    return res;
}

PriceResult price_american_full(const MarketParams& mkt, const LatticeSpec& spec,
                                OptionKind kind, Exec exec) {
    const auto t0 = clock_type::now();
    BackwardConfig cfg;
    cfg.kbar = cfg.lbar = spec.max_level();
    cfg.exercise = Exercise::american;
    PriceResult res = run_backward(mkt, spec, kind, cfg, exec);
    res.method = PriceMethod::backward_full;
    res.elapsed_s = seconds_since(t0);
    return res;
}

PriceResult price_american_put_truncated(const MarketParams& mkt, const LatticeSpec& spec,
                                         double epsilon, BoundsChoice choice, Exec exec) {
    const auto t0 = clock_type::now();
    TruncationBounds bounds;
    std::uint64_t search_cells = 0;
    if (choice == BoundsChoice::numerical) {
        const auto qt = enlarged_jump_distribution(spec, exec);
        search_cells = qt.cells;
        bounds = numerical_bounds(spec, qt, mkt, epsilon, OptionKind::put);
    } else {
        bounds = theoretical_bounds_american_put(spec, truncation_constants(spec), mkt, epsilon);
    }
    PriceResult res = price_backward_boundary(mkt, spec, bounds, mkt.K, Exercise::american,
                                              OptionKind::put, exec);
    res.nodes_visited += search_cells;
    res.elapsed_s = seconds_since(t0);
    return res;
}

PriceResult price_american_call_truncated(const MarketParams& mkt, const LatticeSpec& spec,
                                          double epsilon, BoundsChoice choice, Exec exec) {
    const auto t0 = clock_type::now();
    TruncationBounds bounds;
    std::uint64_t search_cells = 0;
    if (choice == BoundsChoice::numerical) {
        const auto qt = enlarged_jump_distribution(spec, exec);
        search_cells = qt.cells;
        bounds = numerical_bounds(spec, qt, mkt, epsilon, OptionKind::call);
    } else {
        bounds = theoretical_bounds_call(spec, truncation_constants(spec), mkt, epsilon);
    }
    BackwardConfig cfg;
    cfg.kbar = std::min(bounds.kbar, spec.max_level());
    cfg.lbar = std::min(bounds.lbar, spec.max_level());
    cfg.outside = OutsidePolicy::intrinsic;
    cfg.exercise = Exercise::american;
    PriceResult res = run_backward(mkt, spec, OptionKind::call, cfg, exec);
    res.method = PriceMethod::backward_boundary;
    res.bounds = bounds;
    res.nodes_visited += search_cells;
    res.elapsed_s = seconds_since(t0);
    return res;
}

}  // namespace hsl
