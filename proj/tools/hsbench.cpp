// hsbench: times the serial and OpenMP paths of the hot kernels (forward pmf
// convolution, terminal payoff sum, backward sweep) and checks that the two
// paths agree bit for bit.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hslattice/engine.hpp"

namespace {

using hsl::Exec;

double time_best_of(int reps, const std::function<void()>& fn) {
    double best = 1e100;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        best = std::min(best,
                        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best * 1e3;
}

hsl::MarketParams bench_params() {
    hsl::MarketParams mkt;
    mkt.S0 = 40;
    mkt.K = 40;
    mkt.r = 0.08;
    mkt.sigma = std::sqrt(0.05);
    mkt.lambda = 5;
    mkt.gamma_prime = -0.025;
    mkt.delta = std::sqrt(0.05);
    mkt.tau = 1.0;
    return mkt;
}

}  // namespace

int main() {
    const auto mkt = bench_params();
    bool all_equal = true;
    std::printf("%-28s %12s %12s %9s %9s\n", "kernel", "serial_ms", "parallel_ms", "speedup",
                "bitwise");

    {
        const auto spec = hsl::build_lattice(mkt, 800, 3, 1.0);
        hsl::JumpDistribution ds, dp;
        const double ts = time_best_of(3, [&] { ds = hsl::forward_jump_distribution(spec, Exec::serial); });
        const double tp = time_best_of(3, [&] { dp = hsl::forward_jump_distribution(spec, Exec::parallel); });
        const bool eq = ds.probs.size() == dp.probs.size() &&
                        std::memcmp(ds.probs.data(), dp.probs.data(),
                                    ds.probs.size() * sizeof(double)) == 0;
        all_equal &= eq;
        std::printf("%-28s %12.2f %12.2f %9.2f %9s\n", "forward-convolution n=800", ts, tp, ts / tp,
                    eq ? "yes" : "NO");
    }
    {
        const auto spec = hsl::build_lattice(mkt, 800, 3, 1.0);
        hsl::PriceResult rs, rp;
        const double ts = time_best_of(3, [&] { rs = hsl::price_european_full(mkt, spec, hsl::OptionKind::put, Exec::serial); });
        const double tp = time_best_of(3, [&] { rp = hsl::price_european_full(mkt, spec, hsl::OptionKind::put, Exec::parallel); });
        const bool eq = rs.value == rp.value;
        all_equal &= eq;
        std::printf("%-28s %12.2f %12.2f %9.2f %9s\n", "expected-value price n=800", ts, tp,
                    ts / tp, eq ? "yes" : "NO");
    }
    {
        const auto spec = hsl::build_lattice(mkt, 200, 3, 1.0);
        hsl::PriceResult rs, rp;
        const double ts = time_best_of(3, [&] { rs = hsl::price_european_full_backward(mkt, spec, hsl::OptionKind::put, Exec::serial); });
        const double tp = time_best_of(3, [&] { rp = hsl::price_european_full_backward(mkt, spec, hsl::OptionKind::put, Exec::parallel); });
        const bool eq = rs.value == rp.value;
        all_equal &= eq;
        std::printf("%-28s %12.2f %12.2f %9.2f %9s\n", "backward-sweep n=200", ts, tp, ts / tp,
                    eq ? "yes" : "NO");
    }

#ifdef _OPENMP
    std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
    std::printf("openmp: not enabled\n");
#endif
    if (!all_equal) {
        std::printf("FAIL: serial and parallel paths disagree\n");
        return 1;
    }
    return 0;
}
