#pragma once

#include <cstdint>
#include <span>

#include "hslattice/market.hpp"

namespace hsl {

/// Execution policy for the hot loops. `parallel` uses OpenMP worksharing;
/// results are bit-identical to `serial` because every output element is
/// accumulated in the same fixed order on either path.
enum class Exec { serial, parallel };

/// One forward convolution step of a pmf over integer levels.
/// out(l) = sum_{k=-nu..nu} taps[k+nu] * in(l-k), with in(.) read as 0
/// outside [in_lo, in_lo+in.size()). Mass falling outside the out window is
/// dropped, which is what the barrier-restricted recursion requires.
void pmf_convolve_step(std::span<const double> in, long in_lo,
                       std::span<double> out, long out_lo,
                       std::span<const double> taps, int nu, Exec exec);

/// Discount-free terminal double sum:
///   sum_{l: probs(l) != 0} probs(l) * sum_j payoff(s0 * e^{l h} * diff[j]) * pmf[j]
/// Inner sums run j ascending; the outer accumulation runs l ascending for both
/// execution policies. Levels with exactly zero probability are skipped (they
/// can sit far enough out that e^{l h} overflows).
/// If nodes is non-null it is incremented by (number of j's) per level visited.
double terminal_payoff_sum(std::span<const double> probs, long level_lo,
                           std::span<const double> diff, std::span<const double> pmf,
                           double s0, double h, double strike, OptionKind kind,
                           Exec exec, std::uint64_t* nodes = nullptr);

/// How children outside the stored level window of the source slab are valued.
enum class OutsidePolicy {
    none,       // full tree; children are always stored
    constant,   // V = outside_value (the b-boundary recursion)
    intrinsic,  // V = payoff(S(i,j,l)) (heuristic used for American calls)
};

/// One backward-induction step from time slab i_src to i_src-1.
/// Slabs are row-major with rows j = 0..(#rows-1) and a contiguous level
/// window: src has i_src+1 rows over [src_lo, src_hi], dst i_src rows over
/// [dst_lo, dst_hi].
struct BackwardStep {
    int i_src = 0;
    int nu = 0;
    double p = 0.5;                 // up-move probability of the diffusion
    double disc = 1.0;              // e^{-r dt}
    std::span<const double> taps;   // jump probabilities, index k+nu
    std::span<const double> src;
    long src_lo = 0, src_hi = 0;
    std::span<double> dst;
    long dst_lo = 0, dst_hi = 0;
    OutsidePolicy outside = OutsidePolicy::none;
    double outside_value = 0.0;
    // node geometry, for intrinsic values: S(i,j,l) = s0 * e^{(2j-i) sig_sqdt + l h}
    double s0 = 0.0, sig_sqdt = 0.0, h = 0.0, strike = 0.0;
    OptionKind kind = OptionKind::call;
    bool early_exercise = false;
};

void backward_step(const BackwardStep& bs, Exec exec);

}  // namespace hsl
