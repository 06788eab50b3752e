#pragma once

#include <cstdint>
#include <optional>

#include "hslattice/lattice.hpp"
#include "hslattice/truncation.hpp"

namespace hsl {

enum class PriceMethod {
    expected_value_full,
    expected_value_type_a,
    expected_value_truncated,
    backward_full,
    backward_boundary,
};

const char* to_string(PriceMethod m);

struct PriceResult {
    double value = 0.0;
    PriceMethod method = PriceMethod::expected_value_full;
    std::optional<TruncationBounds> bounds;
    std::optional<double> boundary_b;
    std::uint64_t nodes_visited = 0;
    double elapsed_s = 0.0;
};

/// V: discounted expected payoff over the full terminal distribution,
/// V = e^{-r tau} sum_{l,j} payoff(S(n,j,l)) P_n(j) q_n(l).  O(n^2) in the
/// jump dimension; meant for validation scale.
PriceResult price_european_full(const MarketParams& mkt, const LatticeSpec& spec,
                                OptionKind kind, Exec exec = Exec::parallel);

/// Same value through the backward recursion; exposed so the coincidence of
/// the two routes can be tested.
PriceResult price_european_full_backward(const MarketParams& mkt, const LatticeSpec& spec,
                                         OptionKind kind, Exec exec = Exec::parallel);

/// V^T: type-(a) elimination only; terminal levels restricted to
/// [-lbar, kbar] but still weighted with the full q_n.
PriceResult price_european_type_a(const MarketParams& mkt, const LatticeSpec& spec,
                                  const TruncationBounds& bounds, OptionKind kind,
                                  Exec exec = Exec::parallel);

/// V^TT: both eliminations; weights from the within-barrier distribution.
/// O(n (kbar+lbar)) plus the O(n) binomial.
PriceResult price_european_truncated(const MarketParams& mkt, const LatticeSpec& spec,
                                     const TruncationBounds& bounds, OptionKind kind,
                                     Exec exec = Exec::parallel);

/// V^b: backward induction where every node with jump level outside
/// [-lbar, kbar] carries the constant b (terminal nodes included).
PriceResult price_backward_boundary(const MarketParams& mkt, const LatticeSpec& spec,
                                    const TruncationBounds& bounds, double b,
                                    Exercise exercise, OptionKind kind,
                                    Exec exec = Exec::parallel);

/// Untruncated backward induction with early exercise at every node. O(n^3);
/// validation scale.
PriceResult price_american_full(const MarketParams& mkt, const LatticeSpec& spec,
                                OptionKind kind, Exec exec = Exec::parallel);

enum class BoundsChoice { numerical, theoretical };

/// American put via the b = K boundary recursion inside barriers chosen for
/// the target error epsilon.
PriceResult price_american_put_truncated(const MarketParams& mkt, const LatticeSpec& spec,
                                         double epsilon,
                                         BoundsChoice choice = BoundsChoice::numerical,
                                         Exec exec = Exec::parallel);

/// American call counterpart. No error theorem backs this case; nodes outside
/// the barriers (chosen by the European-call search) carry their intrinsic
/// value. Treat results as a numerically-supported heuristic.
PriceResult price_american_call_truncated(const MarketParams& mkt, const LatticeSpec& spec,
                                          double epsilon,
                                          BoundsChoice choice = BoundsChoice::numerical,
                                          Exec exec = Exec::parallel);

}  // namespace hsl
