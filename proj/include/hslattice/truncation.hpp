#pragma once

#include <limits>
#include <string>
#include <vector>

#include "hslattice/lattice.hpp"
#include "hslattice/market.hpp"

namespace hsl {

/// Constants feeding the closed-form truncation bounds:
///   W_1 = w_1,  W_{i+1} = w_{i+1} + W_i^{(i+1)/i},
///   M_i = max{W_i, W_i^{(-i+1)/i}},
///   G   = 2 nu max{W_nu, 1} e^{W_nu} prod_{i<nu} M_i^2,
/// and the call-side factors k_+, k_-.
struct TruncationConstants {
    std::vector<double> W;  // W_1..W_nu, index i-1
    std::vector<double> M;  // M_1..M_nu, index i-1
    double G = 0.0;
    double k_plus = 0.0;
    double k_minus = 0.0;
    double w1 = 0.0;        // w = max(c_{+1}, c_{-1}), used by the nu=1 formulas
};

TruncationConstants truncation_constants(const LatticeSpec& spec);

enum class BoundMethod {
    theoretical_call,
    theoretical_put,
    theoretical_american_put,
    numerical_call,
    numerical_put,
};

const char* to_string(BoundMethod m);

struct TruncationBounds {
    long kbar = 0;          // upper barrier
    long lbar = 0;          // lower barrier (levels kept: [-lbar, kbar])
    double epsilon = 0.0;
    BoundMethod method = BoundMethod::numerical_put;
    double eta = std::numeric_limits<double>::quiet_NaN();  // numerical searches only
};

/// Closed-form barriers guaranteeing V - V^TT < epsilon for the European call.
/// For nu = 1 the dedicated single-jump-node formulas are also evaluated and
/// the smaller barrier pair is returned.
TruncationBounds theoretical_bounds_call(const LatticeSpec& spec, const TruncationConstants& tc,
                                         const MarketParams& mkt, double epsilon);

/// European put counterpart (kbar = lbar).
TruncationBounds theoretical_bounds_put(const LatticeSpec& spec, const TruncationConstants& tc,
                                        const MarketParams& mkt, double epsilon);

/// American put barriers; same shape as the European put bound without the
/// -r tau term.
TruncationBounds theoretical_bounds_american_put(const LatticeSpec& spec,
                                                 const TruncationConstants& tc,
                                                 const MarketParams& mkt, double epsilon);

/// nu=1 specializations, exposed for cross-checking against the general forms.
TruncationBounds theoretical_bounds_call_nu1(const LatticeSpec& spec,
                                             const TruncationConstants& tc,
                                             const MarketParams& mkt, double epsilon);
TruncationBounds theoretical_bounds_put_nu1(const LatticeSpec& spec,
                                            const TruncationConstants& tc,
                                            const MarketParams& mkt, double epsilon);

/// Tail-sum search over the enlarged distribution. Call: descend i from nu*n
/// accumulating S^e_i = (nu+1) sum_{k>=i} e^{hk} qt(k); the first i with
/// S^e_i >= eta (eta = eps / (2 e^{(alpha-r)tau} S0)) is kbar, then a second
/// descent over S_i = sum_{k>=i} qt(k) against eta / (nu e^{h kbar} + 1) gives
/// lbar. Put: single descent against eta = eps / (2 e^{-r tau} K (nu+1)),
/// lbar = kbar. A search that never meets its threshold clamps to nu*n.
TruncationBounds numerical_bounds(const LatticeSpec& spec, const JumpDistribution& qtilde,
                                  const MarketParams& mkt, double epsilon, OptionKind kind);

}  // namespace hsl
