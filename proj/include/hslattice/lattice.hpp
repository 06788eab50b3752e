#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hslattice/kernels.hpp"
#include "hslattice/market.hpp"

namespace hsl {

/// The bivariate discretisation: CRR binomial for the diffusion plus a
/// (2 nu + 1)-node moment-matched jump component of step h = c sqrt(gamma'^2 + delta^2).
struct LatticeSpec {
    int n = 0;                     // time steps
    int nu = 0;                    // jump half-width; 2 nu + 1 jump nodes per step
    double c = 1.0;                // jump-step scale
    double h = 0.0;                // jump step
    double dt = 0.0;               // tau / n
    double alpha = 0.0;            // r - d - lambda jbar - sigma^2/2
    double p = 0.0;                // diffusion up-probability
    double j_bar = 0.0;            // E(J)
    double sig_sqdt = 0.0;         // sigma sqrt(dt), the diffusion step
    std::vector<double> q;         // per-step jump law, index k+nu, k = -nu..nu
    std::vector<double> c_consts;  // c_i = n q_i, index i+nu (entry at i=0 unused)
    std::vector<double> w_consts;  // w_i = max(c_{+i}, c_{-i}), index i-1, i = 1..nu

    double q_at(int k) const { return q[static_cast<size_t>(k + nu)]; }
    long max_level() const { return static_cast<long>(nu) * n; }
};

/// Derives the full lattice from market parameters.
/// Throws std::domain_error when |alpha sqrt(dt)/sigma| > 1 (p outside [0,1])
/// or when lambda > 0 with gamma' = delta = 0 (no jump scale to discretise).
LatticeSpec build_lattice(const MarketParams& mkt, int n, int nu, double c = 1.0);

/// Solves the (2nu+1) x (2nu+1) moment-matching system M q = b,
/// M[i][l+nu] = l^i, b = (1, kappa_1/h, ..., kappa_{2nu}/h^{2nu}).
/// Entries below -1e-12 raise std::domain_error; tiny negatives are clamped
/// to zero and the vector renormalised.
std::vector<double> solve_jump_probs(std::span<const double> cumulants, double h, int nu);

enum class DistKind { full, enlarged, within_barrier };

/// A pmf (or sub-pmf) of the cumulative jump level at maturity over the
/// contiguous level window [lo, hi].
struct JumpDistribution {
    DistKind kind = DistKind::full;
    long lo = 0, hi = 0;
    std::vector<double> probs;             // probs[l - lo]
    long kbar = 0, lbar = 0;               // set for within_barrier only
    std::uint64_t cells = 0;               // convolution cells updated while building

    double at(long l) const {
        return (l < lo || l > hi) ? 0.0 : probs[static_cast<size_t>(l - lo)];
    }
};

/// q_n: full terminal jump-level pmf over [-nu n, nu n] by n-fold convolution.
JumpDistribution forward_jump_distribution(const LatticeSpec& spec, Exec exec = Exec::parallel);

/// q~_n: same convolution with both q_{+i} and q_{-i} replaced by their
/// maximum. Symmetric by construction and dominates q_n level-wise.
JumpDistribution enlarged_jump_distribution(const LatticeSpec& spec, Exec exec = Exec::parallel);

/// q-bar_n: forward convolution restricted to levels in [-lbar, kbar]; mass
/// stepping outside the window is discarded. Requires kbar, lbar >= 1.
JumpDistribution within_barrier_distribution(const LatticeSpec& spec, long kbar, long lbar,
                                             Exec exec = Exec::parallel);

/// P_n(j) = C(n,j) p^j (1-p)^{n-j}, j = 0..n, evaluated through log-gamma.
std::vector<double> terminal_brownian_pmf(const LatticeSpec& spec);

}  // namespace hsl
