#pragma once

// Test-only oracles, deliberately independent of the library's computation
// paths: exhaustive path enumeration over the bivariate tree, Simpson
// quadrature against the normal density, and the closed-form single-node
// enlarged pmf.

#include <vector>

#include "hslattice/lattice.hpp"
#include "hslattice/market.hpp"

namespace hsl::test {

/// Everything the exhaustive walk of all (2(2nu+1))^n combined
/// diffusion x jump paths can tell us. Level arrays are indexed l + nu*n.
struct EnumerationOracle {
    double price = 0.0;         // discounted expected payoff over all paths
    double price_within = 0.0;  // ... over paths never leaving [-lbar, kbar]
    double price_type_a = 0.0;  // ... over paths ending inside [-lbar, kbar]
    std::vector<double> q_exact;     // terminal jump pmf
    std::vector<double> qbar_exact;  // never left the window
    std::vector<double> cross_up;    // ended at k after exceeding kbar
    std::vector<double> cross_dn;    // ended at k after dropping below -lbar
    long lo = 0;

    double at(const std::vector<double>& v, long l) const {
        const long i = l - lo;
        return (i < 0 || i >= static_cast<long>(v.size())) ? 0.0 : v[static_cast<size_t>(i)];
    }
};

/// Walks every path; practical for (2(2nu+1))^n up to a few million, enforced
/// by a hard cap (throws beyond it).
EnumerationOracle enumerate_paths(const MarketParams& mkt, const LatticeSpec& spec, long kbar,
                                  long lbar, OptionKind kind);

/// Simpson quadrature of x^k against the N(gp, dl^2) density.
double normal_moment_quadrature(double gp, double dl, int k);

/// Discounted lognormal payoff integral (Black-Scholes by quadrature).
double bs_quadrature(const MarketParams& mkt, OptionKind kind);

/// Closed-form enlarged pmf for nu = 1 (log-space evaluation):
///   qt_n(k) = sum_t n! / ((n-k-2t)! (k+t)! t!) (w/n)^{k+2t} q0^{n-k-2t},  k >= 0.
double qtilde_closed_form_nu1(int n, double w, double q0, long k);

MarketParams table1_panel_a(double strike = 40.0);

}  // namespace hsl::test
