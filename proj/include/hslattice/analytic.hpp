#pragma once

#include <span>
#include <vector>

#include "hslattice/market.hpp"

namespace hsl {

/// Standard normal CDF via erfc (accurate over the full double range).
double norm_cdf(double x);

/// Raw moments mu'_1..mu'_order of N(gamma_prime, delta^2), by the recurrence
/// mu'_0 = 1, mu'_1 = gamma', mu'_i = gamma'*mu'_{i-1} + (i-1)*delta^2*mu'_{i-2}.
/// order must lie in [1, 16].
std::vector<double> normal_raw_moments(double gamma_prime, double delta, int order);

/// Cumulants of the compound Poisson increment over dt: kappa_i = lambda*dt*mu'_i.
std::vector<double> compound_poisson_cumulants(double lambda, double dt,
                                               std::span<const double> moments);

/// E(J) = e^{gamma' + delta^2/2} - 1.
double mean_jump(double gamma_prime, double delta);

/// Black-Scholes price with continuous dividend yield. Ignores jump fields.
double black_scholes_price(const MarketParams& mkt, OptionKind kind);

/// Merton series price for a European option under lognormal jumps:
///   V = sum_k e^{-lambda' tau} (lambda' tau)^k / k! * BS(S0, K, r_k, sigma_k, tau)
/// with lambda' = lambda (1+jbar), sigma_k^2 = sigma^2 + k delta^2/tau,
/// r_k = r - lambda jbar + k ln(1+jbar)/tau.
/// The series stops once the remaining Poisson tail times max(S0, K) drops below tol.
double merton_series_price(const MarketParams& mkt, OptionKind kind, double tol = 1e-10);

}  // namespace hsl
