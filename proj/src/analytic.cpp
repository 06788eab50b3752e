#include "hslattice/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace hsl {

double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

std::vector<double> normal_raw_moments(double gamma_prime, double delta, int order) {
    if (order < 1) throw std::invalid_argument("normal_raw_moments: order must be >= 1");
    if (order > 16) throw std::invalid_argument("normal_raw_moments: order capped at 16 (nu <= 8)");
    const double d2 = delta * delta;
    std::vector<double> mu(static_cast<size_t>(order) + 1);
    mu[0] = 1.0;
    mu[1] = gamma_prime;
    for (int i = 2; i <= order; ++i)
        mu[static_cast<size_t>(i)] =
            gamma_prime * mu[static_cast<size_t>(i - 1)] + (i - 1) * d2 * mu[static_cast<size_t>(i - 2)];
    return {mu.begin() + 1, mu.end()};
}

std::vector<double> compound_poisson_cumulants(double lambda, double dt,
                                               std::span<const double> moments) {
    std::vector<double> kappa(moments.size());
    for (size_t i = 0; i < moments.size(); ++i) kappa[i] = lambda * dt * moments[i];
    return kappa;
}

double mean_jump(double gamma_prime, double delta) {
    return std::expm1(gamma_prime + 0.5 * delta * delta);
}

namespace {

double bs_core(double s0, double k, double r, double d, double sigma, double tau,
               OptionKind kind) {
    // sigma or tau at zero degenerate to the discounted-forward intrinsic value
    if (sigma <= 0.0 || tau <= 0.0) {
        const double fwd = s0 * std::exp(-d * tau) - k * std::exp(-r * tau);
        return kind == OptionKind::call ? std::max(fwd, 0.0) : std::max(-fwd, 0.0);
    }
    const double st = sigma * std::sqrt(tau);
    const double d1 = (std::log(s0 / k) + (r - d + 0.5 * sigma * sigma) * tau) / st;
    const double d2 = d1 - st;
    if (kind == OptionKind::call)
        return s0 * std::exp(-d * tau) * norm_cdf(d1) - k * std::exp(-r * tau) * norm_cdf(d2);
    return k * std::exp(-r * tau) * norm_cdf(-d2) - s0 * std::exp(-d * tau) * norm_cdf(-d1);
}

}  // namespace

double black_scholes_price(const MarketParams& mkt, OptionKind kind) {
    mkt.validate();
    return bs_core(mkt.S0, mkt.K, mkt.r, mkt.d, mkt.sigma, mkt.tau, kind);
}

double merton_series_price(const MarketParams& mkt, OptionKind kind, double tol) {
    mkt.validate();
    if (!(tol > 0.0)) throw std::invalid_argument("merton_series_price: tol must be > 0");

    const double jbar = mkt.mean_jump();
    const double lam_prime = mkt.lambda * (1.0 + jbar);
    const double mean = lam_prime * mkt.tau;  // Poisson parameter of the weights
    const double payoff_cap = std::max(mkt.S0, mkt.K);
    const double log_one_plus_jbar = std::log1p(jbar);
    const double sigma2 = mkt.sigma * mkt.sigma;
    const double delta2 = mkt.delta * mkt.delta;

    // weights in log space so very large lambda' tau cannot underflow the seed
    double total = 0.0;
    double remaining = 1.0;  // Poisson tail mass past the last term taken
    double log_w = -mean;    // ln weight_k, k = 0
    for (int k = 0;; ++k) {
        const double w = std::exp(log_w);
        const double sigma_k = std::sqrt(sigma2 + k * delta2 / mkt.tau);
        const double r_k = mkt.r - mkt.lambda * jbar + k * log_one_plus_jbar / mkt.tau;
        total += w * bs_core(mkt.S0, mkt.K, r_k, mkt.d, sigma_k, mkt.tau, kind);
        remaining -= w;
        if (remaining * payoff_cap < tol) break;
        if (k > 100000) throw std::runtime_error("merton_series_price: series failed to converge");
        log_w += std::log(mean) - std::log1p(static_cast<double>(k));
    }
    return total;
}

}  // namespace hsl
