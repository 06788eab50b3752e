#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace hsl {

enum class OptionKind { call, put };
enum class Exercise { european, american };

struct OptionSpec {
    OptionKind kind = OptionKind::call;
    Exercise exercise = Exercise::european;
};

/// Contract and model inputs for the jump-diffusion dynamics
///   dS/S = (r - d - lambda*jbar) dt + sigma dz + J dq,  ln(1+J) ~ N(gamma_prime, delta^2).
struct MarketParams {
    double S0 = 0.0;           // spot
    double K = 0.0;            // strike
    double r = 0.0;            // risk-free rate, continuous compounding
    double d = 0.0;            // continuous dividend yield
    double sigma = 0.0;        // diffusion volatility, per sqrt(year)
    double lambda = 0.0;       // jump intensity, per year
    double gamma_prime = 0.0;  // mean of ln(1+J)
    double delta = 0.0;        // std dev of ln(1+J)
    double tau = 0.0;          // time to maturity, years

    // E(J) = e^{gamma' + delta^2/2} - 1
    double mean_jump() const { return std::expm1(gamma_prime + 0.5 * delta * delta); }

    void validate() const {
        if (!(S0 > 0.0)) throw std::invalid_argument("MarketParams: S0 must be > 0");
        if (!(K > 0.0)) throw std::invalid_argument("MarketParams: K must be > 0");
        if (!(sigma > 0.0)) throw std::invalid_argument("MarketParams: sigma must be > 0");
        if (!(tau > 0.0)) throw std::invalid_argument("MarketParams: tau must be > 0");
        if (!(lambda >= 0.0)) throw std::invalid_argument("MarketParams: lambda must be >= 0");
        if (!(delta >= 0.0)) throw std::invalid_argument("MarketParams: delta must be >= 0");
        if (!std::isfinite(S0) || !std::isfinite(K) || !std::isfinite(r) || !std::isfinite(d) ||
            !std::isfinite(sigma) || !std::isfinite(lambda) || !std::isfinite(gamma_prime) ||
            !std::isfinite(delta) || !std::isfinite(tau))
            throw std::invalid_argument("MarketParams: all fields must be finite");
    }
};

inline double payoff(double s, double strike, OptionKind kind) {
    return kind == OptionKind::call ? std::max(s - strike, 0.0) : std::max(strike - s, 0.0);
}

inline const char* to_string(OptionKind k) { return k == OptionKind::call ? "call" : "put"; }
inline const char* to_string(Exercise e) { return e == Exercise::european ? "european" : "american"; }

}  // namespace hsl
