#include "oracles.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace hsl::test {

EnumerationOracle enumerate_paths(const MarketParams& mkt, const LatticeSpec& spec, long kbar,
                                  long lbar, OptionKind kind) {
    const int n = spec.n, nu = spec.nu;
    double total_paths = std::pow(2.0 * (2 * nu + 1), n);
    if (total_paths > 4e6)
        throw std::invalid_argument("enumerate_paths: too many paths; reduce n or nu");

    EnumerationOracle out;
    out.lo = -static_cast<long>(nu) * n;
    const size_t width = static_cast<size_t>(2 * nu * n + 1);
    out.q_exact.assign(width, 0.0);
    out.qbar_exact.assign(width, 0.0);
    out.cross_up.assign(width, 0.0);
    out.cross_dn.assign(width, 0.0);

    const double disc = std::exp(-mkt.r * mkt.tau);

    // depth-first over (diffusion move, jump move) pairs per step
    std::function<void(int, int, long, bool, bool, double)> walk =
        [&](int step, int ups, long level, bool over, bool under, double prob) {
            if (step == n) {
                const double s =
                    mkt.S0 * std::exp((2.0 * ups - n) * spec.sig_sqdt +
                                      spec.h * static_cast<double>(level));
                const double pay = payoff(s, mkt.K, kind);
                const size_t idx = static_cast<size_t>(level - out.lo);
                out.price += prob * pay;
                out.q_exact[idx] += prob;
                if (over) out.cross_up[idx] += prob;
                if (under) out.cross_dn[idx] += prob;
                if (!over && !under) {
                    out.qbar_exact[idx] += prob;
                    out.price_within += prob * pay;
                }
                if (level >= -lbar && level <= kbar) out.price_type_a += prob * pay;
                return;
            }
            for (int k = -nu; k <= nu; ++k) {
                const double qk = spec.q_at(k);
                if (qk == 0.0) continue;
                const long nl = level + k;
                const bool nover = over || nl > kbar;
                const bool nunder = under || nl < -lbar;
                walk(step + 1, ups + 1, nl, nover, nunder, prob * qk * spec.p);
                walk(step + 1, ups, nl, nover, nunder, prob * qk * (1.0 - spec.p));
            }
        };
    walk(0, 0, 0, false, false, 1.0);

    out.price *= disc;
    out.price_within *= disc;
    out.price_type_a *= disc;
    return out;
}

double normal_moment_quadrature(double gp, double dl, int k) {
    const int steps = 20000;
    const double lo = gp - 14.0 * dl, hi = gp + 14.0 * dl;
    const double dx = (hi - lo) / steps;
    const double norm = 1.0 / (dl * std::sqrt(2.0 * M_PI));
    auto f = [&](double x) {
        const double z = (x - gp) / dl;
        return std::pow(x, k) * norm * std::exp(-0.5 * z * z);
    };
    double s = f(lo) + f(hi);
    for (int i = 1; i < steps; ++i) s += f(lo + i * dx) * (i % 2 ? 4.0 : 2.0);
    return s * dx / 3.0;
}

double bs_quadrature(const MarketParams& mkt, OptionKind kind) {
    // S_tau = S0 exp((r - d - sigma^2/2) tau + sigma sqrt(tau) z), z ~ N(0,1).
    // Integrate only the smooth in-the-money side of the payoff kink.
    const double drift = (mkt.r - mkt.d - 0.5 * mkt.sigma * mkt.sigma) * mkt.tau;
    const double vol = mkt.sigma * std::sqrt(mkt.tau);
    const double kink = (std::log(mkt.K / mkt.S0) - drift) / vol;
    const double lo = kind == OptionKind::call ? kink : -16.0;
    const double hi = kind == OptionKind::call ? 16.0 : kink;
    const int steps = 40000;
    const double dx = (hi - lo) / steps;
    const double norm = 1.0 / std::sqrt(2.0 * M_PI);
    auto f = [&](double z) {
        const double s = mkt.S0 * std::exp(drift + vol * z);
        return payoff(s, mkt.K, kind) * norm * std::exp(-0.5 * z * z);
    };
    double s = f(lo) + f(hi);
    for (int i = 1; i < steps; ++i) s += f(lo + i * dx) * (i % 2 ? 4.0 : 2.0);
    return std::exp(-mkt.r * mkt.tau) * s * dx / 3.0;
}

double qtilde_closed_form_nu1(int n, double w, double q0, long k) {
    if (k < 0) k = -k;
    double total = 0.0;
    const double lg_n = std::lgamma(n + 1.0);
    const double log_wn = std::log(w / n);
    const double log_q0 = std::log(q0);
    for (long t = 0; 2 * t <= n - k; ++t) {
        const double lt = lg_n - std::lgamma(static_cast<double>(n - k - 2 * t) + 1.0) -
                          std::lgamma(static_cast<double>(k + t) + 1.0) -
                          std::lgamma(static_cast<double>(t) + 1.0) +
                          (static_cast<double>(k) + 2.0 * t) * log_wn +
                          static_cast<double>(n - k - 2 * t) * log_q0;
        total += std::exp(lt);
    }
    return total;
}

MarketParams table1_panel_a(double strike) {
    MarketParams mkt;
    mkt.S0 = 40;
    mkt.K = strike;
    mkt.r = 0.08;
    mkt.sigma = std::sqrt(0.05);
    mkt.lambda = 5;
    mkt.gamma_prime = -0.025;  // the published grid quotes ln(1+E[J]) = 0
    mkt.delta = std::sqrt(0.05);
    mkt.tau = 1.0;
    return mkt;
}

}  // namespace hsl::test
