#include "hslattice/truncation.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hsl {

const char* to_string(BoundMethod m) {
    switch (m) {
        case BoundMethod::theoretical_call: return "theoretical_call";
        case BoundMethod::theoretical_put: return "theoretical_put";
        case BoundMethod::theoretical_american_put: return "theoretical_american_put";
        case BoundMethod::numerical_call: return "numerical_call";
        case BoundMethod::numerical_put: return "numerical_put";
    }
    return "?";
}

TruncationConstants truncation_constants(const LatticeSpec& spec) {
    const int nu = spec.nu;
    TruncationConstants tc;
    tc.W.resize(static_cast<size_t>(nu));
    tc.M.resize(static_cast<size_t>(nu));
    tc.W[0] = spec.w_consts[0];
    for (int i = 1; i < nu; ++i)
        tc.W[static_cast<size_t>(i)] =
            spec.w_consts[static_cast<size_t>(i)] +
            std::pow(tc.W[static_cast<size_t>(i - 1)], (i + 1.0) / i);
    for (int i = 1; i <= nu; ++i) {
        const double w = tc.W[static_cast<size_t>(i - 1)];
        tc.M[static_cast<size_t>(i - 1)] = std::max(w, std::pow(w, (-i + 1.0) / i));
    }
    const double w_nu = tc.W[static_cast<size_t>(nu - 1)];
    tc.G = 2.0 * nu * std::max(w_nu, 1.0) * std::exp(w_nu);
    for (int i = 1; i <= nu - 1; ++i) {
        const double m = tc.M[static_cast<size_t>(i - 1)];
        tc.G *= m * m;
    }
    const double h = spec.h;
    double sum_up = 0.0, sum_dn = 0.0;
    for (int r = 0; r < nu; ++r) {
        sum_up += std::exp(h * r);
        sum_dn += std::exp(-h * r);
    }
    const double wsq = std::max(w_nu * w_nu, 1.0);
    tc.k_plus = sum_up + nu * wsq * std::exp(2.0 * h * nu) * sum_dn;
    tc.k_minus = sum_dn + nu * wsq * sum_up;
    tc.w1 = spec.w_consts[0];
    return tc;
}

namespace {

long clamp_barrier(double raw, long max_level) {
    if (!std::isfinite(raw)) throw std::domain_error("truncation bound is not finite");
    if (raw >= static_cast<double>(max_level)) return max_level;
    const long v = static_cast<long>(raw);
    return v < 1 ? 1 : v;
}

double checked_log(double x, const char* what) {
    if (!(x > 0.0)) throw std::domain_error(std::string("log argument not positive in ") + what);
    return std::log(x);
}

void require_epsilon(double epsilon) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("truncation: epsilon must be > 0");
}

}  // namespace

TruncationBounds theoretical_bounds_call(const LatticeSpec& spec, const TruncationConstants& tc,
                                         const MarketParams& mkt, double epsilon) {
    require_epsilon(epsilon);
    const int nu = spec.nu;
    const double h = spec.h;
    const double w_nu = tc.W[static_cast<size_t>(nu - 1)];
    const double at = (spec.alpha - mkt.r) * mkt.tau;
    const double common = -std::log(epsilon) + checked_log(4.0 * mkt.S0 * tc.G, "call bound") + at;
    const double floor_term = nu * std::ceil(2.0 * std::exp(h * nu) * w_nu - 1.0) - 1.0;
    const double k_raw = std::max(
        nu * std::ceil(std::exp(h * nu + 1.0) * w_nu + common + checked_log(tc.k_plus, "k_+")) - 1.0,
        floor_term);
    const double l_raw = std::max(
        nu * std::ceil(std::exp(-h * nu + 1.0) * w_nu + common + checked_log(tc.k_minus, "k_-")) - 1.0,
        floor_term);
    TruncationBounds b;
    b.method = BoundMethod::theoretical_call;
    b.epsilon = epsilon;
    b.kbar = clamp_barrier(k_raw, spec.max_level());
    b.lbar = clamp_barrier(l_raw, spec.max_level());
    if (nu == 1) {
        // the single-jump-node formulas carry the same guarantee; keep the cheaper pair
        const TruncationBounds s = theoretical_bounds_call_nu1(spec, tc, mkt, epsilon);
        b.kbar = std::min(b.kbar, s.kbar);
        b.lbar = std::min(b.lbar, s.lbar);
    }
    return b;
}

namespace {

TruncationBounds put_style_bounds(const LatticeSpec& spec, const TruncationConstants& tc,
                                  const MarketParams& mkt, double epsilon, bool with_rtau,
                                  BoundMethod method) {
    require_epsilon(epsilon);
    const int nu = spec.nu;
    const double w_nu = tc.W[static_cast<size_t>(nu - 1)];
    double interior = w_nu * M_E - std::log(epsilon) +
                      checked_log(4.0 * nu * (nu + 1.0) * mkt.K * tc.G, "put bound");
    if (with_rtau) interior -= mkt.r * mkt.tau;
    const double raw = std::max(nu * std::ceil(2.0 * w_nu - 1.0) - 1.0,
                                nu * std::ceil(interior) - 1.0);
    TruncationBounds b;
    b.method = method;
    b.epsilon = epsilon;
    b.kbar = clamp_barrier(raw, spec.max_level());
    b.lbar = b.kbar;
    return b;
}

}  // namespace

TruncationBounds theoretical_bounds_put(const LatticeSpec& spec, const TruncationConstants& tc,
                                        const MarketParams& mkt, double epsilon) {
    TruncationBounds b =
        put_style_bounds(spec, tc, mkt, epsilon, true, BoundMethod::theoretical_put);
    if (spec.nu == 1) {
        const TruncationBounds s = theoretical_bounds_put_nu1(spec, tc, mkt, epsilon);
        b.kbar = std::min(b.kbar, s.kbar);
        b.lbar = std::min(b.lbar, s.lbar);
    }
    return b;
}

TruncationBounds theoretical_bounds_american_put(const LatticeSpec& spec,
                                                 const TruncationConstants& tc,
                                                 const MarketParams& mkt, double epsilon) {
    // printed without the -r tau term; the larger barrier stays on the safe side
    return put_style_bounds(spec, tc, mkt, epsilon, false, BoundMethod::theoretical_american_put);
}

TruncationBounds theoretical_bounds_call_nu1(const LatticeSpec& spec,
                                             const TruncationConstants& tc,
                                             const MarketParams& mkt, double epsilon) {
    require_epsilon(epsilon);
    if (spec.nu != 1)
        throw std::invalid_argument("theoretical_bounds_call_nu1: lattice must have nu = 1");
    const double w = tc.w1, h = spec.h;
    const double c = w + (spec.alpha - mkt.r) * mkt.tau - 1.0 +
                     checked_log(4.0 * mkt.S0, "nu=1 call bound");
    const double neg_log_eps = -std::log(epsilon);
    const double l_raw =
        std::max({neg_log_eps + w * std::exp(-h + 1.0) + std::log(2.0 + std::exp(h) * w) + c,
                  2.0 * w - 2.0, 2.0 * std::exp(h) * w - 3.0});
    const double k_raw =
        std::max(neg_log_eps + w * std::exp(h + 1.0) + std::log(2.0 + std::exp(-h) * w) + c,
                 2.0 * std::exp(h) * w - 2.0);
    TruncationBounds b;
    b.method = BoundMethod::theoretical_call;
    b.epsilon = epsilon;
    b.kbar = clamp_barrier(std::ceil(k_raw), spec.max_level());
    b.lbar = clamp_barrier(std::ceil(l_raw), spec.max_level());
    return b;
}

TruncationBounds theoretical_bounds_put_nu1(const LatticeSpec& spec,
                                            const TruncationConstants& tc,
                                            const MarketParams& mkt, double epsilon) {
    require_epsilon(epsilon);
    if (spec.nu != 1)
        throw std::invalid_argument("theoretical_bounds_put_nu1: lattice must have nu = 1");
    const double w = tc.w1;
    const double c = w * (M_E + 1.0) - mkt.r * mkt.tau - 1.0 +
                     checked_log(4.0 * mkt.K, "nu=1 put bound") + std::log(2.0 + w);
    const double raw = std::max(-std::log(epsilon) + c, 2.0 * w - 2.0);
    TruncationBounds b;
    b.method = BoundMethod::theoretical_put;
    b.epsilon = epsilon;
    b.kbar = clamp_barrier(std::ceil(raw), spec.max_level());
    b.lbar = b.kbar;
    return b;
}

TruncationBounds numerical_bounds(const LatticeSpec& spec, const JumpDistribution& qtilde,
                                  const MarketParams& mkt, double epsilon, OptionKind kind) {
    require_epsilon(epsilon);
    if (qtilde.kind != DistKind::enlarged)
        throw std::invalid_argument("numerical_bounds: needs the enlarged distribution");
    const long top = spec.max_level();
    TruncationBounds b;
    b.epsilon = epsilon;
    if (kind == OptionKind::call) {
        b.method = BoundMethod::numerical_call;
        b.eta = epsilon / (2.0 * std::exp((spec.alpha - mkt.r) * mkt.tau) * mkt.S0);
        double se = 0.0;
        long kbar = top;  // a search that never crosses its threshold keeps the full tree
        for (long i = top; i >= 1; --i) {
            se += (spec.nu + 1.0) * std::exp(spec.h * static_cast<double>(i)) * qtilde.at(i);
            if (se >= b.eta) {
                kbar = i;
                break;
            }
        }
        b.kbar = kbar;
        const double thr = b.eta / (spec.nu * std::exp(spec.h * static_cast<double>(kbar)) + 1.0);
        double s = 0.0;
        long lbar = top;
        for (long i = top; i >= 1; --i) {
            s += qtilde.at(i);
            if (s >= thr) {
                lbar = i;
                break;
            }
        }
        b.lbar = lbar;
    } else {
        b.method = BoundMethod::numerical_put;
        b.eta = epsilon / (2.0 * std::exp(-mkt.r * mkt.tau) * mkt.K * (spec.nu + 1.0));
        double s = 0.0;
        long kbar = top;
        for (long i = top; i >= 1; --i) {
            s += qtilde.at(i);
            if (s >= b.eta) {
                kbar = i;
                break;
            }
        }
        b.kbar = kbar;
        b.lbar = kbar;
    }
    return b;
}

}  // namespace hsl
