#include "hslattice/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hslattice/analytic.hpp"

namespace hsl {

std::vector<double> solve_jump_probs(std::span<const double> cumulants, double h, int nu) {
    if (!(h > 0.0)) throw std::invalid_argument("solve_jump_probs: h must be > 0");
    if (nu < 1 || nu > 8) throw std::invalid_argument("solve_jump_probs: nu must be in [1, 8]");
    if (cumulants.size() < static_cast<size_t>(2 * nu))
        throw std::invalid_argument("solve_jump_probs: need 2*nu cumulants");

    const int m = 2 * nu + 1;
    // augmented [M | b], M[i][l+nu] = l^i, b_i = kappa_i / h^i
    std::vector<double> a(static_cast<size_t>(m) * (m + 1), 0.0);
    auto at = [&](int row, int col) -> double& {
        return a[static_cast<size_t>(row) * (m + 1) + static_cast<size_t>(col)];
    };
    for (int l = -nu; l <= nu; ++l) {
        double pw = 1.0;
        for (int i = 0; i < m; ++i) {
            at(i, l + nu) = pw;
            pw *= static_cast<double>(l);
        }
    }
    at(0, m) = 1.0;
    double hp = 1.0;
    for (int i = 1; i < m; ++i) {
        hp *= h;
        at(i, m) = cumulants[static_cast<size_t>(i - 1)] / hp;
    }

    // partial-pivot elimination; the matrix is a tiny Vandermonde on distinct
    // integer nodes, so singularity can only mean corrupted input
    for (int col = 0; col < m; ++col) {
        int piv = col;
        for (int row = col + 1; row < m; ++row)
            if (std::fabs(at(row, col)) > std::fabs(at(piv, col))) piv = row;
        if (std::fabs(at(piv, col)) < 1e-300)
            throw std::runtime_error("solve_jump_probs: singular moment system");
        if (piv != col)
            for (int c2 = col; c2 <= m; ++c2) std::swap(at(piv, c2), at(col, c2));
        for (int row = col + 1; row < m; ++row) {
            const double f = at(row, col) / at(col, col);
            if (f == 0.0) continue;
            for (int c2 = col; c2 <= m; ++c2) at(row, c2) -= f * at(col, c2);
        }
    }
    std::vector<double> q(static_cast<size_t>(m));
    for (int row = m - 1; row >= 0; --row) {
        double s = at(row, m);
        for (int col = row + 1; col < m; ++col) s -= at(row, col) * q[static_cast<size_t>(col)];
        q[static_cast<size_t>(row)] = s / at(row, row);
    }

    for (double v : q)
        if (v < -1e-12)
            throw std::domain_error(
                "solve_jump_probs: negative jump probability; parameters outside the "
                "method's validity");
    double sum = 0.0;
    for (double& v : q) {
        if (v < 0.0) v = 0.0;  // clamp tiny negatives, then renormalise
        sum += v;
    }
    for (double& v : q) v /= sum;
    return q;
}

LatticeSpec build_lattice(const MarketParams& mkt, int n, int nu, double c) {
    mkt.validate();
    if (n < 1) throw std::invalid_argument("build_lattice: n must be >= 1");
    if (nu < 1 || nu > 8) throw std::invalid_argument("build_lattice: nu must be in [1, 8]");
    if (!(c > 0.0) || c > 1.0) throw std::invalid_argument("build_lattice: c must be in (0, 1]");

    LatticeSpec spec;
    spec.n = n;
    spec.nu = nu;
    spec.c = c;
    spec.dt = mkt.tau / n;
    spec.j_bar = mkt.mean_jump();
    spec.alpha = mkt.r - mkt.d - mkt.lambda * spec.j_bar - 0.5 * mkt.sigma * mkt.sigma;
    spec.sig_sqdt = mkt.sigma * std::sqrt(spec.dt);

    const double ratio = spec.alpha * std::sqrt(spec.dt) / mkt.sigma;
    if (std::fabs(ratio) > 1.0)
        throw std::domain_error(
            "build_lattice: |alpha sqrt(dt)/sigma| > 1, diffusion probability leaves [0,1]; "
            "increase n");
    spec.p = 0.5 * (1.0 + ratio);

    spec.h = c * std::sqrt(mkt.gamma_prime * mkt.gamma_prime + mkt.delta * mkt.delta);
    if (mkt.lambda > 0.0 && spec.h == 0.0)
        throw std::domain_error(
            "build_lattice: gamma' = delta = 0 with lambda > 0 leaves no jump scale");

    if (mkt.lambda == 0.0) {
        spec.q.assign(static_cast<size_t>(2 * nu + 1), 0.0);
        spec.q[static_cast<size_t>(nu)] = 1.0;  // CRR binomial
    } else {
        const auto mus = normal_raw_moments(mkt.gamma_prime, mkt.delta, 2 * nu);
        const auto kappa = compound_poisson_cumulants(mkt.lambda, spec.dt, mus);
        spec.q = solve_jump_probs(kappa, spec.h, nu);
    }

    spec.c_consts.assign(static_cast<size_t>(2 * nu + 1), 0.0);
    for (int i = -nu; i <= nu; ++i)
        if (i != 0) spec.c_consts[static_cast<size_t>(i + nu)] = n * spec.q_at(i);
    spec.w_consts.resize(static_cast<size_t>(nu));
    for (int i = 1; i <= nu; ++i)
        spec.w_consts[static_cast<size_t>(i - 1)] =
            std::max(spec.c_consts[static_cast<size_t>(nu + i)],
                     spec.c_consts[static_cast<size_t>(nu - i)]);
    return spec;
}

namespace {

JumpDistribution convolve_n_fold(std::span<const double> taps, int n, int nu, DistKind kind,
                                 Exec exec) {
    JumpDistribution dist;
    dist.kind = kind;
    dist.lo = -static_cast<long>(nu) * n;
    dist.hi = static_cast<long>(nu) * n;
    const size_t width = static_cast<size_t>(dist.hi - dist.lo + 1);
    std::vector<double> cur(width, 0.0), next(width, 0.0);
    cur[static_cast<size_t>(-dist.lo)] = 1.0;  // level 0
    // two ping-pong buffers over the full level range; after i steps only
    // [-nu i, nu i] can be occupied, so each write covers all stale cells
    for (int i = 1; i <= n; ++i) {
        const long prev_lo = -static_cast<long>(nu) * (i - 1);
        const long prev_hi = static_cast<long>(nu) * (i - 1);
        const long w_lo = -static_cast<long>(nu) * i;
        const long w_hi = static_cast<long>(nu) * i;
        const size_t sz = static_cast<size_t>(w_hi - w_lo + 1);
        pmf_convolve_step(
            {cur.data() + (prev_lo - dist.lo), static_cast<size_t>(prev_hi - prev_lo + 1)},
            prev_lo, {next.data() + (w_lo - dist.lo), sz}, w_lo, taps, nu, exec);
        dist.cells += sz;
        std::swap(cur, next);
    }
    dist.probs = std::move(cur);
    return dist;
}

}  // namespace

JumpDistribution forward_jump_distribution(const LatticeSpec& spec, Exec exec) {
    return convolve_n_fold(spec.q, spec.n, spec.nu, DistKind::full, exec);
}

JumpDistribution enlarged_jump_distribution(const LatticeSpec& spec, Exec exec) {
    std::vector<double> taps(spec.q);
    for (int i = 1; i <= spec.nu; ++i) {
        const double w = std::max(spec.q_at(i), spec.q_at(-i));
        taps[static_cast<size_t>(spec.nu + i)] = w;
        taps[static_cast<size_t>(spec.nu - i)] = w;
    }
    return convolve_n_fold(taps, spec.n, spec.nu, DistKind::enlarged, exec);
}

JumpDistribution within_barrier_distribution(const LatticeSpec& spec, long kbar, long lbar,
                                             Exec exec) {
    if (kbar <= 0 || lbar <= 0)
        throw std::invalid_argument("within_barrier_distribution: barriers must be >= 1");
    kbar = std::min(kbar, spec.max_level());
    lbar = std::min(lbar, spec.max_level());
    JumpDistribution dist;
    dist.kind = DistKind::within_barrier;
    dist.lo = -lbar;
    dist.hi = kbar;
    dist.kbar = kbar;
    dist.lbar = lbar;
    const size_t width = static_cast<size_t>(kbar + lbar + 1);
    std::vector<double> cur(width, 0.0), next(width, 0.0);
    cur[static_cast<size_t>(lbar)] = 1.0;  // level 0
    for (int i = 1; i <= spec.n; ++i) {
        const long w_lo = std::max(-static_cast<long>(spec.nu) * i, -lbar);
        const long w_hi = std::min(static_cast<long>(spec.nu) * i, kbar);
        const size_t sz = static_cast<size_t>(w_hi - w_lo + 1);
        const long prev_lo = std::max(-static_cast<long>(spec.nu) * (i - 1), -lbar);
        const long prev_hi = std::min(static_cast<long>(spec.nu) * (i - 1), kbar);
        pmf_convolve_step(
            {cur.data() + (prev_lo - dist.lo), static_cast<size_t>(prev_hi - prev_lo + 1)},
            prev_lo, {next.data() + (w_lo - dist.lo), sz}, w_lo, spec.q, spec.nu, exec);
        dist.cells += sz;
        std::swap(cur, next);
    }
    dist.probs = std::move(cur);
    return dist;
}

std::vector<double> terminal_brownian_pmf(const LatticeSpec& spec) {
    const int n = spec.n;
    const double p = spec.p;
    std::vector<double> pmf(static_cast<size_t>(n) + 1, 0.0);
    if (p <= 0.0) {
        pmf.front() = 1.0;
        return pmf;
    }
    if (p >= 1.0) {
        pmf.back() = 1.0;
        return pmf;
    }
    const double lp = std::log(p), lq = std::log1p(-p);
    const double lgn = std::lgamma(n + 1.0);
    for (int j = 0; j <= n; ++j)
        pmf[static_cast<size_t>(j)] = std::exp(lgn - std::lgamma(j + 1.0) -
                                               std::lgamma(n - j + 1.0) + j * lp + (n - j) * lq);
    return pmf;
}

}  // namespace hsl
