#include "hslattice/kernels.hpp"

#include <cmath>
#include <vector>

namespace hsl {

namespace {

// Shared per-element bodies. Both execution policies call exactly these, so
// the arithmetic (and therefore the bits) cannot depend on the policy.

inline double conv_one(std::span<const double> in, long in_lo, long in_hi,
                       std::span<const double> taps, int nu, long l) {
    auto read = [&](long s) {
        return (s < in_lo || s > in_hi) ? 0.0 : in[static_cast<size_t>(s - in_lo)];
    };
    // +-k taps are paired so a symmetric law stays bitwise symmetric
    double acc = taps[static_cast<size_t>(nu)] * read(l);
    for (int k = 1; k <= nu; ++k) {
        const double from_below = taps[static_cast<size_t>(nu + k)] * read(l - k);
        const double from_above = taps[static_cast<size_t>(nu - k)] * read(l + k);
        acc += from_below + from_above;
    }
    return acc;
}

inline double level_sum(std::span<const double> diff, std::span<const double> pmf,
                        double s_level, double strike, OptionKind kind) {
    double acc = 0.0;
    if (kind == OptionKind::call) {
        for (size_t j = 0; j < diff.size(); ++j) {
            const double s = s_level * diff[j];
            if (s > strike) acc += (s - strike) * pmf[j];
        }
    } else {
        for (size_t j = 0; j < diff.size(); ++j) {
            const double s = s_level * diff[j];
            if (s < strike) acc += (strike - s) * pmf[j];
        }
    }
    return acc;
}

inline double node_value(const BackwardStep& bs, int j, long l) {
    double acc = 0.0;
    const int i_dst = bs.i_src - 1;
    for (int k = -bs.nu; k <= bs.nu; ++k) {
        const double qk = bs.taps[static_cast<size_t>(k + bs.nu)];
        const long lc = l + k;
        double up, dn;
        if (lc >= bs.src_lo && lc <= bs.src_hi) {
            const size_t w = static_cast<size_t>(bs.src_hi - bs.src_lo + 1);
            const size_t col = static_cast<size_t>(lc - bs.src_lo);
            up = bs.src[static_cast<size_t>(j + 1) * w + col];
            dn = bs.src[static_cast<size_t>(j) * w + col];
        } else if (bs.outside == OutsidePolicy::constant) {
            up = dn = bs.outside_value;
        } else {  // OutsidePolicy::intrinsic
            const double e = bs.h * static_cast<double>(lc);
            up = payoff(bs.s0 * std::exp((2.0 * (j + 1) - bs.i_src) * bs.sig_sqdt + e),
                        bs.strike, bs.kind);
            dn = payoff(bs.s0 * std::exp((2.0 * j - bs.i_src) * bs.sig_sqdt + e),
                        bs.strike, bs.kind);
        }
        acc += qk * (bs.p * up + (1.0 - bs.p) * dn);
    }
    double v = bs.disc * acc;
    if (bs.early_exercise) {
        const double s = bs.s0 * std::exp((2.0 * j - i_dst) * bs.sig_sqdt +
                                          bs.h * static_cast<double>(l));
        v = std::max(v, payoff(s, bs.strike, bs.kind));
    }
    return v;
}

}  // namespace

void pmf_convolve_step(std::span<const double> in, long in_lo,
                       std::span<double> out, long out_lo,
                       std::span<const double> taps, int nu, Exec exec) {
    const long in_hi = in_lo + static_cast<long>(in.size()) - 1;
    const long m = static_cast<long>(out.size());
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (long i = 0; i < m; ++i)
            out[static_cast<size_t>(i)] = conv_one(in, in_lo, in_hi, taps, nu, out_lo + i);
    } else {
        for (long i = 0; i < m; ++i)
            out[static_cast<size_t>(i)] = conv_one(in, in_lo, in_hi, taps, nu, out_lo + i);
    }
}

double terminal_payoff_sum(std::span<const double> probs, long level_lo,
                           std::span<const double> diff, std::span<const double> pmf,
                           double s0, double h, double strike, OptionKind kind,
                           Exec exec, std::uint64_t* nodes) {
    const long m = static_cast<long>(probs.size());
    std::vector<double> part(static_cast<size_t>(m), 0.0);
    std::uint64_t visited = 0;
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static) reduction(+ : visited)
        for (long i = 0; i < m; ++i) {
            const double q = probs[static_cast<size_t>(i)];
            if (q == 0.0) continue;
            const double s_level = s0 * std::exp(h * static_cast<double>(level_lo + i));
            part[static_cast<size_t>(i)] = q * level_sum(diff, pmf, s_level, strike, kind);
            visited += diff.size();
        }
    } else {
        for (long i = 0; i < m; ++i) {
            const double q = probs[static_cast<size_t>(i)];
            if (q == 0.0) continue;
            const double s_level = s0 * std::exp(h * static_cast<double>(level_lo + i));
            part[static_cast<size_t>(i)] = q * level_sum(diff, pmf, s_level, strike, kind);
            visited += diff.size();
        }
    }
    if (nodes) *nodes += visited;
    double total = 0.0;
    for (long i = 0; i < m; ++i) total += part[static_cast<size_t>(i)];
    return total;
}

void backward_step(const BackwardStep& bs, Exec exec) {
    const int rows = bs.i_src;  // dst rows: j = 0..i_src-1
    const long wid = bs.dst_hi - bs.dst_lo + 1;
    if (exec == Exec::parallel) {
#pragma omp parallel for collapse(2) schedule(static)
        for (int j = 0; j < rows; ++j)
            for (long li = 0; li < wid; ++li)
                bs.dst[static_cast<size_t>(j) * static_cast<size_t>(wid) +
                       static_cast<size_t>(li)] = node_value(bs, j, bs.dst_lo + li);
    } else {
        for (int j = 0; j < rows; ++j)
            for (long li = 0; li < wid; ++li)
                bs.dst[static_cast<size_t>(j) * static_cast<size_t>(wid) +
                       static_cast<size_t>(li)] = node_value(bs, j, bs.dst_lo + li);
    }
}

}  // namespace hsl
