#include "lqcubic/sing_integral.hpp"

#include <cmath>
#include <random>

#include "lqcubic/errors.hpp"
#include "lqcubic/parallel.hpp"

namespace lqcubic {

namespace {

constexpr u64 kBlockSamples = u64{1} << 16;

struct Coeffs {
    double a[7];
    double q1[6], q2[6];
};

Coeffs coeffs(const CubicForm& f) {
    Coeffs c{};
    for (int i = 0; i < 7; ++i) c.a[i] = static_cast<double>(f.a[i]);
    for (int i = 0; i < 6; ++i) {
        c.q1[i] = static_cast<double>(f.q1[i]);
        c.q2[i] = static_cast<double>(f.q2[i]);
    }
    return c;
}

inline double quad(const double* q, double x, double y, double z) {
    return q[0] * x * x + q[1] * y * y + q[2] * z * z + q[3] * y * z + q[4] * z * x + q[5] * x * y;
}

inline double eval(const Coeffs& c, const double* x) {
    return (c.a[0] * x[0] + c.a[1] * x[1] + c.a[2] * x[2]) * quad(c.q1, x[0], x[1], x[2]) +
           (c.a[3] * x[3] + c.a[4] * x[4] + c.a[5] * x[5]) * quad(c.q2, x[3], x[4], x[5]) +
           c.a[6] * x[6] * x[6] * x[6];
}

// Uniform in [0,1) from the top 53 bits; std::generate_canonical is not specified bit-for-bit.
inline double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Counts hits in sample block `b` of stream `stream`.
u64 block_hits(const Coeffs& c, bool sym, double theta, double eps, u64 seed, u64 stream, u64 b, u64 n) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(b),
                      static_cast<std::uint32_t>(b >> 32)};
    std::mt19937_64 rng(seq);
    u64 hits = 0;
    double x[7];
    for (u64 s = 0; s < n; ++s) {
        for (double& xi : x) xi = sym ? 2 * unit(rng) - 1 : unit(rng);
        hits += std::abs(eval(c, x) - theta) < eps;
    }
    return hits;
}

SlabEstimate slab(const CubicForm& form, BoxKind box, double theta, double eps, u64 samples, u64 seed,
                  u64 stream) {
    if (!(eps > 0)) throw InvalidArgument("epsilon must be positive");
    if (samples < kMinSlabSamples)
        throw InvalidArgument("at least " + std::to_string(kMinSlabSamples) + " samples are required");
    form.validate();
    const Coeffs c = coeffs(form);
    const bool sym = box == BoxKind::Sym;
    const u64 blocks = (samples + kBlockSamples - 1) / kBlockSamples;
    std::vector<u64> hits(blocks);
    parallel_for(blocks, [&](std::size_t b) {
        const u64 n = std::min(kBlockSamples, samples - b * kBlockSamples);
        hits[b] = block_hits(c, sym, theta, eps, seed, stream, b, n);
    });
    u64 total = 0;
    for (u64 h : hits) total += h;
    const double vol = sym ? 128.0 : 1.0;
    const double scale = vol / (2 * eps);
    const double p = static_cast<double>(total) / static_cast<double>(samples);
    SlabEstimate e;
    e.epsilon = eps;
    e.samples = samples;
    e.hits = total;
    e.seed = seed;
    e.value = scale * p;
    // Sample standard deviation of the Bernoulli indicator.
    const double n = static_cast<double>(samples);
    e.stderr_ = scale * std::sqrt(p * (1 - p) * n / (n - 1)) / std::sqrt(n);
    return e;
}

// Whether f > 0 somewhere on [0,1]^7: the grid {0,1/4,...,1}^7, then random points.
bool positive_somewhere(const CubicForm& form, u64 seed) {
    const Coeffs c = coeffs(form);
    double x[7];
    for (int idx = 0; idx < 78125; ++idx) {
        int r = idx;
        for (double& xi : x) {
            xi = (r % 5) / 4.0;
            r /= 5;
        }
        if (eval(c, x) > 0) return true;
    }
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    for (int s = 0; s < 100000; ++s) {
        for (double& xi : x) xi = unit(rng);
        if (eval(c, x) > 0) return true;
    }
    return false;
}

} // namespace

SlabEstimate slab_volume(const CubicForm& form, BoxKind box, double theta, double epsilon, u64 samples,
                         u64 seed) {
    return slab(form, box, theta, epsilon, samples, seed, 0);
}

IntegralEstimate singular_integral(const CubicForm& form, BoxKind box, IntegralTarget target, u64 samples,
                                   u64 seed, double eps0) {
    if (target == IntegralTarget::Zero && box != BoxKind::Sym)
        throw InvalidArgument("J0 is defined on the symmetric box [-1,1]^7");
    if (!(eps0 > 0)) throw InvalidArgument("eps0 must be positive");
    form.validate();
    IntegralEstimate out;
    if (target == IntegralTarget::Normalized && box != BoxKind::Sym && !positive_somewhere(form, seed)) {
        out.vanishing = true;
        out.warnings.push_back("f <= 0 on [0,1]^7 at every probe, so J1 = 0");
        return out;
    }
    const double theta = target == IntegralTarget::Zero ? 0.0 : 1.0;
    for (int k = 0; k < 3; ++k)
        out.ladder.push_back(slab(form, box, theta, eps0 / (1 << k), samples, seed, static_cast<u64>(k + 1)));

    // Least squares v = J + s eps; J = sum_i w_i v_i.
    double se = 0, see = 0;
    for (const auto& e : out.ladder) {
        se += e.epsilon;
        see += e.epsilon * e.epsilon;
    }
    const double n = static_cast<double>(out.ladder.size());
    const double det = n * see - se * se;
    double value = 0, var = 0;
    for (const auto& e : out.ladder) {
        const double w = (see - se * e.epsilon) / det;
        value += w * e.value;
        var += w * w * e.stderr_ * e.stderr_;
    }
    double slope = 0;
    for (const auto& e : out.ladder) slope += (n * e.epsilon - se) / det * e.value;
    double rss = 0;
    for (const auto& e : out.ladder) {
        const double r = e.value - (value + slope * e.epsilon);
        rss += r * r;
    }
    out.value = value;
    out.stderr_ = std::sqrt(var);
    out.residual = std::sqrt(rss / n);
    if (out.value < 0) out.warnings.push_back("extrapolated density is negative; treat as zero");
    return out;
}

} // namespace lqcubic
