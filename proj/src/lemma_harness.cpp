#include "lqcubic/lemma_harness.hpp"

#include <cmath>

#include "lqcubic/errors.hpp"
#include "lqcubic/parallel.hpp"
#include "lqcubic/rep_counting.hpp"

namespace lqcubic {

namespace {

i64 pow_mod(i64 base, int exp, i64 q) {
    i128 r = 1 % q, b = mod(base, q);
    for (; exp > 0; exp >>= 1) {
        if (exp & 1) r = r * b % q;
        b = b * b % q;
    }
    return static_cast<i64>(r);
}

u64 scan_power(int k, i64 q, i64 m) {
    const i64 target = mod(m, q);
    u64 count = 0;
    for (i64 x = 1; x <= q; ++x) count += pow_mod(x, k, q) == target;
    return count;
}

void check_surface(i64 A, i64 P) {
    if (A == 0) throw InvalidArgument("A must be nonzero");
    if (P < 0) throw InvalidArgument("P must be nonnegative");
    if (P > kMaxSurfaceRadius)
        throw ResourceError("P = " + std::to_string(P) + " exceeds the surface guard " +
                            std::to_string(kMaxSurfaceRadius));
}

} // namespace

u64 power_congruence_count(int k, i64 q, i64 m) {
    if (k < 2) throw InvalidArgument("k must be at least 2");
    if (q < 1) throw InvalidArgument("q must be positive");
    if (q > kMaxPowerModulus)
        throw ResourceError("q = " + std::to_string(q) + " exceeds the guard " + std::to_string(kMaxPowerModulus));
    if (q <= 10'000) return scan_power(k, q, m);
    u64 count = 1;
    for (auto [p, e] : factorize(q)) count *= scan_power(k, ipow(p, e), m);
    return count;
}

u64 special_surface_count(i64 A, i128 N, i64 P) {
    check_surface(A, P);
    const i64 n = 2 * P + 1;
    std::vector<u64> per_x(static_cast<std::size_t>(n), 0);
    parallel_for(per_x.size(), [&](std::size_t idx) {
        const i64 x = static_cast<i64>(idx) - P;
        if (x == 0) return;
        u64 count = 0;
        for (i64 w = -P; w <= P; ++w) {
            const i128 v = N - static_cast<i128>(A) * w * w * w;
            if (v == 0 || v % x != 0) continue;
            const i128 t = v / x; // x y + z^2 = t
            for (i64 z = -P; z <= P; ++z) {
                const i128 r = t - static_cast<i128>(z) * z;
                if (r % x != 0) continue;
                const i128 y = r / x;
                count += y >= -P && y <= P;
            }
        }
        per_x[idx] = count;
    });
    u64 total = 0;
    for (u64 c : per_x) total += c;
    return total;
}

u64 special_surface_count_naive(i64 A, i128 N, i64 P) {
    check_surface(A, P);
    u64 count = 0;
    for (i64 x = -P; x <= P; ++x)
        for (i64 y = -P; y <= P; ++y)
            for (i64 z = -P; z <= P; ++z) {
                const i128 v = static_cast<i128>(x) * (static_cast<i128>(x) * y + static_cast<i128>(z) * z);
                if (v == 0) continue;
                for (i64 w = -P; w <= P; ++w) count += v + static_cast<i128>(A) * w * w * w == N;
            }
    return count;
}

GrowthAudit growth_audit(const std::function<double(i64)>& counter, std::span<const i64> sizes,
                         double claimed_exponent) {
    if (sizes.size() < 3) throw InvalidArgument("growth audit needs at least three sizes");
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] < 1) throw InvalidArgument("sizes must be positive");
        if (i && sizes[i] <= sizes[i - 1]) throw InvalidArgument("sizes must be strictly increasing");
    }
    GrowthAudit g;
    g.claimed_exponent = claimed_exponent;
    for (i64 s : sizes) g.probes.push_back({s, counter(s)});
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& pr : g.probes) {
        const double c = pr.count / std::pow(static_cast<double>(pr.size), claimed_exponent);
        g.max_constant = std::max(g.max_constant, c);
        if (pr.count <= 0) continue;
        const double x = std::log(static_cast<double>(pr.size)), y = std::log(pr.count);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    const double det = n * sxx - sx * sx;
    g.fitted_exponent = n >= 2 && det > 0 ? (n * sxy - sx * sy) / det : 0.0;
    return g;
}

GrowthAudit second_moment_audit(const Block& block, std::span<const i64> P_list) {
    return growth_audit(
        [&](i64 P) { return static_cast<double>(value_histogram(block, BoxKind::Sym, P).second_moment()); },
        P_list, 3.0);
}

} // namespace lqcubic
