#pragma once

#include <functional>
#include <span>
#include <vector>

#include "lqcubic/form_model.hpp"

namespace lqcubic {

inline constexpr i64 kMaxPowerModulus = 1'000'000;
inline constexpr i64 kMaxSurfaceRadius = 200;

/// #{1 <= x <= q : x^k = m (mod q)}. Moduli above 10^4 are split into prime powers.
u64 power_congruence_count(int k, i64 q, i64 m);

/// #{|x|,|y|,|z|,|w| <= P : x(xy + z^2) != 0, x(xy + z^2) + A w^3 = N}, in O(P^3).
u64 special_surface_count(i64 A, i128 N, i64 P);
/// The same count by the O(P^4) loop.
u64 special_surface_count_naive(i64 A, i128 N, i64 P);

struct GrowthProbe {
    i64 size = 0;
    double count = 0;
};

struct GrowthAudit {
    std::vector<GrowthProbe> probes;
    double fitted_exponent = 0; ///< log-log least-squares slope
    double claimed_exponent = 0;
    double max_constant = 0; ///< max count / size^claimed
};

/// Runs counter(size) for each size (at least three, strictly increasing).
GrowthAudit growth_audit(const std::function<double(i64)>& counter, std::span<const i64> sizes,
                         double claimed_exponent);

/// sum_{n != 0} c(n)^2 on the symmetric box at each P, fitted against P^3.
GrowthAudit second_moment_audit(const Block& block, std::span<const i64> P_list);

} // namespace lqcubic
