#pragma once

#include <span>
#include <utility>
#include <vector>

#include "lqcubic/form_model.hpp"

namespace lqcubic {

/// Largest supported box radius for exhaustive triple enumeration.
inline constexpr i64 kMaxHistogramRadius = 512;

/// Value counts c(n) = #{(x,y,z) in I^3 : L Q = n} for n != 0, plus the zero count N_i.
struct ValueHistogram {
    std::vector<std::pair<i64, u64>> counts; ///< sorted by n, no key 0
    u64 zero_count = 0;
    i64 P = 0;
    BoxKind box = BoxKind::Sym;

    /// c(n); c(0) = 0 by convention.
    u64 at(i64 n) const;
    u64 total() const;
    /// Sum of c(n)^2 over n != 0.
    u128 second_moment() const;
};

ValueHistogram value_histogram(const Block& block, BoxKind box, i64 P);

/// Terms of R(N) following F = (N1 + F1)(N2 + F2) F3 expanded.
struct RepresentationBreakdown {
    u64 n1n2_chi = 0; ///< N1 N2 chi(N)
    u64 n1_c2 = 0;    ///< N1 sum_x7 c2(N - a7 x7^3)
    u64 n2_c1 = 0;    ///< N2 sum_x7 c1(N - a7 x7^3)
    u64 c1_c2 = 0;    ///< sum_x7 sum_n c1(n) c2(N - a7 x7^3 - n)
    u64 total() const { return n1n2_chi + n1_c2 + n2_c1 + c1_c2; }
};

RepresentationBreakdown representation_breakdown(const CubicForm& form, i128 N, BoxKind box, i64 P);
RepresentationBreakdown representation_breakdown(const ValueHistogram& h1, const ValueHistogram& h2, i64 a7,
                                                 i128 N);

/// Card{x in I^7 : f(x) = N} via histogram convolution.
u64 count_representations(const CubicForm& form, i128 N, BoxKind box, i64 P);
/// R(0; P) on the symmetric box; any other box is rejected.
u64 count_zeros(const CubicForm& form, i64 P, BoxKind box = BoxKind::Sym);

u64 lattice_space_count(const LinearSpace& space, BoxKind box, i64 P);

struct UnionCount {
    u64 count = 0;
    i64 P = 0;
    double delta_estimate = 0; ///< count / P^4
};

/// Exact size of the union by inclusion-exclusion over intersections of the spaces.
UnionCount union_space_count(std::span<const LinearSpace> spaces, BoxKind box, i64 P);

struct DeltaProbe {
    i64 P = 0;
    u64 n1 = 0, n2 = 0;
    u64 union_count = 0;
    double delta0 = 0, delta1 = 0, delta2 = 0, delta3 = 0, delta4 = 0;
};

struct MainTermReport {
    BoxKind box = BoxKind::Sym;
    std::vector<DeltaProbe> probes;
    /// Least-squares fits of ratio(P) = delta + beta / P.
    double delta0 = 0, delta1 = 0, delta2 = 0, delta3 = 0, delta4 = 0;
    double beta0 = 0;
};

MainTermReport delta_constants(const CubicForm& form, BoxKind box, std::span<const i64> P_list);

/// Intercept and slope of y = delta + beta / P fitted by least squares.
std::pair<double, double> fit_inverse_p(std::span<const i64> P, std::span<const double> y);

/// 1 iff N = a7 x^3 for some x in I.
int chi(i128 N, i64 a7, BoxKind box, i64 P);

} // namespace lqcubic
