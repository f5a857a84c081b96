#pragma once

#include <string>
#include <vector>

#include "lqcubic/form_model.hpp"

namespace lqcubic {

inline constexpr u64 kMinSlabSamples = 10000;
inline constexpr u64 kDefaultSlabSamples = 10'000'000;

/// (2 eps)^-1 vol{xi in B : |f(xi) - theta| < eps}, estimated by Monte Carlo.
struct SlabEstimate {
    double value = 0;
    double epsilon = 0;
    u64 samples = 0;
    u64 hits = 0;
    double stderr_ = 0;
    u64 seed = 0;
};

/// B = [-1,1]^7 for Sym, [0,1]^7 otherwise. Deterministic in (seed, samples) whatever the thread count.
SlabEstimate slab_volume(const CubicForm& form, BoxKind box, double theta, double epsilon, u64 samples,
                         u64 seed);

enum class IntegralTarget { Normalized, Zero };

struct IntegralEstimate {
    double value = 0;
    double stderr_ = 0;
    double residual = 0; ///< root-mean-square misfit of the linear-in-epsilon fit
    std::vector<SlabEstimate> ladder;
    bool vanishing = false; ///< f <= 0 on [0,1]^7, so J1 = 0
    std::vector<std::string> warnings;
};

/// J1 (Pos / NonNeg, theta = 1), J2 (Sym, theta = 1) or J0 (Sym, theta = 0), by linear extrapolation in
/// epsilon over {eps0, eps0/2, eps0/4}.
IntegralEstimate singular_integral(const CubicForm& form, BoxKind box, IntegralTarget target,
                                   u64 samples = kDefaultSlabSamples, u64 seed = 1, double eps0 = 0.1);

} // namespace lqcubic
