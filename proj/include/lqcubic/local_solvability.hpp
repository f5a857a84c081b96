#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "lqcubic/form_model.hpp"

namespace lqcubic {

inline constexpr i64 kMaxCongruenceModulus = 100'000'000;
/// Largest prime-power factor whose block value sets are enumerated directly (q^3 work).
inline constexpr i64 kMaxPrimePowerSearch = 1024;

enum class GammaCase { I, II, III, IV };
std::string_view to_string(GammaCase c);

struct BlockGamma {
    GammaCase kind = GammaCase::IV;
    int gamma = 0;
    int gammap = 0;
    int alpha = 0; ///< case (i) only
    int beta = 0;  ///< case (i) only
};

/// gamma_i, gamma_i' of a content-1 block L'Q' at the prime p.
BlockGamma block_gamma(const Block& block, i64 p);

struct GammaReport {
    i64 p = 0;
    int gamma1 = 0, gamma1p = 0, gamma2 = 0, gamma2p = 0;
    int j1 = 0, j2 = 0, j3 = 0, nu0 = 0;
    int gamma = 0, gammap = 0;
    std::array<GammaCase, 2> cases{GammaCase::IV, GammaCase::IV};
    std::array<BlockGamma, 2> blocks{};
    bool relevant = false; ///< p | 3 c1 c2 c3
    bool clamped = false;  ///< the 2 gamma' - 1 branch went negative
};

GammaReport gammas(i64 p, const CubicForm& form);

/// Prime divisors of 3 c1 c2 c3.
std::vector<i64> relevant_primes(const CubicForm& form);

struct CongruenceResult {
    bool solvable = false;
    std::optional<std::array<i64, 7>> witness; ///< entries in [0, M)
};

/// Whether f(x) = N (mod M) has a solution; each prime-power factor is searched separately and the
/// local witnesses are combined by the CRT.
CongruenceResult congruence_solvable(const CubicForm& form, i128 N, i64 M);

struct LocalReport {
    i64 content = 1;
    std::vector<GammaReport> primes;
    i64 modulus = 1;            ///< c prod p^gamma(p)
    i64 sufficient_modulus = 1; ///< c prod p^gamma'(p)
    bool sufficient_holds = false;
    CongruenceResult congruence;
    bool solvable_everywhere = false;
    std::vector<std::string> notes;
};

LocalReport local_report(const CubicForm& form, i128 N);

} // namespace lqcubic
