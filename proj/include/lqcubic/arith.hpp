#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lqcubic {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

// Overflow-checked 128-bit arithmetic; throws OverflowError.
namespace checked {
i128 add(i128 a, i128 b);
i128 sub(i128 a, i128 b);
i128 mul(i128 a, i128 b);
i64 narrow(i128 v);
} // namespace checked

i128 abs128(i128 v);
i128 gcd(i128 a, i128 b);
i64 gcd(i64 a, i64 b);

/// floor(sqrt(n)) for n >= 0.
i128 isqrt(i128 n);
std::optional<i128> exact_sqrt(i128 n);
/// Signed integer cube root when n is a perfect cube.
std::optional<i128> exact_cbrt(i128 n);
/// floor(cbrt(n)) for n >= 0.
i128 icbrt(i128 n);

/// Exponent of p in n (n != 0).
int valuation(i128 n, i64 p);

i64 floor_div(i64 a, i64 b);
i64 ceil_div(i64 a, i64 b);
i64 mod(i128 a, i64 m);
i64 ipow(i64 base, int exp);

bool is_prime(i64 n);
std::vector<std::pair<i64, int>> factorize(i64 n);
std::vector<i64> primes_up_to(i64 n);

/// Modular inverse of a mod m; requires gcd(a, m) == 1.
i64 inverse_mod(i64 a, i64 m);

std::string to_string(i128 v);
bool fits_i64(i128 v);

/// Lemire's fastmod for 32-bit operands.
class FastMod {
public:
    explicit FastMod(std::uint32_t d) : d_(d), m_(~u64{0} / d + 1) {}
    std::uint32_t operator()(std::uint32_t a) const {
        u64 low = m_ * a;
        return static_cast<std::uint32_t>((static_cast<u128>(low) * d_) >> 64);
    }
    std::uint32_t divisor() const { return d_; }

private:
    std::uint32_t d_;
    u64 m_;
};

} // namespace lqcubic
