#include "lqcubic/arith.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lqcubic/errors.hpp"

namespace lqcubic {

namespace checked {

i128 add(i128 a, i128 b) {
    i128 r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("128-bit overflow in addition");
    return r;
}

i128 sub(i128 a, i128 b) {
    i128 r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("128-bit overflow in subtraction");
    return r;
}

i128 mul(i128 a, i128 b) {
    i128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("128-bit overflow in multiplication");
    return r;
}

i64 narrow(i128 v) {
    if (!fits_i64(v)) throw OverflowError("value " + to_string(v) + " does not fit in 64 bits");
    return static_cast<i64>(v);
}

} // namespace checked

bool fits_i64(i128 v) {
    return v >= std::numeric_limits<i64>::min() && v <= std::numeric_limits<i64>::max();
}

i128 abs128(i128 v) { return v < 0 ? -v : v; }

i128 gcd(i128 a, i128 b) {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

i64 gcd(i64 a, i64 b) { return static_cast<i64>(gcd(static_cast<i128>(a), static_cast<i128>(b))); }

i128 isqrt(i128 n) {
    if (n < 0) throw InvalidArgument("isqrt of a negative number");
    if (n < 2) return n;
    auto r = static_cast<i128>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

std::optional<i128> exact_sqrt(i128 n) {
    if (n < 0) return std::nullopt;
    i128 r = isqrt(n);
    if (r * r == n) return r;
    return std::nullopt;
}

i128 icbrt(i128 n) {
    if (n < 0) throw InvalidArgument("icbrt of a negative number");
    if (n < 2) return n;
    auto r = static_cast<i128>(std::cbrt(static_cast<long double>(n)));
    auto cube = [](i128 x) { return x * x * x; };
    while (r > 0 && cube(r) > n) --r;
    while (cube(r + 1) <= n) ++r;
    return r;
}

std::optional<i128> exact_cbrt(i128 n) {
    i128 m = abs128(n);
    i128 r = icbrt(m);
    if (r * r * r != m) return std::nullopt;
    return n < 0 ? -r : r;
}

int valuation(i128 n, i64 p) {
    if (n == 0) throw InvalidArgument("valuation of zero");
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

i64 floor_div(i64 a, i64 b) {
    i64 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

i64 ceil_div(i64 a, i64 b) {
    i64 q = a / b;
    if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
    return q;
}

i64 mod(i128 a, i64 m) {
    i128 r = a % m;
    if (r < 0) r += m;
    return static_cast<i64>(r);
}

i64 ipow(i64 base, int exp) {
    i128 r = 1;
    for (int i = 0; i < exp; ++i) r = checked::mul(r, base);
    return checked::narrow(r);
}

bool is_prime(i64 n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (i64 d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::pair<i64, int>> factorize(i64 n) {
    if (n < 1) throw InvalidArgument("factorize expects a positive integer");
    std::vector<std::pair<i64, int>> out;
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::vector<i64> primes_up_to(i64 n) {
    std::vector<i64> primes;
    if (n < 2) return primes;
    std::vector<bool> composite(static_cast<std::size_t>(n + 1), false);
    for (i64 i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (i64 j = i * i; j <= n; j += i) composite[j] = true;
    }
    return primes;
}

i64 inverse_mod(i64 a, i64 m) {
    i128 old_r = mod(a, m), r = m, old_s = 1, s = 0;
    while (r != 0) {
        i128 q = old_r / r;
        std::swap(old_r, r);
        r -= q * old_r;
        std::swap(old_s, s);
        s -= q * old_s;
    }
    if (old_r != 1 && m != 1) throw InvalidArgument("value is not invertible modulo m");
    return mod(old_s, m);
}

std::string to_string(i128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    u128 u = neg ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v);
    std::string s;
    while (u > 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (neg) s.push_back('-');
    std::reverse(s.begin(), s.end());
    return s;
}

} // namespace lqcubic
