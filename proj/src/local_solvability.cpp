#include "lqcubic/local_solvability.hpp"

#include <algorithm>

#include "lqcubic/errors.hpp"

namespace lqcubic {

namespace {

using Coeffs6 = std::array<i64, 6>;

Coeffs6 reduce_mod(const Quadratic& q, i64 p) {
    Coeffs6 r{};
    for (int i = 0; i < 6; ++i) r[i] = mod(q[i], p);
    return r;
}

// Coefficients of u * w in the (A1,A2,A3,B1,B2,B3) layout.
Coeffs6 product(const std::array<i64, 3>& u, const std::array<i64, 3>& w, i64 p) {
    const i128 c[6] = {i128(u[0]) * w[0],
                       i128(u[1]) * w[1],
                       i128(u[2]) * w[2],
                       i128(u[1]) * w[2] + i128(u[2]) * w[1],
                       i128(u[2]) * w[0] + i128(u[0]) * w[2],
                       i128(u[0]) * w[1] + i128(u[1]) * w[0]};
    Coeffs6 r{};
    for (int i = 0; i < 6; ++i) r[i] = mod(c[i], p);
    return r;
}

Coeffs6 add(Coeffs6 a, const Coeffs6& b, i64 p, i64 scale_b = 1) {
    for (int i = 0; i < 6; ++i) a[i] = mod(static_cast<i128>(a[i]) + static_cast<i128>(scale_b) * b[i], p);
    return a;
}

std::array<i64, 3> linear_mod(const Linear& l, i64 p) { return {mod(l[0], p), mod(l[1], p), mod(l[2], p)}; }

std::array<i64, 3> lin_add(const std::array<i64, 3>& a, const std::array<i64, 3>& b, i64 p) {
    return {(a[0] + b[0]) % p, (a[1] + b[1]) % p, (a[2] + b[2]) % p};
}

// Rank of up to three vectors over F_p, p in {2, 3}.
int rank_mod(std::vector<std::array<i64, 3>> rows, i64 p) {
    int rank = 0;
    for (int col = 0; col < 3 && rank < static_cast<int>(rows.size()); ++col) {
        int piv = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r)
            if (rows[r][col] % p) piv = r;
        if (piv < 0) continue;
        std::swap(rows[piv], rows[rank]);
        const i64 inv = inverse_mod(rows[rank][col], p);
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            const i64 f = rows[r][col] * inv % p;
            for (int k = 0; k < 3; ++k) rows[r][k] = mod(rows[r][k] - f * rows[rank][k], p);
        }
        ++rank;
    }
    return rank;
}

std::vector<std::array<i64, 3>> all_linear(i64 p) {
    std::vector<std::array<i64, 3>> out;
    for (i64 a = 0; a < p; ++a)
        for (i64 b = 0; b < p; ++b)
            for (i64 c = 0; c < p; ++c) out.push_back({a, b, c});
    return out;
}

// Q' = lambda L'^2 (mod p) as polynomials.
bool square_multiple(const Block& b, i64 p) {
    const auto l = linear_mod(b.l, p);
    const Coeffs6 sq = product(l, l, p);
    const Coeffs6 q = reduce_mod(b.q, p);
    int k = 0;
    while (k < 6 && sq[k] == 0) ++k;
    if (k == 6) return false;
    const i64 lambda = static_cast<i64>(static_cast<i128>(q[k]) * inverse_mod(sq[k], p) % p);
    return add(q, sq, p, -lambda) == Coeffs6{};
}

// p = 2: Q' = u (L' + u) or u (L' + u) + v (L' + v) with L', u, v independent.
bool case_two(const Block& b) {
    const auto l = linear_mod(b.l, 2);
    const Coeffs6 q = reduce_mod(b.q, 2);
    const auto forms = all_linear(2);
    for (const auto& u : forms) {
        if (rank_mod({l, u}, 2) < 2) continue;
        const Coeffs6 qu = product(u, lin_add(l, u, 2), 2);
        if (qu == q) return true;
        for (const auto& v : forms) {
            if (rank_mod({l, u, v}, 2) < 3) continue;
            if (add(qu, product(v, lin_add(l, v, 2), 2), 2) == q) return true;
        }
    }
    return false;
}

// p = 3: Q' = e (L'^2 + 2 u^2), e in {1, 2}, u independent of L'.
bool case_three(const Block& b) {
    const auto l = linear_mod(b.l, 3);
    const Coeffs6 q = reduce_mod(b.q, 3);
    const Coeffs6 l2 = product(l, l, 3);
    for (const auto& u : all_linear(3)) {
        if (rank_mod({l, u}, 3) < 2) continue;
        const Coeffs6 base = add(l2, product(u, u, 3), 3, 2);
        for (i64 e : {1, 2}) {
            Coeffs6 scaled{};
            for (int i = 0; i < 6; ++i) scaled[i] = base[i] * e % 3;
            if (scaled == q) return true;
        }
    }
    return false;
}

int ceil_div_int(int a, int b) { return static_cast<int>(ceil_div(a, b)); }

int valuation_or(i128 v, i64 p, int fallback) { return v == 0 ? fallback : valuation(v, p); }

i64 checked_pow(i64 p, int e, i64 limit) {
    i128 v = 1;
    for (int i = 0; i < e; ++i) {
        v *= p;
        if (v > limit) throw ResourceError("modulus exceeds the congruence guard");
    }
    return static_cast<i64>(v);
}

struct Triple {
    std::int32_t x = -1, y = 0, z = 0;
};

// For each residue m mod q, one triple with L Q = m, or x = -1.
std::vector<Triple> block_values(const Block& b, i64 q) {
    std::vector<Triple> seen(static_cast<std::size_t>(q));
    i64 found = 0;
    for (i64 x = 0; x < q && found < q; ++x)
        for (i64 y = 0; y < q; ++y)
            for (i64 z = 0; z < q; ++z) {
                const i64 m = mod(b.eval(x, y, z), q);
                if (seen[m].x < 0) {
                    seen[m] = {static_cast<std::int32_t>(x), static_cast<std::int32_t>(y), static_cast<std::int32_t>(z)};
                    ++found;
                }
            }
    return seen;
}

// x = r1 (m1), x = r2 (m2) with coprime moduli.
i64 crt(i64 r1, i64 m1, i64 r2, i64 m2) {
    const i128 t = static_cast<i128>(mod(r2 - r1, m2)) * inverse_mod(mod(m1, m2), m2) % m2;
    return static_cast<i64>(r1 + m1 * t);
}

} // namespace

std::string_view to_string(GammaCase c) {
    switch (c) {
    case GammaCase::I: return "i";
    case GammaCase::II: return "ii";
    case GammaCase::III: return "iii";
    case GammaCase::IV: return "iv";
    }
    return "iv";
}

BlockGamma block_gamma(const Block& block, i64 p) {
    if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
    BlockGamma g;
    if (square_multiple(block, p)) {
        // Primed coefficients with a pivot that is a unit at p.
        int pivot = 0;
        while (pivot < 3 && mod(block.l[pivot], p) == 0) ++pivot;
        auto [pl, pq] = move_pivot_first(block.l, block.q, pivot);
        const PrimedCoefficients c = primed_coefficients(pl, pq);
        const i128 abc = gcd(gcd(c.A, c.B), c.C);
        if (abc == 0) throw DegenerateBlock(0, "A', B', C' all vanish; the block is degenerate");
        g.kind = GammaCase::I;
        g.alpha = valuation(abc, p);
        g.beta = valuation_or(gcd(c.F, c.G), p, 0);
        g.gammap = ceil_div_int(5 * g.alpha + 1, 3);
        if (g.beta >= 1) g.gammap = std::max(g.gammap, ceil_div_int(4 * g.alpha + 1 - g.beta, 2));
        g.gamma = p == 3 ? 2 * g.gammap + 1 : 2 * g.gammap - 1;
        return g;
    }
    if (p == 2 && case_two(block)) {
        g.kind = GammaCase::II;
        g.gamma = g.gammap = 1;
        return g;
    }
    if (p == 3 && case_three(block)) {
        g.kind = GammaCase::III;
        g.gamma = 3;
        g.gammap = 1;
        return g;
    }
    return g;
}

std::vector<i64> relevant_primes(const CubicForm& form) {
    const ContentSplit s = content_split(form);
    std::vector<i64> primes;
    for (i64 m : {i64{3}, s.multipliers[0], s.multipliers[1], s.multipliers[2]})
        for (auto [p, e] : factorize(m < 0 ? -m : m))
            if (std::find(primes.begin(), primes.end(), p) == primes.end()) primes.push_back(p);
    std::sort(primes.begin(), primes.end());
    return primes;
}

GammaReport gammas(i64 p, const CubicForm& form) {
    if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
    form.validate();
    const ContentSplit s = content_split(form);
    GammaReport r;
    r.p = p;
    const auto primes = relevant_primes(form);
    r.relevant = std::find(primes.begin(), primes.end(), p) != primes.end();
    if (!r.relevant) return r;
    r.j1 = valuation(s.multipliers[0], p);
    r.j2 = valuation(s.multipliers[1], p);
    r.j3 = valuation(s.multipliers[2], p);
    r.nu0 = std::max({r.j1, r.j2, r.j3});
    r.blocks[0] = block_gamma(s.block1, p);
    r.blocks[1] = block_gamma(s.block2, p);
    r.cases = {r.blocks[0].kind, r.blocks[1].kind};
    r.gamma1 = r.blocks[0].gamma;
    r.gamma1p = r.blocks[0].gammap;
    r.gamma2 = r.blocks[1].gamma;
    r.gamma2p = r.blocks[1].gammap;
    r.gammap = std::min(r.gamma1p + r.j1, r.gamma2p + r.j2);
    const int last = p == 3 ? 2 * r.gammap + 1 : 2 * r.gammap - 1;
    const int g = std::min({r.gamma1 + r.nu0, r.gamma2 + r.nu0, last});
    r.clamped = g < 0;
    r.gamma = std::max(g, 0);
    return r;
}

CongruenceResult congruence_solvable(const CubicForm& form, i128 N, i64 M) {
    if (M < 1) throw InvalidArgument("modulus must be positive");
    if (M > kMaxCongruenceModulus)
        throw ResourceError("modulus " + std::to_string(M) + " exceeds the guard " +
                            std::to_string(kMaxCongruenceModulus));
    form.validate();
    CongruenceResult out;
    std::array<i64, 7> x{};
    i64 modulus = 1;
    for (auto [p, e] : factorize(M)) {
        const i64 q = ipow(p, e);
        if (q > kMaxPrimePowerSearch)
            throw ResourceError("prime-power factor " + std::to_string(q) + " exceeds the search guard " +
                                std::to_string(kMaxPrimePowerSearch));
        const auto v1 = block_values(form.block(1), q);
        const auto v2 = block_values(form.block(2), q);
        std::vector<i64> cube(static_cast<std::size_t>(q), -1);
        for (i64 t = 0; t < q; ++t) {
            const i64 m = mod(static_cast<i128>(form.a7()) * t * t * t, q);
            if (cube[m] < 0) cube[m] = t;
        }
        const i64 n = mod(N, q);
        bool found = false;
        std::array<i64, 7> local{};
        for (i64 m1 = 0; m1 < q && !found; ++m1) {
            if (v1[m1].x < 0) continue;
            for (i64 m2 = 0; m2 < q && !found; ++m2) {
                if (v2[m2].x < 0) continue;
                const i64 m3 = mod(static_cast<i128>(n) - m1 - m2, q);
                if (cube[m3] < 0) continue;
                found = true;
                local = {v1[m1].x, v1[m1].y, v1[m1].z, v2[m2].x, v2[m2].y, v2[m2].z, cube[m3]};
            }
        }
        if (!found) return out;
        for (int i = 0; i < 7; ++i) x[i] = crt(x[i], modulus, local[i], q);
        modulus *= q;
    }
    out.solvable = true;
    out.witness = x;
    return out;
}

LocalReport local_report(const CubicForm& form, i128 N) {
    form.validate();
    LocalReport r;
    r.content = content_split(form).c;
    i128 modulus = r.content, sufficient = r.content;
    for (i64 p : relevant_primes(form)) {
        GammaReport g = gammas(p, form);
        modulus *= checked_pow(p, g.gamma, kMaxCongruenceModulus);
        sufficient *= checked_pow(p, g.gammap, kMaxCongruenceModulus);
        if (modulus > kMaxCongruenceModulus || sufficient > kMaxCongruenceModulus)
            throw ResourceError("congruence modulus exceeds the guard");
        if (g.clamped) r.notes.push_back("gamma(" + std::to_string(p) + ") clamped at 0");
        r.primes.push_back(g);
    }
    r.modulus = static_cast<i64>(modulus);
    r.sufficient_modulus = static_cast<i64>(sufficient);
    r.sufficient_holds = mod(N, r.sufficient_modulus) == 0;
    r.congruence = congruence_solvable(form, N, r.modulus);
    r.solvable_everywhere = r.congruence.solvable;
    return r;
}

} // namespace lqcubic
