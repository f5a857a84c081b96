#include <random>

#include "doctest.h"
#include "lqcubic/errors.hpp"
#include "lqcubic/form_io.hpp"
#include "lqcubic/local_solvability.hpp"
#include "oracles.hpp"

using namespace lqcubic;

namespace {

using Mat = std::array<std::array<i64, 3>, 3>;

/// L(U y) Q(U y) written back in (x1, x2, x3).
Block substitute(const Block& b, const Mat& U) {
    Block out;
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i) out.l[j] += b.l[i] * U[i][j];
    const auto& q = b.q;
    const i64 G[3][3] = {{2 * q[0], q[5], q[4]}, {q[5], 2 * q[1], q[3]}, {q[4], q[3], 2 * q[2]}};
    i64 H[3][3] = {};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) H[r][c] += U[i][r] * G[i][j] * U[j][c];
    out.q = {H[0][0] / 2, H[1][1] / 2, H[2][2] / 2, H[1][2], H[0][2], H[0][1]};
    return out;
}

Mat random_unimodular(std::mt19937_64& rng) {
    Mat U{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    std::uniform_int_distribution<int> idx(0, 2), k(-2, 2);
    for (int step = 0; step < 6; ++step) {
        const int i = idx(rng), j = idx(rng);
        if (i == j) {
            std::swap(U[0], U[1]);
            continue;
        }
        const int m = k(rng);
        for (int c = 0; c < 3; ++c) U[i][c] += m * U[j][c];
    }
    return U;
}

CubicForm with_blocks(const Block& b1, const Block& b2, i64 a7) {
    return oracle::make_form({b1.l[0], b1.l[1], b1.l[2], b2.l[0], b2.l[1], b2.l[2], a7}, b1.q, b2.q);
}

const Block kCusp{{1, 0, 0}, {0, 0, 1, 0, 0, 1}};
// x1 (x1 x2 + (x2 + 2 x3)^2)
const Block kTwoAdic{{1, 0, 0}, {0, 1, 4, 4, 0, 1}};
// x1 (2 x1 (x1 + 3 x2) + x3^2)
const Block kThreeAdic{{1, 0, 0}, {2, 0, 1, 0, 0, 6}};

} // namespace

TEST_CASE("worked examples of the special shapes") {
    const auto two = block_gamma(kTwoAdic, 2);
    CHECK(two.kind == GammaCase::II);
    CHECK(two.gamma == 1);
    CHECK(two.gammap == 1);

    const auto three = block_gamma(kThreeAdic, 3);
    CHECK(three.kind == GammaCase::III);
    CHECK(three.gamma == 3);
    CHECK(three.gammap == 1);

    CHECK(block_gamma(kTwoAdic, 3).kind == GammaCase::IV);
    CHECK(block_gamma(kThreeAdic, 2).kind == GammaCase::IV);
}

TEST_CASE("square-divisible blocks") {
    // Pivot x1, so A' = A2, B' = B1, C' = A3, F' = B2, G' = B3.
    SUBCASE("p = 3, alpha 1, beta 0") {
        const auto g = block_gamma(Block{{1, 0, 0}, {1, 3, 3, 0, 0, 0}}, 3);
        CHECK(g.kind == GammaCase::I);
        CHECK(g.alpha == 1);
        CHECK(g.beta == 0);
        CHECK(g.gammap == 2); // ceil(6/3)
        CHECK(g.gamma == 5);
    }
    SUBCASE("p = 5, alpha 2, beta 1") {
        const auto g = block_gamma(Block{{1, 0, 0}, {1, 25, 25, 0, 5, 0}}, 5);
        CHECK(g.kind == GammaCase::I);
        CHECK(g.alpha == 2);
        CHECK(g.beta == 1);
        CHECK(g.gammap == 4); // max(ceil(11/3), ceil(8/2))
        CHECK(g.gamma == 7);
    }
    SUBCASE("p = 2, alpha 1, beta 2") {
        const auto g = block_gamma(Block{{1, 0, 0}, {1, 0, 0, 2, 0, 4}}, 2);
        CHECK(g.kind == GammaCase::I);
        CHECK(g.alpha == 1);
        CHECK(g.beta == 2);
        CHECK(g.gammap == 2); // max(ceil(6/3), ceil(3/2))
        CHECK(g.gamma == 3);
    }
}

TEST_CASE("fstar needs no congruence conditions") {
    const auto f = preset_form("fstar");
    const auto g = gammas(3, f);
    CHECK(g.cases[0] == GammaCase::IV);
    CHECK(g.cases[1] == GammaCase::IV);
    CHECK(g.gamma == 0);
    CHECK(g.gammap == 0);
    CHECK_FALSE(g.clamped);
    // At p = 2 the 2 gamma' - 1 branch goes negative and is clamped.
    const auto h = gammas(2, oracle::make_form({1, 0, 0, 2, 0, 0, 1}, kCusp.q, kCusp.q));
    CHECK(h.gamma == 0);
    CHECK(h.clamped);
    CHECK(relevant_primes(f) == std::vector<i64>{3});
    for (i64 N : {-7, 0, 1, 2, 100}) {
        const auto r = local_report(f, N);
        CHECK(r.modulus == 1);
        CHECK(r.solvable_everywhere);
    }
    CHECK_THROWS_AS(gammas(9, f), InvalidArgument);
    CHECK_THROWS_AS(block_gamma(kCusp, 1), InvalidArgument);
}

TEST_CASE("congruence witnesses") {
    const auto f = preset_form("fstar");
    const auto one = congruence_solvable(f, 5, 1);
    CHECK(one.solvable);
    REQUIRE(one.witness.has_value());
    CHECK(*one.witness == std::array<i64, 7>{});

    const auto r = congruence_solvable(f, 2, 9);
    CHECK(r.solvable);
    REQUIRE(r.witness.has_value());
    CHECK(oracle::emod(oracle::form_value(f, *r.witness) - 2, 9) == 0);

    CHECK_THROWS_AS(congruence_solvable(f, 0, 0), InvalidArgument);
    CHECK_THROWS_AS(congruence_solvable(f, 0, kMaxCongruenceModulus + 1), ResourceError);
    CHECK_THROWS_AS(congruence_solvable(f, 0, 2053), ResourceError);
}

TEST_CASE("congruence search agrees with value-set enumeration") {
    const std::vector<CubicForm> forms = {
        with_blocks(kCusp, kCusp, 9),
        with_blocks(kTwoAdic, kThreeAdic, 4),
        oracle::make_form({2, 0, 0, 4, 0, 0, 6}, kCusp.q, kCusp.q),
        with_blocks(Block{{1, 0, 0}, {1, 3, 3, 0, 0, 0}}, Block{{0, 3, 0}, {0, 9, 0, 0, 0, 3}}, 27),
    };
    std::vector<i64> moduli;
    for (i64 M = 1; M <= 40; ++M) moduli.push_back(M);
    for (i64 M : {49, 64, 72, 81, 125, 128, 243, 343}) moduli.push_back(M);
    for (const auto& f : forms) {
        for (i64 M : moduli) {
            const auto reachable = oracle::solvable_residues(f, M);
            for (i64 N : {0, 1, 2, 5, 7, 18}) {
                const auto r = congruence_solvable(f, N, M);
                REQUIRE(r.solvable == reachable[N % M]);
                if (r.solvable) {
                    REQUIRE(r.witness.has_value());
                    for (i64 x : *r.witness) REQUIRE((x >= 0 && x < M));
                    REQUIRE(oracle::emod(oracle::form_value(f, *r.witness) - N, M) == 0);
                }
            }
        }
    }
}

TEST_CASE("content forms") {
    const auto f = oracle::make_form({2, 0, 0, 4, 0, 0, 6}, kCusp.q, kCusp.q);
    for (i64 N : {1, 3, 99}) {
        const auto r = local_report(f, N);
        CHECK(r.content == 2);
        CHECK_FALSE(r.solvable_everywhere);
    }
    const auto even = local_report(f, 10);
    CHECK(even.content == 2);
    CHECK(even.modulus % 2 == 0);
}

TEST_CASE("sufficient modulus implies solvability") {
    const std::vector<CubicForm> forms = {
        with_blocks(kCusp, kCusp, 9),
        oracle::make_form({1, 0, 0, 3, 0, 0, 1}, kThreeAdic.q, kCusp.q),
        oracle::make_form({2, 0, 0, 4, 0, 0, 6}, kCusp.q, kCusp.q),
    };
    for (const auto& f : forms) {
        int hits = 0;
        for (i64 N = 1; N <= 300; ++N) {
            const auto r = local_report(f, N);
            if (N % r.sufficient_modulus) continue;
            ++hits;
            REQUIRE(r.sufficient_holds);
            REQUIRE(r.solvable_everywhere);
        }
        CHECK(hits > 0);
    }
}

TEST_CASE("special shapes are invariant under unimodular substitutions") {
    std::mt19937_64 rng(99);
    const std::vector<std::pair<Block, i64>> cases = {
        {kTwoAdic, 2}, {kThreeAdic, 3}, {kCusp, 2}, {kCusp, 3}, {Block{{1, 0, 0}, {1, 3, 3, 0, 0, 0}}, 3}};
    for (const auto& [b, p] : cases) {
        const auto base = block_gamma(b, p);
        for (int t = 0; t < 20; ++t) {
            const auto U = random_unimodular(rng);
            const auto moved = block_gamma(substitute(b, U), p);
            REQUIRE(moved.kind == base.kind);
            REQUIRE(moved.gamma == base.gamma);
            REQUIRE(moved.gammap == base.gammap);
        }
    }
}

TEST_CASE("gamma assembly") {
    // 3 x1 (...) block multiplier gives j2 = 1 at p = 3.
    const auto f = oracle::make_form({1, 0, 0, 3, 0, 0, 1}, kThreeAdic.q, kCusp.q);
    const auto g = gammas(3, f);
    CHECK(g.gamma1 == 3);
    CHECK(g.gamma1p == 1);
    CHECK(g.j2 == 1);
    CHECK(g.nu0 == 1);
    CHECK(g.gammap == std::min(g.gamma1p + g.j1, g.gamma2p + g.j2));
    CHECK(g.gamma == std::min({g.gamma1 + g.nu0, g.gamma2 + g.nu0, 2 * g.gammap + 1}));
}
