#include <cmath>
#include <map>

#include "doctest.h"
#include "lqcubic/errors.hpp"
#include "lqcubic/lemma_harness.hpp"
#include "lqcubic/rep_counting.hpp"
#include "oracles.hpp"

using namespace lqcubic;

namespace {

const Block kCusp{{1, 0, 0}, {0, 0, 1, 0, 0, 1}};

u64 scan_powers(int k, i64 q, i64 m) {
    u64 n = 0;
    for (i64 x = 1; x <= q; ++x) {
        i128 v = 1;
        for (int i = 0; i < k; ++i) v = v * x % q;
        n += oracle::emod(v - m, q) == 0;
    }
    return n;
}

} // namespace

TEST_CASE("power congruence examples") {
    CHECK(power_congruence_count(2, 8, 1) == 4);
    CHECK(power_congruence_count(3, 9, 0) == 3);
    CHECK(power_congruence_count(2, 7, 3) == 0);
    CHECK(power_congruence_count(2, 1, 5) == 1);
    CHECK_THROWS_AS(power_congruence_count(1, 8, 1), InvalidArgument);
    CHECK_THROWS_AS(power_congruence_count(2, kMaxPowerModulus + 1, 1), ResourceError);
}

TEST_CASE("power congruence counts partition the residues") {
    for (int k : {2, 3, 4})
        for (i64 q : {1, 12, 97, 360, 1000}) {
            u64 total = 0;
            for (i64 m = 0; m < q; ++m) total += power_congruence_count(k, q, m);
            REQUIRE(total == static_cast<u64>(q));
        }
}

TEST_CASE("prime-power splitting matches a direct scan") {
    for (int k : {2, 3})
        for (i64 q : {20000, 10007 * 3, 2 * 2 * 3 * 3 * 7 * 11 * 13})
            for (i64 m : {0, 1, 4, 8, 27, 1000, -9}) REQUIRE(power_congruence_count(k, q, m) == scan_powers(k, q, m));
}

TEST_CASE("special surface examples") {
    CHECK(special_surface_count(1, 10, 1) == 0);
    CHECK(special_surface_count(1, 1, 1) == 6);
    CHECK(special_surface_count(1, 0, 1) == 8);
    CHECK_THROWS_AS(special_surface_count(0, 1, 5), InvalidArgument);
    CHECK_THROWS_AS(special_surface_count(1, 1, kMaxSurfaceRadius + 1), ResourceError);
}

TEST_CASE("special surface fast count equals the naive loop") {
    for (i64 P = 1; P <= 15; P += (P < 6 ? 1 : 3))
        for (i64 A : {1, -2, 3})
            for (i64 N : {0, 1, -1, 7, 30, -64})
                REQUIRE(special_surface_count(A, N, P) == special_surface_count_naive(A, N, P));
}

TEST_CASE("special surface counts are symmetric in N") {
    for (i64 P = 1; P <= 10; ++P)
        for (i64 A : {1, 2, -5})
            for (i64 N : {1, 2, 9, 17, 100}) REQUIRE(special_surface_count(A, N, P) == special_surface_count(A, -N, P));
}

TEST_CASE("growth audit fitting") {
    const std::vector<i64> sizes{2, 4, 8, 16};
    const auto flat = growth_audit([](i64) { return 5.0; }, sizes, 1.0);
    CHECK(flat.fitted_exponent == doctest::Approx(0).epsilon(1e-12));
    CHECK(flat.max_constant == doctest::Approx(2.5));
    const auto cube = growth_audit([](i64 s) { return 3.0 * s * s * s; }, sizes, 3.0);
    CHECK(cube.fitted_exponent == doctest::Approx(3));
    CHECK(cube.max_constant == doctest::Approx(3));
    const std::vector<i64> two{2, 4};
    CHECK_THROWS_AS(growth_audit([](i64) { return 1.0; }, two, 1.0), InvalidArgument);
    const std::vector<i64> unsorted{2, 8, 4};
    CHECK_THROWS_AS(growth_audit([](i64) { return 1.0; }, unsorted, 1.0), InvalidArgument);
}

TEST_CASE("second moments against a triple loop") {
    CHECK(second_moment_audit(kCusp, std::vector<i64>{1, 2, 3}).probes[0].count == 40);
    for (i64 P : {20, 40}) {
        std::map<i64, u64> c;
        for (i64 x = -P; x <= P; ++x)
            for (i64 y = -P; y <= P; ++y)
                for (i64 z = -P; z <= P; ++z) {
                    const i64 v = static_cast<i64>(oracle::block_value(kCusp.l, kCusp.q, x, y, z));
                    if (v) ++c[v];
                }
        u64 sq = 0, mass = 0;
        for (const auto& [n, k] : c) {
            sq += k * k;
            mass += k;
        }
        const auto h = value_histogram(kCusp, BoxKind::Sym, P);
        CHECK(h.second_moment() == sq);
        // Cauchy-Schwarz against the support size.
        CHECK(static_cast<double>(sq) >= static_cast<double>(mass) * mass / c.size());
    }
}

TEST_CASE("second-moment slopes flatten with P") {
    const std::vector<i64> P{20, 40, 80, 160};
    const auto a = second_moment_audit(kCusp, P);
    double prev = 10;
    for (std::size_t i = 1; i < a.probes.size(); ++i) {
        const double slope = std::log(a.probes[i].count / a.probes[i - 1].count) / std::log(2.0);
        MESSAGE("second-moment slope " << a.probes[i - 1].size << " -> " << a.probes[i].size << ": " << slope);
        CHECK(slope < prev);
        CHECK(slope > 3);
        prev = slope;
    }
}
