#include <algorithm>
#include <random>

#include "doctest.h"
#include "lqcubic/errors.hpp"
#include "lqcubic/form_io.hpp"
#include "lqcubic/form_model.hpp"
#include "oracles.hpp"

using namespace lqcubic;

namespace {

Matrix3 mat(std::initializer_list<std::initializer_list<i64>> rows) {
    Matrix3 m{};
    int i = 0;
    for (auto r : rows) {
        int j = 0;
        for (i64 v : r) m[i][j++] = v;
        ++i;
    }
    return m;
}

std::mt19937_64& rng() {
    static std::mt19937_64 r(20240611);
    return r;
}

i64 draw(i64 lo, i64 hi) { return std::uniform_int_distribution<i64>(lo, hi)(rng()); }

Linear random_linear() {
    Linear l{};
    while (l == Linear{})
        for (auto& v : l) v = draw(-10, 10);
    return l;
}

Quadratic random_quadratic() {
    Quadratic q{};
    for (auto& v : q) v = draw(-10, 10);
    return q;
}

} // namespace

TEST_CASE("adjoint matrix of sample quadratics") {
    CHECK(adjoint_matrix({0, 0, 0, 1, 0, 0}) == mat({{1, 0, 0}, {0, 0, 0}, {0, 0, 0}}));
    CHECK(adjoint_matrix({1, 1, 1, 0, 0, 0}) == mat({{-4, 0, 0}, {0, -4, 0}, {0, 0, -4}}));
    CHECK(adjoint_matrix({0, 0, 0, 0, 0, 0}) == Matrix3{});
}

TEST_CASE("adjoint matrix is minus the adjugate of the Gram matrix of 2Q") {
    for (int t = 0; t < 1000; ++t) {
        const Quadratic q = random_quadratic();
        const Matrix3 m = adjoint_matrix(q);
        const auto adj = oracle::gram_adjugate(q);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                REQUIRE(m[i][j] == -adj[i][j]);
                REQUIRE(m[i][j] == m[j][i]);
            }
    }
}

TEST_CASE("delta of sample blocks") {
    CHECK(delta({1, 0, 0}, {0, 0, 1, 0, 0, 1}) == 0);
    CHECK(delta({1, 0, 0}, {0, 0, 0, 1, 0, 0}) == 1);
    CHECK(delta({1, 1, 1}, {1, 1, 1, 0, 0, 0}) == -12);
    CHECK_THROWS_AS(delta({0, 0, 0}, {1, 0, 0, 0, 0, 0}), InvalidForm);
}

TEST_CASE("block invariants of sample blocks") {
    SUBCASE("cusp block") {
        auto inv = block_invariants({1, 0, 0}, {0, 0, 1, 0, 0, 1});
        CHECK(inv.primed.A == 0);
        CHECK(inv.primed.B == 0);
        CHECK(inv.primed.C == 1);
        CHECK(inv.primed.F == 0);
        CHECK(inv.primed.G == 1);
        CHECK(inv.delta == 0);
        CHECK_FALSE(inv.degenerate);
        CHECK(inv.frak_d == 2);
        CHECK(inv.frak_case == FrakDCase::ZeroDeltaC);
    }
    SUBCASE("product block") {
        auto inv = block_invariants({1, 0, 0}, {0, 0, 0, 1, 0, 0});
        CHECK(inv.primed.A == 0);
        CHECK(inv.primed.B == 1);
        CHECK(inv.primed.C == 0);
        CHECK(inv.delta == 1);
        CHECK(inv.frak_d == 1);
        CHECK(inv.frak_case == FrakDCase::BOnly);
    }
    SUBCASE("cube block is degenerate") {
        auto inv = block_invariants({1, 0, 0}, {1, 0, 0, 0, 0, 0});
        CHECK(inv.primed.A == 0);
        CHECK(inv.primed.B == 0);
        CHECK(inv.primed.C == 0);
        CHECK(inv.degenerate);
    }
    SUBCASE("pivot skips zero coefficients") {
        auto inv = block_invariants({0, 0, 3}, {1, 1, 0, 0, 0, 0});
        CHECK(inv.pivot == 3);
    }
}

TEST_CASE("discriminant identity on random blocks") {
    for (int t = 0; t < 1000; ++t) {
        const Linear l = random_linear();
        const Quadratic q = random_quadratic();
        const auto inv = block_invariants(l, q);
        const i128 a = l[inv.pivot - 1];
        const auto& c = inv.primed;
        REQUIRE(c.B * c.B - 4 * c.A * c.C == a * a * inv.delta);
        const bool degenerate = inv.delta == 0 && c.A * (2 * c.A * c.F - c.B * c.G) == 0 &&
                                c.C * (2 * c.C * c.G - c.B * c.F) == 0;
        REQUIRE(inv.degenerate == degenerate);
        if (!inv.degenerate) REQUIRE(inv.frak_d != 0);
    }
}

TEST_CASE("transform of the cusp block") {
    const auto t = transform_block({1, 0, 0}, {0, 0, 1, 0, 0, 1});
    CHECK(t.kind == NormalFormKind::Cusp);
    CHECK(t.scale == 4);
    CHECK(t.rows[0] == std::array<i128, 3>{1, 0, 0});
    CHECK(t.rows[1] == std::array<i128, 3>{0, 0, 2});
    CHECK(t.rows[2] == std::array<i128, 3>{0, 4, 0});
}

TEST_CASE("transform of the product block") {
    const auto t = transform_block({1, 0, 0}, {0, 0, 0, 1, 0, 0}, 2);
    CHECK(t.kind == NormalFormKind::Product);
    CHECK(t.scale == 1);
    CHECK(t.d == 0);
}

TEST_CASE("transform rejects degenerate blocks") {
    CHECK_THROWS_AS(transform_block({1, 0, 0}, {1, 0, 0, 0, 0, 0}), DegenerateBlock);
}

TEST_CASE("transforms agree with the block on random points") {
    int checked = 0;
    for (int t = 0; t < 300; ++t) {
        const Linear l = random_linear();
        const Quadratic q = random_quadratic();
        if (block_invariants(l, q).degenerate) continue;
        BlockTransform tr;
        try {
            tr = transform_block(l, q);
        } catch (const OverflowError&) {
            continue;
        }
        REQUIRE(transform_self_check(Block{l, q}, tr, 100, static_cast<u64>(t)));
        ++checked;
    }
    CHECK(checked > 200);
}

TEST_CASE("rational cubes") {
    CHECK(is_rational_cube(1, 1) == std::pair<i128, i128>{1, 1});
    CHECK(is_rational_cube(-8, 27) == std::pair<i128, i128>{-2, 3});
    CHECK(is_rational_cube(16, -54) == std::pair<i128, i128>{-2, 3});
    CHECK_FALSE(is_rational_cube(2, 1).has_value());
    CHECK_FALSE(is_rational_cube(0, 5).has_value());
    CHECK_THROWS_AS(is_rational_cube(1, 0), InvalidArgument);
}

TEST_CASE("classification of the sample forms") {
    SUBCASE("fstar") {
        const auto c = classify(preset_form("fstar"));
        CHECK(c.block1.delta == 0);
        CHECK(c.block2.delta == 0);
        CHECK_FALSE(c.block1.degenerate);
        CHECK_FALSE(c.q2_factorizes);
        CHECK(c.content == 1);
        CHECK(c.multipliers == std::array<i64, 3>{1, 1, 1});
        REQUIRE(c.spaces.size() == 1);
        CHECK(c.spaces[0].tag == "(1)");
    }
    SUBCASE("factorizing") {
        const auto c = classify(preset_form("factorizing"));
        CHECK(c.block2.delta == 1);
        REQUIRE(c.block2.dpp.has_value());
        CHECK(*c.block2.dpp == 0);
        CHECK(c.q2_factorizes);
        CHECK(c.spaces.size() == 3);
    }
    SUBCASE("cube pair") {
        const auto c = classify(preset_form("cube-pair"));
        REQUIRE(c.spaces.size() == 3);
        CHECK(c.spaces[1].tag == "(2'iii)");
        CHECK(c.spaces[2].tag == "(3'iii)");
    }
    SUBCASE("degenerate block 1") {
        const auto f = oracle::make_form({1, 0, 0, 1, 0, 0, 1}, {1, 0, 0, 0, 0, 0}, {0, 0, 0, 1, 0, 0});
        try {
            classify(f);
            FAIL("expected a degenerate-block error");
        } catch (const DegenerateBlock& e) {
            CHECK(e.block() == 1);
        }
    }
}

TEST_CASE("linear spaces match the expected kernels") {
    auto kernel_equals = [](const LinearSpace& s, std::vector<Covector> forms) {
        LinearSpace t;
        std::copy(forms.begin(), forms.end(), t.forms.begin());
        return same_space(s, t);
    };
    const auto fact = linear_spaces(preset_form("factorizing"));
    REQUIRE(fact.size() == 3);
    CHECK(kernel_equals(fact[0], {Covector{1, 0, 0, 0, 0, 0, 0}, Covector{0, 0, 0, 1, 0, 0, 0}, Covector{0, 0, 0, 0, 0, 0, 1}}));
    const bool has5 = std::any_of(fact.begin(), fact.end(), [&](const LinearSpace& s) {
        return kernel_equals(s, {Covector{1, 0, 0, 0, 0, 0, 0}, Covector{0, 0, 0, 0, 1, 0, 0}, Covector{0, 0, 0, 0, 0, 0, 1}});
    });
    const bool has6 = std::any_of(fact.begin(), fact.end(), [&](const LinearSpace& s) {
        return kernel_equals(s, {Covector{1, 0, 0, 0, 0, 0, 0}, Covector{0, 0, 0, 0, 0, 1, 0}, Covector{0, 0, 0, 0, 0, 0, 1}});
    });
    CHECK(has5);
    CHECK(has6);

    const auto cube = linear_spaces(preset_form("cube-pair"));
    REQUIRE(cube.size() == 3);
    CHECK(kernel_equals(cube[1], {Covector{1, 0, 0, 0, 0, 0, 0}, Covector{0, 0, 0, 0, 1, 0, 0}, Covector{0, 0, 0, 1, 0, 0, 1}}));
    CHECK(kernel_equals(cube[2], {Covector{1, 0, 0, 0, 0, 0, 0}, Covector{0, 0, 0, 0, 0, 1, 0}, Covector{0, 0, 0, 1, 0, 0, 1}}));
}

TEST_CASE("every emitted space lies on the form, including random forms") {
    for (const char* name : {"fstar", "factorizing", "cube-pair"}) {
        const auto f = preset_form(name);
        for (const auto& s : linear_spaces(f)) CHECK(space_lies_on_form(f, s));
    }
    int forms = 0;
    for (int t = 0; t < 200 && forms < 60; ++t) {
        CubicForm f;
        for (int i = 0; i < 3; ++i) {
            f.a[i] = draw(-3, 3);
            f.a[3 + i] = draw(-3, 3);
        }
        f.a[6] = draw(1, 3);
        for (auto& v : f.q1) v = draw(-3, 3);
        for (auto& v : f.q2) v = draw(-3, 3);
        try {
            const auto spaces = linear_spaces(f);
            ++forms;
            for (const auto& s : spaces) REQUIRE(space_lies_on_form(f, s));
        } catch (const DomainError&) {
        }
    }
    CHECK(forms >= 30);
}

TEST_CASE("factorizing quadratics with a cube-ratio space") {
    // Q2 = x5 x6 + x4^2 with a7 = 8: D''/(B'' a4^2 a7) = 1/8, a cube.
    const auto f = oracle::make_form({1, 0, 0, 1, 0, 0, 8}, {0, 0, 1, 0, 0, 1}, {1, 0, 0, 1, 0, 0});
    const auto spaces = linear_spaces(f);
    CHECK(spaces.size() == 3);
    for (const auto& s : spaces) CHECK(space_lies_on_form(f, s));
    // a7 = 2 gives 1/2, which is not a cube.
    const auto g = oracle::make_form({1, 0, 0, 1, 0, 0, 2}, {0, 0, 1, 0, 0, 1}, {1, 0, 0, 1, 0, 0});
    CHECK(linear_spaces(g).size() == 1);
}

TEST_CASE("classification is invariant under permuting the first block's variables") {
    const std::array<std::array<int, 3>, 6> perms = {{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
    // Square-term and cross-term index of each variable pair in (A1,A2,A3,B1,B2,B3).
    auto cross = [](int i, int j) { return 3 + (3 - i - j); };
    for (const char* name : {"fstar", "factorizing", "cube-pair"}) {
        const auto f = preset_form(name);
        const auto base = classify(f);
        for (const auto& p : perms) {
            CubicForm g = f;
            for (int i = 0; i < 3; ++i) {
                g.a[p[i]] = f.a[i];
                g.q1[p[i]] = f.q1[i];
            }
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j) g.q1[cross(p[i], p[j])] = f.q1[cross(i, j)];
            const auto c = classify(g);
            CHECK(c.block1.delta == base.block1.delta);
            CHECK(c.block1.degenerate == base.block1.degenerate);
            CHECK(c.content == base.content);
            CHECK(c.spaces.size() == base.spaces.size());
        }
    }
}

TEST_CASE("content split") {
    const auto f = oracle::make_form({2, 0, 0, 4, 0, 0, 6}, {0, 0, 1, 0, 0, 1}, {0, 0, 1, 0, 0, 1});
    const auto s = content_split(f);
    CHECK(s.c == 2);
    CHECK(s.multipliers == std::array<i64, 3>{1, 2, 3});
    const auto g = oracle::make_form({1, 0, 0, 1, 0, 0, -3}, {0, 0, 3, 0, 0, 3}, {0, 0, 1, 0, 0, 1});
    const auto t = content_split(g);
    CHECK(t.c == 1);
    CHECK(t.multipliers == std::array<i64, 3>{3, 1, -3});
}

TEST_CASE("form validation and JSON") {
    auto f = preset_form("fstar");
    CHECK(form_from_json(form_to_json(f)) == f);
    nlohmann::json j = form_to_json(f);
    j["a"][6] = 0;
    CHECK_THROWS_AS(form_from_json(j), InvalidForm);
    j = form_to_json(f);
    j["a"][0] = 0;
    j["a"][1] = 0;
    j["a"][2] = 0;
    CHECK_THROWS_AS(form_from_json(j), InvalidForm);
    j = form_to_json(f);
    j["Q1"]["A"][0] = kCoefficientCap + 1;
    CHECK_THROWS_AS(form_from_json(j), InvalidForm);
    j = form_to_json(f);
    j["box"] = "cube";
    CHECK_THROWS_AS(form_from_json(j), InvalidForm);
    CHECK_THROWS_AS(form_from_json(nlohmann::json::array()), InvalidForm);
    CHECK_THROWS_AS(preset_form("nope"), InvalidArgument);
}
