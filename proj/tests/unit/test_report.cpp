#include "doctest.h"
#include "lqcubic/errors.hpp"
#include "lqcubic/form_io.hpp"
#include "lqcubic/parallel.hpp"
#include "lqcubic/rep_counting.hpp"
#include "lqcubic/report.hpp"
#include "oracles.hpp"

using namespace lqcubic;
using nlohmann::json;

namespace {

ExperimentConfig small_zeros() {
    ExperimentConfig c;
    c.P_list = {4, 6, 8};
    c.delta_P = {4, 8, 16};
    c.Qmax = 40;
    c.samples = 100000;
    c.seed = 7;
    return c;
}

} // namespace

TEST_CASE("config validation") {
    auto c = small_zeros();
    c.box = BoxKind::Pos;
    c.validate();
    CHECK(c.box == BoxKind::Sym);

    CHECK_THROWS_AS(config_from_json(json::array()), InvalidArgument);
    CHECK_THROWS_AS(config_from_json({{"mode", "sideways"}}), DomainError);
    CHECK_THROWS_AS(config_from_json({{"mode", "representations"}}), InvalidArgument);
    CHECK_THROWS_AS(config_from_json({{"P_list", {8, 4}}}), InvalidArgument);
    CHECK_THROWS_AS(config_from_json({{"P_list", {kMaxHistogramRadius + 1}}}), InvalidArgument);
    CHECK_THROWS_AS(config_from_json({{"samples", 10}}), InvalidArgument);
    CHECK_THROWS_AS(config_from_json({{"Qmax", 0}}), InvalidArgument);
    CHECK_THROWS_AS(config_from_json({{"format", "xml"}}), InvalidArgument);
    CHECK_THROWS_AS(config_from_json({{"Qmax", "many"}}), InvalidArgument);

    const auto d = config_from_json({{"mode", "representations"}, {"box", "pos"}, {"N_list", {27, 30}}});
    CHECK(d.mode == ExperimentMode::Representations);
    CHECK(d.box == BoxKind::Pos);
    CHECK(config_from_json(to_json(d)) == d);
}

TEST_CASE("zeros prediction on a small schedule") {
    const auto f = preset_form("fstar");
    const auto r = predict(f, small_zeros());
    REQUIRE(r.probes.size() == 3);
    CHECK(r.mode == ExperimentMode::Zeros);
    CHECK(r.box == BoxKind::Sym);
    CHECK(r.series > 0);
    CHECK(r.integral > 3 * r.integral_stderr);
    for (const auto& p : r.probes) {
        CHECK(p.actual == count_zeros(f, p.P));
        CHECK(p.union_count <= p.actual);
        CHECK(p.scale == doctest::Approx(std::pow(p.P, 4)));
        CHECK(p.residual == doctest::Approx(p.actual - p.main_term_lattice - p.main_term_circle));
        CHECK(p.relative_residual == doctest::Approx(p.residual / p.scale));
    }
}

TEST_CASE("report JSON round trip") {
    const auto r = predict(preset_form("fstar"), small_zeros());
    const json j = to_json(r);
    CHECK(report_from_json(j) == r);
    CHECK(report_from_json(json::parse(j.dump())) == r);
    CHECK(to_json(report_from_json(j)).dump() == j.dump());
}

TEST_CASE("representations mode at a cube") {
    ExperimentConfig c;
    c.mode = ExperimentMode::Representations;
    c.N_list = {27, 28};
    c.delta_P = {4, 8, 16};
    c.Qmax = 30;
    c.samples = 100000;
    const auto r = predict(preset_form("fstar"), c);
    REQUIRE(r.probes.size() == 2);
    CHECK(r.probes[0].chi == 1);
    CHECK(r.probes[0].P == 3);
    CHECK(r.probes[0].main_term_lattice > 0);
    CHECK(r.probes[1].chi == 0);
    CHECK(r.probes[1].main_term_lattice == 0);
    CHECK(r.probes[0].actual == count_representations(preset_form("fstar"), 27, BoxKind::Sym, 3));
    CHECK(r.series_by_probe.size() == 2);
}

TEST_CASE("vanishing J1 leaves the lattice term alone") {
    const auto f = oracle::make_form({-1, 0, 0, -1, 0, 0, -1}, {0, 0, 1, 0, 0, 1}, {0, 0, 1, 0, 0, 1});
    ExperimentConfig c;
    c.mode = ExperimentMode::Representations;
    c.box = BoxKind::Pos;
    c.N_list = {8, 27};
    c.delta_P = {4, 8, 16};
    c.Qmax = 20;
    c.samples = 20000;
    const auto r = predict(f, c);
    CHECK(r.integral_vanishing);
    for (const auto& p : r.probes) {
        CHECK(p.main_term_circle == 0);
        CHECK(p.actual == 0);
    }
}

TEST_CASE("reports do not depend on the worker count") {
    auto c = small_zeros();
    set_thread_count(1);
    const std::string one = to_json(predict(preset_form("cube-pair"), c)).dump();
    set_thread_count(6);
    const std::string six = to_json(predict(preset_form("cube-pair"), c)).dump();
    set_thread_count(0);
    CHECK(one == six);
}

TEST_CASE("verify suite") {
    const auto ok = verify(preset_form("fstar"));
    CHECK(ok.all_passed());
    CHECK(ok.checks.size() >= 10);
    for (const auto& c : ok.checks) CHECK_MESSAGE(c.passed, c.name << ": " << c.detail);

    const auto bad = verify(oracle::make_form({1, 0, 0, 1, 0, 0, 1}, {1, 0, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 1}));
    CHECK_FALSE(bad.all_passed());
    REQUIRE(bad.checks.size() == 1);
    CHECK(bad.checks[0].name == "classify");
    CHECK(to_json(bad)["all_passed"] == false);
}

TEST_CASE("form files") {
    json j = form_to_json(preset_form("cube-pair"));
    CHECK(form_from_json(j) == preset_form("cube-pair"));
    j["a"][6] = 0;
    CHECK_THROWS_AS(form_from_json(j), InvalidForm);
    CHECK(resolve_form("fstar") == preset_form("fstar"));
    CHECK_THROWS_AS(resolve_form("/nonexistent/form.json"), DomainError);
}
