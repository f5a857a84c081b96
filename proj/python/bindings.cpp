#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lqcubic/errors.hpp"
#include "lqcubic/exp_sums.hpp"
#include "lqcubic/form_io.hpp"
#include "lqcubic/lemma_harness.hpp"
#include "lqcubic/local_solvability.hpp"
#include "lqcubic/parallel.hpp"
#include "lqcubic/rep_counting.hpp"
#include "lqcubic/report.hpp"
#include "lqcubic/sing_integral.hpp"

namespace py = pybind11;
using namespace lqcubic;
using nlohmann::json;

namespace {

py::object to_py(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

json from_py(const py::object& o) {
    return json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

BoxKind box_arg(const std::string& box) { return parse_box(box); }

py::dict series_dict(const SeriesEstimate& s) {
    py::dict d;
    d["value"] = s.value;
    d["Qmax"] = s.Q;
    d["terms"] = s.terms;
    d["tail"] = s.tail;
    py::list partial, per_prime;
    for (const auto& p : s.partial) partial.append(py::make_tuple(p.Q, p.value));
    for (const auto& p : s.per_prime) per_prime.append(py::make_tuple(p.p, p.factor));
    d["partial"] = partial;
    d["per_prime"] = per_prime;
    return d;
}

py::dict slab_dict(const SlabEstimate& e) {
    py::dict d;
    d["value"] = e.value;
    d["epsilon"] = e.epsilon;
    d["samples"] = e.samples;
    d["hits"] = e.hits;
    d["stderr"] = e.stderr_;
    d["seed"] = e.seed;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Counting, exponential sums and local solvability for L1Q1 + L2Q2 + a7 x7^3";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);

    py::class_<CubicForm>(m, "CubicForm")
        .def_static("from_dict", [](const py::object& o) { return form_from_json(from_py(o)); })
        .def_static("preset", &preset_form, py::arg("name"))
        .def_static("load", &load_form, py::arg("path"))
        .def("to_dict", [](const CubicForm& f) { return to_py(form_to_json(f)); })
        .def_readonly("a", &CubicForm::a)
        .def_readonly("q1", &CubicForm::q1)
        .def_readonly("q2", &CubicForm::q2)
        .def_property_readonly("box", [](const CubicForm& f) { return std::string(to_string(f.box)); })
        .def("eval", [](const CubicForm& f, std::array<i64, 7> x) { return static_cast<i64>(f.eval(x)); })
        .def("__eq__", [](const CubicForm& a, const CubicForm& b) { return a == b; })
        .def("__repr__", [](const CubicForm& f) { return "CubicForm(" + form_to_json(f).dump() + ")"; });

    m.def("set_thread_count", &set_thread_count, py::arg("n"));
    m.def("classify", [](const CubicForm& f) { return to_py(to_json(classify(f))); });

    m.def(
        "value_histogram",
        [](const CubicForm& f, int block, i64 P, const std::string& box) {
            if (block != 1 && block != 2) throw InvalidArgument("block must be 1 or 2");
            auto h = value_histogram(f.block(block), box_arg(box), P);
            std::map<i64, u64> counts(h.counts.begin(), h.counts.end());
            return py::make_tuple(counts, h.zero_count);
        },
        py::arg("form"), py::arg("block"), py::arg("P"), py::arg("box") = "sym");
    m.def(
        "count_representations",
        [](const CubicForm& f, i64 N, i64 P, const std::string& box) {
            return count_representations(f, N, box_arg(box), P);
        },
        py::arg("form"), py::arg("N"), py::arg("P"), py::arg("box") = "sym");
    m.def("count_zeros", [](const CubicForm& f, i64 P) { return count_zeros(f, P); }, py::arg("form"), py::arg("P"));
    m.def(
        "union_space_count",
        [](const CubicForm& f, i64 P, const std::string& box) {
            return union_space_count(linear_spaces(f), box_arg(box), P).count;
        },
        py::arg("form"), py::arg("P"), py::arg("box") = "sym");
    m.def("chi", [](i64 N, i64 a7, const std::string& box, i64 P) { return chi(N, a7, box_arg(box), P); },
          py::arg("N"), py::arg("a7"), py::arg("box"), py::arg("P"));

    m.def("s3", &s3, py::arg("q"), py::arg("a"), py::arg("a7"));
    m.def(
        "s_block",
        [](const CubicForm& f, int block, i64 q, i64 a) {
            if (block != 1 && block != 2) throw InvalidArgument("block must be 1 or 2");
            return s_block(f.block(block), q, a);
        },
        py::arg("form"), py::arg("block"), py::arg("q"), py::arg("a"));
    m.def("s_q_N", [](const CubicForm& f, i64 q, i64 N) { return s_q_N(f, q, N); }, py::arg("form"), py::arg("q"),
          py::arg("N"));
    m.def(
        "singular_series", [](const CubicForm& f, i64 N, i64 Qmax) { return series_dict(singular_series(f, N, Qmax)); },
        py::arg("form"), py::arg("N"), py::arg("Qmax"));

    m.def(
        "slab_volume",
        [](const CubicForm& f, const std::string& box, double theta, double eps, u64 samples, u64 seed) {
            return slab_dict(slab_volume(f, box_arg(box), theta, eps, samples, seed));
        },
        py::arg("form"), py::arg("box"), py::arg("theta"), py::arg("epsilon"), py::arg("samples"), py::arg("seed") = 1);
    m.def(
        "singular_integral",
        [](const CubicForm& f, const std::string& box, const std::string& target, u64 samples, u64 seed) {
            if (target != "n" && target != "zero") throw InvalidArgument("target must be 'n' or 'zero'");
            auto J = singular_integral(f, box_arg(box), target == "zero" ? IntegralTarget::Zero : IntegralTarget::Normalized,
                                       samples, seed);
            py::dict d;
            d["value"] = J.value;
            d["stderr"] = J.stderr_;
            d["residual"] = J.residual;
            d["vanishing"] = J.vanishing;
            py::list ladder;
            for (const auto& e : J.ladder) ladder.append(slab_dict(e));
            d["ladder"] = ladder;
            d["warnings"] = J.warnings;
            return d;
        },
        py::arg("form"), py::arg("box"), py::arg("target"), py::arg("samples") = kDefaultSlabSamples,
        py::arg("seed") = 1);

    m.def(
        "gammas",
        [](i64 p, const CubicForm& f) {
            const auto g = gammas(p, f);
            py::dict d;
            d["p"] = g.p;
            d["gamma1"] = g.gamma1;
            d["gamma1p"] = g.gamma1p;
            d["gamma2"] = g.gamma2;
            d["gamma2p"] = g.gamma2p;
            d["gamma"] = g.gamma;
            d["gammap"] = g.gammap;
            d["cases"] = py::make_tuple(std::string(to_string(g.cases[0])), std::string(to_string(g.cases[1])));
            return d;
        },
        py::arg("p"), py::arg("form"));
    m.def(
        "congruence_solvable",
        [](const CubicForm& f, i64 N, i64 M) {
            auto r = congruence_solvable(f, N, M);
            return py::make_tuple(r.solvable, r.witness ? py::cast(*r.witness) : py::none());
        },
        py::arg("form"), py::arg("N"), py::arg("M"));
    m.def(
        "local_report",
        [](const CubicForm& f, i64 N) {
            const auto r = local_report(f, N);
            py::dict d;
            d["content"] = r.content;
            d["modulus"] = r.modulus;
            d["sufficient_modulus"] = r.sufficient_modulus;
            d["solvable"] = r.solvable_everywhere;
            return d;
        },
        py::arg("form"), py::arg("N"));

    m.def("power_congruence_count", &power_congruence_count, py::arg("k"), py::arg("q"), py::arg("m"));
    m.def(
        "special_surface_count", [](i64 A, i64 N, i64 P) { return special_surface_count(A, N, P); }, py::arg("A"),
        py::arg("N"), py::arg("P"));

    m.def(
        "predict",
        [](const CubicForm& f, const py::object& config) {
            return to_py(to_json(predict(f, config_from_json(from_py(config)))));
        },
        py::arg("form"), py::arg("config"));
    m.def("verify", [](const CubicForm& f) { return to_py(to_json(verify(f))); }, py::arg("form"));
}
