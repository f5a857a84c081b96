// Command-line front end: one subcommand per library operation.
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lqcubic/errors.hpp"
#include "lqcubic/exp_sums.hpp"
#include "lqcubic/form_io.hpp"
#include "lqcubic/lemma_harness.hpp"
#include "lqcubic/local_solvability.hpp"
#include "lqcubic/parallel.hpp"
#include "lqcubic/rep_counting.hpp"
#include "lqcubic/report.hpp"
#include "lqcubic/sing_integral.hpp"

using namespace lqcubic;
using nlohmann::json;

namespace {

struct Globals {
    std::string form = "fstar";
    std::string format = "json";
    u64 seed = 1;
    unsigned threads = 1;
    std::string box;
};

i128 parse_int(const std::string& s) {
    std::size_t i = 0;
    bool neg = !s.empty() && s[0] == '-';
    if (neg || (!s.empty() && s[0] == '+')) i = 1;
    if (i == s.size()) throw InvalidArgument("'" + s + "' is not an integer");
    i128 v = 0;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw InvalidArgument("'" + s + "' is not an integer");
        v = checked::add(checked::mul(v, 10), s[i] - '0');
    }
    return neg ? -v : v;
}

// Flattens JSON into "path: value" lines.
void print_text(const json& j, const std::string& prefix, std::ostream& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            print_text(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
        for (std::size_t i = 0; i < j.size(); ++i) print_text(j[i], prefix + "[" + std::to_string(i) + "]", out);
    } else {
        out << prefix << ": " << j.dump() << "\n";
    }
}

void print_csv(const json& rows, std::ostream& out) {
    if (!rows.is_array() || rows.empty()) return;
    std::vector<std::string> keys;
    for (auto it = rows.front().begin(); it != rows.front().end(); ++it) keys.push_back(it.key());
    for (std::size_t i = 0; i < keys.size(); ++i) out << (i ? "," : "") << keys[i];
    out << "\n";
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < keys.size(); ++i) {
            const json& v = r.at(keys[i]);
            out << (i ? "," : "") << (v.is_string() ? v.get<std::string>() : v.dump());
        }
        out << "\n";
    }
}

// `table` is the row list used for csv output; other formats print `doc`.
void emit(const Globals& g, const json& doc, const json& table = json()) {
    if (g.format == "text") print_text(doc, "", std::cout);
    else if (g.format == "csv" && !table.is_null()) print_csv(table, std::cout);
    else std::cout << doc.dump(2) << "\n";
}

BoxKind box_or(const Globals& g, const CubicForm& f) { return g.box.empty() ? f.box : parse_box(g.box); }

json series_json(const SeriesEstimate& s) {
    json tail = json::array(), partial = json::array(), per_prime = json::array();
    for (double t : s.tail) tail.push_back(t);
    for (const auto& p : s.partial) partial.push_back({{"Q", p.Q}, {"value", p.value}});
    for (const auto& p : s.per_prime) per_prime.push_back({{"p", p.p}, {"factor", p.factor}});
    return {{"value", s.value}, {"Qmax", s.Q}, {"partial", partial}, {"tail", tail}, {"per_prime", per_prime}};
}

json slab_json(const SlabEstimate& e) {
    return {{"epsilon", e.epsilon}, {"value", e.value}, {"stderr", e.stderr_}, {"samples", e.samples}, {"hits", e.hits}};
}

json gamma_json(const GammaReport& g) {
    return {{"p", g.p},           {"gamma1", g.gamma1},   {"gamma1p", g.gamma1p}, {"gamma2", g.gamma2},
            {"gamma2p", g.gamma2p}, {"j1", g.j1},         {"j2", g.j2},           {"j3", g.j3},
            {"nu0", g.nu0},       {"gamma", g.gamma},     {"gammap", g.gammap},
            {"cases", {std::string(to_string(g.cases[0])), std::string(to_string(g.cases[1]))}},
            {"clamped", g.clamped}};
}

json audit_json(const GrowthAudit& a) {
    json probes = json::array();
    for (const auto& p : a.probes) probes.push_back({{"size", p.size}, {"count", p.count}});
    return {{"probes", probes},
            {"fitted_exponent", a.fitted_exponent},
            {"claimed_exponent", a.claimed_exponent},
            {"max_constant", a.max_constant}};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"lqcubic: counting, exponential sums and local solvability for L1Q1 + L2Q2 + a7 x7^3"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--form", g.form, "form file (JSON) or preset: fstar, factorizing, cube-pair");
    app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--seed", g.seed, "Monte Carlo seed");
    app.add_option("--threads", g.threads, "worker threads (0 = all cores)");
    app.add_option("--box", g.box, "override the form's box: sym, pos, nonneg");

    auto* classify_cmd = app.add_subcommand("classify", "invariants, content split and linear spaces");

    auto* spaces_cmd = app.add_subcommand("spaces", "linear spaces with lattice-point counts");
    i64 spaces_P = 0;
    spaces_cmd->add_option("--P", spaces_P, "count points of each space in the box of radius P");

    auto* count_cmd = app.add_subcommand("count", "R(N) by histogram convolution");
    std::string count_N;
    i64 count_P = 1;
    std::string histogram_csv;
    count_cmd->add_option("--N", count_N, "target value")->required();
    count_cmd->add_option("--P", count_P, "box radius")->required();
    count_cmd->add_option("--histogram-csv", histogram_csv, "write block histograms as CSV rows block,n,count");

    auto* zeros_cmd = app.add_subcommand("zeros", "R(0;P) on the symmetric box");
    i64 zeros_P = 1;
    zeros_cmd->add_option("--P", zeros_P, "box radius")->required();

    auto* series_cmd = app.add_subcommand("series", "truncated singular series");
    std::string series_N = "0";
    i64 Qmax = 400;
    bool series_zero = false;
    series_cmd->add_option("--N", series_N, "target value");
    series_cmd->add_option("--Qmax", Qmax, "truncation level");
    series_cmd->add_flag("--zero", series_zero, "the N = 0 series");

    auto* integral_cmd = app.add_subcommand("integral", "singular integral by slab volumes");
    std::string target = "n";
    u64 samples = kDefaultSlabSamples;
    double eps0 = 0.1;
    integral_cmd->add_option("--target", target, "n (theta = 1) or zero")->check(CLI::IsMember({"n", "zero"}));
    integral_cmd->add_option("--samples", samples, "samples per epsilon");
    integral_cmd->add_option("--eps0", eps0, "largest slab half-width");

    auto* local_cmd = app.add_subcommand("local", "gamma exponents and the congruence test");
    std::string local_N = "0";
    local_cmd->add_option("--N", local_N, "target value")->required();

    auto* audit_cmd = app.add_subcommand("audit", "growth audits of the counting lemmas");
    std::string audit_kind;
    std::vector<i64> sizes;
    int audit_k = 2;
    i64 audit_A = 1;
    std::string audit_N = "1";
    int audit_block = 1;
    audit_cmd->add_option("kind", audit_kind, "moment, power or surface")
        ->required()
        ->check(CLI::IsMember({"moment", "power", "surface"}));
    audit_cmd->add_option("--sizes", sizes, "probe sizes (P or q)")->required();
    audit_cmd->add_option("--k", audit_k, "power for the power audit");
    audit_cmd->add_option("--A", audit_A, "cube coefficient for the surface audit");
    audit_cmd->add_option("--N", audit_N, "target for the surface audit");
    audit_cmd->add_option("--block", audit_block, "block for the moment audit")->check(CLI::Range(1, 2));

    auto* predict_cmd = app.add_subcommand("predict", "main-term prediction against exact counts");
    std::string config_path, mode = "zeros";
    std::vector<i64> P_list, N_list, delta_P;
    u64 predict_samples = 0;
    i64 predict_Q = 0;
    predict_cmd->add_option("--config", config_path, "experiment config (JSON)");
    predict_cmd->add_option("--mode", mode, "zeros or representations");
    predict_cmd->add_option("--P", P_list, "probe radii (zeros)");
    predict_cmd->add_option("--N", N_list, "probe targets (representations)");
    predict_cmd->add_option("--delta-P", delta_P, "radii for the delta fit");
    predict_cmd->add_option("--Qmax", predict_Q, "series truncation");
    predict_cmd->add_option("--samples", predict_samples, "Monte Carlo samples per epsilon");

    auto* verify_cmd = app.add_subcommand("verify", "desk-scale invariant suite");

    CLI11_PARSE(app, argc, argv);

    try {
        set_thread_count(g.threads);
        const CubicForm form = resolve_form(g.form);

        if (*classify_cmd) {
            emit(g, to_json(classify(form)));
        } else if (*spaces_cmd) {
            const auto spaces = linear_spaces(form);
            const BoxKind box = box_or(g, form);
            json rows = json::array();
            for (const auto& s : spaces) {
                json row = to_json(s);
                row["on_form"] = space_lies_on_form(form, s);
                if (spaces_P > 0) row["count"] = lattice_space_count(s, box, spaces_P);
                rows.push_back(row);
            }
            json doc = {{"spaces", rows}};
            if (spaces_P > 0) {
                const auto u = union_space_count(spaces, box, spaces_P);
                doc["union"] = {{"P", spaces_P}, {"count", u.count}, {"delta_estimate", u.delta_estimate}};
            }
            emit(g, doc);
        } else if (*count_cmd) {
            const BoxKind box = box_or(g, form);
            const i128 N = parse_int(count_N);
            const auto h1 = value_histogram(form.block(1), box, count_P);
            const auto h2 = value_histogram(form.block(2), box, count_P);
            const auto b = representation_breakdown(h1, h2, form.a7(), N);
            if (!histogram_csv.empty()) {
                std::ofstream out(histogram_csv);
                if (!out) throw InvalidArgument("cannot write '" + histogram_csv + "'");
                out << "block,n,count\n";
                int idx = 1;
                for (const auto* h : {&h1, &h2}) {
                    // c(0) is stored separately as the zero count; it is written in order.
                    bool zero_written = false;
                    for (const auto& [n, c] : h->counts) {
                        if (!zero_written && n > 0) {
                            out << idx << ",0," << h->zero_count << "\n";
                            zero_written = true;
                        }
                        out << idx << "," << n << "," << c << "\n";
                    }
                    if (!zero_written) out << idx << ",0," << h->zero_count << "\n";
                    ++idx;
                }
            }
            json doc = {{"N", int_json(N)},
                        {"P", count_P},
                        {"box", std::string(to_string(box))},
                        {"count", b.total()},
                        {"breakdown",
                         {{"n1n2_chi", b.n1n2_chi}, {"n1_c2", b.n1_c2}, {"n2_c1", b.n2_c1}, {"c1_c2", b.c1_c2}}},
                        {"N1", h1.zero_count},
                        {"N2", h2.zero_count}};
            emit(g, doc, json::array({doc}));
        } else if (*zeros_cmd) {
            json doc = {{"P", zeros_P}, {"count", count_zeros(form, zeros_P)}};
            emit(g, doc, json::array({doc}));
        } else if (*series_cmd) {
            const i128 N = series_zero ? 0 : parse_int(series_N);
            const auto s = singular_series(form, N, Qmax);
            json doc = series_json(s);
            doc["N"] = int_json(N);
            emit(g, doc, doc["per_prime"]);
        } else if (*integral_cmd) {
            const BoxKind box = target == "zero" ? BoxKind::Sym : box_or(g, form);
            const auto J = singular_integral(form, box, target == "zero" ? IntegralTarget::Zero : IntegralTarget::Normalized,
                                             samples, g.seed, eps0);
            json ladder = json::array();
            for (const auto& e : J.ladder) ladder.push_back(slab_json(e));
            json doc = {{"target", target},        {"box", std::string(to_string(box))},
                        {"value", J.value},        {"stderr", J.stderr_},
                        {"residual", J.residual},  {"vanishing", J.vanishing},
                        {"ladder", ladder},        {"warnings", J.warnings},
                        {"seed", g.seed}};
            emit(g, doc, ladder);
        } else if (*local_cmd) {
            const i128 N = parse_int(local_N);
            const auto r = local_report(form, N);
            json primes = json::array();
            for (const auto& p : r.primes) primes.push_back(gamma_json(p));
            json doc = {{"N", int_json(N)},
                        {"content", r.content},
                        {"primes", primes},
                        {"modulus", r.modulus},
                        {"sufficient_modulus", r.sufficient_modulus},
                        {"sufficient_holds", r.sufficient_holds},
                        {"solvable", r.congruence.solvable},
                        {"witness", r.congruence.witness ? json(*r.congruence.witness) : json(nullptr)},
                        {"verdict", r.solvable_everywhere ? "solvable-everywhere" : "not-solvable"},
                        {"notes", r.notes}};
            emit(g, doc, primes);
        } else if (*audit_cmd) {
            GrowthAudit a;
            if (audit_kind == "moment") {
                a = second_moment_audit(form.block(audit_block), sizes);
            } else if (audit_kind == "power") {
                const int k = audit_k;
                a = growth_audit(
                    [k](i64 q) {
                        u64 best = 0;
                        for (i64 m = 0; m < q; ++m) best = std::max(best, power_congruence_count(k, q, m));
                        return static_cast<double>(best);
                    },
                    sizes, 1.0 - 1.0 / k);
            } else {
                const i128 N = parse_int(audit_N);
                a = growth_audit([&](i64 P) { return static_cast<double>(special_surface_count(audit_A, N, P)); },
                                 sizes, 11.0 / 6.0);
            }
            json doc = audit_json(a);
            doc["kind"] = audit_kind;
            emit(g, doc, doc["probes"]);
        } else if (*predict_cmd) {
            ExperimentConfig c;
            if (!config_path.empty()) {
                std::ifstream in(config_path);
                if (!in) throw InvalidArgument("cannot open config '" + config_path + "'");
                json j;
                try {
                    in >> j;
                } catch (const json::exception& e) {
                    throw InvalidArgument(std::string("config is not valid JSON: ") + e.what());
                }
                c = config_from_json(j);
            } else {
                c.mode = parse_mode(mode);
                if (!g.box.empty()) c.box = parse_box(g.box);
                if (!P_list.empty()) c.P_list = P_list;
                c.N_list = N_list;
            }
            if (!delta_P.empty()) c.delta_P = delta_P;
            if (predict_Q > 0) c.Qmax = predict_Q;
            if (predict_samples > 0) c.samples = predict_samples;
            c.seed = g.seed;
            const CubicForm f = config_path.empty() ? form : resolve_form(c.form);
            const auto r = predict(f, c);
            json doc = to_json(r);
            emit(g, doc, doc["probes"]);
        } else if (*verify_cmd) {
            const auto r = verify(form);
            json doc = to_json(r);
            emit(g, doc, doc["checks"]);
            return r.all_passed() ? 0 : 1;
        }
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ResourceError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
