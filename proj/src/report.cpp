#include "lqcubic/report.hpp"

#include <cmath>
#include <filesystem>
#include <map>
#include <set>

#include "lqcubic/errors.hpp"
#include "lqcubic/exp_sums.hpp"
#include "lqcubic/form_io.hpp"
#include "lqcubic/local_solvability.hpp"
#include "lqcubic/rep_counting.hpp"
#include "lqcubic/sing_integral.hpp"

namespace lqcubic {

using nlohmann::json;

namespace {

i128 parse_i128(const json& j) {
    if (j.is_number_integer()) return j.get<i64>();
    if (!j.is_string()) throw InvalidArgument("expected an integer");
    const std::string s = j.get<std::string>();
    std::size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = s[i++] == '-';
    if (i == s.size()) throw InvalidArgument("'" + s + "' is not an integer");
    i128 v = 0;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw InvalidArgument("'" + s + "' is not an integer");
        v = checked::add(checked::mul(v, 10), s[i] - '0');
    }
    return neg ? -v : v;
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
    return j.contains(key) ? j.at(key).get<T>() : fallback;
}

json probe_json(const PredictionProbe& p) {
    return {{"P", p.P},
            {"N", int_json(p.N)},
            {"actual", p.actual},
            {"union_count", p.union_count},
            {"chi", p.chi},
            {"scale", p.scale},
            {"main_term_lattice", p.main_term_lattice},
            {"main_term_circle", p.main_term_circle},
            {"circle_stderr", p.circle_stderr},
            {"residual", p.residual},
            {"relative_residual", p.relative_residual}};
}

PredictionProbe probe_from(const json& j) {
    PredictionProbe p;
    p.P = j.at("P").get<i64>();
    p.N = parse_i128(j.at("N"));
    p.actual = j.at("actual").get<u64>();
    p.union_count = j.at("union_count").get<u64>();
    p.chi = j.at("chi").get<int>();
    p.scale = j.at("scale").get<double>();
    p.main_term_lattice = j.at("main_term_lattice").get<double>();
    p.main_term_circle = j.at("main_term_circle").get<double>();
    p.circle_stderr = j.at("circle_stderr").get<double>();
    p.residual = j.at("residual").get<double>();
    p.relative_residual = j.at("relative_residual").get<double>();
    return p;
}

void check_list(const std::vector<i64>& v, const char* name, i64 lo, i64 hi) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] < lo || v[i] > hi)
            throw InvalidArgument(std::string(name) + " entries must lie in [" + std::to_string(lo) + ", " +
                                  std::to_string(hi) + "]");
        if (i && v[i] <= v[i - 1]) throw InvalidArgument(std::string(name) + " must be strictly increasing");
    }
}

// Value counts of f over {-P..P}^7 by seven nested loops.
std::map<i128, u64> brute_force_values(const CubicForm& f, i64 P) {
    std::map<i128, u64> out;
    std::array<i64, 7> x{};
    x.fill(-P);
    for (;;) {
        ++out[f.eval(x)];
        int i = 0;
        while (i < 7 && x[i] == P) x[i++] = -P;
        if (i == 7) break;
        ++x[i];
    }
    return out;
}

std::set<i64> values_mod(const Block& b, i64 M) {
    std::set<i64> s;
    for (i64 x = 0; x < M; ++x)
        for (i64 y = 0; y < M; ++y)
            for (i64 z = 0; z < M; ++z) s.insert(mod(b.eval(x, y, z), M));
    return s;
}

bool enumerate_solvable(const CubicForm& f, i64 N, i64 M) {
    const auto v1 = values_mod(f.block(1), M), v2 = values_mod(f.block(2), M);
    std::set<i64> v3;
    for (i64 t = 0; t < M; ++t) v3.insert(mod(static_cast<i128>(f.a7()) * t * t * t, M));
    for (i64 a : v1)
        for (i64 b : v2)
            if (v3.count(mod(static_cast<i128>(N) - a - b, M))) return true;
    return false;
}

template <class Fn>
void run_check(VerifyReport& r, const std::string& name, Fn&& fn) {
    Check c;
    c.name = name;
    try {
        c.detail = fn(c.passed);
    } catch (const std::exception& e) {
        c.passed = false;
        c.detail = e.what();
    }
    r.checks.push_back(std::move(c));
}

} // namespace

std::string_view to_string(ExperimentMode mode) {
    return mode == ExperimentMode::Zeros ? "zeros" : "representations";
}

ExperimentMode parse_mode(std::string_view text) {
    if (text == "zeros") return ExperimentMode::Zeros;
    if (text == "representations") return ExperimentMode::Representations;
    throw InvalidArgument("unknown mode '" + std::string(text) + "' (zeros, representations)");
}

void ExperimentConfig::validate() {
    if (mode == ExperimentMode::Zeros) {
        box = BoxKind::Sym;
        if (P_list.empty()) throw InvalidArgument("zeros mode needs at least one P");
        check_list(P_list, "P_list", 1, kMaxHistogramRadius);
    } else {
        if (N_list.empty()) throw InvalidArgument("representations mode needs at least one N");
        for (i64 N : N_list)
            if (N < 1) throw InvalidArgument("N must be positive");
    }
    if (delta_P.size() < 2) throw InvalidArgument("delta_P needs at least two radii");
    check_list(delta_P, "delta_P", 1, kMaxHistogramRadius);
    if (Qmax < 1 || Qmax > kMaxModHistogram) throw InvalidArgument("Qmax out of range");
    if (samples < kMinSlabSamples) throw InvalidArgument("too few Monte Carlo samples");
    if (!(eps0 > 0)) throw InvalidArgument("eps0 must be positive");
    if (format != "json" && format != "csv" && format != "text") throw InvalidArgument("format must be json, csv or text");
}

ExperimentConfig config_from_json(const json& j) {
    if (!j.is_object()) throw InvalidArgument("config must be a JSON object");
    ExperimentConfig c;
    try {
        c.form = get_or<std::string>(j, "form", c.form);
        if (j.contains("mode")) c.mode = parse_mode(j.at("mode").get<std::string>());
        if (j.contains("box")) c.box = parse_box(j.at("box").get<std::string>());
        c.P_list = get_or(j, "P_list", c.P_list);
        c.N_list = get_or(j, "N_list", c.N_list);
        c.delta_P = get_or(j, "delta_P", c.delta_P);
        c.Qmax = get_or(j, "Qmax", c.Qmax);
        c.samples = get_or(j, "samples", c.samples);
        c.seed = get_or(j, "seed", c.seed);
        c.eps0 = get_or(j, "eps0", c.eps0);
        c.format = get_or(j, "format", c.format);
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("malformed config: ") + e.what());
    }
    c.validate();
    return c;
}

json to_json(const ExperimentConfig& c) {
    return {{"form", c.form},       {"mode", std::string(to_string(c.mode))},
            {"box", std::string(to_string(c.box))},
            {"P_list", c.P_list},   {"N_list", c.N_list},
            {"delta_P", c.delta_P}, {"Qmax", c.Qmax},
            {"samples", c.samples}, {"seed", c.seed},
            {"eps0", c.eps0},       {"format", c.format}};
}

json to_json(const PredictionReport& r) {
    json probes = json::array();
    for (const auto& p : r.probes) probes.push_back(probe_json(p));
    return {{"mode", std::string(to_string(r.mode))},
            {"box", std::string(to_string(r.box))},
            {"delta", r.delta},
            {"series", r.series},
            {"series_by_probe", r.series_by_probe},
            {"Qmax", r.Qmax},
            {"integral", r.integral},
            {"integral_stderr", r.integral_stderr},
            {"integral_vanishing", r.integral_vanishing},
            {"probes", probes},
            {"notes", r.notes}};
}

PredictionReport report_from_json(const json& j) {
    PredictionReport r;
    try {
        r.mode = parse_mode(j.at("mode").get<std::string>());
        r.box = parse_box(j.at("box").get<std::string>());
        r.delta = j.at("delta").get<double>();
        r.series = j.at("series").get<double>();
        r.series_by_probe = j.at("series_by_probe").get<std::vector<double>>();
        r.Qmax = j.at("Qmax").get<i64>();
        r.integral = j.at("integral").get<double>();
        r.integral_stderr = j.at("integral_stderr").get<double>();
        r.integral_vanishing = j.at("integral_vanishing").get<bool>();
        for (const auto& p : j.at("probes")) r.probes.push_back(probe_from(p));
        r.notes = j.at("notes").get<std::vector<std::string>>();
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("malformed report: ") + e.what());
    }
    return r;
}

PredictionReport predict(const CubicForm& form, ExperimentConfig config) {
    config.validate();
    form.validate();
    classify(form);
    PredictionReport r;
    r.mode = config.mode;
    r.box = config.box;
    r.Qmax = config.Qmax;
    const MainTermReport deltas = delta_constants(form, config.box, config.delta_P);
    SingularSeries engine(form);

    if (config.mode == ExperimentMode::Zeros) {
        r.delta = deltas.delta0;
        r.series = engine.estimate(0, config.Qmax).value;
        const IntegralEstimate J =
            singular_integral(form, BoxKind::Sym, IntegralTarget::Zero, config.samples, config.seed, config.eps0);
        r.integral = J.value;
        r.integral_stderr = J.stderr_;
        r.notes.insert(r.notes.end(), J.warnings.begin(), J.warnings.end());
        const auto spaces = linear_spaces(form);
        for (i64 P : config.P_list) {
            PredictionProbe p;
            p.P = P;
            p.actual = count_zeros(form, P);
            p.union_count = union_space_count(spaces, BoxKind::Sym, P).count;
            p.scale = std::pow(static_cast<double>(P), 4);
            p.main_term_lattice = r.delta * p.scale;
            p.main_term_circle = p.scale * r.series * r.integral;
            p.circle_stderr = p.scale * std::abs(r.series) * r.integral_stderr;
            p.residual = static_cast<double>(p.actual) - p.main_term_lattice - p.main_term_circle;
            p.relative_residual = p.residual / p.scale;
            r.probes.push_back(p);
        }
        return r;
    }

    r.delta = deltas.delta1;
    const IntegralEstimate J =
        singular_integral(form, config.box, IntegralTarget::Normalized, config.samples, config.seed, config.eps0);
    r.integral = J.value;
    r.integral_stderr = J.stderr_;
    r.integral_vanishing = J.vanishing;
    r.notes.insert(r.notes.end(), J.warnings.begin(), J.warnings.end());
    if (J.vanishing) r.notes.push_back("J1 = 0: prediction is the lattice term alone");
    for (i64 N : config.N_list) {
        PredictionProbe p;
        p.N = N;
        p.P = static_cast<i64>(icbrt(N));
        if (p.P > kMaxHistogramRadius) throw ResourceError("N too large for exact counting");
        p.actual = count_representations(form, N, config.box, p.P);
        p.chi = chi(N, form.a7(), config.box, p.P);
        p.scale = std::pow(static_cast<double>(N), 4.0 / 3.0);
        const double s = engine.estimate(N, config.Qmax).value;
        r.series_by_probe.push_back(s);
        p.main_term_lattice = r.delta * p.scale * p.chi;
        p.main_term_circle = J.vanishing ? 0.0 : p.scale * s * r.integral;
        p.circle_stderr = J.vanishing ? 0.0 : p.scale * std::abs(s) * r.integral_stderr;
        p.residual = static_cast<double>(p.actual) - p.main_term_lattice - p.main_term_circle;
        p.relative_residual = p.residual / p.scale;
        r.probes.push_back(p);
    }
    return r;
}

bool VerifyReport::all_passed() const {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

json to_json(const VerifyReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    return {{"all_passed", r.all_passed()}, {"checks", checks}};
}

VerifyReport verify(const CubicForm& form) {
    VerifyReport r;
    Classification cls;
    run_check(r, "classify", [&](bool& ok) {
        form.validate();
        cls = classify(form);
        ok = true;
        return std::to_string(cls.spaces.size()) + " linear spaces";
    });
    if (!r.checks.back().passed) return r;

    run_check(r, "discriminant-identity", [&](bool& ok) {
        ok = true;
        for (int b = 1; b <= 2; ++b) {
            const Block blk = form.block(b);
            const BlockInvariants inv = b == 1 ? cls.block1 : cls.block2;
            const i128 a = blk.l[inv.pivot - 1];
            const auto& c = inv.primed;
            ok = ok && c.B * c.B - 4 * c.A * c.C == a * a * inv.delta;
        }
        return std::string("B'^2 - 4A'C' = a^2 delta on both blocks");
    });
    run_check(r, "transform-self-check", [&](bool& ok) {
        ok = true;
        for (int b = 1; b <= 2; ++b) {
            const Block blk = form.block(b);
            ok = ok && transform_self_check(blk, transform_block(blk.l, blk.q, b), 100, 7 + b);
        }
        return std::string("100 random points per block");
    });
    run_check(r, "spaces-on-form", [&](bool& ok) {
        ok = !cls.spaces.empty() && cls.spaces.front().tag.rfind("(1)", 0) == 0;
        for (const auto& s : cls.spaces) ok = ok && space_lies_on_form(form, s);
        return std::to_string(cls.spaces.size()) + " spaces checked";
    });
    run_check(r, "histogram-mass-and-parity", [&](bool& ok) {
        ok = true;
        for (int b = 1; b <= 2; ++b)
            for (BoxKind box : {BoxKind::Sym, BoxKind::Pos, BoxKind::NonNeg}) {
                const i64 P = 3;
                const auto h = value_histogram(form.block(b), box, P);
                const i64 side = box_range(box, P).size();
                ok = ok && h.total() == static_cast<u64>(side * side * side);
                if (box == BoxKind::Sym)
                    for (const auto& [n, c] : h.counts) ok = ok && h.at(-n) == c;
            }
        return std::string("P = 3, all boxes");
    });
    run_check(r, "convolution-vs-loop", [&](bool& ok) {
        ok = true;
        const auto values = brute_force_values(form, 1);
        for (i64 N = -3; N <= 3; ++N) {
            auto it = values.find(N);
            const u64 expected = it == values.end() ? 0 : it->second;
            ok = ok && count_representations(form, N, BoxKind::Sym, 1) == expected;
        }
        return std::string("P = 1, N in [-3, 3]");
    });
    run_check(r, "zeros-monotone", [&](bool& ok) {
        ok = true;
        u64 prev = 0;
        std::string detail;
        for (i64 P = 1; P <= 3; ++P) {
            const u64 c = count_zeros(form, P);
            const u64 floor = static_cast<u64>(ipow(2 * P + 1, 4));
            ok = ok && c >= prev && c >= floor;
            prev = c;
            detail += "R(0;" + std::to_string(P) + ")=" + std::to_string(c) + " ";
        }
        return detail;
    });
    run_check(r, "mod-histogram-vs-naive", [&](bool& ok) {
        ok = true;
        double worst = 0;
        for (i64 q = 1; q <= 12; ++q)
            for (i64 a = 1; a <= q; ++a) {
                if (gcd(a, q) != 1) continue;
                for (int b = 1; b <= 2; ++b) {
                    const double err = std::abs(s_block(form.block(b), q, a) - s_block_naive(form.block(b), q, a));
                    worst = std::max(worst, err / std::pow(static_cast<double>(q), 3));
                }
            }
        ok = worst < 1e-8;
        return "max scaled error " + std::to_string(worst);
    });
    run_check(r, "multiplicativity", [&](bool& ok) {
        ok = true;
        double worst = 0;
        for (auto [q1, q2] : {std::pair<i64, i64>{2, 3}, {2, 5}, {4, 3}, {3, 5}})
            for (i64 N = 0; N <= 2; ++N)
                worst = std::max(worst, std::abs(s_q_N(form, q1 * q2, N) - s_q_N(form, q1, N) * s_q_N(form, q2, N)));
        ok = worst < 1e-8;
        return "max error " + std::to_string(worst);
    });
    run_check(r, "slab-consistency", [&](bool& ok) {
        double bound = std::abs(static_cast<double>(form.a7()));
        for (int b = 1; b <= 2; ++b) {
            const Block blk = form.block(b);
            double sl = 0, sq = 0;
            for (i64 v : blk.l) sl += std::abs(static_cast<double>(v));
            for (i64 v : blk.q) sq += std::abs(static_cast<double>(v));
            bound += sl * sq;
        }
        const double eps = bound + 1;
        const SlabEstimate e = slab_volume(form, BoxKind::Sym, 0, eps, kMinSlabSamples, 1);
        ok = e.value == 128.0 / (2 * eps) && e.stderr_ == 0;
        return "eps = " + std::to_string(eps) + " covers the range of f";
    });
    run_check(r, "congruence-vs-enumeration", [&](bool& ok) {
        ok = true;
        for (i64 M : {2, 3, 4, 8, 9, 12}) {
            for (i64 N = 0; N < M; ++N) ok = ok && congruence_solvable(form, N, M).solvable == enumerate_solvable(form, N, M);
        }
        return std::string("M in {2,3,4,8,9,12}, all residues");
    });
    run_check(r, "gamma-sufficiency", [&](bool& ok) {
        ok = true;
        const LocalReport base = local_report(form, 0);
        int tested = 0;
        for (i64 N = 1; N <= 200; ++N) {
            if (N % base.sufficient_modulus != 0) continue;
            ++tested;
            ok = ok && congruence_solvable(form, N, base.modulus).solvable;
        }
        return "modulus " + std::to_string(base.modulus) + ", " + std::to_string(tested) + " N tested";
    });
    return r;
}

CubicForm resolve_form(const std::string& name) {
    std::error_code ec;
    if (std::filesystem::is_regular_file(name, ec)) return load_form(name);
    return preset_form(name);
}

} // namespace lqcubic
