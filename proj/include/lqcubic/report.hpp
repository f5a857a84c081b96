#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "lqcubic/form_model.hpp"

namespace lqcubic {

enum class ExperimentMode { Zeros, Representations };

std::string_view to_string(ExperimentMode mode);
ExperimentMode parse_mode(std::string_view text);

struct ExperimentConfig {
    std::string form = "fstar"; ///< path to a form file or a preset name
    ExperimentMode mode = ExperimentMode::Zeros;
    BoxKind box = BoxKind::Sym;
    std::vector<i64> P_list{8, 12, 16, 24, 32};
    std::vector<i64> N_list;
    std::vector<i64> delta_P{8, 16, 32, 64}; ///< radii for the delta fit
    i64 Qmax = 400;
    u64 samples = 2'000'000;
    u64 seed = 1;
    double eps0 = 0.1;
    std::string format = "json";

    /// Checks guards; zeros mode forces the symmetric box.
    void validate();
    bool operator==(const ExperimentConfig&) const = default;
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& c);

struct PredictionProbe {
    i64 P = 0;
    i128 N = 0;
    u64 actual = 0;
    u64 union_count = 0; ///< exact lattice points on the linear spaces (zeros mode)
    int chi = 0;
    double scale = 0; ///< P^4 or N^{4/3}
    double main_term_lattice = 0;
    double main_term_circle = 0;
    double circle_stderr = 0;
    double residual = 0;          ///< actual - lattice - circle
    double relative_residual = 0; ///< residual / scale
    bool operator==(const PredictionProbe&) const = default;
};

struct PredictionReport {
    ExperimentMode mode = ExperimentMode::Zeros;
    BoxKind box = BoxKind::Sym;
    double delta = 0; ///< delta0 (zeros) or delta1 (representations), fitted
    double series = 0; ///< S_0(Qmax); in representations mode per-probe values are in series_by_probe
    std::vector<double> series_by_probe;
    i64 Qmax = 0;
    double integral = 0;
    double integral_stderr = 0;
    bool integral_vanishing = false;
    std::vector<PredictionProbe> probes;
    std::vector<std::string> notes;
    bool operator==(const PredictionReport&) const = default;
};

nlohmann::json to_json(const PredictionReport& r);
PredictionReport report_from_json(const nlohmann::json& j);

PredictionReport predict(const CubicForm& form, ExperimentConfig config);

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<Check> checks;
    bool all_passed() const;
};

nlohmann::json to_json(const VerifyReport& r);

/// Desk-scale invariant suite. Failures (including classification errors) are results, not exceptions.
VerifyReport verify(const CubicForm& form);

/// Form file path when it exists, otherwise a preset name.
CubicForm resolve_form(const std::string& name);

} // namespace lqcubic
