#pragma once

#include <string>

#include "json.hpp"
#include "lqcubic/form_model.hpp"

namespace lqcubic {

/// {"a":[7], "Q1":{"A":[3],"B":[3]}, "Q2":{"A":[3],"B":[3]}, "box":"sym|pos|nonneg"}
CubicForm form_from_json(const nlohmann::json& j);
nlohmann::json form_to_json(const CubicForm& form);
CubicForm load_form(const std::string& path);

/// Built-in sample forms: "fstar", "factorizing", "cube-pair".
CubicForm preset_form(const std::string& name);

/// Integers that may exceed 64 bits are written as decimal strings.
nlohmann::json int_json(i128 v);

nlohmann::json to_json(const BlockInvariants& inv);
nlohmann::json to_json(const LinearSpace& space);
nlohmann::json to_json(const Classification& c);

} // namespace lqcubic
