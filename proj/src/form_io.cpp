#include "lqcubic/form_io.hpp"

#include <fstream>

#include "lqcubic/errors.hpp"

namespace lqcubic {

using nlohmann::json;

namespace {

template <std::size_t N>
std::array<i64, N> int_array(const json& j, const char* what) {
    if (!j.is_array() || j.size() != N)
        throw InvalidForm(std::string(what) + " must be an array of " + std::to_string(N) + " integers");
    std::array<i64, N> out{};
    for (std::size_t i = 0; i < N; ++i) {
        if (!j[i].is_number_integer()) throw InvalidForm(std::string(what) + " entries must be integers");
        out[i] = j[i].get<i64>();
    }
    return out;
}

Quadratic quadratic_from(const json& j, const char* name) {
    if (!j.is_object() || !j.contains("A") || !j.contains("B"))
        throw InvalidForm(std::string(name) + " must be an object with keys A and B");
    auto A = int_array<3>(j.at("A"), name);
    auto B = int_array<3>(j.at("B"), name);
    return {A[0], A[1], A[2], B[0], B[1], B[2]};
}

json quadratic_to(const Quadratic& q) {
    return {{"A", {q[0], q[1], q[2]}}, {"B", {q[3], q[4], q[5]}}};
}

std::string_view frak_case_name(FrakDCase c) {
    switch (c) {
    case FrakDCase::DeltaA: return "2*delta*A'";
    case FrakDCase::DeltaC: return "2*delta*C'";
    case FrakDCase::BOnly: return "B'";
    case FrakDCase::ZeroDeltaA: return "2A'";
    case FrakDCase::ZeroDeltaC: return "2C'";
    case FrakDCase::Degenerate: return "degenerate";
    }
    return "degenerate";
}

} // namespace

CubicForm form_from_json(const json& j) {
    if (!j.is_object()) throw InvalidForm("form must be a JSON object");
    for (const char* key : {"a", "Q1", "Q2"})
        if (!j.contains(key)) throw InvalidForm(std::string("form is missing key '") + key + "'");
    CubicForm f;
    f.a = int_array<7>(j.at("a"), "a");
    f.q1 = quadratic_from(j.at("Q1"), "Q1");
    f.q2 = quadratic_from(j.at("Q2"), "Q2");
    if (j.contains("box")) {
        if (!j.at("box").is_string()) throw InvalidForm("box must be a string");
        try {
            f.box = parse_box(j.at("box").get<std::string>());
        } catch (const InvalidArgument& e) {
            throw InvalidForm(e.what());
        }
    }
    f.validate();
    return f;
}

json form_to_json(const CubicForm& form) {
    return {{"a", form.a}, {"Q1", quadratic_to(form.q1)}, {"Q2", quadratic_to(form.q2)},
            {"box", std::string(to_string(form.box))}};
}

CubicForm load_form(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidForm("cannot open form file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InvalidForm("form file '" + path + "' is not valid JSON: " + e.what());
    }
    return form_from_json(j);
}

CubicForm preset_form(const std::string& name) {
    CubicForm f;
    // x1 (x1 x2 + x3^2) in both blocks unless overridden.
    f.a = {1, 0, 0, 1, 0, 0, 1};
    f.q1 = {0, 0, 1, 0, 0, 1};
    f.q2 = {0, 0, 1, 0, 0, 1};
    if (name == "fstar") return f;
    if (name == "factorizing") { // ... + x4 x5 x6
        f.q2 = {0, 0, 0, 1, 0, 0};
        return f;
    }
    if (name == "cube-pair") { // ... + x4 (x5 x6 + x4^2)
        f.q2 = {1, 0, 0, 1, 0, 0};
        return f;
    }
    throw InvalidArgument("unknown preset '" + name + "' (fstar, factorizing, cube-pair)");
}

json int_json(i128 v) {
    if (fits_i64(v)) return static_cast<i64>(v);
    return to_string(v);
}

json to_json(const BlockInvariants& inv) {
    json j;
    j["block"] = inv.block;
    j["delta"] = int_json(inv.delta);
    j["pivot"] = inv.pivot;
    const char* names = inv.block == 1 ? "'" : "''";
    j["primed"] = {{std::string("A") + names, int_json(inv.primed.A)}, {std::string("B") + names, int_json(inv.primed.B)},
                   {std::string("C") + names, int_json(inv.primed.C)}, {std::string("F") + names, int_json(inv.primed.F)},
                   {std::string("G") + names, int_json(inv.primed.G)}};
    j["dpp"] = inv.dpp ? int_json(*inv.dpp) : json(nullptr);
    j["frak_d"] = int_json(inv.frak_d);
    j["frak_d_case"] = std::string(frak_case_name(inv.frak_case));
    j["degenerate"] = inv.degenerate;
    return j;
}

json to_json(const LinearSpace& space) {
    return {{"tag", space.tag}, {"forms", space.forms}};
}

json to_json(const Classification& c) {
    json spaces = json::array();
    for (const auto& s : c.spaces) spaces.push_back(to_json(s));
    return {{"block1", to_json(c.block1)},
            {"block2", to_json(c.block2)},
            {"q1_factorizes", c.q1_factorizes},
            {"q2_factorizes", c.q2_factorizes},
            {"content", c.content},
            {"multipliers", c.multipliers},
            {"spaces", spaces},
            {"notes", c.notes}};
}

} // namespace lqcubic
