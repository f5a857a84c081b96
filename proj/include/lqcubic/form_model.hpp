#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lqcubic/arith.hpp"

namespace lqcubic {

/// Coordinate range I: Pos = {1..P}, NonNeg = {0..P}, Sym = {-P..P}.
enum class BoxKind { Pos, NonNeg, Sym };

std::string_view to_string(BoxKind box);
BoxKind parse_box(std::string_view text);

struct BoxRange {
    i64 lo;
    i64 hi;
    i64 size() const { return hi >= lo ? hi - lo + 1 : 0; }
    bool contains(i64 v) const { return v >= lo && v <= hi; }
};

BoxRange box_range(BoxKind box, i64 P);

using Linear = std::array<i64, 3>;
/// (A1, A2, A3, B1, B2, B3) for A1 x^2 + A2 y^2 + A3 z^2 + B1 yz + B2 zx + B3 xy.
using Quadratic = std::array<i64, 6>;

/// One ternary block L(x,y,z) * Q(x,y,z).
struct Block {
    Linear l{};
    Quadratic q{};

    i128 linear(i128 x, i128 y, i128 z) const;
    i128 quadratic(i128 x, i128 y, i128 z) const;
    i128 eval(i128 x, i128 y, i128 z) const { return linear(x, y, z) * quadratic(x, y, z); }
    /// gcd of the cubic's coefficients (Gauss: content(L) * content(Q)).
    i64 content() const;
    bool operator==(const Block&) const = default;
};

inline constexpr i64 kCoefficientCap = i64{1} << 20;

/// f = L1 Q1 + L2 Q2 + a7 x7^3 on seven variables.
struct CubicForm {
    std::array<i64, 7> a{};
    Quadratic q1{};
    Quadratic q2{};
    BoxKind box = BoxKind::Sym;

    Block block(int index) const;
    i64 a7() const { return a[6]; }
    i128 eval(std::span<const i64, 7> x) const;
    /// Checks a7 != 0, nonzero linear forms, and the coefficient cap. Throws InvalidForm.
    void validate() const;
    bool operator==(const CubicForm&) const = default;
};

using Matrix3 = std::array<std::array<i128, 3>, 3>;

Matrix3 adjoint_matrix(const Quadratic& q);
i128 delta(const Linear& l, const Quadratic& q);

struct PrimedCoefficients {
    i128 A = 0, B = 0, C = 0, F = 0, G = 0;
};

/// Which row of the frak-D table applied.
enum class FrakDCase { DeltaA, DeltaC, BOnly, ZeroDeltaA, ZeroDeltaC, Degenerate };

struct BlockInvariants {
    int block = 1;
    i128 delta = 0;
    int pivot = 1; ///< 1-based index of the linear coefficient playing the role of a1
    PrimedCoefficients primed;
    std::optional<i128> dpp; ///< D'' for the completed-square forms (delta != 0)
    i128 frak_d = 0;
    FrakDCase frak_case = FrakDCase::Degenerate;
    bool degenerate = false;
};

/// Swaps variable 1 with the pivot (0-based) in both L and Q.
std::pair<Linear, Quadratic> move_pivot_first(const Linear& l, const Quadratic& q, int pivot);

PrimedCoefficients primed_coefficients(const Linear& l, const Quadratic& q);
BlockInvariants block_invariants(const Linear& l, const Quadratic& q, int block_index = 1);

/// Normal forms reached by the integral changes of variables.
enum class NormalFormKind {
    Cusp,   ///< y1 (y1 y3 + y2^2)
    SplitA, ///< y1 (K y2^2 - y3^2) + D y1^3
    SplitC, ///< y1 (K y3^2 - y2^2) + D y1^3
    Product ///< y1 y2 y3 + D y1^3
};

std::string_view to_string(NormalFormKind kind);

struct BlockTransform {
    NormalFormKind kind = NormalFormKind::Cusp;
    i128 scale = 1;
    /// rows[i] is the covector of y_{i+1} in the original (x1,x2,x3).
    std::array<std::array<i128, 3>, 3> rows{};
    i128 k = 0; ///< a_pivot^2 * delta
    i128 d = 0; ///< D''

    i128 normal_form(i128 y1, i128 y2, i128 y3) const;
    std::array<i128, 3> apply(i128 x1, i128 x2, i128 x3) const;
};

/// scale * L * Q == normal_form(rows * x) identically. Throws DegenerateBlock.
BlockTransform transform_block(const Linear& l, const Quadratic& q, int block_index = 1);
bool transform_self_check(const Block& block, const BlockTransform& t, int trials, u64 seed);

/// (d1, d2) coprime with d2 > 0 and num/den = d1^3/d2^3; nullopt when absent or num == 0.
std::optional<std::pair<i128, i128>> is_rational_cube(i128 num, i128 den);

using Covector = std::array<i64, 7>;

/// A 4-dimensional rational subspace of {f = 0}: the common kernel of three covectors.
struct LinearSpace {
    std::array<Covector, 3> forms{};
    std::string tag;
};

struct ContentSplit {
    i64 c = 1;
    std::array<i64, 3> multipliers{1, 1, 1}; ///< (c1, c2, c3); c3 carries the sign of a7
    Block block1;                            ///< L1'Q1' with content 1
    Block block2;
};

ContentSplit content_split(const CubicForm& form);

struct Classification {
    BlockInvariants block1;
    BlockInvariants block2;
    bool q1_factorizes = false;
    bool q2_factorizes = false;
    std::vector<LinearSpace> spaces;
    i64 content = 1;
    std::array<i64, 3> multipliers{1, 1, 1};
    std::vector<std::string> notes;
};

/// Throws DegenerateBlock naming the offending block.
Classification classify(const CubicForm& form);
std::vector<LinearSpace> linear_spaces(const CubicForm& form);

/// Integer basis of {x : forms x = 0} substituted into f, including pairwise sums.
bool space_lies_on_form(const CubicForm& form, const LinearSpace& space);
bool same_space(const LinearSpace& a, const LinearSpace& b);

} // namespace lqcubic
