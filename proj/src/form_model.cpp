#include "lqcubic/form_model.hpp"

#include <random>
#include <stdexcept>

#include "lqcubic/errors.hpp"
#include "lqcubic/lattice.hpp"

namespace lqcubic {

using checked::add;
using checked::mul;
using checked::sub;

std::string_view to_string(BoxKind box) {
    switch (box) {
    case BoxKind::Pos: return "pos";
    case BoxKind::NonNeg: return "nonneg";
    case BoxKind::Sym: return "sym";
    }
    return "sym";
}

BoxKind parse_box(std::string_view text) {
    if (text == "pos") return BoxKind::Pos;
    if (text == "nonneg") return BoxKind::NonNeg;
    if (text == "sym") return BoxKind::Sym;
    throw InvalidArgument("unknown box kind '" + std::string(text) + "' (expected sym, pos or nonneg)");
}

BoxRange box_range(BoxKind box, i64 P) {
    if (P < 0) throw InvalidArgument("box radius must be nonnegative");
    switch (box) {
    case BoxKind::Pos: return {1, P};
    case BoxKind::NonNeg: return {0, P};
    case BoxKind::Sym: return {-P, P};
    }
    return {-P, P};
}

i128 Block::linear(i128 x, i128 y, i128 z) const { return l[0] * x + l[1] * y + l[2] * z; }

i128 Block::quadratic(i128 x, i128 y, i128 z) const {
    return q[0] * x * x + q[1] * y * y + q[2] * z * z + q[3] * y * z + q[4] * z * x + q[5] * x * y;
}

i64 Block::content() const {
    i64 cl = 0, cq = 0;
    for (i64 v : l) cl = gcd(cl, v);
    for (i64 v : q) cq = gcd(cq, v);
    return checked::narrow(static_cast<i128>(cl) * cq);
}

Block CubicForm::block(int index) const {
    if (index == 1) return {{a[0], a[1], a[2]}, q1};
    if (index == 2) return {{a[3], a[4], a[5]}, q2};
    throw InvalidArgument("block index must be 1 or 2");
}

i128 CubicForm::eval(std::span<const i64, 7> x) const {
    Block b1 = block(1), b2 = block(2);
    i128 x7 = x[6];
    return b1.eval(x[0], x[1], x[2]) + b2.eval(x[3], x[4], x[5]) + static_cast<i128>(a[6]) * x7 * x7 * x7;
}

void CubicForm::validate() const {
    auto check_cap = [](i64 v) {
        if (v > kCoefficientCap || v < -kCoefficientCap)
            throw InvalidForm("coefficient " + std::to_string(v) + " exceeds the 2^20 magnitude cap");
    };
    for (i64 v : a) check_cap(v);
    for (i64 v : q1) check_cap(v);
    for (i64 v : q2) check_cap(v);
    if (a[6] == 0) throw InvalidForm("a7 must be nonzero");
    if (a[0] == 0 && a[1] == 0 && a[2] == 0) throw InvalidForm("L1 is the zero form");
    if (a[3] == 0 && a[4] == 0 && a[5] == 0) throw InvalidForm("L2 is the zero form");
}

Matrix3 adjoint_matrix(const Quadratic& q) {
    const i128 A1 = q[0], A2 = q[1], A3 = q[2], B1 = q[3], B2 = q[4], B3 = q[5];
    Matrix3 m;
    m[0][0] = B1 * B1 - 4 * A2 * A3;
    m[1][1] = B2 * B2 - 4 * A1 * A3;
    m[2][2] = B3 * B3 - 4 * A1 * A2;
    m[0][1] = m[1][0] = 2 * A3 * B3 - B1 * B2;
    m[0][2] = m[2][0] = 2 * A2 * B2 - B1 * B3;
    m[1][2] = m[2][1] = 2 * A1 * B1 - B2 * B3;
    return m;
}

i128 delta(const Linear& l, const Quadratic& q) {
    if (l[0] == 0 && l[1] == 0 && l[2] == 0) throw InvalidForm("delta of a zero linear form");
    Matrix3 m = adjoint_matrix(q);
    i128 total = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) total = add(total, mul(mul(l[i], m[i][j]), l[j]));
    return total;
}

std::pair<Linear, Quadratic> move_pivot_first(const Linear& l, const Quadratic& q, int pivot) {
    // Transposition tau = (0 pivot); new coefficient i is old coefficient tau(i) for L, A and B alike.
    auto tau = [pivot](int i) { return i == 0 ? pivot : (i == pivot ? 0 : i); };
    Linear pl;
    Quadratic pq;
    for (int i = 0; i < 3; ++i) {
        pl[i] = l[tau(i)];
        pq[i] = q[tau(i)];
        pq[3 + i] = q[3 + tau(i)];
    }
    return {pl, pq};
}

PrimedCoefficients primed_coefficients(const Linear& l, const Quadratic& q) {
    const i128 a1 = l[0], a2 = l[1], a3 = l[2];
    const i128 A1 = q[0], A2 = q[1], A3 = q[2], B1 = q[3], B2 = q[4], B3 = q[5];
    PrimedCoefficients p;
    p.A = A1 * a2 * a2 + A2 * a1 * a1 - B3 * a1 * a2;
    p.B = 2 * A1 * a2 * a3 + B1 * a1 * a1 - B2 * a1 * a2 - B3 * a1 * a3;
    p.C = A1 * a3 * a3 + A3 * a1 * a1 - B2 * a1 * a3;
    p.F = B2 * a1 - 2 * A1 * a3;
    p.G = B3 * a1 - 2 * A1 * a2;
    return p;
}

namespace {

int first_nonzero(const Linear& l) {
    for (int i = 0; i < 3; ++i)
        if (l[i] != 0) return i;
    throw InvalidForm("linear form is identically zero");
}

// Covector of y in the permuted variables, mapped back to the original (x1,x2,x3).
std::array<i128, 3> unpermute(const std::array<i128, 3>& c, int pivot) {
    std::array<i128, 3> out{};
    for (int i = 0; i < 3; ++i) {
        int t = i == 0 ? pivot : (i == pivot ? 0 : i);
        out[t] = c[i];
    }
    return out;
}

std::array<i128, 3> combine(i128 s, const std::array<i128, 3>& u, i128 t, const std::array<i128, 3>& v) {
    return {add(mul(s, u[0]), mul(t, v[0])), add(mul(s, u[1]), mul(t, v[1])), add(mul(s, u[2]), mul(t, v[2]))};
}

std::array<i128, 3> primitive(std::array<i128, 3> c) {
    i128 g = gcd(gcd(c[0], c[1]), c[2]);
    if (g == 0) return c;
    for (auto& v : c) v /= g;
    for (auto v : c) {
        if (v == 0) continue;
        if (v < 0)
            for (auto& w : c) w = -w;
        break;
    }
    return c;
}

bool is_positive_square(i128 v, i128* root) {
    if (v <= 0) return false;
    auto r = exact_sqrt(v);
    if (!r) return false;
    if (root) *root = *r;
    return true;
}

struct CompletedSquare {
    std::array<i128, 3> x5; // x5' in permuted coordinates
    std::array<i128, 3> x6; // x6'
    std::array<i128, 3> plus;
    std::array<i128, 3> minus;
    i128 cube_den = 0; // the denominator in D''/(...) for the cube test, without a7
    char sub = 'i';
};

// The Delta != 0 completions of the square. Requires delta = d^2 when plus/minus are used.
CompletedSquare complete_square(const Linear& pl, const Quadratic& pq, const PrimedCoefficients& p, i128 dlt,
                                i128 d) {
    const i128 a1 = pl[0], a2 = pl[1], a3 = pl[2];
    const i128 K = mul(mul(a1, a1), dlt);
    CompletedSquare cs;
    if (p.A != 0) {
        i128 h = sub(mul(p.B, p.G), mul(2 * p.A, p.F));
        cs.x5 = {mul(p.G, a1), add(2 * p.A, mul(p.G, a2)), add(p.B, mul(p.G, a3))};
        cs.x6 = {mul(h, a1), mul(h, a2), add(K, mul(h, a3))};
        cs.plus = combine(mul(a1, d), cs.x5, 1, cs.x6);
        cs.minus = combine(mul(a1, d), cs.x5, -1, cs.x6);
        cs.cube_den = mul(mul(mul(4, p.A), mul(mul(a1, a1), mul(a1, a1))), dlt);
        cs.sub = 'i';
    } else if (p.C != 0) {
        // Sub-case (ii): the roles of x5', x6' swap relative to sub-case (i).
        i128 h = sub(mul(p.B, p.F), mul(2 * p.C, p.G));
        cs.x5 = {mul(h, a1), add(K, mul(h, a2)), mul(h, a3)};
        cs.x6 = {mul(p.F, a1), add(p.B, mul(p.F, a2)), add(2 * p.C, mul(p.F, a3))};
        cs.plus = combine(mul(a1, d), cs.x6, 1, cs.x5);
        cs.minus = combine(mul(a1, d), cs.x6, -1, cs.x5);
        cs.cube_den = mul(mul(mul(4, p.C), mul(mul(a1, a1), mul(a1, a1))), dlt);
        cs.sub = 'j';
    } else {
        cs.x5 = {mul(p.F, a1), add(p.B, mul(p.F, a2)), mul(p.F, a3)};
        cs.x6 = {mul(p.G, a1), mul(p.G, a2), add(p.B, mul(p.G, a3))};
        cs.plus = cs.x5;
        cs.minus = cs.x6;
        cs.cube_den = mul(p.B, mul(a1, a1));
        cs.sub = 'k';
    }
    (void)pq;
    return cs;
}

std::string subcase_name(char sub) {
    switch (sub) {
    case 'i': return "i";
    case 'j': return "ii";
    default: return "iii";
    }
}

struct BlockSplit {
    std::array<i128, 3> linear{};
    std::vector<std::array<i128, 3>> factors; // factors of Q when it splits over Q
    struct CubePair {
        std::array<i128, 3> plus, minus;
        i128 d1 = 0, d2 = 1;
        std::string sub;
    };
    std::optional<CubePair> cube;
};

BlockSplit analyze_block(const Block& b, i64 a7, int block_index) {
    BlockInvariants inv = block_invariants(b.l, b.q, block_index);
    BlockSplit out;
    out.linear = {b.l[0], b.l[1], b.l[2]};
    i128 d = 0;
    if (!is_positive_square(inv.delta, &d)) return out;
    int pivot = inv.pivot - 1;
    auto [pl, pq] = move_pivot_first(b.l, b.q, pivot);
    CompletedSquare cs = complete_square(pl, pq, inv.primed, inv.delta, d);
    i128 dpp = inv.dpp.value();
    if (dpp == 0) {
        out.factors.push_back(primitive(unpermute(cs.plus, pivot)));
        out.factors.push_back(primitive(unpermute(cs.minus, pivot)));
        return out;
    }
    if (auto cube = is_rational_cube(dpp, mul(cs.cube_den, a7))) {
        BlockSplit::CubePair pair;
        pair.plus = primitive(unpermute(cs.plus, pivot));
        pair.minus = primitive(unpermute(cs.minus, pivot));
        pair.d1 = cube->first;
        pair.d2 = cube->second;
        pair.sub = subcase_name(cs.sub);
        out.cube = pair;
    }
    return out;
}

Covector make_covector(const std::array<i128, 3>& c, int offset) {
    Covector v{};
    for (int i = 0; i < 3; ++i) v[offset + i] = checked::narrow(c[i]);
    return v;
}

Covector cube_covector(const std::array<i128, 3>& linear, int offset, i128 d1, i128 d2) {
    Covector v{};
    for (int i = 0; i < 3; ++i) v[offset + i] = checked::narrow(mul(d1, linear[i]));
    v[6] = checked::narrow(d2);
    return v;
}

IntMatrix as_rows(const LinearSpace& s) {
    IntMatrix rows;
    for (const auto& f : s.forms) rows.emplace_back(f.begin(), f.end());
    return rows;
}

} // namespace

BlockInvariants block_invariants(const Linear& l, const Quadratic& q, int block_index) {
    BlockInvariants inv;
    inv.block = block_index;
    int pivot = first_nonzero(l);
    inv.pivot = pivot + 1;
    inv.delta = delta(l, q);
    auto [pl, pq] = move_pivot_first(l, q, pivot);
    const PrimedCoefficients p = primed_coefficients(pl, pq);
    inv.primed = p;
    const i128 dlt = inv.delta;
    const i128 a1 = pl[0];
    const i128 A1 = pq[0];
    const i128 kA = sub(mul(2 * p.A, p.F), mul(p.B, p.G)); // 2A'F' - B'G'
    const i128 kC = sub(mul(2 * p.C, p.G), mul(p.B, p.F)); // 2C'G' - B'F'

    if (dlt != 0) {
        const i128 K = mul(mul(a1, a1), dlt);
        if (p.A != 0)
            inv.dpp = add(mul(K, sub(mul(4 * p.A, A1), mul(p.G, p.G))), mul(kA, kA));
        else if (p.C != 0)
            // Printed with "Delta_4" in the source formula; read as Delta_2 (this block's delta).
            inv.dpp = add(mul(K, sub(mul(4 * p.C, A1), mul(p.F, p.F))), mul(kC, kC));
        else
            inv.dpp = sub(mul(p.B, A1), mul(p.F, p.G));
    }

    if (dlt != 0 && p.A != 0) {
        inv.frak_d = mul(mul(2, dlt), p.A);
        inv.frak_case = FrakDCase::DeltaA;
    } else if (dlt != 0 && p.C != 0) {
        inv.frak_d = mul(mul(2, dlt), p.C);
        inv.frak_case = FrakDCase::DeltaC;
    } else if (p.A == 0 && p.C == 0 && p.B != 0) {
        inv.frak_d = p.B;
        inv.frak_case = FrakDCase::BOnly;
    } else if (dlt == 0 && mul(p.A, kA) != 0) {
        inv.frak_d = 2 * p.A;
        inv.frak_case = FrakDCase::ZeroDeltaA;
    } else if (dlt == 0 && mul(p.C, kC) != 0) {
        inv.frak_d = 2 * p.C;
        inv.frak_case = FrakDCase::ZeroDeltaC;
    } else {
        inv.frak_d = 0;
        inv.frak_case = FrakDCase::Degenerate;
    }
    inv.degenerate = inv.frak_case == FrakDCase::Degenerate;
    return inv;
}

std::string_view to_string(NormalFormKind kind) {
    switch (kind) {
    case NormalFormKind::Cusp: return "cusp";
    case NormalFormKind::SplitA: return "split-a";
    case NormalFormKind::SplitC: return "split-c";
    case NormalFormKind::Product: return "product";
    }
    return "cusp";
}

i128 BlockTransform::normal_form(i128 y1, i128 y2, i128 y3) const {
    switch (kind) {
    case NormalFormKind::Cusp: return mul(y1, add(mul(y1, y3), mul(y2, y2)));
    case NormalFormKind::SplitA:
        return add(mul(y1, sub(mul(k, mul(y2, y2)), mul(y3, y3))), mul(d, mul(y1, mul(y1, y1))));
    case NormalFormKind::SplitC:
        return add(mul(y1, sub(mul(k, mul(y3, y3)), mul(y2, y2))), mul(d, mul(y1, mul(y1, y1))));
    case NormalFormKind::Product: return add(mul(y1, mul(y2, y3)), mul(d, mul(y1, mul(y1, y1))));
    }
    return 0;
}

std::array<i128, 3> BlockTransform::apply(i128 x1, i128 x2, i128 x3) const {
    std::array<i128, 3> y{};
    for (int i = 0; i < 3; ++i) y[i] = add(add(mul(rows[i][0], x1), mul(rows[i][1], x2)), mul(rows[i][2], x3));
    return y;
}

bool transform_self_check(const Block& block, const BlockTransform& t, int trials, u64 seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<i64> dist(-20, 20);
    for (int i = 0; i < trials; ++i) {
        i64 x = dist(rng), y = dist(rng), z = dist(rng);
        auto img = t.apply(x, y, z);
        if (mul(t.scale, block.eval(x, y, z)) != t.normal_form(img[0], img[1], img[2])) return false;
    }
    return true;
}

BlockTransform transform_block(const Linear& l, const Quadratic& q, int block_index) {
    BlockInvariants inv = block_invariants(l, q, block_index);
    if (inv.degenerate)
        throw DegenerateBlock(block_index, "block " + std::to_string(block_index) + " is degenerate");
    const int pivot = inv.pivot - 1;
    auto [pl, pq] = move_pivot_first(l, q, pivot);
    const PrimedCoefficients& p = inv.primed;
    const i128 a1 = pl[0], a2 = pl[1], a3 = pl[2];
    const i128 A1 = pq[0];
    const std::array<i128, 3> L = {a1, a2, a3};
    BlockTransform t;
    std::array<std::array<i128, 3>, 3> rows{};
    rows[0] = L;
    const i128 a1sq = mul(a1, a1);

    switch (inv.frak_case) {
    case FrakDCase::ZeroDeltaA: {
        i128 u = sub(mul(4 * p.A, A1), mul(p.G, p.G));
        i128 w = sub(mul(4 * p.A, p.F), mul(2 * p.B, p.G));
        t.kind = NormalFormKind::Cusp;
        t.scale = mul(4 * p.A, a1sq);
        rows[1] = {mul(p.G, a1), add(2 * p.A, mul(p.G, a2)), add(p.B, mul(p.G, a3))};
        rows[2] = {mul(u, a1), mul(u, a2), add(mul(u, a3), w)};
        break;
    }
    case FrakDCase::ZeroDeltaC: {
        i128 u = sub(mul(4 * p.C, A1), mul(p.F, p.F));
        i128 w = sub(mul(4 * p.C, p.G), mul(2 * p.B, p.F));
        t.kind = NormalFormKind::Cusp;
        t.scale = mul(4 * p.C, a1sq);
        rows[1] = {mul(p.F, a1), add(p.B, mul(p.F, a2)), add(2 * p.C, mul(p.F, a3))};
        rows[2] = {mul(u, a1), add(mul(u, a2), w), mul(u, a3)};
        break;
    }
    case FrakDCase::DeltaA:
    case FrakDCase::DeltaC:
    case FrakDCase::BOnly: {
        CompletedSquare cs = complete_square(pl, pq, p, inv.delta, 0);
        t.k = mul(a1sq, inv.delta);
        t.d = inv.dpp.value();
        rows[1] = cs.x5;
        rows[2] = cs.x6;
        if (inv.frak_case == FrakDCase::DeltaA) {
            t.kind = NormalFormKind::SplitA;
            t.scale = mul(mul(4 * p.A, a1sq), t.k);
        } else if (inv.frak_case == FrakDCase::DeltaC) {
            t.kind = NormalFormKind::SplitC;
            t.scale = mul(mul(4 * p.C, a1sq), t.k);
        } else {
            t.kind = NormalFormKind::Product;
            t.scale = mul(p.B, a1sq);
        }
        break;
    }
    case FrakDCase::Degenerate: break;
    }
    for (int i = 0; i < 3; ++i) t.rows[i] = unpermute(rows[i], pivot);
    if (!transform_self_check({l, q}, t, 100, 0x5eedULL + static_cast<u64>(block_index)))
        throw std::logic_error("normal-form identity failed for block " + std::to_string(block_index));
    return t;
}

std::optional<std::pair<i128, i128>> is_rational_cube(i128 num, i128 den) {
    if (den == 0) throw InvalidArgument("is_rational_cube: zero denominator");
    if (num == 0) return std::nullopt;
    i128 g = gcd(num, den);
    num /= g;
    den /= g;
    if (den < 0) {
        num = -num;
        den = -den;
    }
    auto n = exact_cbrt(num);
    auto d = exact_cbrt(den);
    if (!n || !d) return std::nullopt;
    return std::make_pair(*n, *d);
}

ContentSplit content_split(const CubicForm& form) {
    ContentSplit s;
    i64 cl1 = 0, cq1 = 0, cl2 = 0, cq2 = 0;
    for (int i = 0; i < 3; ++i) {
        cl1 = gcd(cl1, form.a[i]);
        cl2 = gcd(cl2, form.a[3 + i]);
    }
    for (int i = 0; i < 6; ++i) {
        cq1 = gcd(cq1, form.q1[i]);
        cq2 = gcd(cq2, form.q2[i]);
    }
    if (cq1 == 0 || cq2 == 0) throw InvalidForm("a quadratic form is identically zero");
    const i64 t1 = cl1 * cq1, t2 = cl2 * cq2, t3 = form.a7() < 0 ? -form.a7() : form.a7();
    s.c = gcd(gcd(t1, t2), t3);
    s.multipliers = {t1 / s.c, t2 / s.c, form.a7() / s.c};
    for (int i = 0; i < 3; ++i) {
        s.block1.l[i] = form.a[i] / cl1;
        s.block2.l[i] = form.a[3 + i] / cl2;
    }
    for (int i = 0; i < 6; ++i) {
        s.block1.q[i] = form.q1[i] / cq1;
        s.block2.q[i] = form.q2[i] / cq2;
    }
    return s;
}

bool space_lies_on_form(const CubicForm& form, const LinearSpace& space) {
    IntMatrix rows = as_rows(space);
    if (rational_rank(rows, 7) != 3) return false;
    IntMatrix basis = kernel_basis(rows, 7);
    if (basis.size() != 4) return false;
    // A cubic in four parameters vanishes identically iff it vanishes on the 35 points
    // sum c_i e_i with c_i >= 0 and sum c_i <= 3; the basis and pairwise sums are among them.
    for (int c0 = 0; c0 <= 3; ++c0)
        for (int c1 = 0; c0 + c1 <= 3; ++c1)
            for (int c2 = 0; c0 + c1 + c2 <= 3; ++c2)
                for (int c3 = 0; c0 + c1 + c2 + c3 <= 3; ++c3) {
                    std::array<i64, 7> x{};
                    const int c[4] = {c0, c1, c2, c3};
                    for (int j = 0; j < 7; ++j) {
                        i128 v = 0;
                        for (int b = 0; b < 4; ++b) v = add(v, mul(c[b], basis[b][j]));
                        x[j] = checked::narrow(v);
                    }
                    if (form.eval(x) != 0) return false;
                }
    return true;
}

bool same_space(const LinearSpace& a, const LinearSpace& b) {
    IntMatrix rows = as_rows(a);
    for (const auto& f : b.forms) rows.emplace_back(f.begin(), f.end());
    return rational_rank(rows, 7) == 3 && rational_rank(as_rows(a), 7) == 3;
}

std::vector<LinearSpace> linear_spaces(const CubicForm& form) {
    form.validate();
    const i64 a7 = form.a7();
    const BlockSplit s1 = analyze_block(form.block(1), a7, 1);
    const BlockSplit s2 = analyze_block(form.block(2), a7, 2);

    std::vector<std::array<i128, 3>> zero1{s1.linear}, zero2{s2.linear};
    zero1.insert(zero1.end(), s1.factors.begin(), s1.factors.end());
    zero2.insert(zero2.end(), s2.factors.begin(), s2.factors.end());

    Covector e7{};
    e7[6] = 1;
    std::vector<LinearSpace> spaces;
    auto push = [&](LinearSpace s) {
        for (const auto& existing : spaces)
            if (same_space(existing, s)) return;
        if (!space_lies_on_form(form, s))
            throw std::logic_error("constructed linear space " + s.tag + " does not lie on f = 0");
        spaces.push_back(std::move(s));
    };

    for (std::size_t i = 0; i < zero1.size(); ++i)
        for (std::size_t j = 0; j < zero2.size(); ++j) {
            std::string tag;
            if (i == 0 && j == 0) tag = "(1)";
            else if (i == 0) tag = j == 1 ? "(2)" : "(3)";
            else if (j == 0) tag = std::string(i == 1 ? "(2)" : "(3)") + "[block1]";
            else tag = "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")[both]";
            push({{make_covector(zero1[i], 0), make_covector(zero2[j], 3), e7}, tag});
        }

    if (s2.cube) {
        const auto& c = *s2.cube;
        for (std::size_t i = 0; i < zero1.size(); ++i) {
            std::string suffix = i == 0 ? "" : "[Q1 factor]";
            Covector link = cube_covector(s2.linear, 3, c.d1, c.d2);
            push({{make_covector(zero1[i], 0), make_covector(c.plus, 3), link}, "(2'" + c.sub + ")" + suffix});
            push({{make_covector(zero1[i], 0), make_covector(c.minus, 3), link}, "(3'" + c.sub + ")" + suffix});
        }
    }
    if (s1.cube) {
        const auto& c = *s1.cube;
        for (std::size_t j = 0; j < zero2.size(); ++j) {
            std::string suffix = j == 0 ? "[block1]" : "[block1][Q2 factor]";
            Covector link = cube_covector(s1.linear, 0, c.d1, c.d2);
            push({{make_covector(c.plus, 0), make_covector(zero2[j], 3), link}, "(2'" + c.sub + ")" + suffix});
            push({{make_covector(c.minus, 0), make_covector(zero2[j], 3), link}, "(3'" + c.sub + ")" + suffix});
        }
    }
    return spaces;
}

Classification classify(const CubicForm& form) {
    form.validate();
    Classification c;
    c.block1 = block_invariants({form.a[0], form.a[1], form.a[2]}, form.q1, 1);
    c.block2 = block_invariants({form.a[3], form.a[4], form.a[5]}, form.q2, 2);
    for (const auto* inv : {&c.block1, &c.block2})
        if (inv->degenerate)
            throw DegenerateBlock(inv->block, "block " + std::to_string(inv->block) +
                                                  " is a degenerate ternary cubic (expressible in fewer variables)");
    auto factorizes = [](const BlockInvariants& inv) {
        return inv.delta > 0 && exact_sqrt(inv.delta).has_value() && inv.dpp && *inv.dpp == 0;
    };
    c.q1_factorizes = factorizes(c.block1);
    c.q2_factorizes = factorizes(c.block2);
    ContentSplit split = content_split(form);
    c.content = split.c;
    c.multipliers = split.multipliers;
    c.spaces = linear_spaces(form);
    for (const auto& s : c.spaces)
        if (s.tag.find("'ii)") != std::string::npos)
            c.notes.push_back("space " + s.tag +
                              " uses the corrected reading {L1 = a4 d x6' -/+ x5' = d1 L2 + d2 x7 = 0}");
    if (c.block1.delta != 0)
        c.notes.push_back("delta1 != 0: block 1 receives the same factorization / cube analysis as block 2");
    return c;
}

} // namespace lqcubic
