#include "lqcubic/rep_counting.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>
#include <limits>
#include <unordered_map>

#include "lqcubic/errors.hpp"
#include "lqcubic/lattice.hpp"
#include "lqcubic/parallel.hpp"

namespace lqcubic {

namespace {

constexpr i64 kDenseBudget = i64{1} << 25; // entries of u32

void check_radius(i64 P) {
    if (P < 1) throw InvalidArgument("box radius P must be at least 1");
    if (P > kMaxHistogramRadius)
        throw ResourceError("P = " + std::to_string(P) + " exceeds the enumeration guard " +
                            std::to_string(kMaxHistogramRadius));
}

i64 value_bound(const Block& b, i64 P) {
    i128 lsum = 0, qsum = 0;
    for (i64 v : b.l) lsum += v < 0 ? -v : v;
    for (i64 v : b.q) qsum += v < 0 ? -v : v;
    i128 bound = checked::mul(checked::mul(lsum, P), checked::mul(qsum, checked::mul(P, P)));
    if (bound > std::numeric_limits<i64>::max() / 4) throw OverflowError("block values exceed 64-bit range");
    return static_cast<i64>(bound);
}

// Visits L*Q over the x-slices [x_begin, x_end) of I^3.
template <class Visit>
void scan_block(const Block& b, BoxRange r, i64 x_begin, i64 x_end, Visit&& visit) {
    const i64 a1 = b.l[0], a2 = b.l[1], a3 = b.l[2];
    const i64 A1 = b.q[0], A2 = b.q[1], A3 = b.q[2], B1 = b.q[3], B2 = b.q[4], B3 = b.q[5];
    for (i64 x = x_begin; x < x_end; ++x)
        for (i64 y = r.lo; y <= r.hi; ++y) {
            const i64 l0 = a1 * x + a2 * y;
            const i64 q0 = A1 * x * x + A2 * y * y + B3 * x * y;
            const i64 qz = B1 * y + B2 * x;
            for (i64 z = r.lo; z <= r.hi; ++z) visit((l0 + a3 * z) * (q0 + (qz + A3 * z) * z));
        }
}

u64 block_zero_count(const Block& b, BoxRange r) {
    u64 zeros = 0;
    scan_block(b, r, r.lo, r.hi + 1, [&](i64 v) { zeros += v == 0; });
    return zeros;
}

struct Partition {
    i64 begin, end;
};

std::vector<Partition> partitions(BoxRange r, unsigned parts) {
    std::vector<Partition> out;
    const i64 n = r.size();
    parts = static_cast<unsigned>(std::max<i64>(1, std::min<i64>(parts, n)));
    for (unsigned w = 0; w < parts; ++w)
        out.push_back({r.lo + n * w / parts, r.lo + n * (w + 1) / parts});
    return out;
}

// Dense lookup of c(n) with c(0) replaced by the zero count.
class HistogramLookup {
public:
    explicit HistogramLookup(const ValueHistogram& h) : h_(h) {
        if (h.counts.empty()) return;
        lo_ = std::min<i64>(h.counts.front().first, 0);
        hi_ = std::max<i64>(h.counts.back().first, 0);
        if (hi_ - lo_ + 1 <= kDenseBudget * 2) {
            dense_.assign(static_cast<std::size_t>(hi_ - lo_ + 1), 0);
            for (auto [n, c] : h.counts) dense_[n - lo_] = static_cast<std::uint32_t>(c);
        }
    }
    i64 lo() const { return lo_; }
    i64 hi() const { return hi_; }
    u64 nonzero(i64 n) const {
        if (n < lo_ || n > hi_ || n == 0) return 0;
        if (!dense_.empty()) return dense_[n - lo_];
        return h_.at(n);
    }

private:
    const ValueHistogram& h_;
    i64 lo_ = 0, hi_ = 0;
    std::vector<std::uint32_t> dense_;
};

u64 to_u64(u128 v, const char* what) {
    if (v > std::numeric_limits<u64>::max()) throw OverflowError(std::string(what) + " exceeds 64 bits");
    return static_cast<u64>(v);
}

} // namespace

u64 ValueHistogram::at(i64 n) const {
    if (n == 0) return 0;
    auto it = std::lower_bound(counts.begin(), counts.end(), n,
                               [](const std::pair<i64, u64>& e, i64 key) { return e.first < key; });
    return it != counts.end() && it->first == n ? it->second : 0;
}

u64 ValueHistogram::total() const {
    u64 t = zero_count;
    for (const auto& e : counts) t += e.second;
    return t;
}

u128 ValueHistogram::second_moment() const {
    u128 s = 0;
    for (const auto& e : counts) s += static_cast<u128>(e.second) * e.second;
    return s;
}

ValueHistogram value_histogram(const Block& block, BoxKind box, i64 P) {
    check_radius(P);
    const BoxRange r = box_range(box, P);
    const i64 bound = value_bound(block, P);
    const i64 width = 2 * bound + 1;
    ValueHistogram h;
    h.P = P;
    h.box = box;
    if (r.size() == 0) return h;

    unsigned parts = thread_count();
    if (width <= kDenseBudget) {
        parts = static_cast<unsigned>(std::max<i64>(1, std::min<i64>(parts, kDenseBudget * 4 / width)));
        auto slices = partitions(r, parts);
        std::vector<std::vector<std::uint32_t>> partial(slices.size());
        parallel_for(slices.size(), [&](std::size_t w) {
            auto& dense = partial[w];
            dense.assign(static_cast<std::size_t>(width), 0);
            scan_block(block, r, slices[w].begin, slices[w].end, [&](i64 v) { ++dense[v + bound]; });
        });
        for (i64 i = 0; i < width; ++i) {
            u64 c = 0;
            for (const auto& dense : partial) c += dense[i];
            if (c == 0) continue;
            if (i == bound) h.zero_count = c;
            else h.counts.emplace_back(i - bound, c);
        }
        return h;
    }

    auto slices = partitions(r, parts);
    std::vector<std::unordered_map<i64, u64>> partial(slices.size());
    parallel_for(slices.size(), [&](std::size_t w) {
        scan_block(block, r, slices[w].begin, slices[w].end, [&](i64 v) { ++partial[w][v]; });
    });
    std::unordered_map<i64, u64> merged;
    for (const auto& m : partial)
        for (const auto& [n, c] : m) merged[n] += c;
    for (const auto& [n, c] : merged) {
        if (n == 0) h.zero_count = c;
        else h.counts.emplace_back(n, c);
    }
    std::sort(h.counts.begin(), h.counts.end());
    return h;
}

RepresentationBreakdown representation_breakdown(const ValueHistogram& h1, const ValueHistogram& h2, i64 a7,
                                                 i128 N) {
    if (h1.P != h2.P || h1.box != h2.box) throw InvalidArgument("histograms built on different boxes");
    const BoxRange r = box_range(h1.box, h1.P);
    const HistogramLookup look2(h2);
    const i64 lo2 = look2.lo(), hi2 = look2.hi();
    const u128 n1 = h1.zero_count, n2 = h2.zero_count;

    struct Partial {
        u128 n1n2 = 0, n1c2 = 0, n2c1 = 0, c1c2 = 0;
    };
    std::vector<Partial> partial(static_cast<std::size_t>(r.size()));
    parallel_for(partial.size(), [&](std::size_t idx) {
        const i128 x7 = r.lo + static_cast<i64>(idx);
        const i128 t = N - static_cast<i128>(a7) * x7 * x7 * x7;
        Partial& out = partial[idx];
        if (!fits_i64(t)) return;
        const i64 target = static_cast<i64>(t);
        if (target == 0) out.n1n2 = n1 * n2;
        out.n1c2 = n1 * look2.nonzero(target);
        out.n2c1 = n2 * h1.at(target);
        // n ranges over nonzero keys of h1 with target - n a nonzero key of h2.
        const i64 from = target - hi2, to = target - lo2;
        auto it = std::lower_bound(h1.counts.begin(), h1.counts.end(), from,
                                   [](const std::pair<i64, u64>& e, i64 key) { return e.first < key; });
        u128 acc = 0;
        for (; it != h1.counts.end() && it->first <= to; ++it)
            acc += static_cast<u128>(it->second) * look2.nonzero(target - it->first);
        out.c1c2 = acc;
    });
    Partial sum;
    for (const auto& p : partial) {
        sum.n1n2 += p.n1n2;
        sum.n1c2 += p.n1c2;
        sum.n2c1 += p.n2c1;
        sum.c1c2 += p.c1c2;
    }
    RepresentationBreakdown b;
    b.n1n2_chi = to_u64(sum.n1n2, "N1 N2 chi term");
    b.n1_c2 = to_u64(sum.n1c2, "N1 c2 term");
    b.n2_c1 = to_u64(sum.n2c1, "N2 c1 term");
    b.c1_c2 = to_u64(sum.c1c2, "c1 c2 term");
    to_u64(sum.n1n2 + sum.n1c2 + sum.n2c1 + sum.c1c2, "representation count");
    return b;
}

RepresentationBreakdown representation_breakdown(const CubicForm& form, i128 N, BoxKind box, i64 P) {
    form.validate();
    check_radius(P);
    ValueHistogram h1 = value_histogram(form.block(1), box, P);
    ValueHistogram h2 = form.block(2) == form.block(1) ? h1 : value_histogram(form.block(2), box, P);
    return representation_breakdown(h1, h2, form.a7(), N);
}

u64 count_representations(const CubicForm& form, i128 N, BoxKind box, i64 P) {
    return representation_breakdown(form, N, box, P).total();
}

u64 count_zeros(const CubicForm& form, i64 P, BoxKind box) {
    if (box != BoxKind::Sym) throw InvalidArgument("R(0;P) is defined on the symmetric box |x_i| <= P");
    return count_representations(form, 0, BoxKind::Sym, P);
}

u64 lattice_space_count(const LinearSpace& space, BoxKind box, i64 P) {
    IntMatrix rows;
    for (const auto& f : space.forms) rows.emplace_back(f.begin(), f.end());
    return count_kernel_points(rows, 7, box_range(box, P));
}

UnionCount union_space_count(std::span<const LinearSpace> spaces, BoxKind box, i64 P) {
    if (spaces.size() > 16) throw ResourceError("too many linear spaces for inclusion-exclusion");
    const BoxRange range = box_range(box, P);
    i128 total = 0;
    for (u64 mask = 1; mask < (u64{1} << spaces.size()); ++mask) {
        IntMatrix rows;
        int members = 0;
        for (std::size_t s = 0; s < spaces.size(); ++s) {
            if (!(mask >> s & 1)) continue;
            ++members;
            for (const auto& f : spaces[s].forms) rows.emplace_back(f.begin(), f.end());
        }
        i128 c = count_kernel_points(rows, 7, range);
        total += members % 2 == 1 ? c : -c;
    }
    UnionCount u;
    u.count = to_u64(static_cast<u128>(total), "union count");
    u.P = P;
    u.delta_estimate = P > 0 ? static_cast<double>(u.count) / std::pow(static_cast<double>(P), 4) : 0.0;
    return u;
}

std::pair<double, double> fit_inverse_p(std::span<const i64> P, std::span<const double> y) {
    const std::size_t n = P.size();
    if (n < 2 || y.size() != n) throw InvalidArgument("fit needs at least two probes");
    double su = 0, sy = 0, suu = 0, suy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double u = 1.0 / static_cast<double>(P[i]);
        su += u;
        sy += y[i];
        suu += u * u;
        suy += u * y[i];
    }
    double det = n * suu - su * su;
    double beta = (n * suy - su * sy) / det;
    double delta = (sy - beta * su) / n;
    return {delta, beta};
}

MainTermReport delta_constants(const CubicForm& form, BoxKind box, std::span<const i64> P_list) {
    if (P_list.size() < 2) throw InvalidArgument("delta_constants needs at least two radii");
    for (std::size_t i = 1; i < P_list.size(); ++i)
        if (P_list[i] <= P_list[i - 1]) throw InvalidArgument("radii must be strictly ascending");
    for (i64 P : P_list) check_radius(P);
    const auto spaces = linear_spaces(form);
    MainTermReport rep;
    rep.box = box;
    std::vector<double> d0, d1, d3, d4;
    for (i64 P : P_list) {
        const BoxRange r = box_range(box, P);
        DeltaProbe probe;
        probe.P = P;
        probe.n1 = block_zero_count(form.block(1), r);
        probe.n2 = form.block(2) == form.block(1) ? probe.n1 : block_zero_count(form.block(2), r);
        probe.union_count = union_space_count(spaces, box, P).count;
        const double p2 = static_cast<double>(P) * P, p4 = p2 * p2;
        probe.delta3 = probe.n1 / p2;
        probe.delta4 = probe.n2 / p2;
        probe.delta1 = static_cast<double>(probe.n1) * static_cast<double>(probe.n2) / p4;
        probe.delta0 = probe.union_count / p4;
        probe.delta2 = probe.delta0 - probe.delta1;
        d0.push_back(probe.delta0);
        d1.push_back(probe.delta1);
        d3.push_back(probe.delta3);
        d4.push_back(probe.delta4);
        rep.probes.push_back(probe);
    }
    std::tie(rep.delta0, rep.beta0) = fit_inverse_p(P_list, d0);
    rep.delta1 = fit_inverse_p(P_list, d1).first;
    rep.delta3 = fit_inverse_p(P_list, d3).first;
    rep.delta4 = fit_inverse_p(P_list, d4).first;
    rep.delta2 = rep.delta0 - rep.delta1;
    return rep;
}

int chi(i128 N, i64 a7, BoxKind box, i64 P) {
    if (a7 == 0) throw InvalidArgument("a7 must be nonzero");
    if (N % a7 != 0) return 0;
    auto x = exact_cbrt(N / a7);
    if (!x || !fits_i64(*x)) return 0;
    return box_range(box, P).contains(static_cast<i64>(*x)) ? 1 : 0;
}

} // namespace lqcubic
