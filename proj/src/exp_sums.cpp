#include "lqcubic/exp_sums.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "lqcubic/errors.hpp"
#include "lqcubic/parallel.hpp"

namespace lqcubic {

namespace {

// Neumaier summation.
class Compensated {
public:
    void add(double v) {
        double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) comp_ += (sum_ - t) + v;
        else comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0, comp_ = 0;
};

class ComplexSum {
public:
    void add(cplx v) {
        re_.add(v.real());
        im_.add(v.imag());
    }
    cplx value() const { return {re_.value(), im_.value()}; }

private:
    Compensated re_, im_;
};

std::vector<cplx> roots_of_unity(i64 q) {
    std::vector<cplx> r(static_cast<std::size_t>(q));
    for (i64 k = 0; k < q; ++k) {
        double t = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(q);
        r[k] = {std::cos(t), std::sin(t)};
    }
    return r;
}

void require_modulus(i64 q) {
    if (q < 1) throw InvalidArgument("modulus must be positive");
}

void require_unit(i64 a, i64 q) {
    require_modulus(q);
    if (gcd(mod(a, q), q) != 1) throw InvalidArgument("a must be coprime to q");
}

struct Reduced {
    Block block;
    i64 content = 1;
};

Reduced reduce(const Block& b) {
    i64 gl = 0, gq = 0;
    for (i64 v : b.l) gl = gcd(gl, v);
    for (i64 v : b.q) gq = gcd(gq, v);
    if (gl == 0 || gq == 0) return {b, 1};
    Reduced r;
    for (int i = 0; i < 3; ++i) r.block.l[i] = b.l[i] / gl;
    for (int i = 0; i < 6; ++i) r.block.q[i] = b.q[i] / gq;
    r.content = gl * gq;
    return r;
}

cplx sum_with_roots(const ModHistogram& h, const std::vector<cplx>& roots, i64 a) {
    ComplexSum s;
    const i64 q = h.q;
    const i64 step = mod(a, q);
    i64 idx = 0;
    for (i64 m = 0; m < q; ++m) {
        if (h.counts[m]) s.add(static_cast<double>(h.counts[m]) * roots[idx]);
        idx += step;
        if (idx >= q) idx -= q;
    }
    return s.value();
}

// c0^3 * S_reduced(q / c0, a c') following the content reduction.
cplx reduced_block_sum(const ModHistogram& h, const std::vector<cplx>& roots, i64 c0, i64 cprime, i64 a) {
    const double scale = static_cast<double>(c0) * c0 * c0;
    return scale * sum_with_roots(h, roots, static_cast<i64>(static_cast<i128>(mod(a, h.q)) * mod(cprime, h.q) % h.q));
}

std::vector<u64> cube_histogram(i64 q, i64 a7) {
    std::vector<u64> h(static_cast<std::size_t>(q), 0);
    for (i64 x = 0; x < q; ++x) ++h[mod(static_cast<i128>(a7) * x * x * x, q)];
    return h;
}

} // namespace

cplx ModHistogram::sum(i64 a) const {
    return sum_with_roots(*this, roots_of_unity(q), a);
}

ModHistogram mod_histogram(const Block& block, i64 q) {
    require_modulus(q);
    if (q > kMaxModHistogram)
        throw ResourceError("modulus " + std::to_string(q) + " exceeds the histogram guard " +
                            std::to_string(kMaxModHistogram));
    ModHistogram h;
    h.q = q;
    h.counts.assign(static_cast<std::size_t>(q), 0);
    if (q == 1) {
        h.counts[0] = 1;
        return h;
    }
    std::array<u64, 3> l{};
    std::array<u64, 6> c{};
    for (int i = 0; i < 3; ++i) l[i] = static_cast<u64>(mod(block.l[i], q));
    for (int i = 0; i < 6; ++i) c[i] = static_cast<u64>(mod(block.q[i], q));
    const u64 uq = static_cast<u64>(q);
    const FastMod fm(static_cast<std::uint32_t>(q));
    auto red = [&](u64 v) { return static_cast<u64>(fm(static_cast<std::uint32_t>(v))); };

    const std::size_t parts = std::max<std::size_t>(1, std::min<std::size_t>(thread_count(), uq));
    std::vector<std::vector<u64>> partial(parts);
    parallel_for(parts, [&](std::size_t task) {
        auto& counts = partial[task];
        counts.assign(static_cast<std::size_t>(q), 0);
        for (u64 x = uq * task / parts; x < uq * (task + 1) / parts; ++x)
        for (u64 y = 0; y < uq; ++y) {
            u64 L = red(l[0] * x + l[1] * y);
            // Q(z) = q0 + qz z + A3 z^2, stepped with first difference D(z) = qz + A3 (2z + 1).
            u64 Q = red(red(c[0] * red(x * x)) + red(c[1] * red(y * y)) + red(c[5] * red(x * y)));
            u64 D = red(c[3] * y + c[4] * x + c[2]);
            const u64 D2 = red(2 * c[2]);
            for (u64 z = 0; z < uq; ++z) {
                ++counts[red(L * Q)];
                L += l[2];
                if (L >= uq) L -= uq;
                Q += D;
                if (Q >= uq) Q -= uq;
                D += D2;
                if (D >= uq) D -= uq;
            }
        }
    });
    for (const auto& p : partial)
        for (i64 m = 0; m < q; ++m) h.counts[m] += p[m];
    return h;
}

cplx s3(i64 q, i64 a, i64 a7) {
    require_unit(a, q);
    const auto cubes = cube_histogram(q, a7);
    ModHistogram h{q, cubes};
    return h.sum(a);
}

cplx s_block(const Block& block, i64 q, i64 a) {
    require_unit(a, q);
    const Reduced r = reduce(block);
    const i64 c0 = gcd(r.content, q);
    const ModHistogram h = mod_histogram(r.block, q / c0);
    return reduced_block_sum(h, roots_of_unity(h.q), c0, r.content / c0, a);
}

cplx s_block_naive(const Block& block, i64 q, i64 a) {
    require_unit(a, q);
    const auto roots = roots_of_unity(q);
    ComplexSum s;
    for (i64 x = 0; x < q; ++x)
        for (i64 y = 0; y < q; ++y)
            for (i64 z = 0; z < q; ++z) s.add(roots[mod(static_cast<i128>(a) * block.eval(x, y, z), q)]);
    return s.value();
}

double s_q_N(const CubicForm& form, i64 q, i128 N) {
    require_modulus(q);
    if (q == 1) return 1.0;
    const auto roots = roots_of_unity(q);
    const Reduced r1 = reduce(form.block(1)), r2 = reduce(form.block(2));
    const i64 c01 = gcd(r1.content, q), c02 = gcd(r2.content, q);
    const ModHistogram h1 = mod_histogram(r1.block, q / c01);
    const ModHistogram h2 = mod_histogram(r2.block, q / c02);
    const ModHistogram h3{q, cube_histogram(q, form.a7())};
    const auto roots1 = roots_of_unity(h1.q), roots2 = roots_of_unity(h2.q);
    const double norm = std::pow(static_cast<double>(q), -7);
    const i64 n = mod(N, q);
    Compensated total;
    for (i64 a = 1; a < q; ++a) {
        if (gcd(a, q) != 1) continue;
        cplx s = reduced_block_sum(h1, roots1, c01, r1.content / c01, a) *
                 reduced_block_sum(h2, roots2, c02, r2.content / c02, a) * sum_with_roots(h3, roots, a);
        total.add((norm * s * roots[mod(-static_cast<i128>(a) * n, q)]).real());
    }
    return total.value();
}

i128 frak_d(const Block& block, int block_index) {
    BlockInvariants inv = block_invariants(block.l, block.q, block_index);
    if (inv.degenerate)
        throw DegenerateBlock(block_index, "block " + std::to_string(block_index) + " is degenerate");
    return inv.frak_d;
}

double SeriesEstimate::partial_sum(i64 Qp) const {
    Compensated s;
    for (i64 q = 1; q <= Qp && q <= static_cast<i64>(terms.size()); ++q) s.add(terms[q - 1]);
    return s.value();
}

SingularSeries::SingularSeries(const CubicForm& form) : form_(form) {
    form_.validate();
    for (int i = 0; i < 2; ++i) {
        Reduced r = reduce(form_.block(i + 1));
        reduced_[i] = r.block;
        content_[i] = r.content;
    }
}

std::vector<cplx> SingularSeries::compute_products(i64 q) const {
    std::vector<cplx> out(static_cast<std::size_t>(q), cplx{});
    if (q == 1) {
        out[0] = 1.0;
        return out;
    }
    const i64 c01 = gcd(content_[0], q), c02 = gcd(content_[1], q);
    const ModHistogram h1 = mod_histogram(reduced_[0], q / c01);
    const bool shared = reduced_[0] == reduced_[1] && c01 == c02;
    const ModHistogram h2 = shared ? h1 : mod_histogram(reduced_[1], q / c02);
    const ModHistogram h3{q, cube_histogram(q, form_.a7())};
    const auto roots = roots_of_unity(q);
    const auto roots1 = roots_of_unity(h1.q), roots2 = roots_of_unity(h2.q);
    const double norm = std::pow(static_cast<double>(q), -7);
    for (i64 a = 1; a < q; ++a) {
        if (gcd(a, q) != 1) continue;
        cplx s1 = reduced_block_sum(h1, roots1, c01, content_[0] / c01, a);
        cplx s2 = reduced_block_sum(h2, roots2, c02, content_[1] / c02, a);
        out[a] = norm * s1 * s2 * sum_with_roots(h3, roots, a);
    }
    return out;
}

std::shared_ptr<const std::vector<cplx>> SingularSeries::products(i64 q) {
    {
        std::lock_guard lock(mutex_);
        auto it = products_.find(q);
        if (it != products_.end()) return it->second;
    }
    auto computed = std::make_shared<const std::vector<cplx>>(compute_products(q));
    std::lock_guard lock(mutex_);
    return products_.emplace(q, computed).first->second;
}

double SingularSeries::prime_power_term(i64 q, i128 N) {
    require_modulus(q);
    auto prod = products(q);
    const i64 n = mod(N, q);
    Compensated total;
    for (i64 a = 0; a < q; ++a) {
        const cplx& t = (*prod)[a];
        if (t == cplx{}) continue;
        const double angle = -2 * std::numbers::pi * static_cast<double>(static_cast<i128>(a) * n % q) / q;
        total.add((t * cplx{std::cos(angle), std::sin(angle)}).real());
    }
    return total.value();
}

double SingularSeries::term(i64 q, i128 N) {
    require_modulus(q);
    double v = 1.0;
    for (auto [p, e] : factorize(q)) v *= prime_power_term(ipow(p, e), N);
    return v;
}

SeriesEstimate SingularSeries::estimate(i128 N, i64 Qmax) {
    if (Qmax < 1) throw InvalidArgument("Qmax must be at least 1");
    std::vector<i64> powers;
    for (i64 p : primes_up_to(Qmax))
        for (i64 pk = p; pk <= Qmax; pk *= p) powers.push_back(pk);
    if (!powers.empty() && powers.back() > kMaxModHistogram)
        throw ResourceError("Qmax exceeds the histogram guard " + std::to_string(kMaxModHistogram));
    std::sort(powers.begin(), powers.end());

    // Warm the cache for all prime powers in parallel; large moduli first to balance the workers.
    std::vector<i64> missing;
    {
        std::lock_guard lock(mutex_);
        for (auto it = powers.rbegin(); it != powers.rend(); ++it)
            if (!products_.count(*it)) missing.push_back(*it);
    }
    std::vector<std::shared_ptr<const std::vector<cplx>>> fresh(missing.size());
    parallel_for(missing.size(), [&](std::size_t i) {
        fresh[i] = std::make_shared<const std::vector<cplx>>(compute_products(missing[i]));
    });
    {
        std::lock_guard lock(mutex_);
        for (std::size_t i = 0; i < missing.size(); ++i) products_.emplace(missing[i], fresh[i]);
    }

    std::map<i64, double> pp;
    for (i64 q : powers) pp[q] = prime_power_term(q, N);

    SeriesEstimate est;
    est.Q = Qmax;
    est.terms.assign(static_cast<std::size_t>(Qmax), 0.0);
    for (i64 q = 1; q <= Qmax; ++q) {
        double v = 1.0;
        for (auto [p, e] : factorize(q)) v *= pp.at(ipow(p, e));
        est.terms[q - 1] = v;
    }
    est.value = est.partial_sum(Qmax);
    for (i64 Qp : {Qmax / 4, Qmax / 2, Qmax})
        if (Qp >= 1) est.partial.push_back({Qp, est.partial_sum(Qp)});
    for (std::size_t i = 1; i < est.partial.size(); ++i)
        est.tail.push_back(std::abs(est.partial[i].value - est.partial[i - 1].value));
    for (i64 p : primes_up_to(Qmax)) {
        Compensated f;
        f.add(1.0);
        for (i64 pk = p; pk <= Qmax; pk *= p) f.add(pp.at(pk));
        est.per_prime.push_back({p, f.value()});
    }
    return est;
}

SeriesEstimate singular_series(const CubicForm& form, i128 N, i64 Qmax) {
    SingularSeries engine(form);
    return engine.estimate(N, Qmax);
}

} // namespace lqcubic
