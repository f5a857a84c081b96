#include "lqcubic/lattice.hpp"

#include <algorithm>
#include <limits>

#include "lqcubic/errors.hpp"

namespace lqcubic {

namespace {

using Wide = std::vector<std::vector<i128>>;

Wide widen(const IntMatrix& rows, std::size_t n) {
    Wide out;
    for (const auto& r : rows) {
        if (r.size() != n) throw InvalidArgument("row length mismatch");
        out.emplace_back(r.begin(), r.end());
    }
    return out;
}

void normalize_row(std::vector<i128>& row) {
    i128 g = 0;
    for (i128 v : row) g = gcd(g, v);
    if (g > 1)
        for (i128& v : row) v /= g;
}

struct Interval {
    i64 lo = std::numeric_limits<i64>::min();
    i64 hi = std::numeric_limits<i64>::max();
    bool empty() const { return lo > hi; }
    // Restrict t so that base + slope * t lies in range.
    void restrict(i64 base, i64 slope, BoxRange range) {
        if (slope == 0) {
            if (!range.contains(base)) {
                lo = 1;
                hi = 0;
            }
            return;
        }
        i64 a, b;
        if (slope > 0) {
            a = ceil_div(range.lo - base, slope);
            b = floor_div(range.hi - base, slope);
        } else {
            a = ceil_div(range.hi - base, slope);
            b = floor_div(range.lo - base, slope);
        }
        lo = std::max(lo, a);
        hi = std::min(hi, b);
    }
};

class BoxEnumerator {
public:
    BoxEnumerator(const IntMatrix& basis, std::size_t n, BoxRange range)
        : basis_(basis), n_(n), range_(range), k_(basis.size()), partial_(n, 0) {
        for (const auto& row : basis_) {
            std::size_t c = 0;
            while (row[c] == 0) ++c;
            pivots_.push_back(c);
        }
        // fixed_at_[i]: coordinates that no row >= i touches, newly so at level i.
        fixed_at_.resize(k_ + 1);
        std::vector<bool> done(n_, false);
        for (std::size_t level = 0; level <= k_; ++level) {
            for (std::size_t e = 0; e < n_; ++e) {
                if (done[e]) continue;
                bool touched = false;
                for (std::size_t r = level; r < k_; ++r) touched |= basis_[r][e] != 0;
                if (!touched) {
                    fixed_at_[level].push_back(e);
                    done[e] = true;
                }
            }
        }
    }

    u128 run() { return level(0); }

private:
    u128 level(std::size_t i) {
        for (std::size_t e : fixed_at_[i])
            if (!range_.contains(partial_[e])) return 0;
        if (i == k_) return 1;
        const auto& row = basis_[i];
        Interval t;
        t.restrict(partial_[pivots_[i]], row[pivots_[i]], range_);
        if (i + 1 == k_) {
            for (std::size_t e = 0; e < n_; ++e) {
                if (row[e] == 0) continue;
                t.restrict(partial_[e], row[e], range_);
                if (t.empty()) return 0;
            }
            return t.empty() ? 0 : static_cast<u128>(t.hi - t.lo + 1);
        }
        u128 total = 0;
        if (t.empty()) return 0;
        for (std::size_t e = 0; e < n_; ++e) partial_[e] += t.lo * row[e];
        for (i64 v = t.lo; v <= t.hi; ++v) {
            total += level(i + 1);
            for (std::size_t e = 0; e < n_; ++e) partial_[e] += row[e];
        }
        for (std::size_t e = 0; e < n_; ++e) partial_[e] -= (t.hi + 1) * row[e];
        return total;
    }

    const IntMatrix& basis_;
    std::size_t n_;
    BoxRange range_;
    std::size_t k_;
    std::vector<i64> partial_;
    std::vector<std::size_t> pivots_;
    std::vector<std::vector<std::size_t>> fixed_at_;
};

} // namespace

int rational_rank(const IntMatrix& rows, std::size_t n) {
    Wide m = widen(rows, n);
    int rank = 0;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m.size(); ++c) {
        std::size_t pick = r;
        while (pick < m.size() && m[pick][c] == 0) ++pick;
        if (pick == m.size()) continue;
        std::swap(m[r], m[pick]);
        for (std::size_t o = r + 1; o < m.size(); ++o) {
            if (m[o][c] == 0) continue;
            i128 g = gcd(m[r][c], m[o][c]);
            i128 fr = m[o][c] / g, fo = m[r][c] / g;
            for (std::size_t j = 0; j < n; ++j)
                m[o][j] = checked::sub(checked::mul(m[o][j], fo), checked::mul(m[r][j], fr));
            normalize_row(m[o]);
        }
        ++r;
        ++rank;
    }
    return rank;
}

IntMatrix hermite_rows(IntMatrix rows, std::size_t n) {
    Wide m = widen(rows, n);
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m.size(); ++c) {
        for (;;) {
            std::size_t best = m.size();
            for (std::size_t o = r; o < m.size(); ++o)
                if (m[o][c] != 0 && (best == m.size() || abs128(m[o][c]) < abs128(m[best][c]))) best = o;
            if (best == m.size()) break;
            std::swap(m[r], m[best]);
            bool clean = true;
            for (std::size_t o = r + 1; o < m.size(); ++o) {
                if (m[o][c] == 0) continue;
                i128 q = m[o][c] / m[r][c];
                for (std::size_t j = 0; j < n; ++j) m[o][j] = checked::sub(m[o][j], checked::mul(q, m[r][j]));
                clean &= m[o][c] == 0;
            }
            if (clean) break;
        }
        if (r == m.size() || m[r][c] == 0) continue;
        if (m[r][c] < 0)
            for (auto& v : m[r]) v = -v;
        for (std::size_t o = 0; o < r; ++o) {
            i128 q = m[o][c] / m[r][c];
            if (m[o][c] - q * m[r][c] < 0) --q;
            if (q != 0)
                for (std::size_t j = 0; j < n; ++j) m[o][j] = checked::sub(m[o][j], checked::mul(q, m[r][j]));
        }
        ++r;
    }
    IntMatrix out;
    for (std::size_t i = 0; i < r; ++i) {
        std::vector<i64> row(n);
        for (std::size_t j = 0; j < n; ++j) row[j] = checked::narrow(m[i][j]);
        out.push_back(std::move(row));
    }
    return out;
}

IntMatrix kernel_basis(const IntMatrix& rows, std::size_t n) {
    Wide m = widen(rows, n);
    Wide u(n, std::vector<i128>(n, 0));
    for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
    auto col_sub = [&](std::size_t dst, std::size_t src, i128 q) {
        for (auto& row : m) row[dst] = checked::sub(row[dst], checked::mul(q, row[src]));
        for (auto& row : u) row[dst] = checked::sub(row[dst], checked::mul(q, row[src]));
    };
    auto col_swap = [&](std::size_t a, std::size_t b) {
        for (auto& row : m) std::swap(row[a], row[b]);
        for (auto& row : u) std::swap(row[a], row[b]);
    };
    std::size_t r = 0;
    for (std::size_t i = 0; i < m.size() && r < n; ++i) {
        for (;;) {
            std::size_t best = n;
            for (std::size_t j = r; j < n; ++j)
                if (m[i][j] != 0 && (best == n || abs128(m[i][j]) < abs128(m[i][best]))) best = j;
            if (best == n) break;
            col_swap(r, best);
            bool clean = true;
            for (std::size_t j = r + 1; j < n; ++j) {
                if (m[i][j] == 0) continue;
                col_sub(j, r, m[i][j] / m[i][r]);
                clean &= m[i][j] == 0;
            }
            if (clean) {
                ++r;
                break;
            }
        }
    }
    IntMatrix basis;
    for (std::size_t j = r; j < n; ++j) {
        std::vector<i64> v(n);
        for (std::size_t t = 0; t < n; ++t) v[t] = checked::narrow(u[t][j]);
        basis.push_back(std::move(v));
    }
    if (basis.empty()) return basis;
    return hermite_rows(std::move(basis), n);
}

u64 count_kernel_points(const IntMatrix& rows, std::size_t n, BoxRange range) {
    if (range.size() == 0) return 0;
    IntMatrix basis = kernel_basis(rows, n);
    BoxEnumerator en(basis, n, range);
    u128 total = en.run();
    if (total > std::numeric_limits<u64>::max()) throw OverflowError("lattice point count exceeds 64 bits");
    return static_cast<u64>(total);
}

} // namespace lqcubic
