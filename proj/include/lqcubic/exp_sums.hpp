#pragma once

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "lqcubic/form_model.hpp"

namespace lqcubic {

using cplx = std::complex<double>;

inline constexpr i64 kMaxModHistogram = 4096;

/// counts[m] = #{(x,y,z) mod q : L Q = m mod q}.
struct ModHistogram {
    i64 q = 1;
    std::vector<u64> counts;

    /// sum_m counts[m] e(a m / q), compensated.
    cplx sum(i64 a) const;
};

ModHistogram mod_histogram(const Block& block, i64 q);

/// sum_{x mod q} e(a a7 x^3 / q). Requires gcd(a, q) = 1.
cplx s3(i64 q, i64 a, i64 a7);

/// sum_{x,y,z mod q} e(a L Q / q) for gcd(a, q) = 1. The block's content is divided out first and
/// restored as c0^3 at modulus q / c0, c0 = gcd(content, q).
cplx s_block(const Block& block, i64 q, i64 a);

/// Reference triple sum without histograms or content reduction.
cplx s_block_naive(const Block& block, i64 q, i64 a);

/// S(q; N) = sum over units a of q^-7 S1 S2 S3 e(-a N / q), real part.
double s_q_N(const CubicForm& form, i64 q, i128 N);

/// Frak-D of a block; throws DegenerateBlock.
i128 frak_d(const Block& block, int block_index = 1);

struct SeriesEstimate {
    double value = 0;
    i64 Q = 0;
    std::vector<double> terms; ///< terms[q-1] = S(q; N)
    struct Tail {
        i64 Q;
        double value;
    };
    std::vector<Tail> partial; ///< S(N, Q') at Q' = Q/4, Q/2, Q
    std::vector<double> tail;  ///< successive |differences| of partial
    struct PrimeFactor {
        i64 p;
        double factor; ///< 1 + sum_k S(p^k; N) over p^k <= Q
    };
    std::vector<PrimeFactor> per_prime;
    /// S(N, Q') for any Q' <= Q.
    double partial_sum(i64 Qp) const;
};

/// Caches, per prime power, the unit-indexed products q^-7 S1 S2 S3 so that S(p^k; N) costs O(p^k)
/// for each further N. Thread safe.
class SingularSeries {
public:
    explicit SingularSeries(const CubicForm& form);

    double prime_power_term(i64 q, i128 N);
    /// S(q; N) assembled multiplicatively over the prime-power factors of q.
    double term(i64 q, i128 N);
    SeriesEstimate estimate(i128 N, i64 Qmax);

private:
    std::shared_ptr<const std::vector<cplx>> products(i64 q);
    std::vector<cplx> compute_products(i64 q) const;

    CubicForm form_;
    Block reduced_[2];
    i64 content_[2];
    std::mutex mutex_;
    std::map<i64, std::shared_ptr<const std::vector<cplx>>> products_;
};

SeriesEstimate singular_series(const CubicForm& form, i128 N, i64 Qmax);

} // namespace lqcubic
