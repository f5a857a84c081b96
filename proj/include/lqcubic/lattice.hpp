#pragma once

#include <cstddef>
#include <vector>

#include "lqcubic/arith.hpp"
#include "lqcubic/form_model.hpp"

namespace lqcubic {

using IntMatrix = std::vector<std::vector<i64>>;

/// Rank over the rationals.
int rational_rank(const IntMatrix& rows, std::size_t n);

/// Basis of the integer lattice {x in Z^n : rows x = 0}, returned in row Hermite normal form
/// (echelon rows with positive pivots).
IntMatrix kernel_basis(const IntMatrix& rows, std::size_t n);

/// Row Hermite normal form of an integer matrix of full row rank.
IntMatrix hermite_rows(IntMatrix rows, std::size_t n);

/// Number of x in range^n with rows x = 0. Enumerates the echelon parameters of the kernel
/// lattice; the innermost parameter is resolved by interval intersection.
u64 count_kernel_points(const IntMatrix& rows, std::size_t n, BoxRange range);

} // namespace lqcubic
