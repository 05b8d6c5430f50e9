#pragma once

#include <cstdint>

#include "exact/rational.hpp"

namespace urnflow::exact {

// C(n, k), exact. Returns 0 when k > n so that convolution loops need no
// boundary cases. Multiplicative evaluation, never a factorial quotient.
BigInt binomial(std::uint64_t n, std::uint64_t k);

// Left-hand side of the Vandermonde convolution, computed term by term:
// sum over i of C(a,i) * C(b,k-i). Callers compare it to binomial(a+b, k);
// nothing here takes that shortcut.
BigInt vandermonde_sum(std::uint64_t a, std::uint64_t b, std::uint64_t k);

// Weighted convolution identity, computed literally:
//   ((a+b)/a) * (1/C(a+b,k)) * sum over i of i * C(a,i) * C(b,k-i)
// which must come out to exactly k. Requires a >= 1 and 1 <= k <= a+b.
BigRational lemma_weighted_sum(std::uint64_t a, std::uint64_t b, std::uint64_t k);

}  // namespace urnflow::exact
