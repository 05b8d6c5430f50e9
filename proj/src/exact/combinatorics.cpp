#include "exact/combinatorics.hpp"

#include <string>

#include "common/error.hpp"

namespace urnflow::exact {

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return BigInt(0);
  mpz_class c;
  mpz_bin_uiui(c.get_mpz_t(), n, k);
  return BigInt(std::move(c));
}

BigInt vandermonde_sum(std::uint64_t a, std::uint64_t b, std::uint64_t k) {
  BigInt sum(0);
  for (std::uint64_t i = 0; i <= k; ++i) {
    sum += binomial(a, i) * binomial(b, k - i);
  }
  return sum;
}

BigRational lemma_weighted_sum(std::uint64_t a, std::uint64_t b, std::uint64_t k) {
  if (a == 0) {
    fail(ErrorCode::bad_argument, "lemma_weighted_sum: a must be positive");
  }
  if (k == 0 || k > a + b) {
    fail(ErrorCode::bad_argument,
         "lemma_weighted_sum: k=" + std::to_string(k) + " outside [1, " +
             std::to_string(a + b) + "]");
  }
  BigInt sum(0);
  for (std::uint64_t i = 1; i <= k; ++i) {
    sum += BigInt(static_cast<unsigned long>(i)) * binomial(a, i) * binomial(b, k - i);
  }
  return BigRational(BigInt(static_cast<unsigned long>(a + b)), BigInt(static_cast<unsigned long>(a))) *
         BigRational(BigInt(1), binomial(a + b, k)) * BigRational(sum);
}

}  // namespace urnflow::exact
