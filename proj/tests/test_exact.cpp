#include <doctest.h>

#include <cstdint>
#include <random>
#include <string>

#include "common/error.hpp"
#include "exact/combinatorics.hpp"
#include "exact/rational.hpp"

using urnflow::Error;
using urnflow::exact::BigInt;
using urnflow::exact::BigRational;
using urnflow::exact::binomial;
using urnflow::exact::lemma_weighted_sum;
using urnflow::exact::vandermonde_sum;

TEST_CASE("binomial small values") {
  CHECK(binomial(5, 2) == BigInt(10));
  CHECK(binomial(0, 0) == BigInt(1));
  CHECK(binomial(7, 0) == BigInt(1));
  CHECK(binomial(7, 7) == BigInt(1));
  CHECK(binomial(3, 5) == BigInt(0));  // k > n is zero, not an error
}

TEST_CASE("binomial matches the Pascal recurrence up to n = 60") {
  for (std::uint64_t n = 1; n <= 60; ++n) {
    for (std::uint64_t k = 0; k <= n; ++k) {
      const BigInt expected =
          (k == 0) ? BigInt(1) : binomial(n - 1, k - 1) + binomial(n - 1, k);
      CHECK(binomial(n, k) == expected);
    }
  }
}

TEST_CASE("huge binomial, checked against the recurrence at the same cell") {
  const BigInt big = binomial(15000, 10000);
  CHECK(big == binomial(14999, 9999) + binomial(14999, 10000));
  CHECK(big.digit_count() == 4145);
  CHECK(big.str().substr(0, 12) == "228205655807");
}

TEST_CASE("vandermonde_sum equals the closed form") {
  CHECK(vandermonde_sum(1, 1, 1) == BigInt(2));
  CHECK(vandermonde_sum(3, 2, 2) == BigInt(10));  // terms 1 + 6 + 3
  for (std::uint64_t a = 0; a <= 12; ++a) {
    CHECK(vandermonde_sum(a, 0, 3) == binomial(a, 3));
    for (std::uint64_t b = 0; b <= 12; ++b) {
      for (std::uint64_t k = 0; k <= a + b; ++k) {
        CHECK(vandermonde_sum(a, b, k) == binomial(a + b, k));
      }
    }
  }
}

TEST_CASE("lemma_weighted_sum comes out to k on the whole grid") {
  CHECK(lemma_weighted_sum(1, 1, 1) == BigRational(1));
  CHECK(lemma_weighted_sum(3, 2, 2) == BigRational(2));
  for (std::uint64_t a = 1; a <= 8; ++a) {
    for (std::uint64_t b = 0; b <= 8; ++b) {
      for (std::uint64_t k = 1; k <= a + b; ++k) {
        CHECK(lemma_weighted_sum(a, b, k) ==
              BigRational(static_cast<unsigned long>(k)));
      }
    }
  }
}

TEST_CASE("lemma_weighted_sum rejects out-of-domain arguments") {
  CHECK_THROWS_AS(lemma_weighted_sum(0, 3, 1), Error);
  CHECK_THROWS_AS(lemma_weighted_sum(2, 2, 5), Error);
  CHECK_THROWS_AS(lemma_weighted_sum(2, 2, 0), Error);
}

TEST_CASE("rationals are canonical") {
  CHECK(BigRational(BigInt(2), BigInt(4)) == BigRational(BigInt(1), BigInt(2)));
  CHECK(BigRational(BigInt(2), BigInt(4)).str() == "1/2");
  CHECK(BigRational(BigInt(3), BigInt(-6)).str() == "-1/2");
  CHECK(BigRational(BigInt(182), BigInt(300)).str() == "91/150");
  CHECK(BigRational(BigInt(0), BigInt(7)).str() == "0");
  CHECK(BigRational(BigInt(5), BigInt(1)).str() == "5");
  CHECK(BigRational(BigInt(2), BigInt(4)).denominator() == BigInt(2));
  CHECK_THROWS_AS(BigRational(BigInt(1), BigInt(0)), Error);
}

TEST_CASE("rational arithmetic round-trips exactly") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-500, 500);
  std::uniform_int_distribution<long> den(1, 500);
  for (int i = 0; i < 500; ++i) {
    const BigRational x(BigInt(num(rng)), BigInt(den(rng)));
    const BigRational y(BigInt(num(rng)), BigInt(den(rng)));
    CHECK((x + y) - y == x);
    if (!y.is_zero()) CHECK((x / y) * y == x);
    CHECK(x - x == BigRational(0));
  }
}

TEST_CASE("rational parse") {
  CHECK(BigRational::parse("3/5") == BigRational(BigInt(3), BigInt(5)));
  CHECK(BigRational::parse("4/8") == BigRational(BigInt(1), BigInt(2)));
  CHECK(BigRational::parse("7") == BigRational(7));
  CHECK(BigRational::parse("-2/3") == BigRational(BigInt(-2), BigInt(3)));
  CHECK_THROWS_AS(BigRational::parse("1/0"), Error);
  CHECK_THROWS_AS(BigRational::parse("a/b"), Error);
  CHECK_THROWS_AS(BigRational::parse("1.5"), Error);
  CHECK_THROWS_AS(BigRational::parse(""), Error);
}

TEST_CASE("decimal rendering of known values") {
  CHECK(BigRational(BigInt(79), BigInt(90)).decimal(6) == "0.877778");
  CHECK(BigRational(BigInt(79), BigInt(90)).decimal(3) == "0.878");
  CHECK(BigRational(BigInt(1550), BigInt(15553)).decimal(6) == "0.0996592");
  CHECK(BigRational(BigInt(37), BigInt(60)).decimal(6) == "0.616667");
  CHECK(BigRational(1).decimal(6) == "1.00000");
  CHECK(BigRational(0).decimal(6) == "0");
  CHECK(BigRational(BigInt(-79), BigInt(90)).decimal(6) == "-0.877778");
  // Round half to even on exact ties.
  CHECK(BigRational(BigInt(1), BigInt(8)).decimal(2) == "0.12");
  CHECK(BigRational(BigInt(3), BigInt(8)).decimal(2) == "0.38");
  // Carry into a fresh leading digit.
  CHECK(BigRational(BigInt(1999999), BigInt(2000000)).decimal(6) == "1.00000");
  // Values above one.
  CHECK(BigRational(BigInt(5), BigInt(2)).decimal(1) == "2");
  CHECK(BigRational(BigInt(7), BigInt(2)).decimal(1) == "4");
  CHECK(BigRational(BigInt(1234), BigInt(10)).decimal(2) == "120");
}

namespace {

// Reparses a fixed-point rendering as an exact rational.
BigRational reparse_decimal(const std::string& text) {
  std::string digits;
  std::size_t frac_digits = 0;
  bool seen_point = false;
  bool negative = false;
  for (char ch : text) {
    if (ch == '-') {
      negative = true;
    } else if (ch == '.') {
      seen_point = true;
    } else {
      digits += ch;
      if (seen_point) ++frac_digits;
    }
  }
  BigRational value(BigInt(digits), BigInt::pow10(frac_digits));
  return negative ? -value : value;
}

}  // namespace

TEST_CASE("decimal rendering is correctly rounded") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> draw(1, 100000);
  for (int i = 0; i < 2000; ++i) {
    long p = draw(rng), q = draw(rng);
    if (p > q) std::swap(p, q);  // keep it a probability
    const BigRational x(BigInt(p), BigInt(q));
    const unsigned sig = 1 + static_cast<unsigned>(i % 8);
    const std::string rendered = x.decimal(sig);
    const BigRational back = reparse_decimal(rendered);

    // One unit in the last printed place.
    std::size_t frac_digits = 0;
    if (auto dot = rendered.find('.'); dot != std::string::npos) {
      frac_digits = rendered.size() - dot - 1;
    }
    const BigRational ulp(BigInt(1), BigInt::pow10(frac_digits));
    BigRational diff = back - x;
    if (diff.sign() < 0) diff = -diff;
    const BigRational half = ulp / BigRational(2);
    CHECK(diff <= half);
    if (diff == half) {
      const char last = rendered.back();
      CHECK((last - '0') % 2 == 0);
    }
  }
}
