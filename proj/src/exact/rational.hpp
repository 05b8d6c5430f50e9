#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace urnflow::exact {

// Arbitrary-precision signed integer. Thin value wrapper over GMP's mpz;
// always in canonical form (no spare limbs, zero has no sign).
class BigInt {
 public:
  BigInt() : value_(0) {}
  BigInt(int v) : value_(v) {}
  BigInt(long v) : value_(v) {}
  BigInt(unsigned long v) : value_(v) {}
  explicit BigInt(const std::string& decimal);

  int sign() const { return mpz_sgn(value_.get_mpz_t()); }
  bool is_zero() const { return sign() == 0; }

  // Exact number of base-10 digits in |value|; 0 has one digit.
  std::size_t digit_count() const;

  std::string str() const { return value_.get_str(); }

  BigInt operator-() const { return BigInt(mpz_class(-value_)); }
  BigInt& operator+=(const BigInt& o) { value_ += o.value_; return *this; }
  BigInt& operator-=(const BigInt& o) { value_ -= o.value_; return *this; }
  BigInt& operator*=(const BigInt& o) { value_ *= o.value_; return *this; }

  friend BigInt operator+(BigInt a, const BigInt& b) { return a += b; }
  friend BigInt operator-(BigInt a, const BigInt& b) { return a -= b; }
  friend BigInt operator*(BigInt a, const BigInt& b) { return a *= b; }

  friend bool operator==(const BigInt& a, const BigInt& b) {
    return mpz_cmp(a.value_.get_mpz_t(), b.value_.get_mpz_t()) == 0;
  }
  friend bool operator<(const BigInt& a, const BigInt& b) {
    return mpz_cmp(a.value_.get_mpz_t(), b.value_.get_mpz_t()) < 0;
  }
  friend bool operator<=(const BigInt& a, const BigInt& b) { return !(b < a); }
  friend bool operator>(const BigInt& a, const BigInt& b) { return b < a; }
  friend bool operator>=(const BigInt& a, const BigInt& b) { return !(a < b); }
  friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }

  static BigInt gcd(const BigInt& a, const BigInt& b);
  static BigInt pow10(unsigned long exponent);

  // Truncating division, |r| < |d|; d must be nonzero.
  static void divmod(const BigInt& n, const BigInt& d, BigInt& q, BigInt& r);

  const mpz_class& raw() const { return value_; }
  explicit BigInt(mpz_class v) : value_(std::move(v)) {}

 private:
  mpz_class value_;
};

// Exact rational. Invariant: denominator > 0 and gcd(|num|, den) == 1, so
// structural equality is mathematical equality.
class BigRational {
 public:
  BigRational() : value_(0) {}
  BigRational(int n) : value_(n) {}
  BigRational(long n) : value_(n) {}
  BigRational(unsigned long n) : value_(static_cast<unsigned long>(n)) {}
  explicit BigRational(const BigInt& n) : value_(n.raw()) {}
  BigRational(const BigInt& numerator, const BigInt& denominator);

  // Accepts "p/q" or a bare integer "p"; q must be positive after parsing.
  static BigRational parse(std::string_view text);

  BigInt numerator() const { return BigInt(mpz_class(value_.get_num())); }
  BigInt denominator() const { return BigInt(mpz_class(value_.get_den())); }

  int sign() const { return mpq_sgn(value_.get_mpq_t()); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return mpz_cmp_ui(value_.get_den().get_mpz_t(), 1) == 0; }

  // "p/q", or "p" when the denominator is 1.
  std::string str() const { return value_.get_str(); }

  // Correctly rounded fixed-point rendering with `significant` significant
  // digits (round half to even). significant must be >= 1.
  std::string decimal(unsigned significant) const;

  double to_double() const { return value_.get_d(); }

  BigRational operator-() const { return BigRational(mpq_class(-value_)); }
  BigRational& operator+=(const BigRational& o) { value_ += o.value_; return *this; }
  BigRational& operator-=(const BigRational& o) { value_ -= o.value_; return *this; }
  BigRational& operator*=(const BigRational& o) { value_ *= o.value_; return *this; }
  BigRational& operator/=(const BigRational& o);

  friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
  friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
  friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
  friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }

  friend bool operator==(const BigRational& a, const BigRational& b) {
    return mpq_equal(a.value_.get_mpq_t(), b.value_.get_mpq_t()) != 0;
  }
  friend bool operator!=(const BigRational& a, const BigRational& b) { return !(a == b); }
  friend bool operator<(const BigRational& a, const BigRational& b) {
    return mpq_cmp(a.value_.get_mpq_t(), b.value_.get_mpq_t()) < 0;
  }
  friend bool operator<=(const BigRational& a, const BigRational& b) { return !(b < a); }
  friend bool operator>(const BigRational& a, const BigRational& b) { return b < a; }
  friend bool operator>=(const BigRational& a, const BigRational& b) { return !(a < b); }

 private:
  explicit BigRational(mpq_class v) : value_(std::move(v)) {}

  mpq_class value_;
};

}  // namespace urnflow::exact
