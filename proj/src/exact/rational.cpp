#include "exact/rational.hpp"

#include <cctype>

#include "common/error.hpp"

namespace urnflow::exact {

BigInt::BigInt(const std::string& decimal) : value_(0) {
  if (mpz_set_str(value_.get_mpz_t(), decimal.c_str(), 10) != 0) {
    fail(ErrorCode::bad_argument, "not a decimal integer: '" + decimal + "'");
  }
}

std::size_t BigInt::digit_count() const {
  if (is_zero()) return 1;
  // mpz_sizeinbase may report one digit too many; settle it exactly.
  std::size_t n = mpz_sizeinbase(value_.get_mpz_t(), 10);
  if (n == 1) return 1;
  mpz_class bound;
  mpz_ui_pow_ui(bound.get_mpz_t(), 10, n - 1);
  mpz_class mag = abs(value_);
  return mag < bound ? n - 1 : n;
}

BigInt BigInt::gcd(const BigInt& a, const BigInt& b) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.value_.get_mpz_t(), b.value_.get_mpz_t());
  return BigInt(std::move(g));
}

BigInt BigInt::pow10(unsigned long exponent) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, exponent);
  return BigInt(std::move(p));
}

void BigInt::divmod(const BigInt& n, const BigInt& d, BigInt& q, BigInt& r) {
  if (d.is_zero()) fail(ErrorCode::bad_argument, "division by zero");
  mpz_class qq, rr;
  mpz_tdiv_qr(qq.get_mpz_t(), rr.get_mpz_t(), n.value_.get_mpz_t(), d.value_.get_mpz_t());
  q = BigInt(std::move(qq));
  r = BigInt(std::move(rr));
}

BigRational::BigRational(const BigInt& numerator, const BigInt& denominator) : value_(0) {
  if (denominator.is_zero()) {
    fail(ErrorCode::bad_argument, "rational with zero denominator");
  }
  value_ = mpq_class(numerator.raw(), denominator.raw());
  value_.canonicalize();
}

BigRational BigRational::parse(std::string_view text) {
  auto is_int = [](std::string_view s) {
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
  };

  std::string_view num = text;
  std::string_view den = "1";
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
  }
  if (!is_int(num) || !is_int(den)) {
    fail(ErrorCode::parse, "not a rational: '" + std::string(text) + "'");
  }
  BigInt d{std::string(den)};
  if (d.is_zero()) {
    fail(ErrorCode::parse, "zero denominator in '" + std::string(text) + "'");
  }
  return BigRational(BigInt{std::string(num)}, d);
}

BigRational& BigRational::operator/=(const BigRational& o) {
  if (o.is_zero()) fail(ErrorCode::bad_argument, "division by zero");
  value_ /= o.value_;
  return *this;
}

std::string BigRational::decimal(unsigned significant) const {
  if (significant == 0) fail(ErrorCode::bad_argument, "need at least one digit");
  if (is_zero()) return "0";

  const bool negative = sign() < 0;
  BigInt p = numerator();
  if (negative) p = -p;
  const BigInt q = denominator();

  // Decimal exponent e with 10^(e-1) <= p/q < 10^e.
  long e = static_cast<long>(p.digit_count()) - static_cast<long>(q.digit_count()) + 1;
  auto less_than_pow = [&](long exp) {
    // p/q < 10^exp ?
    if (exp >= 0) return p < q * BigInt::pow10(static_cast<unsigned long>(exp));
    return p * BigInt::pow10(static_cast<unsigned long>(-exp)) < q;
  };
  while (!less_than_pow(e)) ++e;
  while (less_than_pow(e - 1)) --e;

  // Round p/q * 10^(significant - e) to an integer, half to even.
  long shift = static_cast<long>(significant) - e;
  BigInt n = p, d = q;
  if (shift >= 0) {
    n = n * BigInt::pow10(static_cast<unsigned long>(shift));
  } else {
    d = d * BigInt::pow10(static_cast<unsigned long>(-shift));
  }
  BigInt t, r;
  BigInt::divmod(n, d, t, r);
  const BigInt twice = r * BigInt(2);
  if (twice > d || (twice == d && mpz_odd_p(t.raw().get_mpz_t()))) {
    t += BigInt(1);
  }
  std::string digits = t.str();
  if (digits.size() > significant) {
    // Rounding carried into a new leading digit (e.g. 0.9999995 -> 1.00000).
    digits.pop_back();
    ++e;
  }

  std::string out;
  if (e <= 0) {
    out = "0.";
    out.append(static_cast<std::size_t>(-e), '0');
    out += digits;
  } else if (static_cast<std::size_t>(e) >= digits.size()) {
    out = digits;
    out.append(static_cast<std::size_t>(e) - digits.size(), '0');
  } else {
    out = digits.substr(0, static_cast<std::size_t>(e)) + "." +
          digits.substr(static_cast<std::size_t>(e));
  }
  return negative ? "-" + out : out;
}

}  // namespace urnflow::exact
