#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace lastloop::numerics {

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator. Thin value wrapper over GMP's mpq.
class BigRational {
 public:
  BigRational() = default;
  BigRational(long n) : q_(n) {}  // NOLINT(google-explicit-constructor)
  BigRational(long num, long den);
  BigRational(const mpz_class& num, const mpz_class& den);
  explicit BigRational(mpq_class q);

  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  bool is_zero() const { return sgn(q_) == 0; }
  int sign() const { return sgn(q_); }

  double to_double() const;

  /// "num/den" with optional leading minus, no whitespace.
  std::string to_string() const;
  /// Strict parser for to_string()'s format. Rejects non-reduced fractions,
  /// zero or negative denominators, and stray characters.
  static BigRational parse(std::string_view text);

  BigRational operator-() const { return BigRational(mpq_class(-q_)); }
  BigRational& operator+=(const BigRational& o) { q_ += o.q_; return *this; }
  BigRational& operator-=(const BigRational& o) { q_ -= o.q_; return *this; }
  BigRational& operator*=(const BigRational& o) { q_ *= o.q_; return *this; }
  BigRational& operator/=(const BigRational& o);

  friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
  friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
  friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
  friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }

  friend bool operator==(const BigRational& a, const BigRational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class q_;
};

/// Integer power of a rational; negative exponents invert.
BigRational pow(const BigRational& base, int exponent);

}  // namespace lastloop::numerics
