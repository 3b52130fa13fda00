#pragma once

#include <mpfr.h>

#include <string>

#include "lastloop/numerics/rational.hpp"

namespace lastloop::numerics {

/// Binary float with explicit precision, backed by MPFR. Every value carries
/// its own precision; binary operations round to the larger of the two.
/// No global precision state is touched, so values are safe to use from
/// concurrent workers.
class HighFloat {
 public:
  explicit HighFloat(unsigned bits = 64);
  HighFloat(double v, unsigned bits);
  HighFloat(const BigRational& q, unsigned bits);
  HighFloat(const HighFloat& o);
  HighFloat(HighFloat&& o) noexcept;
  HighFloat& operator=(const HighFloat& o);
  HighFloat& operator=(HighFloat&& o) noexcept;
  ~HighFloat();

  static HighFloat inv_pi(unsigned bits);
  static HighFloat sqrt3_over_pi(unsigned bits);

  unsigned precision() const { return static_cast<unsigned>(mpfr_get_prec(v_)); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// Scientific notation with `digits` significant digits.
  std::string to_string(int digits) const;
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  /// Base-2 exponent e with |x| in [2^(e-1), 2^e); 0 for zero.
  long exponent() const { return is_zero() ? 0 : mpfr_get_exp(v_); }

  HighFloat abs() const;

  friend HighFloat operator+(const HighFloat& a, const HighFloat& b);
  friend HighFloat operator-(const HighFloat& a, const HighFloat& b);
  friend HighFloat operator*(const HighFloat& a, const HighFloat& b);
  friend HighFloat operator/(const HighFloat& a, const HighFloat& b);
  HighFloat operator-() const;

  friend bool operator<(const HighFloat& a, const HighFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const HighFloat& a, const HighFloat& b) { return b < a; }

  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

}  // namespace lastloop::numerics
