#include "lastloop/numerics/high_precision.hpp"

#include <algorithm>
#include <vector>

namespace lastloop::numerics {

namespace {

mpfr_prec_t clamp_prec(unsigned bits) {
  return std::max<mpfr_prec_t>(static_cast<mpfr_prec_t>(bits), MPFR_PREC_MIN);
}

unsigned joint(const HighFloat& a, const HighFloat& b) { return std::max(a.precision(), b.precision()); }

}  // namespace

HighFloat::HighFloat(unsigned bits) {
  mpfr_init2(v_, clamp_prec(bits));
  mpfr_set_zero(v_, 1);
}

HighFloat::HighFloat(double v, unsigned bits) {
  mpfr_init2(v_, clamp_prec(bits));
  mpfr_set_d(v_, v, MPFR_RNDN);
}

HighFloat::HighFloat(const BigRational& q, unsigned bits) {
  mpfr_init2(v_, clamp_prec(bits));
  mpfr_set_q(v_, q.raw().get_mpq_t(), MPFR_RNDN);
}

HighFloat::HighFloat(const HighFloat& o) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

HighFloat::HighFloat(HighFloat&& o) noexcept {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_swap(v_, o.v_);
}

HighFloat& HighFloat::operator=(const HighFloat& o) {
  if (this != &o) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

HighFloat& HighFloat::operator=(HighFloat&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

HighFloat::~HighFloat() { mpfr_clear(v_); }

HighFloat HighFloat::inv_pi(unsigned bits) {
  HighFloat pi(bits + 8);
  mpfr_const_pi(pi.v_, MPFR_RNDN);
  HighFloat r(bits);
  mpfr_ui_div(r.v_, 1, pi.v_, MPFR_RNDN);
  return r;
}

HighFloat HighFloat::sqrt3_over_pi(unsigned bits) {
  HighFloat pi(bits + 8);
  mpfr_const_pi(pi.v_, MPFR_RNDN);
  HighFloat s(bits + 8);
  mpfr_sqrt_ui(s.v_, 3, MPFR_RNDN);
  HighFloat r(bits);
  mpfr_div(r.v_, s.v_, pi.v_, MPFR_RNDN);
  return r;
}

std::string HighFloat::to_string(int digits) const {
  std::vector<char> buf(static_cast<std::size_t>(digits) + 32);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Re", digits - 1, v_);
  return buf.data();
}

HighFloat HighFloat::abs() const {
  HighFloat r(precision());
  mpfr_abs(r.v_, v_, MPFR_RNDN);
  return r;
}

HighFloat HighFloat::operator-() const {
  HighFloat r(precision());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

HighFloat operator+(const HighFloat& a, const HighFloat& b) {
  HighFloat r(joint(a, b));
  mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

HighFloat operator-(const HighFloat& a, const HighFloat& b) {
  HighFloat r(joint(a, b));
  mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

HighFloat operator*(const HighFloat& a, const HighFloat& b) {
  HighFloat r(joint(a, b));
  mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

HighFloat operator/(const HighFloat& a, const HighFloat& b) {
  HighFloat r(joint(a, b));
  mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

}  // namespace lastloop::numerics
