#include "lastloop/numerics/rational.hpp"

#include <mpfr.h>

#include <cctype>
#include <stdexcept>

#include "lastloop/errors.hpp"

namespace lastloop::numerics {

BigRational::BigRational(long num, long den) : q_(num, den) {
  if (den == 0) throw DomainError("BigRational: zero denominator");
  q_.canonicalize();
}

BigRational::BigRational(const mpz_class& num, const mpz_class& den) : q_(num, den) {
  if (den == 0) throw DomainError("BigRational: zero denominator");
  q_.canonicalize();
}

BigRational::BigRational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

BigRational& BigRational::operator/=(const BigRational& o) {
  if (o.is_zero()) throw DomainError("BigRational: division by zero");
  q_ /= o.q_;
  return *this;
}

double BigRational::to_double() const {
  // Correctly rounded; mpq_get_d would truncate.
  mpfr_t x;
  mpfr_init2(x, 53);
  mpfr_set_q(x, q_.get_mpq_t(), MPFR_RNDN);
  double r = mpfr_get_d(x, MPFR_RNDN);
  mpfr_clear(x);
  return r;
}

std::string BigRational::to_string() const {
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

BigRational BigRational::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) throw InvalidInput("rational missing '/': " + std::string(text));
  std::string_view num = text.substr(0, slash);
  std::string_view den = text.substr(slash + 1);
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  bool neg = !num.empty() && num.front() == '-';
  if (!digits(neg ? num.substr(1) : num) || !digits(den))
    throw InvalidInput("malformed rational: " + std::string(text));
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw InvalidInput("zero denominator: " + std::string(text));
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  if (g != 1 && !(n == 0 && d == 1)) throw InvalidInput("rational not reduced: " + std::string(text));
  if (n == 0 && neg) throw InvalidInput("negative zero: " + std::string(text));
  return BigRational(n, d);
}

BigRational pow(const BigRational& base, int exponent) {
  mpz_class num, den;
  unsigned long e = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
  mpz_pow_ui(num.get_mpz_t(), base.raw().get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.raw().get_den_mpz_t(), e);
  if (exponent < 0) {
    if (num == 0) throw DomainError("BigRational: zero to a negative power");
    return BigRational(den, num);
  }
  return BigRational(num, den);
}

}  // namespace lastloop::numerics
