#include "lastloop/numerics/extensions.hpp"

#include <algorithm>
#include <cmath>

#include "lastloop/errors.hpp"

namespace lastloop::numerics {

namespace {

// Published two-term split of 1/π. The true remainder is 2.2437352502142476e-15;
// the published tail is kept so the readout matches the reference tables.
const BigRational kInvPiHead(1725033, 5419351);
constexpr double kInvPiTail = 2.27595720048157e-15;

std::string signed_term(const BigRational& coeff, const std::string& unit, bool first) {
  std::string out;
  BigRational mag = coeff.sign() < 0 ? -coeff : coeff;
  if (first) out += coeff.sign() < 0 ? "-" : "";
  else out += coeff.sign() < 0 ? " - " : " + ";
  std::string num = mag.numerator().get_str();
  std::string den = mag.denominator().get_str();
  if (unit.empty()) return out + num + (den == "1" ? "" : "/" + den);
  if (unit.rfind("1/", 0) == 0) {
    // "8/pi", "92/(3*pi)"
    const std::string symbol = unit.substr(2);
    return out + num + "/" + (den == "1" ? symbol : "(" + den + "*" + symbol + ")");
  }
  if (num != "1") out += num + "*";
  out += unit;
  if (den != "1") out += "/" + den;
  return out;
}

std::string two_term(const BigRational& a, const BigRational& b, const std::string& unit) {
  if (a.is_zero() && b.is_zero()) return "0";
  std::string out;
  if (!a.is_zero()) out += signed_term(a, "", true);
  if (!b.is_zero()) out += signed_term(b, unit, a.is_zero());
  return out;
}

}  // namespace

std::string PiLinear::to_string() const { return two_term(a, b, "1/pi"); }

double pilinear_to_float(const PiLinear& v) {
  BigRational head = v.a + kInvPiHead * v.b;
  return head.to_double() + v.b.to_double() * kInvPiTail;
}

double pilinear_to_float_reference(const PiLinear& v) {
  // a and b may cancel to O(1) while each is huge; carry their bit size plus margin.
  long magnitude = 0;
  if (!v.a.is_zero()) magnitude = std::max(magnitude, HighFloat(v.a, 64).exponent());
  if (!v.b.is_zero()) magnitude = std::max(magnitude, HighFloat(v.b, 64).exponent());
  const auto bits = static_cast<unsigned>(256 + magnitude);
  HighFloat r = HighFloat(v.a, bits) + HighFloat(v.b, bits) * HighFloat::inv_pi(bits);
  return r.to_double();
}

HighFloat Sqrt3PiLinear::to_high(unsigned bits) const {
  HighFloat s = HighFloat::sqrt3_over_pi(bits + 16);
  return HighFloat(a, bits + 16) + HighFloat(b, bits + 16) * s;
}

double Sqrt3PiLinear::to_double() const {
  if (b.is_zero()) return a.to_double();
  long magnitude = std::max(HighFloat(a, 64).exponent(), HighFloat(b, 64).exponent()) + 2;
  unsigned bits = static_cast<unsigned>(std::max<long>(magnitude, 0)) + 96;
  for (;;) {
    HighFloat r = to_high(bits);
    long needed = magnitude - r.exponent() + 80;
    if (!r.is_zero() && needed <= static_cast<long>(bits)) return r.to_double();
    if (bits > (1u << 20)) return r.to_double();
    bits *= 2;
  }
}

std::string Sqrt3PiLinear::to_string() const { return two_term(a, b, "sqrt(3)/pi"); }

UPolynomial::UPolynomial(std::vector<BigRational> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

void UPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

BigRational UPolynomial::evaluate(const BigRational& u) const {
  BigRational acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * u + *it;
  return acc;
}

UPolynomial upoly_interpolate(std::span<const std::pair<BigRational, BigRational>> points) {
  if (points.empty()) throw InvalidInput("upoly_interpolate: no points");
  const std::size_t n = points.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (points[i].first == points[j].first)
        throw InvalidInput("upoly_interpolate: duplicate node " + points[i].first.to_string());

  // Newton divided differences, in place.
  std::vector<BigRational> dd(n);
  for (std::size_t i = 0; i < n; ++i) dd[i] = points[i].second;
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = n - 1; i >= level; --i)
      dd[i] = (dd[i] - dd[i - 1]) / (points[i].first - points[i - level].first);

  // Expand the Newton form into monomial coefficients (Horner on polynomials).
  std::vector<BigRational> poly{dd[n - 1]};
  for (std::size_t k = n - 1; k-- > 0;) {
    const BigRational& node = points[k].first;
    std::vector<BigRational> next(poly.size() + 1);
    for (std::size_t d = 0; d < poly.size(); ++d) {
      next[d + 1] += poly[d];
      next[d] -= node * poly[d];
    }
    next[0] += dd[k];
    poly = std::move(next);
  }
  return UPolynomial(std::move(poly));
}

HighFloat upoly_eval_inv_pi(const UPolynomial& p, unsigned precision_bits) {
  if (precision_bits < 64) throw DomainError("upoly_eval_inv_pi: precision_bits must be >= 64");
  unsigned guard = 8;
  for (std::size_t n = p.coefficients().size(); n > 1; n >>= 1) ++guard;
  const unsigned bits = precision_bits + guard;
  HighFloat u = HighFloat::inv_pi(bits);
  HighFloat acc(bits);
  const auto& c = p.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * u + HighFloat(*it, bits);
  return acc;
}

}  // namespace lastloop::numerics
