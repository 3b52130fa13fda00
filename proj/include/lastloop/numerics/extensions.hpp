#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lastloop/numerics/high_precision.hpp"
#include "lastloop/numerics/rational.hpp"

namespace lastloop::numerics {

/// Exact value a + b/π with rational a, b. Since 1/π is irrational the
/// pair (a, b) is unique.
struct PiLinear {
  BigRational a;
  BigRational b;

  PiLinear operator-() const { return {-a, -b}; }
  friend PiLinear operator+(const PiLinear& x, const PiLinear& y) { return {x.a + y.a, x.b + y.b}; }
  friend PiLinear operator-(const PiLinear& x, const PiLinear& y) { return {x.a - y.a, x.b - y.b}; }
  friend PiLinear operator*(const BigRational& s, const PiLinear& x) { return {s * x.a, s * x.b}; }
  friend bool operator==(const PiLinear&, const PiLinear&) = default;

  /// Human form, e.g. "1 - 8/pi" or "-92/(3*pi)".
  std::string to_string() const;
};

/// Double readout using the split 1/π ≈ 1725033/5419351 + 2.27595720048157e-15:
/// the rational part is combined exactly and rounded once. The published tail
/// is 3.2e-17 above the true remainder, so the absolute error grows like
/// 3.2e-17·|b|; the C table uses pilinear_to_float_reference instead.
double pilinear_to_float(const PiLinear& v);

/// Correctly rounded value; working precision grows with the size of a and b
/// so that their cancellation is resolved.
double pilinear_to_float_reference(const PiLinear& v);

/// Exact value a + b·√3/π.
struct Sqrt3PiLinear {
  BigRational a;
  BigRational b;

  friend Sqrt3PiLinear operator+(const Sqrt3PiLinear& x, const Sqrt3PiLinear& y) {
    return {x.a + y.a, x.b + y.b};
  }
  friend Sqrt3PiLinear operator-(const Sqrt3PiLinear& x, const Sqrt3PiLinear& y) {
    return {x.a - y.a, x.b - y.b};
  }
  friend Sqrt3PiLinear operator*(const BigRational& s, const Sqrt3PiLinear& x) {
    return {s * x.a, s * x.b};
  }
  friend bool operator==(const Sqrt3PiLinear&, const Sqrt3PiLinear&) = default;

  /// Correctly rounded double. The two components cancel heavily for large
  /// values, so the working precision is raised until the result is stable.
  double to_double() const;
  HighFloat to_high(unsigned bits) const;
  /// Human form, e.g. "8/3 - 4*sqrt(3)/pi".
  std::string to_string() const;
};

/// Polynomial in u (u stands for 1/π) with exact rational coefficients.
/// coefficients()[k] multiplies u^k; trailing zeros are always trimmed.
class UPolynomial {
 public:
  UPolynomial() = default;
  explicit UPolynomial(std::vector<BigRational> coefficients);

  const std::vector<BigRational>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  BigRational evaluate(const BigRational& u) const;

  friend bool operator==(const UPolynomial&, const UPolynomial&) = default;

 private:
  void trim();
  std::vector<BigRational> coeffs_;
};

/// Unique polynomial of degree < points.size() through all (node, value)
/// points. Throws InvalidInput on an empty list or duplicate nodes.
UPolynomial upoly_interpolate(std::span<const std::pair<BigRational, BigRational>> points);

/// p(1/π) at `precision_bits` (≥ 64) of working precision.
HighFloat upoly_eval_inv_pi(const UPolynomial& p, unsigned precision_bits);

}  // namespace lastloop::numerics
