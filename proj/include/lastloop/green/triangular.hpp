#pragma once

#include <cstddef>
#include <vector>

#include "lastloop/numerics/extensions.hpp"

namespace lastloop::green {

using numerics::BigRational;
using numerics::Sqrt3PiLinear;

/// Resistance r_n between the origin and (n, n) on the triangular resistor
/// lattice, exactly r_n = a + b·√3/π.
struct TriResistance {
  std::size_t n = 0;
  Sqrt3PiLinear value;

  friend bool operator==(const TriResistance&, const TriResistance&) = default;
};

/// H(n) = 3F2(1/2, 1-n, n+1; 1, 3/2; -3), a terminating sum.
struct HValue {
  std::size_t n = 0;
  BigRational h;
};

/// r_0 … r_{n_max} from the three-term inhomogeneous recurrence (r_{-1} = 0).
std::vector<TriResistance> tri_recurrence(std::size_t n_max);

/// H(n) for n ≥ 1; throws DomainError for n = 0.
HValue tri_H(std::size_t n);

/// r_n from the hypergeometric closed form
/// r_n = (n/3)·H(n) - (4√3/π)·Σ_{m=1}^{n} (n-m)·H(n-m)·H(m).
TriResistance tri_closed_form(std::size_t n);

/// log(n)/(√3π) + (γ + log(2√3))/(√3π), n ≥ 1.
double tri_asymptotic(std::size_t n);

/// (2/π)∫_0^{π/2} sin²(nx) / (sin x·√(4 - cos²x)) dx by composite
/// Gauss–Legendre on `grid` panels (grid ≥ 128); the first panel is [0, 1/(4n)].
double tri_integral_oracle(std::size_t n, std::size_t grid);

}  // namespace lastloop::green
