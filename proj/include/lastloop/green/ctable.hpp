#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "lastloop/numerics/extensions.hpp"

namespace lastloop::green {

using numerics::PiLinear;

/// Exact square-lattice coefficients c_{i,j} = C_{O,(i,j)} for 0 ≤ i ≤ j ≤ max_index,
/// each of the form a + b/π. A double copy of every entry is kept alongside for
/// the numeric F_p kernel.
class CTable {
 public:
  CTable() = default;

  std::size_t max_index() const { return max_index_; }
  std::size_t entry_count() const { return exact_.size(); }

  /// c_{i,j} with either argument order.
  const PiLinear& at(std::size_t i, std::size_t j) const;
  /// C_{O,(dx,dy)} through the dihedral symmetry of the lattice.
  /// Throws TableTooSmall when max(|dx|,|dy|) > max_index.
  const PiLinear& lookup(long dx, long dy) const;
  /// Double value of lookup(dx, dy); same range contract.
  double lookup_float(long dx, long dy) const;

  friend bool operator==(const CTable& x, const CTable& y) {
    return x.max_index_ == y.max_index_ && x.exact_ == y.exact_;
  }

  friend CTable build_ctable(std::size_t n);
  friend CTable ctable_load(std::istream& in);

 private:
  static std::size_t slot(std::size_t i, std::size_t j) { return j * (j + 1) / 2 + i; }
  void set(std::size_t i, std::size_t j, PiLinear v);
  void finalize_floats();

  std::size_t max_index_ = 0;
  std::vector<PiLinear> exact_;  // triangular, index slot(i, j) with i ≤ j
  std::vector<double> dense_;    // (max_index+1)^2, symmetric
};

/// Exact table for 0 ≤ i ≤ j ≤ n (n ≥ 1), built along the diagonal-then-column
/// order: diagonal closed form, first column and interior from the harmonic
/// recurrences, and the entry just above the diagonal from symmetry.
CTable build_ctable(std::size_t n);

/// Required table size for polygons of length up to `length`.
inline std::size_t table_index_for_length(std::size_t length) { return length / 2 + 2; }

/// Text format: "SQCT,1,<n>" then "<i>,<j>,<a>,<b>" per entry, i ≤ j,
/// ascending (j, i). Rationals as "num/den".
void ctable_save(const CTable& t, std::ostream& out);
void ctable_save(const CTable& t, const std::filesystem::path& path);
CTable ctable_load(std::istream& in);
CTable ctable_load(const std::filesystem::path& path);

/// Numeric estimate of c_{i,j} from the lattice resistance integral,
/// c ≈ -2·R(i,j), R = (1/4π²)∬ (1 - cos(iθ)cos(jφ)) / (2 - cosθ - cosφ),
/// midpoint product rule with `grid` points per axis (grid ≥ 64).
double quadrature_oracle(long i, long j, std::size_t grid);

struct HarmonicViolation {
  std::size_t i;
  std::size_t j;
  PiLinear neighbor_sum;
  PiLinear expected;
};

/// Exact check that the four lattice neighbours of every (i, j) with
/// max(i, j) ≤ max_index - 1 sum to 4·c_{i,j} - 4·δ_{(i,j),(0,0)}.
std::vector<HarmonicViolation> harmonicity_check(const CTable& t);

}  // namespace lastloop::green
