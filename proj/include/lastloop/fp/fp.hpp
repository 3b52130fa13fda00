#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lastloop/green/ctable.hpp"
#include "lastloop/numerics/extensions.hpp"
#include "lastloop/sap/word.hpp"

namespace lastloop::fp {

using green::CTable;
using numerics::BigRational;
using numerics::PiLinear;
using numerics::UPolynomial;
using sap::Point;
using sap::Word;

inline constexpr int kLambda = 4;

/// Polygon vertices together with their lattice neighbours. The edge set
/// holds every lattice edge incident to a polygon vertex.
struct NeighborhoodGraph {
  std::vector<Point> vertices;            // polygon in path order from (0,0), then neighbours by (y, x)
  std::size_t polygon_size = 0;
  std::vector<std::uint8_t> adjacency;    // size N×N, row-major, symmetric 0/1
  std::vector<std::vector<std::size_t>> neighbors;
  std::vector<int> degree;

  std::size_t size() const { return vertices.size(); }
  bool adjacent(std::size_t i, std::size_t j) const { return adjacency[i * size() + j] != 0; }
};

/// Throws InvalidPolygon unless `w` is closed and self-avoiding.
NeighborhoodGraph build_neighborhood(const Word& w);

/// C restricted to the neighbourhood: entry (i, j) = C_{O, v_i - v_j}.
std::vector<PiLinear> extract_Cp(const CTable& t, const NeighborhoodGraph& g);

/// F_p in double precision via LU with partial pivoting.
/// Throws IllConditioned when the smallest pivot is negligible.
double fp_numeric(const Word& w, const CTable& t);

struct FpExact {
  Word word;
  BigRational scale;  // Λ^-(ℓ+1)
  UPolynomial g;      // F_p = scale · g(1/π)

  double to_double() const;
};

/// F_p exactly, by evaluating at integer values of 1/π and interpolating.
FpExact fp_exact(const Word& w, const CTable& t);

/// Compensated running sum (Neumaier).
class CompensatedSum {
 public:
  void add(double x);
  void add(const CompensatedSum& other);
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

struct SweepResult {
  int length = 0;
  std::uint64_t count = 0;
  double canonical_sum = 0.0;
  double F = 0.0;  // 2ℓ·canonical_sum
  double S = 0.0;  // cumulative over lengths up to ℓ
};

/// Words are summed in fixed chunks so the result does not depend on `jobs`.
/// Throws InvalidInput if a word has the wrong length.
SweepResult sweep(int length, const CTable& t, std::span<const Word> words, double previous_S, unsigned jobs = 1);

/// Sweep over the polygons of length ℓ enumerated on the fly, sharded by
/// prefix; the shard layout depends only on ℓ.
SweepResult sweep_enumerated(int length, const CTable& t, double previous_S, unsigned jobs = 1);

/// R^L U^L L^L D^L.
Word square_word(int side);

struct Extrema {
  Word argmax;
  double max = 0.0;
  Word argmin;
  double min = 0.0;
};

/// Exhaustive scan of the polygons of length ℓ; ties go to the smaller word.
Extrema extrema(int length, const CTable& t, unsigned jobs = 1);

struct FitRow {
  int length;
  double S;
  double eps;  // S - (1 - ℓ^-3/5)
  double eps_times_length;
};

struct SquareFitRow {
  int side;
  double F;
  double log_F_over_4L;
};

std::vector<FitRow> fit_sweep(std::span<const SweepResult> results);
std::vector<SquareFitRow> fit_squares(std::span<const std::pair<int, double>> squares);
std::string fit_report_csv(std::span<const FitRow> rows, std::span<const SquareFitRow> squares);

}  // namespace lastloop::fp
