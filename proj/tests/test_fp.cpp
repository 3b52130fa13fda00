#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "lastloop/errors.hpp"
#include "lastloop/fp/fp.hpp"
#include "lastloop/numerics/high_precision.hpp"
#include "lastloop/sap/enumerate.hpp"
#include "lastloop/sap/symmetry.hpp"

using namespace lastloop;
using namespace lastloop::fp;
using numerics::BigRational;

namespace {

const CTable& table() {
  static const CTable t = green::build_ctable(16);
  return t;
}

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

// Independent form: F_p = Λ^-ℓ · 1ᵀ adj(C restricted to the polygon) 1.
double polygon_only(const Word& w) {
  const auto g = build_neighborhood(w);
  const std::size_t n = g.polygon_size;
  std::vector<long double> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a[i * n + j] = table().lookup_float(g.vertices[i].x - g.vertices[j].x, g.vertices[i].y - g.vertices[j].y);
  // Gauss–Jordan on [A | 1]; det·(1ᵀ x) with A x = 1.
  std::vector<long double> b(n, 1.0L);
  long double det = 1.0L;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::fabs(a[r * n + c]) > std::fabs(a[p * n + c])) p = r;
    if (p != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a[c * n + k], a[p * n + k]);
      std::swap(b[c], b[p]);
      det = -det;
    }
    det *= a[c * n + c];
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const long double f = a[r * n + c] / a[c * n + c];
      for (std::size_t k = c; k < n; ++k) a[r * n + k] -= f * a[c * n + k];
      b[r] -= f * b[c];
    }
  }
  long double s = 0.0L;
  for (std::size_t i = 0; i < n; ++i) s += b[i] / a[i * n + i];
  return static_cast<double>(std::ldexp(det * s, -2 * static_cast<int>(w.length())));
}

}  // namespace

TEST_CASE("neighbourhood graph") {
  const auto sq = build_neighborhood(Word::parse("RULD"));
  CHECK(sq.size() == 12);
  CHECK(sq.polygon_size == 4);
  CHECK(sq.vertices[0] == Point{0, 0});
  CHECK(sq.vertices[1] == Point{1, 0});
  CHECK(build_neighborhood(Word::parse("RUULLDRD")).size() == 19);
  CHECK(build_neighborhood(Word::parse("RL")).size() == 8);
  CHECK_THROWS_AS(build_neighborhood(Word::parse("RRUL")), InvalidPolygon);
  CHECK_THROWS_AS(build_neighborhood(Word::parse("RRULDLLURD")), InvalidPolygon);

  for (int length = 4; length <= 12; length += 2)
    for (const auto& w : sap::collect_polygons(length)) {
      const auto g = build_neighborhood(w);
      const std::size_t n = g.size();
      REQUIRE(n <= 3 * w.length());
      for (std::size_t i = 0; i < n; ++i) {
        REQUIRE_FALSE(g.adjacent(i, i));
        int sq2 = 0;
        for (std::size_t j = 0; j < n; ++j) {
          REQUIRE(g.adjacent(i, j) == g.adjacent(j, i));
          sq2 += g.adjacent(i, j) * g.adjacent(j, i);
        }
        REQUIRE(sq2 == g.degree[i]);
      }
      // neighbours in (y, x) order after the polygon
      REQUIRE(std::is_sorted(g.vertices.begin() + static_cast<std::ptrdiff_t>(g.polygon_size), g.vertices.end(),
                             [](const Point& p, const Point& q) { return p.y != q.y ? p.y < q.y : p.x < q.x; }));
      const auto again = build_neighborhood(w);
      REQUIRE(again.vertices == g.vertices);
      REQUIRE(again.adjacency == g.adjacency);
    }
}

TEST_CASE("restricted C matrix") {
  const Word corner = Word::parse("RUULLDRD");
  const auto g = build_neighborhood(corner);
  const auto c = extract_Cp(table(), g);
  const std::size_t n = g.size();
  bool found = false;
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(c[i * n + i] == PiLinear{0, 0});
    for (std::size_t j = 0; j < n; ++j) {
      REQUIRE(c[i * n + j] == c[j * n + i]);
      if (g.adjacent(i, j)) REQUIRE(c[i * n + j] == PiLinear{-1, 0});
      found = found || c[i * n + j] == PiLinear{-12, BigRational(472, 15)};
    }
  }
  CHECK(found);
  CHECK_THROWS_AS(extract_Cp(green::build_ctable(2), g), TableTooSmall);
  CHECK_THROWS_AS(fp_numeric(corner, green::build_ctable(2)), TableTooSmall);
}

TEST_CASE("numeric F_p reference values") {
  CHECK(fp_numeric(Word::parse("RL"), table()) == doctest::Approx(0.125).epsilon(1e-14));
  CHECK(rel(fp_numeric(Word::parse("RULD"), table()), 1.8409057387969413e-2) <= 1e-12);
  CHECK(std::fabs(fp_numeric(Word::parse("RUULLDRD"), table()) - 3.36e-4) <= 1e-6);
  CHECK(rel(fp_numeric(Word::parse("RUULLDRD"), table()), 3.36193666255643013166e-4) <= 1e-12);
  CHECK(rel(fp_numeric(square_word(2), table()), 4.462339923059934e-4) <= 1e-12);
  CHECK(rel(fp_numeric(square_word(5), table()), 9.174122974521936e-9) <= 1e-9);
  CHECK(4.0 * fp_numeric(Word::parse("RL"), table()) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("exact F_p of the corner polygon") {
  const FpExact e = fp_exact(Word::parse("RUULLDRD"), table());
  CHECK(e.scale == BigRational(1, 262144));
  const std::vector<BigRational> expected = {BigRational(-94208),        BigRational(6373376, 3),
                                             BigRational(-168820736, 9), BigRational(83886080),
                                             BigRational(-201326592),    BigRational(738197504, 3),
                                             BigRational(-1073741824, 9)};
  CHECK(e.g.coefficients() == expected);
  CHECK(rel(e.to_double(), 3.36193666255643013166e-4) <= 1e-15);
}

TEST_CASE("exact and numeric modes agree") {
  for (int length = 2; length <= 10; length += 2)
    for (const auto& w : sap::collect_polygons(length)) {
      const FpExact e = fp_exact(w, table());
      REQUIRE(e.g.degree() <= static_cast<int>(build_neighborhood(w).size()));
      REQUIRE(rel(fp_numeric(w, table()), e.to_double()) <= 1e-10);
    }
}

TEST_CASE("agreement with the polygon-only adjugate form") {
  for (int length = 2; length <= 12; length += 2)
    for (const auto& w : sap::collect_polygons(length)) {
      INFO(w.to_string());
      REQUIRE(rel(fp_numeric(w, table()), polygon_only(w)) <= 1e-11);
    }
}

TEST_CASE("F_p is a shape invariant") {
  std::vector<Word> pool;
  for (int length = 4; length <= 14; length += 2) {
    auto words = sap::collect_polygons(length);
    pool.insert(pool.end(), words.begin(), words.end());
  }
  std::mt19937_64 rng(2718);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int trial = 0; trial < 50; ++trial) {
    const Word& w = pool[pick(rng)];
    const double ref = fp_numeric(w, table());
    REQUIRE(ref > 0.0);
    REQUIRE(ref < 1.0);
    for (const auto& img : sap::dihedral_images(w))
      for (const auto& v : sap::rerootings(img)) REQUIRE(rel(fp_numeric(v, table()), ref) <= 1e-11);
  }
}

TEST_CASE("sweeps") {
  double S = 0.0;
  std::vector<SweepResult> results;
  for (int length = 2; length <= 12; length += 2) {
    const auto words = sap::collect_polygons(length);
    const SweepResult a = sweep(length, table(), words, S, 1);
    const SweepResult b = sweep(length, table(), words, S, 3);
    const SweepResult c = sweep_enumerated(length, table(), S, 2);
    CHECK(a.F == b.F);
    CHECK(std::fabs(a.F - c.F) <= 1e-16);
    CHECK(a.count == words.size());
    CHECK(c.count == words.size());
    CHECK(a.S > S);
    CHECK(a.S < 1.0);
    S = a.S;
    results.push_back(a);
  }
  CHECK(results[0].F == 0.5);
  CHECK(std::fabs(results[1].F - 0.14727245910375) <= 1e-13);
  CHECK(std::fabs(results[3].F - 0.04001566383131) <= 1e-13);
  CHECK(std::fabs(results[3].S - 0.74933476568027) <= 2e-14);
  const std::vector<Word> mixed = {Word::parse("RULD"), Word::parse("RL")};
  CHECK_THROWS_AS(sweep(4, table(), mixed, 0.0), InvalidInput);
}

TEST_CASE("squares and extrema") {
  CHECK(square_word(1).to_string() == "RULD");
  CHECK(square_word(2).to_string() == "RRUULLDD");
  CHECK(sap::is_canonical(square_word(4)));
  CHECK_THROWS_AS(square_word(0), DomainError);

  const Extrema e8 = extrema(8, table());
  CHECK(e8.argmax.to_string() == "RRUULLDD");
  CHECK(e8.min < e8.max);
  const Extrema e4 = extrema(4, table());
  CHECK(e4.argmax == e4.argmin);
  CHECK(e4.argmax.to_string() == "RULD");
  const Extrema e10 = extrema(10, table(), 2);
  const std::set<std::string> rectangles = {"RRRUULLLDD", "RRUUULLDDD"};
  CHECK(rectangles.count(e10.argmax.to_string()) == 1);
}

TEST_CASE("fit report") {
  std::vector<SweepResult> r(2);
  r[0].length = 16;
  r[0].S = 0.8281539884545099;
  r[1].length = 24;
  r[1].S = 0.8634716045896499;
  const auto rows = fit_sweep(r);
  CHECK(rows[0].eps_times_length == doctest::Approx(0.282).epsilon(0.005));
  CHECK(rows[1].eps_times_length == doctest::Approx(0.289).epsilon(0.005));
  const std::vector<std::pair<int, double>> sq = {{10, 1.730587034739647e-16}, {120, 3.763918325436204e-185}};
  const auto srows = fit_squares(sq);
  CHECK(srows[0].log_F_over_4L == doctest::Approx(-0.90732).epsilon(1e-5));
  CHECK(std::fabs(srows[1].log_F_over_4L - std::log(std::sqrt(2.0) - 1.0)) <= 0.005);
  const std::string csv = fit_report_csv(rows, srows);
  CHECK(csv.rfind("ell,S,eps,eps_times_ell\n16,", 0) == 0);
  CHECK(csv.find("\nL,F,logF_over_4L\n10,") != std::string::npos);
}

TEST_CASE("compensated summation") {
  CompensatedSum s;
  s.add(1.0);
  for (int i = 0; i < 1000; ++i) s.add(1e-17);
  CHECK(std::fabs(s.value() - (1.0 + 1e-14)) <= 2.3e-16);
  double naive = 1.0;
  for (int i = 0; i < 1000; ++i) naive += 1e-17;
  CHECK(naive == 1.0);
}
