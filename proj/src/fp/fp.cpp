#include "lastloop/fp/fp.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "lastloop/errors.hpp"
#include "lastloop/format.hpp"
#include "lastloop/numerics/high_precision.hpp"
#include "lastloop/sap/enumerate.hpp"

namespace lastloop::fp {

namespace {

constexpr Point kUnit[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
constexpr double kPivotFloor = 1e-12;
constexpr std::size_t kSweepChunk = 256;

Point shifted(Point p, Point d) { return {p.x + d.x, p.y + d.y}; }

bool by_row(const Point& p, const Point& q) { return p.y != q.y ? p.y < q.y : p.x < q.x; }

}  // namespace

NeighborhoodGraph build_neighborhood(const Word& w) {
  if (!sap::is_closed_self_avoiding(w))
    throw InvalidPolygon("word \"" + w.to_string() + "\" is not a closed self-avoiding polygon");
  NeighborhoodGraph g;
  auto path = sap::word_vertices(w);
  g.vertices.push_back({0, 0});
  g.vertices.insert(g.vertices.end(), path.begin(), path.end() - 1);
  g.polygon_size = g.vertices.size();

  std::map<Point, std::size_t> index;
  for (std::size_t i = 0; i < g.polygon_size; ++i) index.emplace(g.vertices[i], i);
  std::vector<Point> outer;
  for (std::size_t i = 0; i < g.polygon_size; ++i)
    for (Point d : kUnit) {
      Point q = shifted(g.vertices[i], d);
      if (!index.contains(q)) outer.push_back(q);
    }
  std::sort(outer.begin(), outer.end(), by_row);
  outer.erase(std::unique(outer.begin(), outer.end()), outer.end());
  for (Point q : outer) {
    index.emplace(q, g.vertices.size());
    g.vertices.push_back(q);
  }

  const std::size_t n = g.size();
  g.adjacency.assign(n * n, 0);
  for (std::size_t i = 0; i < g.polygon_size; ++i)
    for (Point d : kUnit) {
      const std::size_t j = index.at(shifted(g.vertices[i], d));
      g.adjacency[i * n + j] = 1;
      g.adjacency[j * n + i] = 1;
    }
  g.neighbors.assign(n, {});
  g.degree.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (g.adjacency[i * n + j]) {
        g.neighbors[i].push_back(j);
        ++g.degree[i];
      }
  return g;
}

std::vector<PiLinear> extract_Cp(const CTable& t, const NeighborhoodGraph& g) {
  const std::size_t n = g.size();
  std::vector<PiLinear> c(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      c[i * n + j] = t.lookup(g.vertices[i].x - g.vertices[j].x, g.vertices[i].y - g.vertices[j].y);
  return c;
}

double fp_numeric(const Word& w, const CTable& t) {
  const NeighborhoodGraph g = build_neighborhood(w);
  const std::size_t n = g.size();
  std::vector<double> c(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      c[i * n + j] = t.lookup_float(g.vertices[i].x - g.vertices[j].x, g.vertices[i].y - g.vertices[j].y);

  // M = I + C·B/Λ; column j of C·B sums the columns of C at the neighbours of j.
  std::vector<double> m(n * n, 0.0);
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k : g.neighbors[j]) s += c[i * n + k];
      m[i * n + j] = (i == j ? 1.0 : 0.0) + s / kLambda;
      scale = std::max(scale, std::fabs(m[i * n + j]));
    }

  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  double mantissa = 1.0;
  long exponent = 0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::fabs(m[r * n + col]) > std::fabs(m[piv * n + col])) piv = r;
    const double p = m[piv * n + col];
    if (std::fabs(p) < kPivotFloor * scale)
      throw IllConditioned("near-singular system for \"" + w.to_string() + "\"; use exact mode");
    if (piv != col) {
      std::swap_ranges(m.begin() + static_cast<std::ptrdiff_t>(col * n), m.begin() + static_cast<std::ptrdiff_t>(col * n + n),
                       m.begin() + static_cast<std::ptrdiff_t>(piv * n));
      std::swap(perm[col], perm[piv]);
      mantissa = -mantissa;
    }
    int e = 0;
    mantissa = std::frexp(mantissa * p, &e);
    exponent += e;
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = m[r * n + col] / p;
      m[r * n + col] = f;
      if (f == 0.0) continue;
      for (std::size_t k = col + 1; k < n; ++k) m[r * n + k] -= f * m[col * n + k];
    }
  }
  // M y = 1; the permuted right-hand side is still all ones.
  std::vector<double> y(n, 1.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < i; ++k) y[i] -= m[i * n + k] * y[k];
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t k = i + 1; k < n; ++k) y[i] -= m[i * n + k] * y[k];
    y[i] /= m[i * n + i];
  }
  double contraction = 0.0;
  for (std::size_t i = 0; i < n; ++i) contraction += g.degree[i] * y[i];
  // Λ = 4 = 2², so Λ^-(ℓ+1) is an exact power of two.
  const long shift = -2L * (static_cast<long>(w.length()) + 1);
  return std::ldexp(mantissa * contraction, static_cast<int>(exponent + shift));
}

double FpExact::to_double() const {
  constexpr unsigned bits = 256;
  numerics::HighFloat v = numerics::upoly_eval_inv_pi(g, bits) * numerics::HighFloat(scale, bits);
  return v.to_double();
}

FpExact fp_exact(const Word& w, const CTable& t) {
  const NeighborhoodGraph g = build_neighborhood(w);
  const std::size_t n = g.size();
  const std::vector<PiLinear> c = extract_Cp(t, g);
  const std::size_t needed = n + 1;
  std::vector<std::pair<BigRational, BigRational>> points;
  std::vector<mpq_class> m(n * n), cu(n * n);
  std::vector<mpq_class> y(n);
  const mpq_class quarter(1, kLambda);

  for (long node = 0; points.size() < needed; ++node) {
    if (node >= static_cast<long>(3 * needed))
      throw DomainError("interpolation failed: too many singular nodes for \"" + w.to_string() + "\"");
    const mpq_class u(node);
    for (std::size_t i = 0; i < n * n; ++i) cu[i] = c[i].a.raw() + u * c[i].b.raw();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        mpq_class s = 0;
        for (std::size_t k : g.neighbors[j]) s += cu[i * n + k];
        m[i * n + j] = s * quarter;
        if (i == j) m[i * n + j] += 1;
      }
    mpq_class det = 1;
    bool singular = false;
    for (std::size_t i = 0; i < n; ++i) y[i] = 1;
    for (std::size_t col = 0; col < n && !singular; ++col) {
      std::size_t piv = col;
      while (piv < n && sgn(m[piv * n + col]) == 0) ++piv;
      if (piv == n) {
        singular = true;
        break;
      }
      if (piv != col) {
        for (std::size_t k = 0; k < n; ++k) swap(m[col * n + k], m[piv * n + k]);
        swap(y[col], y[piv]);
        det = -det;
      }
      const mpq_class p = m[col * n + col];
      det *= p;
      for (std::size_t r = col + 1; r < n; ++r) {
        if (sgn(m[r * n + col]) == 0) continue;
        const mpq_class f = m[r * n + col] / p;
        for (std::size_t k = col + 1; k < n; ++k) m[r * n + k] -= f * m[col * n + k];
        y[r] -= f * y[col];
      }
    }
    if (singular) continue;
    for (std::size_t i = n; i-- > 0;) {
      for (std::size_t k = i + 1; k < n; ++k) y[i] -= m[i * n + k] * y[k];
      y[i] /= m[i * n + i];
    }
    mpq_class contraction = 0;
    for (std::size_t i = 0; i < n; ++i) contraction += g.degree[i] * y[i];
    points.emplace_back(BigRational(node), BigRational(mpq_class(det * contraction)));
  }
  FpExact out;
  out.word = w;
  out.scale = numerics::pow(BigRational(1, kLambda), static_cast<int>(w.length()) + 1);
  out.g = numerics::upoly_interpolate(points);
  return out;
}

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::fabs(sum_) >= std::fabs(x))
    compensation_ += (sum_ - t) + x;
  else
    compensation_ += (x - t) + sum_;
  sum_ = t;
}

void CompensatedSum::add(const CompensatedSum& other) {
  add(other.sum_);
  add(other.compensation_);
}

SweepResult sweep(int length, const CTable& t, std::span<const Word> words, double previous_S, unsigned jobs) {
  for (std::size_t i = 0; i < words.size(); ++i)
    if (words[i].length() != static_cast<std::size_t>(length))
      throw InvalidInput("stream mismatch: word " + std::to_string(i) + " has length " +
                         std::to_string(words[i].length()) + ", expected " + std::to_string(length));
  const std::size_t chunks = (words.size() + kSweepChunk - 1) / kSweepChunk;
  std::vector<CompensatedSum> partial(chunks);
  sap::parallel_for_index(chunks, jobs, [&](std::size_t c) {
    const std::size_t end = std::min(words.size(), (c + 1) * kSweepChunk);
    for (std::size_t i = c * kSweepChunk; i < end; ++i) partial[c].add(fp_numeric(words[i], t));
  });
  CompensatedSum total;
  for (const auto& p : partial) total.add(p);
  SweepResult r;
  r.length = length;
  r.count = words.size();
  r.canonical_sum = total.value();
  r.F = 2.0 * length * r.canonical_sum;
  r.S = previous_S + r.F;
  return r;
}

SweepResult sweep_enumerated(int length, const CTable& t, double previous_S, unsigned jobs) {
  const auto prefixes = sap::partition(length, sap::default_shard_depth(length));
  std::vector<CompensatedSum> partial(prefixes.size());
  std::vector<std::uint64_t> counts(prefixes.size(), 0);
  sap::parallel_for_index(prefixes.size(), jobs, [&](std::size_t i) {
    counts[i] = sap::enumerate_from(length, prefixes[i],
                                    [&](std::span<const sap::Step> s) { partial[i].add(fp_numeric(Word(s), t)); });
  });
  CompensatedSum total;
  SweepResult r;
  r.length = length;
  for (std::size_t i = 0; i < prefixes.size(); ++i) {
    total.add(partial[i]);
    r.count += counts[i];
  }
  r.canonical_sum = total.value();
  r.F = 2.0 * length * r.canonical_sum;
  r.S = previous_S + r.F;
  return r;
}

Word square_word(int side) {
  if (side < 1) throw DomainError("square side must be >= 1");
  std::vector<sap::Step> steps;
  for (sap::Step s : {sap::Step::R, sap::Step::U, sap::Step::L, sap::Step::D})
    steps.insert(steps.end(), static_cast<std::size_t>(side), s);
  return Word(std::move(steps));
}

Extrema extrema(int length, const CTable& t, unsigned jobs) {
  const auto prefixes = sap::partition(length, sap::default_shard_depth(length));
  std::vector<Extrema> shard(prefixes.size());
  std::vector<bool> seen(prefixes.size(), false);
  sap::parallel_for_index(prefixes.size(), jobs, [&](std::size_t i) {
    Extrema& e = shard[i];
    bool any = false;
    sap::enumerate_from(length, prefixes[i], [&](std::span<const sap::Step> s) {
      Word w(s);
      const double f = fp_numeric(w, t);
      if (!any || f > e.max) e.max = f, e.argmax = w;
      if (!any || f < e.min) e.min = f, e.argmin = w;
      any = true;
    });
    seen[i] = any;
  });
  Extrema out;
  bool any = false;
  for (std::size_t i = 0; i < shard.size(); ++i) {
    if (!seen[i]) continue;
    if (!any || shard[i].max > out.max) out.max = shard[i].max, out.argmax = shard[i].argmax;
    if (!any || shard[i].min < out.min) out.min = shard[i].min, out.argmin = shard[i].argmin;
    any = true;
  }
  return out;
}

std::vector<FitRow> fit_sweep(std::span<const SweepResult> results) {
  std::vector<FitRow> rows;
  for (const auto& r : results) {
    const double eps = r.S - (1.0 - std::pow(static_cast<double>(r.length), -0.6));
    rows.push_back({r.length, r.S, eps, eps * r.length});
  }
  return rows;
}

std::vector<SquareFitRow> fit_squares(std::span<const std::pair<int, double>> squares) {
  std::vector<SquareFitRow> rows;
  for (auto [side, f] : squares) rows.push_back({side, f, std::log(f) / (4.0 * side)});
  return rows;
}

std::string fit_report_csv(std::span<const FitRow> rows, std::span<const SquareFitRow> squares) {
  std::ostringstream out;
  out << "ell,S,eps,eps_times_ell\n";
  for (const auto& r : rows)
    out << r.length << ',' << format_shortest(r.S) << ',' << format_shortest(r.eps) << ','
        << format_shortest(r.eps_times_length) << '\n';
  out << "\nL,F,logF_over_4L\n";
  for (const auto& s : squares)
    out << s.side << ',' << format_shortest(s.F) << ',' << format_shortest(s.log_F_over_4L) << '\n';
  return out.str();
}

}  // namespace lastloop::fp
