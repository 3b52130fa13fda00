#include "lastloop/green/triangular.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "lastloop/errors.hpp"

namespace lastloop::green {

std::vector<TriResistance> tri_recurrence(std::size_t n_max) {
  std::vector<TriResistance> r;
  r.reserve(n_max + 1);
  r.push_back({0, {0, 0}});
  if (n_max >= 1) r.push_back({1, {BigRational(1, 3), 0}});
  const Sqrt3PiLinear zero{0, 0};
  for (std::size_t n = 2; n <= n_max; ++n) {
    const long ln = static_cast<long>(n);
    const Sqrt3PiLinear& r1 = r[n - 1].value;
    const Sqrt3PiLinear& r2 = r[n - 2].value;
    const Sqrt3PiLinear& r3 = n >= 3 ? r[n - 3].value : zero;
    Sqrt3PiLinear next = BigRational(15 * ln - 22, ln - 1) * r1 - BigRational(15 * ln - 23, ln - 1) * r2 +
                         BigRational(ln - 2, ln - 1) * r3;
    next.b -= BigRational(4, ln - 1);
    r.push_back({n, std::move(next)});
  }
  return r;
}

HValue tri_H(std::size_t n) {
  if (n == 0) throw DomainError("tri_H: H(0) is not defined");
  const long ln = static_cast<long>(n);
  // c(n,k) = (n+k)! / ((2k+1)·(k!)²·(n-k-1)!), built by its term ratio
  BigRational term = ln;  // c(n,0)·3^0
  BigRational sum = term;
  for (long k = 0; k + 1 < ln; ++k) {
    BigRational ratio((ln + k + 1) * (ln - k - 1) * (2 * k + 1) * 3, (2 * k + 3) * (k + 1) * (k + 1));
    term *= ratio;
    sum += term;
  }
  return {n, sum / BigRational(ln)};
}

TriResistance tri_closed_form(std::size_t n) {
  if (n == 0) return {0, {0, 0}};
  std::vector<BigRational> h(n + 1);
  for (std::size_t m = 1; m <= n; ++m) h[m] = tri_H(m).h;
  BigRational sum = 0;
  // m = n carries weight (n - m) = 0, so H(0) never enters.
  for (std::size_t m = 1; m < n; ++m) sum += BigRational(static_cast<long>(n - m)) * h[n - m] * h[m];
  return {n, {BigRational(static_cast<long>(n), 3) * h[n], BigRational(-4) * sum}};
}

double tri_asymptotic(std::size_t n) {
  if (n == 0) throw DomainError("tri_asymptotic: n must be >= 1");
  const double denom = std::numbers::sqrt3 * std::numbers::pi;
  const double offset = std::numbers::egamma + std::log(2.0 * std::numbers::sqrt3);
  return (std::log(static_cast<double>(n)) + offset) / denom;
}

namespace {

constexpr int kGaussPoints = 10;

struct GaussRule {
  std::array<double, kGaussPoints> node{};
  std::array<double, kGaussPoints> weight{};
};

// Legendre roots by Newton iteration on [-1, 1].
GaussRule make_gauss_rule() {
  GaussRule rule;
  const int n = kGaussPoints;
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    rule.node[static_cast<std::size_t>(i)] = x;
    rule.weight[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

// 1 / (sin x · √(4 - cos²x)); below this cutoff the Laurent series is exact to
// double precision and avoids dividing two vanishing quantities.
constexpr double kSeriesCutoff = 1e-2;

double kernel(double x) {
  if (x < kSeriesCutoff) {
    const double x2 = x * x;
    return (1.0 / x + x2 * x * (4.0 / 45.0 - x2 * (2.0 / 63.0))) / std::numbers::sqrt3;
  }
  const double c = std::cos(x);
  return 1.0 / (std::sin(x) * std::sqrt(4.0 - c * c));
}

}  // namespace

double tri_integral_oracle(std::size_t n, std::size_t grid) {
  if (grid < 128) throw DomainError("tri_integral_oracle: grid must be >= 128");
  if (n == 0) return 0.0;
  static const GaussRule rule = make_gauss_rule();
  const double nd = static_cast<double>(n);
  auto panel = [&](double lo, double hi) {
    const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
    double acc = 0.0;
    for (int k = 0; k < kGaussPoints; ++k) {
      const double x = mid + half * rule.node[static_cast<std::size_t>(k)];
      const double s = std::sin(nd * x);
      acc += rule.weight[static_cast<std::size_t>(k)] * s * s * kernel(x);
    }
    return acc * half;
  };
  const double end = std::numbers::pi / 2.0;
  const double split = std::min(1.0 / (4.0 * nd), end);
  double total = panel(0.0, split);
  const std::size_t rest = grid - 1;
  const double step = (end - split) / static_cast<double>(rest);
  for (std::size_t p = 0; p < rest; ++p)
    total += panel(split + step * static_cast<double>(p), split + step * static_cast<double>(p + 1));
  return 2.0 / std::numbers::pi * total;
}

}  // namespace lastloop::green
