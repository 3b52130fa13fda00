// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lastloop/cli/commands.hpp"
#include "lastloop/fp/fp.hpp"
#include "lastloop/green/ctable.hpp"
#include "lastloop/green/triangular.hpp"
#include "lastloop/numerics/high_precision.hpp"
#include "lastloop/sap/enumerate.hpp"
#include "lastloop/sap/store.hpp"
#include "lastloop/sap/symmetry.hpp"

namespace {

using namespace lastloop;
using numerics::BigRational;
using numerics::HighFloat;
using numerics::PiLinear;
using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
  bool ok = true;
  std::string notes;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes += (notes.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& what) { notes += (notes.empty() ? "" : "; ") + what; }
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

const green::CTable& table22() {
  static const green::CTable t = green::build_ctable(22);
  return t;
}

// Published polygon counts, ℓ = 2, 4, ..., 24.
const std::uint64_t kPi[] = {1, 1, 2, 7, 28, 124, 588, 2938, 15268, 81826, 449572, 2521270};

// Published F(ℓ) and S(ℓ), ℓ = 2, 4, ..., 20.
const double kF[] = {0.50000000000000, 0.14727245910375, 0.06204664274521, 0.04001566383131, 0.02805060444094,
                     0.02102490313204, 0.01644695527417, 0.01329675992709, 0.01102242742254, 0.00931937541569};
const double kS[] = {0.50000000000000, 0.64727245910375, 0.70931910184896, 0.74933476568027, 0.77738537012121,
                     0.79841027325325, 0.8148572285274199, 0.8281539884545099, 0.8391764158770499,
                     0.8484957912927399};

// Published F of the L×L square, L = 1..6, and L = 10.
const double kSquare[] = {1.8409057387969413e-2, 4.462339923059934e-4, 1.192983879778077e-5,
                          3.2824487567509144e-7, 9.174122974521936e-9, 2.5893979305184303e-10};
constexpr double kSquare10 = 1.730587034739647e-16;

std::vector<fp::SweepResult> g_sweep;  // shared by criteria 3 and 8

std::uint64_t cli_count(int length, unsigned jobs) {
  cli::RunConfig cfg;
  cfg.command = "enumerate";
  cfg.length = length;
  cfg.count_only = true;
  cfg.jobs = jobs;
  std::ostringstream out, err;
  if (cli::run(cfg, out, err) != cli::kExitOk) return 0;
  return std::stoull(out.str());
}

Verdict criterion1() {
  Verdict v;
  const auto t0 = Clock::now();
  for (int length = 2; length <= 20; length += 2) {
    const std::uint64_t c = cli_count(length, 1);
    v.require(c == kPi[length / 2 - 1], "pi(" + std::to_string(length) + ")=" + std::to_string(c));
  }
  const double serial = elapsed(t0);
  v.require(serial < 30.0, "l<=20 took " + num(serial) + " s");
  const auto t1 = Clock::now();
  for (int length : {22, 24}) {
    const std::uint64_t c = cli_count(length, 4);
    v.require(c == kPi[length / 2 - 1], "pi(" + std::to_string(length) + ")=" + std::to_string(c));
  }
  const double parallel = elapsed(t1);
  v.require(parallel < 600.0, "l=22,24 took " + num(parallel) + " s");
  v.note("l<=20 single-threaded " + num(serial) + " s, l=22..24 on 4 workers " + num(parallel) + " s");
  return v;
}

Verdict criterion2() {
  Verdict v;
  for (int length = 2; length <= 12; length += 2) {
    const auto a = sap::collect_polygons(length);
    const auto b = sap::brute_force_polygons(length);
    v.require(a == b, "mismatch at l=" + std::to_string(length));
  }
  v.note("sets equal for l = 2..12");
  return v;
}

Verdict criterion3() {
  Verdict v;
  double S = 0.0, worst = 0.0, t20 = 0.0;
  for (int length = 2; length <= 20; length += 2) {
    const auto t0 = Clock::now();
    const fp::SweepResult r = fp::sweep_enumerated(length, table22(), S, 4);
    if (length == 20) t20 = elapsed(t0);
    S = r.S;
    g_sweep.push_back(r);
    const std::size_t k = static_cast<std::size_t>(length / 2 - 1);
    const double tol = length <= 16 ? 1e-9 : 1e-8;
    const double dF = std::fabs(r.F - kF[k]), dS = std::fabs(r.S - kS[k]);
    worst = std::max({worst, dF, dS});
    v.require(dF <= tol && dS <= tol, "l=" + std::to_string(length) + " dF=" + num(dF) + " dS=" + num(dS));
    v.require(r.count == kPi[k], "count at l=" + std::to_string(length));
  }
  v.require(t20 < 600.0, "l=20 sweep took " + num(t20) + " s");
  v.note("max deviation " + num(worst) + ", l=20 sweep " + num(t20) + " s on 4 workers");
  return v;
}

Verdict criterion4() {
  Verdict v;
  const fp::Word corner = fp::Word::parse("RUULLDRD");
  constexpr unsigned bits = 256;
  const HighFloat one(BigRational(1), bits);
  const HighFloat pi = one / HighFloat::inv_pi(bits);
  auto c = [&](long x) { return HighFloat(BigRational(x), bits); };
  const HighFloat a = c(3) * pi - c(8), pi2 = pi * pi, pi3 = pi2 * pi;
  const HighFloat closed = a * a * (c(8) - pi) * (c(4) - pi) * (c(-23) * pi2 + c(120) * pi - c(128)) /
                           (c(576) * pi3 * pi3);
  const double ref = closed.to_double();
  const double numeric = fp::fp_numeric(corner, table22());
  const double rel = std::fabs(numeric - ref) / ref;
  v.require(rel <= 1e-12, "numeric relative error " + num(rel));

  // Expansion of 4^9·F in powers of 1/π (tests/oracles/corner_polynomial.py).
  const std::vector<BigRational> oracle = {BigRational(-94208),        BigRational(6373376, 3),
                                           BigRational(-168820736, 9), BigRational(83886080),
                                           BigRational(-201326592),    BigRational(738197504, 3),
                                           BigRational(-1073741824, 9)};
  const fp::FpExact e = fp::fp_exact(corner, table22());
  v.require(e.scale == BigRational(1, 262144), "scale " + e.scale.to_string());
  v.require(e.g.coefficients() == oracle, "exact coefficients differ from the oracle expansion");
  v.note("F = " + num(ref) + ", numeric relative error " + num(rel) + ", 7 exact coefficients match");
  return v;
}

Verdict criterion5() {
  Verdict v;
  const auto t0 = Clock::now();
  const green::CTable t = green::build_ctable(14);
  double worst = 0.0;
  for (int side = 1; side <= 6; ++side) {
    const double f = fp::fp_numeric(fp::square_word(side), t);
    const double rel = std::fabs(f - kSquare[side - 1]) / kSquare[side - 1];
    worst = std::max(worst, rel);
    v.require(rel <= 1e-9, "L=" + std::to_string(side) + " rel " + num(rel));
  }
  const double secs = elapsed(t0);
  v.require(secs < 10.0, "took " + num(secs) + " s");
  v.note("max relative error " + num(worst) + " in " + num(secs) + " s");
  return v;
}

Verdict criterion6() {
  Verdict v;
  const green::CTable t = green::build_ctable(20);
  v.require(t.at(0, 1) == PiLinear{-1, 0}, "c01");
  v.require(t.at(1, 1) == PiLinear{0, -4}, "c11");
  v.require(t.at(2, 2) == PiLinear{0, BigRational(-16, 3)}, "c22");
  v.require(t.at(1, 2) == PiLinear{1, -8}, "c12");
  v.require(t.at(0, 2) == PiLinear{-4, 8}, "c02");
  v.require(green::harmonicity_check(t).empty(), "harmonicity violated");
  double worst = 0.0;
  for (long j = 0; j <= 4; ++j)
    for (long i = 0; i <= j; ++i)
      worst = std::max(worst, std::fabs(green::quadrature_oracle(i, j, 4096) - t.lookup_float(i, j)));
  v.require(worst <= 1e-5, "quadrature error " + num(worst));
  v.note("quadrature max error " + num(worst));
  return v;
}

Verdict criterion7() {
  Verdict v;
  const auto rec = green::tri_recurrence(200);
  for (std::size_t n = 0; n <= 100; ++n)
    if (!(rec[n] == green::tri_closed_form(n))) v.require(false, "closed form differs at n=" + std::to_string(n));
  const double r1 = green::tri_integral_oracle(1, 4096);
  v.require(std::fabs(r1 - 1.0 / 3.0) <= 1e-6, "integral(1) = " + num(r1));
  auto scaled = [&](std::size_t n) {
    return static_cast<double>(n) * std::fabs(rec[n].value.to_double() - green::tri_asymptotic(n));
  };
  const double at10 = scaled(10);
  double peak = 0.0;
  for (std::size_t n = 10; n <= 200; ++n) peak = std::max(peak, scaled(n));
  v.require(peak <= at10, "n|r_n - asym| peaks at " + num(peak) + " > " + num(at10));
  v.note("integral(1) error " + num(std::fabs(r1 - 1.0 / 3.0)) + ", n|r_n - asym| at n=10 is " + num(at10));
  return v;
}

Verdict criterion8() {
  Verdict v;
  std::vector<fp::SweepResult> picked;
  for (const auto& r : g_sweep)
    if (r.length >= 16) picked.push_back(r);
  v.require(picked.size() == 3, "sweep results for l=16,18,20 missing");
  for (const auto& row : fp::fit_sweep(picked)) {
    v.require(row.eps_times_length >= 0.25 && row.eps_times_length <= 0.35,
              "l*eps at l=" + std::to_string(row.length) + " is " + num(row.eps_times_length));
    v.note("l*eps(" + std::to_string(row.length) + ")=" + num(row.eps_times_length));
  }
  const double f10 = fp::fp_numeric(fp::square_word(10), table22());
  const std::vector<std::pair<int, double>> sq = {{10, f10}};
  const auto fit = fp::fit_squares(sq).front();
  const double gap = std::fabs(fit.log_F_over_4L - std::log(std::sqrt(2.0) - 1.0));
  v.note("F_Sq(10)=" + num(f10) + ", relative error vs published " + num(std::fabs(f10 - kSquare10) / kSquare10));
  v.require(gap <= 0.02, "|log F_Sq(10)/40 - log(sqrt2-1)| = " + num(gap) + " > 0.02");
  return v;
}

Verdict criterion9() {
  Verdict v;
  for (int length : {8, 12, 16}) {
    const fp::Extrema e = fp::extrema(length, table22(), 4);
    const fp::Word square = fp::square_word(length / 4);
    v.require(e.argmax == square, "l=" + std::to_string(length) + " argmax " + e.argmax.to_string());
  }
  v.note("argmax is the square for l = 8, 12, 16");
  return v;
}

Verdict criterion10() {
  Verdict v;
  for (int length = 2; length <= 16; length += 2) {
    const auto words = sap::collect_polygons(length);
    for (bool compress : {false, true}) {
      std::stringstream buf;
      sap::write_stream(words, length, buf, compress);
      v.require(sap::read_stream(buf).words == words,
                "roundtrip l=" + std::to_string(length) + (compress ? " compressed" : " raw"));
    }
  }
  {
    std::stringstream buf;
    sap::write_stream(std::vector<fp::Word>{fp::Word::parse("RULD")}, 4, buf, false);
    const std::string bytes = buf.str();
    v.require(bytes.size() == sap::kStoreHeaderBytes + 1 &&
                  static_cast<unsigned char>(bytes[sap::kStoreHeaderBytes]) == 0xB4,
              "golden RULD byte");
  }
  for (int length = 12; length <= 20; length += 2) {
    std::stringstream buf;
    sap::write_stream(sap::collect_polygons(length), length, buf, false);
    const sap::StoreStats s = sap::store_stats(buf);
    v.require(s.prefix_bytes * 8 < s.basic_bits, "prefix not smaller at l=" + std::to_string(length));
    if (length == 20) v.note("l=20 prefix/basic = " + num(8.0 * s.prefix_bytes / s.basic_bits));
  }
  return v;
}

Verdict criterion11() {
  Verdict v;
  std::vector<fp::Word> pool;
  for (int length = 4; length <= 14; length += 2) {
    const auto w = sap::collect_polygons(length);
    pool.insert(pool.end(), w.begin(), w.end());
  }
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const fp::Word& w = pool[pick(rng)];
    const double ref = fp::fp_numeric(w, table22());
    for (const auto& image : sap::dihedral_images(w))
      for (const auto& variant : sap::rerootings(image))
        worst = std::max(worst, std::fabs(fp::fp_numeric(variant, table22()) - ref) / ref);
  }
  v.require(worst <= 1e-11, "max relative spread " + num(worst));
  v.note("50 polygons x 8 images x 2l rootings, max relative spread " + num(worst));
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"1 polygon counts", criterion1},      {"2 brute-force oracle", criterion2},
      {"3 sweep values", criterion3},        {"4 corner polygon", criterion4},
      {"5 square family", criterion5},       {"6 Green table", criterion6},
      {"7 triangular lattice", criterion7},  {"8 conjecture fits", criterion8},
      {"9 extrema", criterion9},             {"10 storage", criterion10},
      {"11 symmetry invariance", criterion11},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v.ok = false;
      v.notes = std::string("exception: ") + e.what();
    }
    if (!v.ok) ++failed;
    std::printf("%s criterion %s: %s\n", v.ok ? "PASS" : "FAIL", name.c_str(), v.notes.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
