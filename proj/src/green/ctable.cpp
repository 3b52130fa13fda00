#include "lastloop/green/ctable.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "lastloop/errors.hpp"

namespace lastloop::green {

using numerics::BigRational;

const PiLinear& CTable::at(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  if (j > max_index_) throw TableTooSmall(j);
  return exact_[slot(i, j)];
}

const PiLinear& CTable::lookup(long dx, long dy) const {
  return at(static_cast<std::size_t>(std::labs(dx)), static_cast<std::size_t>(std::labs(dy)));
}

double CTable::lookup_float(long dx, long dy) const {
  auto x = static_cast<std::size_t>(std::labs(dx));
  auto y = static_cast<std::size_t>(std::labs(dy));
  if (x > max_index_ || y > max_index_) throw TableTooSmall(std::max(x, y));
  return dense_[x * (max_index_ + 1) + y];
}

void CTable::set(std::size_t i, std::size_t j, PiLinear v) { exact_[slot(i, j)] = std::move(v); }

void CTable::finalize_floats() {
  const std::size_t n = max_index_ + 1;
  dense_.assign(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i <= j; ++i) {
      double v = numerics::pilinear_to_float_reference(exact_[slot(i, j)]);
      dense_[i * n + j] = v;
      dense_[j * n + i] = v;
    }
}

CTable build_ctable(std::size_t n) {
  if (n < 1) throw DomainError("build_ctable: max_index must be >= 1");
  CTable t;
  t.max_index_ = n;
  t.exact_.assign(CTable::slot(n, n) + 1, PiLinear{});
  auto c = [&t](std::size_t i, std::size_t j) -> const PiLinear& {
    return i <= j ? t.exact_[CTable::slot(i, j)] : t.exact_[CTable::slot(j, i)];
  };

  t.set(0, 0, {0, 0});
  t.set(0, 1, {-1, 0});
  BigRational diag_b = 0;
  for (std::size_t j = 1; j <= n; ++j) {
    diag_b -= BigRational(4, static_cast<long>(2 * j - 1));
    t.set(j, j, {0, diag_b});
    const std::size_t next = j + 1;
    if (next > n) break;
    // first column
    t.set(0, next, BigRational(4) * c(0, next - 1) - c(0, next - 2) - BigRational(2) * c(1, next - 1));
    // interior
    for (std::size_t i = 1; i + 2 <= next; ++i)
      t.set(i, next, BigRational(4) * c(i, next - 1) - c(i, next - 2) - c(i - 1, next - 1) - c(i + 1, next - 1));
    // just above the diagonal: 2·c_{j,j+1} = 4·c_{j,j} - c_{j,j-1} - c_{j-1,j}
    t.set(j, next, BigRational(2) * c(j, j) - c(j - 1, j));
  }
  t.finalize_floats();
  return t;
}

void ctable_save(const CTable& t, std::ostream& out) {
  out << "SQCT,1," << t.max_index() << '\n';
  for (std::size_t j = 0; j <= t.max_index(); ++j)
    for (std::size_t i = 0; i <= j; ++i) {
      const PiLinear& v = t.at(i, j);
      out << i << ',' << j << ',' << v.a.to_string() << ',' << v.b.to_string() << '\n';
    }
}

void ctable_save(const CTable& t, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open table for writing: " + path.string());
  ctable_save(t, out);
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

namespace {

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::size_t parse_index(const std::string& s, std::uint64_t line) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw FormatError("bad index '" + s + "'", line);
  return static_cast<std::size_t>(std::stoull(s));
}

}  // namespace

CTable ctable_load(std::istream& in) {
  std::string line;
  std::uint64_t lineno = 1;
  if (!std::getline(in, line)) throw FormatError("missing header", lineno);
  auto header = split_commas(line);
  if (header.size() != 3 || header[0] != "SQCT") throw FormatError("missing or malformed SQCT header", lineno);
  if (header[1] != "1") throw FormatError("unsupported table version " + header[1], lineno);
  const std::size_t n = parse_index(header[2], lineno);
  if (n < 1) throw FormatError("max_index must be >= 1", lineno);

  CTable t;
  t.max_index_ = n;
  t.exact_.assign(CTable::slot(n, n) + 1, PiLinear{});
  for (std::size_t j = 0; j <= n; ++j)
    for (std::size_t i = 0; i <= j; ++i) {
      ++lineno;
      if (!std::getline(in, line))
        throw FormatError("truncated table: expected entry (" + std::to_string(i) + "," + std::to_string(j) + ")",
                          lineno);
      auto f = split_commas(line);
      if (f.size() != 4) throw FormatError("expected 4 fields", lineno);
      if (parse_index(f[0], lineno) != i || parse_index(f[1], lineno) != j)
        throw FormatError("entry out of order, expected (" + std::to_string(i) + "," + std::to_string(j) + ")",
                          lineno);
      try {
        t.set(i, j, {BigRational::parse(f[2]), BigRational::parse(f[3])});
      } catch (const InvalidInput& e) {
        throw FormatError(e.what(), lineno);
      }
    }
  ++lineno;
  while (std::getline(in, line)) {
    if (!line.empty()) throw FormatError("unexpected trailing data", lineno);
    ++lineno;
  }
  t.finalize_floats();
  return t;
}

CTable ctable_load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open table " + path.string() + " (create it with `cmatrix`)");
  return ctable_load(in);
}

double quadrature_oracle(long i, long j, std::size_t grid) {
  if (grid < 64) throw DomainError("quadrature_oracle: grid must be >= 64");
  if (i == 0 && j == 0) return 0.0;
  // The integrand is even in both angles: integrate over [0,π]^2 with a
  // midpoint rule, which never samples the removable point at the origin.
  const double h = std::numbers::pi / static_cast<double>(grid);
  std::vector<double> cos_t(grid), cos_i(grid), cos_j(grid);
  for (std::size_t k = 0; k < grid; ++k) {
    double x = (static_cast<double>(k) + 0.5) * h;
    cos_t[k] = std::cos(x);
    cos_i[k] = std::cos(static_cast<double>(i) * x);
    cos_j[k] = std::cos(static_cast<double>(j) * x);
  }
  double total = 0.0;
  for (std::size_t a = 0; a < grid; ++a) {
    double row = 0.0;
    for (std::size_t b = 0; b < grid; ++b)
      row += (1.0 - cos_i[a] * cos_j[b]) / (2.0 - cos_t[a] - cos_t[b]);
    total += row;
  }
  // (1/4π²)·4·∫∫_{[0,π]²}, then c = -2R
  double resistance = total * h * h / (std::numbers::pi * std::numbers::pi);
  return -2.0 * resistance;
}

std::vector<HarmonicViolation> harmonicity_check(const CTable& t) {
  std::vector<HarmonicViolation> out;
  const long m = static_cast<long>(t.max_index());
  for (long j = 0; j < m; ++j)
    for (long i = 0; i <= j; ++i) {
      PiLinear sum = t.lookup(i + 1, j) + t.lookup(i - 1, j) + t.lookup(i, j + 1) + t.lookup(i, j - 1);
      PiLinear expected = BigRational(4) * t.lookup(i, j);
      if (i == 0 && j == 0) expected.a -= 4;
      if (!(sum == expected))
        out.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), sum, expected});
    }
  return out;
}

}  // namespace lastloop::green
