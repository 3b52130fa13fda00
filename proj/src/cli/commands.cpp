#include "lastloop/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "lastloop/errors.hpp"
#include "lastloop/format.hpp"
#include "lastloop/green/triangular.hpp"
#include "lastloop/sap/enumerate.hpp"
#include "lastloop/sap/store.hpp"
#include "lastloop/sap/symmetry.hpp"

namespace lastloop::cli {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void require_even_length(int length) {
  if (length < 2 || length % 2 != 0)
    throw InvalidInput("length must be even and >= 2 (got " + std::to_string(length) + ")");
}

// The table given by --table, or one built in memory large enough for ℓ.
green::CTable obtain_table(const RunConfig& cfg, int length) {
  const std::size_t needed = green::table_index_for_length(static_cast<std::size_t>(length));
  if (!cfg.table) return green::build_ctable(needed);
  green::CTable t = green::ctable_load(*cfg.table);
  if (t.max_index() < needed) throw TableTooSmall(needed);
  return t;
}

constexpr int kCsvDecimals = 14;

// Exact decimal expansion of a non-negative double cut (not rounded) to
// kCsvDecimals places, returned in units of 10^-kCsvDecimals.
std::int64_t truncated_units(double v) {
  if (!(v >= 0.0) || v >= 9.0e4) throw DomainError("sweep value out of CSV range");
  const std::string s = format_fixed(v, 60);
  const auto dot = s.find('.');
  std::string digits = s.substr(0, dot) + s.substr(dot + 1, kCsvDecimals);
  return std::stoll(digits);
}

std::string units_to_decimal(std::int64_t units) {
  std::int64_t scale = 1;
  for (int i = 0; i < kCsvDecimals; ++i) scale *= 10;
  std::string frac = std::to_string(units % scale);
  frac.insert(0, static_cast<std::size_t>(kCsvDecimals) - frac.size(), '0');
  return std::to_string(units / scale) + "." + frac;
}

std::vector<fs::path> shard_files(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".saps") files.push_back(e.path());
  // Prefix strings over D < L < R < U sort the same way as ASCII.
  std::sort(files.begin(), files.end());
  return files;
}

std::vector<fp::Word> read_shards(const fs::path& dir, int length) {
  std::vector<fp::Word> words;
  for (const auto& f : shard_files(dir)) {
    std::ifstream in(f, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open store " + f.string());
    auto contents = sap::read_stream(in);
    if (contents.header.length != length)
      throw InvalidInput("store " + f.string() + " holds length " + std::to_string(contents.header.length) +
                         ", expected " + std::to_string(length));
    std::move(contents.words.begin(), contents.words.end(), std::back_inserter(words));
  }
  return words;
}

struct Check {
  std::string name;
  bool ok;
  std::string detail;
};

}  // namespace

fs::path shard_directory(const fs::path& root, int length) { return root / ("l" + std::to_string(length)); }

void validate(const RunConfig& cfg) {
  if (cfg.jobs < 1) throw InvalidInput("--jobs must be >= 1");
  if (cfg.shard_depth < 0) throw InvalidInput("--shard-depth must be >= 0");
  if (cfg.table && !fs::exists(*cfg.table))
    throw InvalidInput("table " + cfg.table->string() +
                       " not found; create it first with `lastloop cmatrix --max-index N --out " +
                       cfg.table->string() + "`");
  if (cfg.out && cfg.out->has_parent_path() && !fs::exists(cfg.out->parent_path()))
    throw InvalidInput("output directory " + cfg.out->parent_path().string() + " does not exist");
  if (cfg.command == "sweep" && cfg.stores && !fs::is_directory(*cfg.stores))
    throw InvalidInput("store root " + cfg.stores->string() + " is not a directory");
  if (cfg.command == "stats" && cfg.stores && !fs::exists(*cfg.stores))
    throw InvalidInput("store " + cfg.stores->string() + " not found");
}

int cmd_cmatrix(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  if (cfg.max_index < 1) throw InvalidInput("--max-index must be >= 1");
  const auto t0 = Clock::now();
  const green::CTable t = green::build_ctable(cfg.max_index);
  if (cfg.out) green::ctable_save(t, *cfg.out);
  out << "entries: " << t.entry_count() << "\n";
  out << "max_index: " << t.max_index() << "\n";
  out << "seconds: " << format_fixed(seconds_since(t0), 3) << "\n";
  return kExitOk;
}

int cmd_enumerate(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  require_even_length(cfg.length);
  const int length = cfg.length;
  if (cfg.count_only) {
    out << sap::count_polygons(length, cfg.jobs, cfg.shard_depth) << "\n";
    return kExitOk;
  }
  if (!cfg.out) {
    for (const auto& w : sap::collect_polygons(length, cfg.jobs, cfg.shard_depth)) out << w.to_string() << "\n";
    return kExitOk;
  }
  const fs::path dir = shard_directory(*cfg.out, length);
  fs::create_directories(dir);
  const int depth = cfg.shard_depth > 0 ? std::min(cfg.shard_depth, length - 1) : sap::default_shard_depth(length);
  const auto prefixes = sap::partition(length, depth);
  std::vector<std::uint64_t> counts(prefixes.size(), 0);
  sap::parallel_for_index(prefixes.size(), cfg.jobs, [&](std::size_t i) {
    sap::StoreWriter writer(length, cfg.compress);
    sap::enumerate_from(length, prefixes[i], [&](std::span<const sap::Step> w) { writer.add(w); });
    const fs::path file = dir / (prefixes[i].to_string() + ".saps");
    std::ofstream f(file, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + file.string());
    counts[i] = writer.finish(f).count;
  });
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  out << total << "\n";
  return kExitOk;
}

int cmd_fp(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const fp::Word w = fp::Word::parse(cfg.word);
  const green::CTable t = obtain_table(cfg, static_cast<int>(std::max<std::size_t>(w.length(), 2)));
  if (cfg.exact) {
    const fp::FpExact e = fp::fp_exact(w, t);
    out << "F_p = " << format_sci(e.to_double(), 17) << "\n";
    out << "scale = " << e.scale.to_string() << "\n";
    const auto& c = e.g.coefficients();
    for (std::size_t k = 0; k < c.size(); ++k) out << "g[" << k << "] = " << c[k].to_string() << "\n";
  } else {
    out << "F_p = " << format_sci(fp::fp_numeric(w, t), 17) << "\n";
  }
  return kExitOk;
}

std::string sweep_csv(const std::vector<fp::SweepResult>& results) {
  std::ostringstream csv;
  csv << "ell,pi,F_ell,S_ell\n";
  std::int64_t running = 0;
  for (const auto& r : results) {
    const std::int64_t f = truncated_units(r.F);
    running += f;
    csv << r.length << ',' << r.count << ',' << units_to_decimal(f) << ',' << units_to_decimal(running) << '\n';
  }
  return csv.str();
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require_even_length(cfg.length);
  const green::CTable t = obtain_table(cfg, cfg.length);
  std::vector<fp::SweepResult> results;
  double S = 0.0;
  for (int length = 2; length <= cfg.length; length += 2) {
    const auto t0 = Clock::now();
    fp::SweepResult r;
    if (cfg.stores && fs::is_directory(shard_directory(*cfg.stores, length))) {
      const auto words = read_shards(shard_directory(*cfg.stores, length), length);
      r = fp::sweep(length, t, words, S, cfg.jobs);
    } else {
      r = fp::sweep_enumerated(length, t, S, cfg.jobs);
    }
    S = r.S;
    results.push_back(r);
    err << "ell " << length << ": " << r.count << " polygons, " << format_fixed(seconds_since(t0), 2) << " s\n";
  }
  const std::string csv = sweep_csv(results);
  if (cfg.out) {
    std::ofstream f(*cfg.out);
    f << csv;
    if (!f) throw std::runtime_error("cannot write " + cfg.out->string());
  } else {
    out << csv;
  }
  return kExitOk;
}

int cmd_square(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  if (cfg.length < 1) throw InvalidInput("square side must be >= 1");
  const fp::Word w = fp::square_word(cfg.length);
  const green::CTable t = obtain_table(cfg, static_cast<int>(w.length()));
  out << w.to_string() << " " << format_sci(fp::fp_numeric(w, t), 16) << "\n";
  return kExitOk;
}

std::string tri_csv(std::size_t n_max) {
  std::ostringstream csv;
  csv << "n,a,b,float_value,asymptotic,residual\n";
  const auto r = green::tri_recurrence(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) {
    const double v = r[n].value.to_double();
    const double asym = green::tri_asymptotic(n);
    csv << n << ',' << r[n].value.a.to_string() << ',' << r[n].value.b.to_string() << ',' << format_shortest(v)
        << ',' << format_shortest(asym) << ',' << format_shortest(v - asym) << '\n';
  }
  return csv.str();
}

int cmd_tri(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  if (cfg.length < 1) throw InvalidInput("tri needs n >= 1");
  const auto n = static_cast<std::size_t>(cfg.length);
  if (cfg.out) {
    std::ofstream f(*cfg.out);
    f << tri_csv(n);
    if (!f) throw std::runtime_error("cannot write " + cfg.out->string());
    return kExitOk;
  }
  if (cfg.mode == "recurrence" || cfg.mode == "closed") {
    const green::TriResistance r =
        cfg.mode == "recurrence" ? green::tri_recurrence(n).back() : green::tri_closed_form(n);
    out << "r_" << n << " = " << r.value.to_string() << " ~ " << format_shortest(r.value.to_double()) << "\n";
  } else if (cfg.mode == "asymptotic") {
    out << "r_" << n << " ~ " << format_shortest(green::tri_asymptotic(n)) << " (asymptotic)\n";
  } else if (cfg.mode == "oracle") {
    out << "r_" << n << " ~ " << format_shortest(green::tri_integral_oracle(n, 4096)) << " (quadrature)\n";
  } else {
    throw InvalidInput("unknown --mode '" + cfg.mode + "'; use recurrence, closed, asymptotic or oracle");
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  std::vector<Check> checks;
  auto record = [&](std::string name, bool ok, std::string detail) {
    out << (ok ? "PASS " : "FAIL ") << name << (detail.empty() ? "" : ": " + detail) << "\n" << std::flush;
    checks.push_back({std::move(name), ok, std::move(detail)});
  };

  {
    const green::CTable t = green::build_ctable(20);
    record("harmonicity n=20", green::harmonicity_check(t).empty(), "");
    double worst = 0.0;
    for (long j = 0; j <= 4; ++j)
      for (long i = 0; i <= j; ++i)
        worst = std::max(worst, std::fabs(green::quadrature_oracle(i, j, 4096) - t.lookup_float(i, j)));
    record("quadrature vs table, max(i,j) <= 4", worst <= 1e-5, "max error " + format_sci(worst, 3));
  }
  {
    const auto rec = green::tri_recurrence(100);
    bool ok = true;
    for (std::size_t n = 0; n <= 100 && ok; ++n) ok = rec[n] == green::tri_closed_form(n);
    record("triangular recurrence == closed form, n <= 100", ok, "");
  }
  {
    bool ok = true;
    std::string detail;
    for (int length = 2; length <= 12 && ok; length += 2) {
      ok = sap::collect_polygons(length, cfg.jobs) == sap::brute_force_polygons(length);
      if (!ok) detail = "mismatch at length " + std::to_string(length);
    }
    record("enumerate == brute force, length <= 12", ok, detail);
  }
  {
    bool ok = true;
    for (int length = 2; length <= 12 && ok; length += 2) {
      const auto words = sap::collect_polygons(length);
      for (bool compress : {false, true}) {
        std::stringstream buf;
        sap::write_stream(words, length, buf, compress);
        ok = ok && sap::read_stream(buf).words == words;
      }
    }
    record("store roundtrip, length <= 12", ok, "");
  }
  {
    const green::CTable t = green::build_ctable(8);
    double worst = 0.0;
    for (int length = 2; length <= 10; length += 2)
      for (const auto& w : sap::collect_polygons(length)) {
        const double a = fp::fp_numeric(w, t), b = fp::fp_exact(w, t).to_double();
        worst = std::max(worst, std::fabs(a - b) / std::fabs(b));
      }
    record("exact vs numeric F_p, length <= 10", worst <= 1e-10, "max relative " + format_sci(worst, 3));
  }
  {
    const green::CTable t = green::build_ctable(9);
    double worst = 0.0;
    for (const auto& w : sap::collect_polygons(12)) {
      const double ref = fp::fp_numeric(w, t);
      for (const auto& img : sap::dihedral_images(w))
        for (const auto& v : sap::rerootings(img))
          worst = std::max(worst, std::fabs(fp::fp_numeric(v, t) - ref) / ref);
    }
    record("symmetry invariance, length 12", worst <= 1e-11, "max relative " + format_sci(worst, 3));
  }
  const bool all = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok; });
  out << (all ? "verify: all checks passed\n" : "verify: FAILED\n");
  return all ? kExitOk : kExitFailure;
}

int cmd_stats(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  if (!cfg.stores) throw InvalidInput("stats needs --store PATH (a .saps file or a shard directory)");
  std::vector<fs::path> files =
      fs::is_directory(*cfg.stores) ? shard_files(*cfg.stores) : std::vector<fs::path>{*cfg.stores};
  sap::StoreStats total;
  for (const auto& f : files) {
    std::ifstream in(f, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open store " + f.string());
    const sap::StoreStats s = sap::store_stats(in);
    total.count += s.count;
    total.length = s.length;
    total.basic_bits += s.basic_bits;
    total.prefix_bytes += s.prefix_bytes;
    total.stored_bytes += s.stored_bytes;
  }
  const double basic_bytes = static_cast<double>(total.basic_bits) / 8.0;
  total.compression_ratio = basic_bytes > 0 ? static_cast<double>(total.stored_bytes) / basic_bytes : 0.0;
  out << "files: " << files.size() << "\n";
  out << "length: " << total.length << "\n";
  out << "count: " << total.count << "\n";
  out << "basic_bytes: " << (total.basic_bits + 7) / 8 << "\n";
  out << "prefix_bytes: " << total.prefix_bytes << "\n";
  out << "stored_bytes: " << total.stored_bytes << "\n";
  out << "ratio: " << format_fixed(total.compression_ratio, 4) << "\n";
  return kExitOk;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    validate(cfg);
    if (cfg.command == "cmatrix") return cmd_cmatrix(cfg, out, err);
    if (cfg.command == "enumerate") return cmd_enumerate(cfg, out, err);
    if (cfg.command == "fp") return cmd_fp(cfg, out, err);
    if (cfg.command == "sweep") return cmd_sweep(cfg, out, err);
    if (cfg.command == "square") return cmd_square(cfg, out, err);
    if (cfg.command == "tri") return cmd_tri(cfg, out, err);
    if (cfg.command == "verify") return cmd_verify(cfg, out, err);
    if (cfg.command == "stats") return cmd_stats(cfg, out, err);
    err << "error: unknown command '" << cfg.command << "'\n";
    return kExitUsage;
  } catch (const InvalidInput& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace lastloop::cli
