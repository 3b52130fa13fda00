#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lastloop/fp/fp.hpp"

namespace lastloop::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  std::string command;
  int length = 0;          // ℓ for enumerate/sweep, L for square, n for tri
  std::size_t max_index = 0;
  std::string word;
  std::optional<std::filesystem::path> table;
  std::optional<std::filesystem::path> out;
  std::optional<std::filesystem::path> stores;
  unsigned jobs = 1;
  bool compress = false;
  bool exact = false;
  bool count_only = false;
  int shard_depth = 0;
  std::string mode = "recurrence";
};

/// Throws InvalidInput when the configuration cannot be run (jobs < 1,
/// missing table file, unwritable output directory, ...).
void validate(const RunConfig& cfg);

int cmd_cmatrix(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_enumerate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_fp(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_square(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_tri(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_stats(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Dispatches on cfg.command; maps library exceptions to exit codes.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Sweep CSV in the published table layout: F truncated to 14 decimals,
/// S the exact running sum of the printed F values.
std::string sweep_csv(const std::vector<fp::SweepResult>& results);

/// "n,a,b,float_value,asymptotic,residual" for n = 1..n_max.
std::string tri_csv(std::size_t n_max);

/// Store shard directory for length ℓ below a store root.
std::filesystem::path shard_directory(const std::filesystem::path& root, int length);

}  // namespace lastloop::cli
