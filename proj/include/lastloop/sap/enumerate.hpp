#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "lastloop/sap/word.hpp"

namespace lastloop::sap {

inline constexpr std::uint32_t kNever = std::numeric_limits<std::uint32_t>::max();
inline constexpr std::uint32_t kFar = std::numeric_limits<std::uint32_t>::max() / 2;

/// Decorated grid on which admissible words are grown. Cell n = width·y + x.
struct GameBoard {
  int length = 0;
  int a = 0;  // north/east reach
  int b = 0;  // west reach (may be negative for ℓ = 4)
  int width = 0;
  int height = 0;
  std::uint32_t base = 0;
  std::vector<std::uint32_t> d;      // Manhattan distance to base, kFar if forbidden
  std::vector<std::uint32_t> t;      // last step index at which the cell was left
  std::vector<std::uint32_t> kappa;  // step index -> cell, kNever past the path end
  std::vector<Step> word;

  std::uint32_t cell(int x, int y) const { return static_cast<std::uint32_t>(width * y + x); }
  int x_of(std::uint32_t c) const { return static_cast<int>(c) % width; }
  int y_of(std::uint32_t c) const { return static_cast<int>(c) / width; }
  std::uint32_t move(std::uint32_t c, Step s) const;
  bool forbidden(std::uint32_t c) const { return d[c] >= kFar; }
};

/// Pending move: leave `cell` at step `k` with step `s`.
struct Frame {
  std::uint32_t cell;
  std::uint32_t k;
  Step s;
};

/// Builds the board for even ℓ, 4 ≤ ℓ ≤ 64; DomainError otherwise.
GameBoard board_init(int length);

bool can_add(const GameBoard& board, std::uint32_t cell, std::uint32_t k, Step s);
void apply_step(GameBoard& board, std::uint32_t cell, std::uint32_t k, Step s);

using WordVisitor = std::function<void(std::span<const Step>)>;

/// Visits every canonical polygon of length ℓ in lexicographic order (D<L<R<U)
/// and returns their number.
std::uint64_t enumerate(int length, const WordVisitor& visit);

/// All ℓ-admissible prefixes of the given depth, lexicographically sorted.
std::vector<Word> partition(int length, int depth);

/// Visits the canonical polygons of length ℓ that extend `prefix`.
/// Throws InvalidInput if the prefix is not ℓ-admissible.
std::uint64_t enumerate_from(int length, const Word& prefix, const WordVisitor& visit);

/// Runs `work(i)` for i in [0, n) on up to `jobs` threads. Each index runs
/// exactly once; callers store per-index results and merge them in order.
void parallel_for_index(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& work);

/// Number of canonical polygons of length ℓ, split over `jobs` workers using
/// prefixes of length `shard_depth`.
std::uint64_t count_polygons(int length, unsigned jobs = 1, int shard_depth = 0);

/// Default shard depth: deep enough for balanced shards, shallow enough to
/// keep prefix replay negligible.
int default_shard_depth(int length);

/// All canonical polygons of length ℓ, in lexicographic order.
std::vector<Word> collect_polygons(int length, unsigned jobs = 1, int shard_depth = 0);

}  // namespace lastloop::sap
