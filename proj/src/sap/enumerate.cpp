#include "lastloop/sap/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "lastloop/errors.hpp"

namespace lastloop::sap {

namespace {

constexpr int kMaxLength = 64;
constexpr Step kChildrenReversed[] = {Step::U, Step::R, Step::L, Step::D};

void check_length(int length) {
  if (length < 2 || length % 2 != 0)
    throw DomainError("there are no polygons of odd or non-positive length (got " + std::to_string(length) + ")");
  if (length > kMaxLength)
    throw DomainError("length " + std::to_string(length) + " exceeds the supported maximum of 64");
}

// Pushes the admissible children of the vertex reached at step k, in reverse
// order so that they pop in D, L, R, U order.
void push_children(const GameBoard& board, std::vector<Frame>& stack, std::uint32_t cell, std::uint32_t k) {
  for (Step s : kChildrenReversed)
    if (can_add(board, cell, k, s)) stack.push_back({cell, k, s});
}

// Depth-first search below the frames on the stack. Frames reaching `stop`
// steps are handed to `leaf` instead of being expanded.
template <typename Leaf>
void explore(GameBoard& board, std::vector<Frame>& stack, std::uint32_t stop, Leaf&& leaf) {
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    apply_step(board, f.cell, f.k, f.s);
    const std::uint32_t next = f.k + 1;
    if (next == stop) {
      leaf(std::span<const Step>(board.word.data(), next));
      continue;
    }
    push_children(board, stack, board.move(f.cell, f.s), next);
  }
}

const Word& doubled_edge() {
  static const Word w = Word::parse("RL");
  return w;
}

}  // namespace

std::uint32_t GameBoard::move(std::uint32_t c, Step s) const {
  switch (s) {
    case Step::D: return c - static_cast<std::uint32_t>(width);
    case Step::L: return c - 1;
    case Step::R: return c + 1;
    case Step::U: return c + static_cast<std::uint32_t>(width);
  }
  return c;
}

GameBoard board_init(int length) {
  check_length(length);
  if (length < 4) throw DomainError("the game board needs length >= 4; length 2 is the doubled edge RL");
  GameBoard g;
  g.length = length;
  g.a = length / 2 - 1;
  g.b = length / 2 - 3;
  const int west = std::max(g.b, 0);
  g.width = g.a + west + 3;
  g.height = g.a + 3;
  const int bx = west + 1, by = 1;
  g.base = g.cell(bx, by);
  const auto cells = static_cast<std::size_t>(g.width * g.height);
  g.d.assign(cells, kFar);
  for (int y = 1; y + 1 < g.height; ++y)
    for (int x = 1; x + 1 < g.width; ++x) {
      if (y == by && x < bx) continue;
      g.d[g.cell(x, y)] = static_cast<std::uint32_t>(std::abs(x - bx) + std::abs(y - by));
    }
  g.t.assign(cells, kNever);
  g.kappa.assign(static_cast<std::size_t>(length) + 1, kNever);
  g.word.assign(static_cast<std::size_t>(length), Step::D);
  return g;
}

bool can_add(const GameBoard& board, std::uint32_t cell, std::uint32_t k, Step s) {
  const std::uint32_t dest = board.move(cell, s);
  const auto length = static_cast<std::uint32_t>(board.length);
  if (board.forbidden(dest) || k + 1 + board.d[dest] > length) return false;
  const std::uint32_t when = board.t[dest];
  if (when != kNever && when <= k && board.kappa[when] == dest) return dest == board.base && k + 1 == length;
  return true;
}

void apply_step(GameBoard& board, std::uint32_t cell, std::uint32_t k, Step s) {
  board.t[cell] = k;
  board.word[k] = s;
  board.kappa[k] = cell;
  board.kappa[k + 1] = kNever;
}

std::uint64_t enumerate(int length, const WordVisitor& visit) {
  check_length(length);
  if (length == 2) {
    visit(doubled_edge().steps());
    return 1;
  }
  GameBoard board = board_init(length);
  std::vector<Frame> stack{{board.base, 0, Step::R}};
  std::uint64_t count = 0;
  explore(board, stack, static_cast<std::uint32_t>(length), [&](std::span<const Step> w) {
    ++count;
    visit(w);
  });
  return count;
}

std::vector<Word> partition(int length, int depth) {
  check_length(length);
  if (depth < 1 || depth >= length)
    throw DomainError("partition depth must satisfy 1 <= depth < length (got " + std::to_string(depth) + ")");
  std::vector<Word> out;
  if (length == 2) {
    out.push_back(Word::parse("R"));
    return out;
  }
  GameBoard board = board_init(length);
  std::vector<Frame> stack{{board.base, 0, Step::R}};
  explore(board, stack, static_cast<std::uint32_t>(depth), [&](std::span<const Step> w) { out.emplace_back(w); });
  return out;
}

std::uint64_t enumerate_from(int length, const Word& prefix, const WordVisitor& visit) {
  check_length(length);
  if (prefix.empty() || prefix.length() > static_cast<std::size_t>(length) || prefix[0] != Step::R)
    throw InvalidInput("prefix \"" + prefix.to_string() + "\" is not admissible for length " + std::to_string(length));
  if (length == 2) {
    const Word& rl = doubled_edge();
    if (!std::equal(prefix.steps().begin(), prefix.steps().end(), rl.steps().begin()))
      throw InvalidInput("prefix \"" + prefix.to_string() + "\" is not admissible for length 2");
    visit(rl.steps());
    return 1;
  }
  GameBoard board = board_init(length);
  std::uint32_t cell = board.base;
  for (std::uint32_t k = 0; k < prefix.length(); ++k) {
    if (!can_add(board, cell, k, prefix[k]))
      throw InvalidInput("prefix \"" + prefix.to_string() + "\" is not admissible for length " +
                         std::to_string(length));
    apply_step(board, cell, k, prefix[k]);
    cell = board.move(cell, prefix[k]);
  }
  const auto depth = static_cast<std::uint32_t>(prefix.length());
  const auto stop = static_cast<std::uint32_t>(length);
  if (depth == stop) {
    visit(std::span<const Step>(board.word.data(), stop));
    return 1;
  }
  std::vector<Frame> stack;
  push_children(board, stack, cell, depth);
  std::uint64_t count = 0;
  explore(board, stack, stop, [&](std::span<const Step> w) {
    ++count;
    visit(w);
  });
  return count;
}

void parallel_for_index(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& work) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) work(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::size_t failure_index = n;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        work(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (i < failure_index) {
          failure_index = i;
          failure = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  const std::size_t threads = std::min<std::size_t>(jobs, n);
  pool.reserve(threads);
  for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

int default_shard_depth(int length) { return std::clamp(length / 2 - 2, 1, std::max(1, length - 1)); }

std::uint64_t count_polygons(int length, unsigned jobs, int shard_depth) {
  check_length(length);
  if (jobs <= 1 && shard_depth == 0) return enumerate(length, [](std::span<const Step>) {});
  const int depth = shard_depth > 0 ? std::min(shard_depth, length - 1) : default_shard_depth(length);
  const std::vector<Word> prefixes = partition(length, depth);
  std::vector<std::uint64_t> counts(prefixes.size(), 0);
  parallel_for_index(prefixes.size(), jobs, [&](std::size_t i) {
    counts[i] = enumerate_from(length, prefixes[i], [](std::span<const Step>) {});
  });
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  return total;
}

std::vector<Word> collect_polygons(int length, unsigned jobs, int shard_depth) {
  check_length(length);
  std::vector<Word> out;
  if (jobs <= 1 && shard_depth == 0) {
    enumerate(length, [&](std::span<const Step> w) { out.emplace_back(w); });
    return out;
  }
  const int depth = shard_depth > 0 ? std::min(shard_depth, length - 1) : default_shard_depth(length);
  const std::vector<Word> prefixes = partition(length, depth);
  std::vector<std::vector<Word>> shards(prefixes.size());
  parallel_for_index(prefixes.size(), jobs, [&](std::size_t i) {
    enumerate_from(length, prefixes[i], [&](std::span<const Step> w) { shards[i].emplace_back(w); });
  });
  for (auto& s : shards) std::move(s.begin(), s.end(), std::back_inserter(out));
  return out;
}

}  // namespace lastloop::sap
