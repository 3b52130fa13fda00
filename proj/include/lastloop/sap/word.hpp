#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lastloop::sap {

/// Lattice step. The numeric values are the on-disk 2-bit codes and also
/// define the lexicographic order D < L < R < U.
enum class Step : std::uint8_t { D = 0b00, L = 0b01, R = 0b10, U = 0b11 };

inline constexpr std::uint8_t code(Step s) { return static_cast<std::uint8_t>(s); }
inline constexpr Step step_from_code(std::uint8_t c) { return static_cast<Step>(c & 0b11); }
char to_char(Step s);

struct Point {
  long x = 0;
  long y = 0;
  friend auto operator<=>(const Point&, const Point&) = default;
};

inline constexpr Point delta(Step s) {
  switch (s) {
    case Step::D: return {0, -1};
    case Step::L: return {-1, 0};
    case Step::R: return {1, 0};
    case Step::U: return {0, 1};
  }
  return {};
}

/// A walk from the origin as a sequence of steps.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Step> steps) : steps_(std::move(steps)) {}
  explicit Word(std::span<const Step> steps) : steps_(steps.begin(), steps.end()) {}

  /// Parses a string over {D, L, R, U}; throws InvalidInput on any other character.
  static Word parse(std::string_view text);

  std::size_t length() const { return steps_.size(); }
  bool empty() const { return steps_.empty(); }
  Step operator[](std::size_t i) const { return steps_[i]; }
  std::span<const Step> steps() const { return steps_; }
  void push_back(Step s) { steps_.push_back(s); }

  std::string to_string() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) { return a.steps_ <=> b.steps_; }

 private:
  std::vector<Step> steps_;
};

/// Cumulative positions after each step, starting from (0,0) (not included).
std::vector<Point> word_vertices(const Word& w);

/// True iff `w` is closed, self-avoiding and in canonical base-pointed form:
/// first step R, last step D (ℓ ≥ 4), no vertex below the base row, no vertex
/// west of the origin on the base row. Checked geometrically from the vertex
/// list. The doubled edge RL is the canonical word for ℓ = 2.
bool is_canonical(const Word& w);

/// True iff `w` returns to the origin and visits ℓ distinct vertices
/// (RL counts as closed and self-avoiding).
bool is_closed_self_avoiding(const Word& w);

}  // namespace lastloop::sap
