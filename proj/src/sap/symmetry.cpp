#include "lastloop/sap/symmetry.hpp"

#include <array>

#include "lastloop/errors.hpp"

namespace lastloop::sap {

namespace {

Step reversed(Step s) {
  switch (s) {
    case Step::D: return Step::U;
    case Step::L: return Step::R;
    case Step::R: return Step::L;
    case Step::U: return Step::D;
  }
  return s;
}

// Images of D, L, R, U (indexed by code) under each symmetry.
constexpr std::array<std::array<Step, 4>, 8> kDihedral = {{
    {Step::D, Step::L, Step::R, Step::U},  // identity
    {Step::R, Step::D, Step::U, Step::L},  // quarter turn
    {Step::U, Step::R, Step::L, Step::D},  // half turn
    {Step::L, Step::U, Step::D, Step::R},  // three-quarter turn
    {Step::D, Step::R, Step::L, Step::U},  // x -> -x
    {Step::U, Step::L, Step::R, Step::D},  // y -> -y
    {Step::L, Step::D, Step::U, Step::R},  // x <-> y
    {Step::R, Step::U, Step::D, Step::L},  // x <-> -y
}};

}  // namespace

std::vector<Word> rerootings(const Word& w) {
  const std::size_t n = w.length();
  std::vector<Word> out;
  out.reserve(2 * n);
  for (std::size_t shift = 0; shift < n; ++shift) {
    std::vector<Step> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = w[(i + shift) % n];
    out.emplace_back(std::move(s));
  }
  for (std::size_t shift = 0; shift < n; ++shift) {
    std::vector<Step> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = reversed(w[(shift + n - 1 - i) % n]);
    out.emplace_back(std::move(s));
  }
  return out;
}

std::vector<Word> dihedral_images(const Word& w) {
  std::vector<Word> out;
  out.reserve(kDihedral.size());
  for (const auto& map : kDihedral) {
    std::vector<Step> s;
    s.reserve(w.length());
    for (Step st : w.steps()) s.push_back(map[code(st)]);
    out.emplace_back(std::move(s));
  }
  return out;
}

std::vector<Word> brute_force_polygons(int length) {
  if (length < 2 || length % 2 != 0 || length > 16)
    throw DomainError("brute force supports even lengths 2..16 only");
  const auto free_steps = static_cast<unsigned>(length - 1);
  const std::uint64_t total = 1ULL << (2 * free_steps);
  std::vector<Word> out;
  std::vector<Step> steps(static_cast<std::size_t>(length));
  steps[0] = Step::R;
  // Most-significant pair first, so counting up walks words in lexicographic order.
  for (std::uint64_t code_word = 0; code_word < total; ++code_word) {
    long dx = 1, dy = 0;
    for (unsigned i = 0; i < free_steps; ++i) {
      const Step s = step_from_code(static_cast<std::uint8_t>(code_word >> (2 * (free_steps - 1 - i))));
      steps[i + 1] = s;
      const Point d = delta(s);
      dx += d.x;
      dy += d.y;
    }
    if (dx != 0 || dy != 0) continue;
    Word w(steps);
    if (is_canonical(w)) out.push_back(std::move(w));
  }
  return out;
}

}  // namespace lastloop::sap
