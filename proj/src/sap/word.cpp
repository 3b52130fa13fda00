#include "lastloop/sap/word.hpp"

#include <algorithm>
#include <set>

#include "lastloop/errors.hpp"

namespace lastloop::sap {

char to_char(Step s) {
  switch (s) {
    case Step::D: return 'D';
    case Step::L: return 'L';
    case Step::R: return 'R';
    case Step::U: return 'U';
  }
  return '?';
}

Word Word::parse(std::string_view text) {
  Word w;
  w.steps_.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case 'D': w.steps_.push_back(Step::D); break;
      case 'L': w.steps_.push_back(Step::L); break;
      case 'R': w.steps_.push_back(Step::R); break;
      case 'U': w.steps_.push_back(Step::U); break;
      default:
        throw InvalidInput("invalid step '" + std::string(1, c) + "' in word \"" + std::string(text) +
                           "\"; alphabet is {D, L, R, U}");
    }
  }
  return w;
}

std::string Word::to_string() const {
  std::string s;
  s.reserve(steps_.size());
  for (Step st : steps_) s.push_back(to_char(st));
  return s;
}

std::vector<Point> word_vertices(const Word& w) {
  std::vector<Point> pts;
  pts.reserve(w.length());
  Point p;
  for (Step s : w.steps()) {
    Point d = delta(s);
    p.x += d.x;
    p.y += d.y;
    pts.push_back(p);
  }
  return pts;
}

bool is_closed_self_avoiding(const Word& w) {
  if (w.length() < 2) return false;
  auto pts = word_vertices(w);
  if (pts.back() != Point{0, 0}) return false;
  std::set<Point> seen(pts.begin(), pts.end());
  return seen.size() == pts.size();
}

bool is_canonical(const Word& w) {
  const std::size_t len = w.length();
  if (len < 2 || len % 2 != 0) return false;
  if (w[0] != Step::R) return false;
  if (len == 2) return w[1] == Step::L;
  if (w[len - 1] != Step::D) return false;
  if (!is_closed_self_avoiding(w)) return false;
  for (const Point& p : word_vertices(w)) {
    if (p.y < 0) return false;
    if (p.y == 0 && p.x < 0) return false;
  }
  return true;
}

}  // namespace lastloop::sap
