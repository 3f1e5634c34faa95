#ifndef APL_TEST_SUPPORT_HPP
#define APL_TEST_SUPPORT_HPP

#include "apl/arrangement.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <utility>
#include <vector>

namespace testing_support {

using apl::Rational;

// n straight lines with distinct small integer slopes (sorted) and random
// intercepts, generic with high probability.
inline std::vector<std::pair<Rational, Rational>> random_line_list(int n, std::mt19937& rng, int range = 40) {
  std::uniform_int_distribution<int> d(-range, range);
  std::set<int> slopes;
  while (static_cast<int>(slopes.size()) < n) slopes.insert(d(rng));
  std::vector<std::pair<Rational, Rational>> lines;
  for (int s : slopes) lines.emplace_back(Rational(s), apl::make_rational(d(rng), 1 + static_cast<int>(rng() % 5)));
  return lines;
}

inline bool generic(const std::vector<std::pair<Rational, Rational>>& lines) {
  std::set<apl::Point> pts;
  std::size_t count = 0;
  for (std::size_t a = 0; a < lines.size(); ++a)
    for (std::size_t b = a + 1; b < lines.size(); ++b) {
      Rational x = (lines[b].second - lines[a].second) / (lines[a].first - lines[b].first);
      pts.insert({x, lines[a].first * x + lines[a].second});
      ++count;
    }
  std::set<Rational> xs;
  for (const auto& p : pts) xs.insert(p.x);
  return pts.size() == count && xs.size() == count;
}

inline std::vector<std::pair<Rational, Rational>> random_generic_lines(int n, std::mt19937& rng) {
  for (;;) {
    auto l = random_line_list(n, rng);
    if (generic(l)) return l;
  }
}

// Polygonal arrangement: on every slab the segment slopes strictly increase
// with the line index, so all differences strictly decrease.
inline apl::PolyArrangement random_polygonal(int n, int m, std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-6, 6);
  apl::PolyArrangement arr;
  for (int c = 0; c < m; ++c) arr.columns.push_back(Rational(2 * c));
  arr.y.assign(n, std::vector<Rational>(m));
  for (int i = 0; i < n; ++i) arr.y[i][0] = Rational(d(rng) * n);
  auto increasing = [&] {
    std::set<int> s;
    while (static_cast<int>(s.size()) < n) s.insert(d(rng) * 3 + static_cast<int>(rng() % 3));
    return std::vector<int>(s.begin(), s.end());
  };
  for (int c = 0; c + 1 < m; ++c) {
    auto s = increasing();
    for (int i = 0; i < n; ++i) arr.y[i][c + 1] = arr.y[i][c] + Rational(s[i]) * 2;
  }
  auto l = increasing(), r = increasing();
  for (int i = 0; i < n; ++i) {
    arr.left_slopes.push_back(Rational(l[i]));
    arr.right_slopes.push_back(Rational(r[i]));
  }
  return arr;
}

}  // namespace testing_support

#endif
