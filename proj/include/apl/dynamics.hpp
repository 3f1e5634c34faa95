#ifndef APL_DYNAMICS_HPP
#define APL_DYNAMICS_HPP

// Moving pseudo-lines: vertical translation of one color class, triangle
// flips on simple sequences and the graph they span.

#include "apl/arrangement.hpp"
#include "apl/realize.hpp"
#include "apl/seqcore.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

namespace apl {

enum class Direction { Up, Down };

inline const char* direction_name(Direction d) { return d == Direction::Up ? "up" : "down"; }

struct TranslationEvent {
  enum class Kind { MovingLineOverFixedCrossing, MovingCrossingOverFixedLine };
  Kind kind;
  std::array<int, 3> lines;  // sorted 0-based indices
  Rational t;
  Point location;            // where the three lines meet at time t
};

/// Lines of the moving class (tag sorting last, so "R" of R/B) and the rest.
struct ColorSplit {
  std::vector<int> moving;
  std::vector<int> fixed;
  std::string moving_tag;
};

inline ColorSplit split_colors(const PolyArrangement& arr) {
  if (!arr.colored()) throw Error("arrangement has no colors");
  std::set<std::string> tags(arr.colors.begin(), arr.colors.end());
  if (tags.size() != 2) throw Error("expected exactly two color classes, found " + std::to_string(tags.size()));
  ColorSplit s;
  s.moving_tag = *tags.rbegin();
  for (int i = 0; i < arr.size(); ++i) (arr.colors[i] == s.moving_tag ? s.moving : s.fixed).push_back(i);
  return s;
}

/// Times t > 0 at which translating the moving class by +t (Up) or -t (Down)
/// makes three lines concurrent, sorted by t.
inline std::vector<TranslationEvent> translation_events(const PolyArrangement& arr, Direction dir) {
  if (!is_strictly_approaching(arr)) throw Error("translation_events requires a strictly approaching arrangement");
  const auto split = split_colors(arr);
  const int sign = dir == Direction::Up ? 1 : -1;
  std::vector<TranslationEvent> events;
  auto sorted = [](int a, int b, int c) {
    std::array<int, 3> t{a, b, c};
    std::sort(t.begin(), t.end());
    return t;
  };
  const auto& F = split.fixed;
  const auto& M = split.moving;
  for (std::size_t a = 0; a < F.size(); ++a)
    for (std::size_t b = a + 1; b < F.size(); ++b) {
      Point c = pair_crossing(arr, F[a], F[b]);
      for (int r : M) {
        Rational t = sign * (c.y - evaluate(arr, r, c.x));
        if (t > 0)
          events.push_back({TranslationEvent::Kind::MovingLineOverFixedCrossing, sorted(F[a], F[b], r), t, c});
      }
    }
  for (std::size_t a = 0; a < M.size(); ++a)
    for (std::size_t b = a + 1; b < M.size(); ++b) {
      Point c = pair_crossing(arr, M[a], M[b]);
      for (int f : F) {
        Rational y = evaluate(arr, f, c.x);
        Rational t = sign * (y - c.y);
        if (t > 0)
          events.push_back(
              {TranslationEvent::Kind::MovingCrossingOverFixedLine, sorted(M[a], M[b], f), t, {c.x, y}});
      }
    }
  std::stable_sort(events.begin(), events.end(),
                   [](const TranslationEvent& u, const TranslationEvent& v) { return u.t < v.t; });
  return events;
}

struct BichromaticResult {
  TriangleCell cell;
  TranslationEvent event;
  Direction direction = Direction::Up;
  bool perturbed = false;  // found after separating tied first events
};

namespace detail {

inline std::optional<BichromaticResult> first_verified_event(const PolyArrangement& moved_from,
                                                             const std::set<std::array<int, 3>>& cells,
                                                             bool& tie_blocked) {
  std::optional<BichromaticResult> best;
  tie_blocked = false;
  for (Direction dir : {Direction::Up, Direction::Down}) {
    auto events = translation_events(moved_from, dir);
    if (events.empty()) continue;
    const Rational& t0 = events.front().t;
    bool found = false;
    bool tied = events.size() > 1 && events[1].t == t0;
    for (const auto& e : events) {
      if (e.t != t0) break;
      if (!cells.count(e.lines)) continue;
      if (!best || e.t < best->event.t) {
        best = BichromaticResult{};
        best->event = e;
        best->direction = dir;
      }
      found = true;
      break;
    }
    if (!found) {
      if (!tied) throw Error("first translation event does not bound a triangular cell");
      tie_blocked = true;
    }
  }
  return best;
}

}  // namespace detail

/// A triangular cell bounded by lines of both colors. The moving class is
/// translated up and down; the first event in either direction names the
/// three lines.
inline BichromaticResult bichromatic_triangle(const PolyArrangement& arr) {
  if (!is_strictly_approaching(arr)) throw Error("bichromatic_triangle requires a strictly approaching arrangement");
  const auto split = split_colors(arr);
  auto events = crossings(arr);
  if (events.size() == 1) throw Error("arrangement is a pencil; it has no triangular cell");
  auto cells = triangle_cells(arr);
  std::set<std::array<int, 3>> cell_set;
  std::map<std::array<int, 3>, TriangleCell> by_lines;
  for (const auto& c : cells) {
    cell_set.insert(c.lines);
    by_lines[c.lines] = c;
  }
  bool tie_blocked = false;
  auto found = detail::first_verified_event(arr, cell_set, tie_blocked);
  bool perturbed = false;
  if (!found) {
    // Separate tied events: shift every moving line by its own small amount,
    // well below any clearance, so the cell structure does not change.
    Rational eps = detail::min_vertical_clearance(arr, events) / 4;
    std::set<Rational> ts;
    for (Direction dir : {Direction::Up, Direction::Down})
      for (const auto& e : translation_events(arr, dir)) ts.insert(e.t);
    std::vector<Rational> tv(ts.begin(), ts.end());
    for (std::size_t k = 0; k + 1 < tv.size(); ++k) eps = std::min<Rational>(eps, (tv[k + 1] - tv[k]) / 4);
    if (!tv.empty()) eps = std::min<Rational>(eps, tv.front() / 4);
    const int moving = static_cast<int>(split.moving.size());
    for (int round = 0; round < 64 && !found; ++round, eps /= 3) {
      PolyArrangement shifted = arr;
      for (int k = 0; k < moving; ++k)
        for (auto& v : shifted.y[split.moving[k]]) v += eps * (k + 1) / (moving + 1);
      if (sweep_sequence(shifted) != sweep_sequence(arr)) continue;
      found = detail::first_verified_event(shifted, cell_set, tie_blocked);
    }
    perturbed = true;
  }
  if (!found) throw Error("no bichromatic triangle found; this contradicts the translation argument");
  found->cell = by_lines.at(found->event.lines);
  found->perturbed = perturbed;
  const auto& l = found->cell.lines;
  bool mixed = arr.colors[l[0]] != arr.colors[l[1]] || arr.colors[l[1]] != arr.colors[l[2]];
  if (!mixed) throw Error("first event is monochromatic");
  return *found;
}

// ---------------------------------------------------------------------------
// Triangle flips on simple sequences, modulo commutations.

using CrossingWord = std::vector<LabelPair>;

/// Lexicographically smallest word in the commutation class: crossings that
/// share a label keep their order, the rest may pass each other.
inline CrossingWord canonical_word(const CrossingWord& word) {
  const std::size_t m = word.size();
  std::vector<std::vector<std::size_t>> succ(m);
  std::vector<int> indeg(m, 0);
  std::map<int, std::size_t> last;
  for (std::size_t k = 0; k < m; ++k)
    for (int label : {word[k].a, word[k].b}) {
      auto it = last.find(label);
      if (it != last.end()) {
        succ[it->second].push_back(k);
        ++indeg[k];
      }
      last[label] = k;
    }
  auto cmp = [&](std::size_t u, std::size_t v) { return word[v] < word[u]; };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(cmp)> ready(cmp);
  for (std::size_t k = 0; k < m; ++k)
    if (indeg[k] == 0) ready.push(k);
  CrossingWord out;
  out.reserve(m);
  while (!ready.empty()) {
    std::size_t k = ready.top();
    ready.pop();
    out.push_back(word[k]);
    for (std::size_t s : succ[k])
      if (--indeg[s] == 0) ready.push(s);
  }
  return out;
}

inline CrossingWord canonical_word(const PermSequence& seq) { return canonical_word(crossing_word(seq)); }

struct FlipMove {
  std::array<int, 3> labels;  // a < b < c
  int position = 0;           // index of the triangle's first crossing in the flipped-from word
};

namespace detail {

// Word with the three crossings of T made consecutive, or nullopt if another
// crossing is forced between them.
inline std::optional<std::pair<CrossingWord, int>> gather_triangle(const CrossingWord& word,
                                                                   const std::array<int, 3>& t) {
  auto in_t = [&](const LabelPair& p) {
    int k = (p.a == t[0] || p.a == t[1] || p.a == t[2]) + (p.b == t[0] || p.b == t[1] || p.b == t[2]);
    return k == 2;
  };
  const std::size_t m = word.size();
  std::vector<std::size_t> tri;
  for (std::size_t k = 0; k < m; ++k)
    if (in_t(word[k])) tri.push_back(k);
  if (tri.size() != 3) return std::nullopt;
  // below[k]: crossing k precedes the last triangle crossing in the heap order.
  std::vector<char> below(m, 0);
  below[tri[2]] = 1;
  for (std::size_t k = tri[2]; k-- > 0;) {
    if (below[k]) continue;
    for (std::size_t s = k + 1; s <= tri[2] && !below[k]; ++s)
      if (below[s] && (word[k].a == word[s].a || word[k].a == word[s].b || word[k].b == word[s].a ||
                       word[k].b == word[s].b))
        below[k] = 1;
  }
  // above-first[k]: crossing k follows the first triangle crossing.
  std::vector<char> after_first(m, 0);
  after_first[tri[0]] = 1;
  for (std::size_t k = tri[0] + 1; k < m; ++k)
    for (std::size_t s = tri[0]; s < k && !after_first[k]; ++s)
      if (after_first[s] && (word[k].a == word[s].a || word[k].a == word[s].b || word[k].b == word[s].a ||
                             word[k].b == word[s].b))
        after_first[k] = 1;
  CrossingWord head, rest;
  for (std::size_t k = 0; k < m; ++k) {
    if (in_t(word[k])) continue;
    if (below[k] && after_first[k]) return std::nullopt;
    (below[k] ? head : rest).push_back(word[k]);
  }
  CrossingWord out = head;
  int pos = static_cast<int>(out.size());
  for (std::size_t k : tri) out.push_back(word[k]);
  out.insert(out.end(), rest.begin(), rest.end());
  return std::make_pair(out, pos);
}

}  // namespace detail

/// Triangles of a simple sequence that can be flipped.
inline std::vector<FlipMove> enumerate_flips(const PermSequence& seq) {
  if (!is_simple_sequence(seq)) throw Error("enumerate_flips requires a simple allowable sequence");
  auto word = crossing_word(seq);
  std::vector<FlipMove> out;
  const int n = seq.n;
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      for (int c = b + 1; c <= n; ++c) {
        std::array<int, 3> t{a, b, c};
        auto g = detail::gather_triangle(word, t);
        if (g) out.push_back({t, g->second});
      }
  return out;
}

/// Sequence after flipping the triangle over its three labels.
inline PermSequence apply_flip(const PermSequence& seq, const FlipMove& move) {
  auto g = detail::gather_triangle(crossing_word(seq), move.labels);
  if (!g) throw Error("labels do not form a flippable triangle");
  auto& [word, pos] = *g;
  std::reverse(word.begin() + pos, word.begin() + pos + 3);
  auto out = sequence_from_word(seq.n, word);
  auto report = validate_allowable(out);
  if (!report.ok()) throw Error("flip produced an invalid sequence:\n" + report.str());
  return out;
}

/// Calls visit(word) for every reduced word of the reversal on n labels.
template <class Visit>
void for_each_simple_word(int n, Visit&& visit) {
  std::vector<int> o(n);
  for (int i = 0; i < n; ++i) o[i] = i + 1;
  CrossingWord word;
  const std::size_t total = static_cast<std::size_t>(binomial2(n));
  auto rec = [&](auto&& self) -> void {
    if (word.size() == total) {
      visit(static_cast<const CrossingWord&>(word));
      return;
    }
    for (int p = 0; p + 1 < n; ++p)
      if (o[p] < o[p + 1]) {
        std::swap(o[p], o[p + 1]);
        word.push_back({o[p + 1], o[p]});
        self(self);
        word.pop_back();
        std::swap(o[p], o[p + 1]);
      }
  };
  rec(rec);
}

inline std::set<CrossingWord> commutation_classes(int n, std::size_t* word_count = nullptr) {
  std::set<CrossingWord> classes;
  std::size_t words = 0;
  for_each_simple_word(n, [&](const CrossingWord& w) {
    ++words;
    classes.insert(canonical_word(w));
  });
  if (word_count) *word_count = words;
  return classes;
}

enum class FlipFilter { All, Approaching };

struct FlipGraph {
  int n = 0;
  std::vector<CrossingWord> nodes;                  // canonical words
  std::vector<bool> feasible;                       // realizable by approaching pseudo-lines
  std::vector<std::pair<int, int>> edges;           // node indices, first < second
  std::vector<std::array<int, 3>> edge_labels;      // triangle flipped along each edge
  std::size_t total_classes = 0;                    // independent enumeration
  std::size_t reduced_words = 0;
  std::size_t excluded = 0;                         // classes rejected by the filter
  bool connected = false;
};

/// Flip graph on commutation classes of simple sequences on n labels. With
/// the approaching filter only LP-realizable classes are kept.
inline FlipGraph flip_graph(int n, FlipFilter filter = FlipFilter::All) {
  if (n < 2 || n > 7) throw Error("flip_graph supports 2 <= n <= 7");
  FlipGraph g;
  g.n = n;
  auto classes = commutation_classes(n, &g.reduced_words);
  g.total_classes = classes.size();
  std::map<CrossingWord, int> index;
  for (const auto& w : classes) {
    bool ok = true;
    if (filter == FlipFilter::Approaching) {
      ok = allowable_feasible(sequence_from_word(n, w), EncodingMode::Reduced);
    }
    if (!ok) {
      ++g.excluded;
      continue;
    }
    index[w] = static_cast<int>(g.nodes.size());
    g.nodes.push_back(w);
    g.feasible.push_back(ok);
  }
  std::set<std::pair<int, int>> seen;
  for (std::size_t u = 0; u < g.nodes.size(); ++u) {
    auto seq = sequence_from_word(n, g.nodes[u]);
    for (const auto& mv : enumerate_flips(seq)) {
      auto w = canonical_word(apply_flip(seq, mv));
      auto it = index.find(w);
      if (it == index.end()) continue;
      int v = it->second;
      std::pair<int, int> e{std::min<int>(static_cast<int>(u), v), std::max<int>(static_cast<int>(u), v)};
      if (e.first == e.second || !seen.insert(e).second) continue;
      g.edges.push_back(e);
      g.edge_labels.push_back(mv.labels);
    }
  }
  // Connectivity by BFS over the kept nodes.
  std::vector<std::vector<int>> adj(g.nodes.size());
  for (const auto& [a, b] : g.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<char> reached(g.nodes.size(), 0);
  std::queue<int> bfs;
  if (!g.nodes.empty()) {
    bfs.push(0);
    reached[0] = 1;
  }
  std::size_t count = g.nodes.empty() ? 0 : 1;
  while (!bfs.empty()) {
    int u = bfs.front();
    bfs.pop();
    for (int v : adj[u])
      if (!reached[v]) {
        reached[v] = 1;
        ++count;
        bfs.push(v);
      }
  }
  g.connected = count == g.nodes.size();
  return g;
}

}  // namespace apl

#endif  // APL_DYNAMICS_HPP
