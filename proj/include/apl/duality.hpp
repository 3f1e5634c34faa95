#ifndef APL_DUALITY_HPP
#define APL_DUALITY_HPP

// Generalized configurations of points: n points joined pairwise by the
// C(n,2) pseudo-lines of an approaching arrangement. Their allowable
// sequence, the dual approaching arrangement and the way back.

#include "apl/arrangement.hpp"
#include "apl/realize.hpp"
#include "apl/seqcore.hpp"
#include "apl/simplex.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace apl {

/// Line g of `base` joins the points labelled incidence[g].a and
/// incidence[g].b. points[k] carries label k+1; x increases with the label.
struct GenConfig {
  PolyArrangement base;
  std::vector<Point> points;
  std::vector<LabelPair> incidence;

  int size() const { return static_cast<int>(points.size()); }
};

inline ValidationReport validate_config(const GenConfig& cfg) {
  ValidationReport report;
  const int n = cfg.size();
  const int lines = cfg.base.size();
  if (n < 2) {
    report.add("a configuration needs at least two points");
    return report;
  }
  try {
    check_structure(cfg.base);
  } catch (const Error& e) {
    report.add(e.what());
    return report;
  }
  if (lines != binomial2(n))
    report.add("expected " + std::to_string(binomial2(n)) + " lines for " + std::to_string(n) + " points, found " +
               std::to_string(lines));
  if (static_cast<int>(cfg.incidence.size()) != lines) {
    report.add("incidence lists " + std::to_string(cfg.incidence.size()) + " pairs for " + std::to_string(lines) +
               " lines");
    return report;
  }
  for (int k = 0; k + 1 < n; ++k)
    if (!(cfg.points[k].x < cfg.points[k + 1].x))
      report.add("points " + std::to_string(k + 1) + "," + std::to_string(k + 2) +
                 " do not have strictly increasing x");
  std::map<std::pair<int, int>, int> used;
  for (int g = 0; g < lines; ++g) {
    const auto& pr = cfg.incidence[g];
    if (pr.a < 1 || pr.b > n || pr.a >= pr.b) {
      report.add("line " + std::to_string(g + 1) + " has an invalid point pair");
      continue;
    }
    if (used.count({pr.a, pr.b}))
      report.add("pair {" + std::to_string(pr.a) + "," + std::to_string(pr.b) + "} is assigned to lines " +
                 std::to_string(used[{pr.a, pr.b}] + 1) + " and " + std::to_string(g + 1));
    used[{pr.a, pr.b}] = g;
    for (int k = 1; k <= n; ++k) {
      const Point& p = cfg.points[k - 1];
      bool on = evaluate(cfg.base, g, p.x) == p.y;
      bool assigned = k == pr.a || k == pr.b;
      if (assigned && !on)
        report.add("line " + std::to_string(g + 1) + " misses its point " + std::to_string(k));
      else if (!assigned && on)
        report.add("line " + std::to_string(g + 1) + " passes through foreign point " + std::to_string(k));
    }
  }
  auto approaching = validate_approaching(cfg.base, false);
  report.merge(approaching);
  if (!report.ok()) return report;
  std::vector<CrossingEvent> events;
  try {
    events = crossings(cfg.base);
  } catch (const Error& e) {
    report.add(e.what());
    return report;
  }
  for (const auto& e : events) {
    if (e.lines.size() <= 2) continue;
    bool at_point = false;
    for (const auto& p : cfg.points) at_point = at_point || (p.x == e.x && p.y == e.y);
    if (!at_point)
      report.add(std::to_string(e.lines.size()) + " lines meet at (" + to_string(e.x) + ", " + to_string(e.y) +
                 "), which is not a configuration point");
  }
  return report;
}

/// Sequence of the point labels: starting from the identity, passing the
/// lines in their top-to-bottom order at left infinity swaps their pairs.
inline PermSequence config_sequence(const GenConfig& cfg) {
  auto report = validate_config(cfg);
  if (!report.ok()) throw Error("invalid configuration:\n" + report.str());
  auto seq = sequence_from_word(cfg.size(), cfg.incidence);
  auto check = validate_allowable(seq);
  if (!check.ok()) throw Error("configuration sequence is not allowable:\n" + check.str());
  return seq;
}

/// Configuration of straight lines through the given points (sorted by x
/// internally, so labels follow x). Throws on collinear triples or parallel
/// connecting lines.
inline GenConfig straight_config(std::vector<Point> points) {
  std::sort(points.begin(), points.end());
  const int n = static_cast<int>(points.size());
  struct Joined {
    Rational slope, intercept;
    LabelPair pair;
  };
  std::vector<Joined> lines;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      if (points[a].x == points[b].x) throw Error("two points share an x-coordinate");
      Rational s = (points[b].y - points[a].y) / (points[b].x - points[a].x);
      lines.push_back({s, points[a].y - s * points[a].x, {a + 1, b + 1}});
    }
  std::sort(lines.begin(), lines.end(), [](const Joined& u, const Joined& v) { return u.slope < v.slope; });
  for (std::size_t k = 0; k + 1 < lines.size(); ++k)
    if (lines[k].slope == lines[k + 1].slope) throw Error("two connecting lines are parallel");
  GenConfig cfg;
  cfg.points = points;
  std::vector<std::pair<Rational, Rational>> raw;
  for (const auto& l : lines) {
    raw.emplace_back(l.slope, l.intercept);
    cfg.incidence.push_back(l.pair);
  }
  cfg.base = from_lines(raw);
  auto report = validate_config(cfg);
  if (!report.ok()) throw Error("points are not in general position:\n" + report.str());
  return cfg;
}

/// Corrected: line k at column g is the height of line g above point k.
/// Verbatim: the height of line g itself at x_k (diagnostic only).
enum class DualFormula { Corrected, Verbatim };

struct DualResult {
  PolyArrangement arrangement;
  bool direct = true;    // false when the LP fallback produced the arrangement
  bool matches = false;  // sweep sequence equals the configuration sequence
  std::string diagnostic;
};

/// Dual approaching arrangement of a configuration: one column per line of
/// the configuration. With the corrected formula the result is checked
/// against the configuration sequence and replaced by an LP realization if
/// the check fails.
inline DualResult dualize(const GenConfig& cfg, DualFormula formula = DualFormula::Corrected) {
  const auto seq = config_sequence(cfg);
  const int n = cfg.size();
  const int lines = cfg.base.size();
  DualResult res;
  auto& arr = res.arrangement;
  for (int g = 0; g < lines; ++g) arr.columns.push_back(Rational(g + 1));
  arr.y.assign(n, std::vector<Rational>(lines));
  for (int k = 0; k < n; ++k)
    for (int g = 0; g < lines; ++g) {
      Rational v = evaluate(cfg.base, g, cfg.points[k].x);
      arr.y[k][g] = formula == DualFormula::Corrected ? v - cfg.points[k].y : v;
    }
  arr.left_slopes = default_ray_slopes(n);
  arr.right_slopes = arr.left_slopes;
  try {
    auto report = validate_approaching(arr, false);
    if (!report.ok()) res.diagnostic = "direct dual is not approaching:\n" + report.str();
    else if (sweep_sequence(arr) != seq) res.diagnostic = "direct dual sweeps a different sequence";
    else res.matches = true;
  } catch (const Error& e) {
    res.diagnostic = std::string("direct dual is degenerate: ") + e.what();
  }
  if (res.matches || formula == DualFormula::Verbatim) return res;
  auto d = decide_allowable(seq);
  if (!d.realizable) throw Error("configuration sequence is not realizable; this contradicts the dualization lemma");
  res.arrangement = *d.arrangement;
  res.direct = false;
  res.matches = true;
  return res;
}

struct PrimalStats {
  int attempts = 0;
  bool strict = false;  // every pair approaches with a positive margin
};

namespace detail {

inline std::optional<GenConfig> primal_attempt(const PermSequence& seq, int attempt, bool strict) {
  const int n = seq.n;
  const auto word = crossing_word(seq);
  const int lines = static_cast<int>(word.size());
  const int cols = n + 2;  // x = 0, 1, ..., n+1; point k sits at x = k
  lp::LinearConstraintSystem sys;
  sys.variable_count = n + lines * cols;
  auto Y = [&](int label) { return label - 1; };
  auto L = [&](int g, int c) { return n + g * cols + c; };
  auto sep = [&](int salt) -> Rational {
    if (attempt == 0) return Rational(1);
    return 1 + make_rational((salt * 7919 + attempt * 104729) % 89, 97);
  };
  for (int g = 0; g < lines; ++g) {
    sys.add({{L(g, word[g].a), 1}, {Y(word[g].a), -1}}, lp::Relation::Equal, 0, lp::Origin::Incidence);
    sys.add({{L(g, word[g].b), 1}, {Y(word[g].b), -1}}, lp::Relation::Equal, 0, lp::Origin::Incidence);
  }
  for (int g = 0; g + 1 < lines; ++g)
    sys.add({{L(g, 0), 1}, {L(g + 1, 0), -1}}, lp::Relation::GreaterEqual, 1, lp::Origin::Ordering);
  for (int g = 0; g < lines; ++g)
    for (int h = g + 1; h < lines; ++h)
      for (int c = 0; c + 1 < cols; ++c)
        sys.add({{L(g, c), 1}, {L(h, c), -1}, {L(g, c + 1), -1}, {L(h, c + 1), 1}}, lp::Relation::GreaterEqual,
                strict ? sep(g * 131 + h * 17 + c) : Rational(0), lp::Origin::Approaching);
  // Points off a line lie on the side the sequence dictates: when line g
  // swaps its pair, the labels after the pair are above it.
  std::vector<int> order = Permutation::identity(n).order();
  for (int g = 0; g < lines; ++g) {
    auto pa = std::find(order.begin(), order.end(), word[g].a) - order.begin();
    auto pb = std::find(order.begin(), order.end(), word[g].b) - order.begin();
    auto hi = std::max(pa, pb);
    for (int p = 0; p < n; ++p) {
      int k = order[p];
      if (k == word[g].a || k == word[g].b) continue;
      Rational s = sep(g * 53 + k);
      if (p > hi) sys.add({{Y(k), 1}, {L(g, k), -1}}, lp::Relation::GreaterEqual, s, lp::Origin::Other);
      else sys.add({{L(g, k), 1}, {Y(k), -1}}, lp::Relation::GreaterEqual, s, lp::Origin::Other);
    }
    std::swap(order[pa], order[pb]);
  }
  // Lines through a common point cross there and nowhere near it.
  for (int g = 0; g < lines; ++g)
    for (int h = g + 1; h < lines; ++h)
      for (int k : {word[g].a, word[g].b})
        if (k == word[h].a || k == word[h].b) {
          sys.add({{L(g, k - 1), 1}, {L(h, k - 1), -1}}, lp::Relation::GreaterEqual, 1, lp::Origin::Ordering);
          sys.add({{L(h, k + 1), 1}, {L(g, k + 1), -1}}, lp::Relation::GreaterEqual, 1, lp::Origin::Ordering);
        }
  sys.add({{Y(1), 1}}, lp::Relation::Equal, 0, lp::Origin::Anchoring);

  auto outcome = lp::solve_feasibility(sys);
  auto* w = std::get_if<lp::FeasWitness>(&outcome);
  if (!w) return std::nullopt;
  GenConfig cfg;
  for (int k = 1; k <= n; ++k) cfg.points.push_back({Rational(k), w->values[Y(k)]});
  cfg.incidence = word;
  for (int c = 0; c < cols; ++c) cfg.base.columns.push_back(Rational(c));
  cfg.base.y.assign(lines, std::vector<Rational>(cols));
  for (int g = 0; g < lines; ++g)
    for (int c = 0; c < cols; ++c) cfg.base.y[g][c] = w->values[L(g, c)];
  cfg.base.left_slopes = default_ray_slopes(lines);
  cfg.base.right_slopes = cfg.base.left_slopes;
  return cfg;
}

}  // namespace detail

/// Configuration whose sequence is the given simple allowable sequence, found
/// by a linear program over point heights and line values at x = 0..n+1.
inline GenConfig primalize_sequence(const PermSequence& seq, PrimalStats* stats = nullptr) {
  if (!is_simple_sequence(seq)) throw Error("primalize requires a simple allowable sequence");
  std::string last;
  int attempts = 0;
  for (bool strict : {true, false})
    for (int attempt = 0; attempt < 6; ++attempt) {
      ++attempts;
      auto cfg = detail::primal_attempt(seq, attempt, strict);
      if (!cfg) {
        last = strict ? "strict system infeasible" : "system infeasible";
        break;  // separations do not change feasibility
      }
      auto report = validate_config(*cfg);
      if (!report.ok()) {
        last = report.str();
        continue;
      }
      if (config_sequence(*cfg) != seq) {
        last = "configuration sequence differs from the input";
        continue;
      }
      if (stats) *stats = {attempts, strict};
      return *cfg;
    }
  throw Error("primalize failed: " + last);
}

inline GenConfig primalize(const PolyArrangement& arr, PrimalStats* stats = nullptr) {
  if (!is_strictly_approaching(arr)) throw Error("primalize requires a strictly approaching arrangement");
  return primalize_sequence(sweep_sequence(arr), stats);
}

}  // namespace apl

#endif  // APL_DUALITY_HPP
