#ifndef APL_ARRANGEMENT_HPP
#define APL_ARRANGEMENT_HPP

// Polygonal approaching arrangements with exact rational coordinates.
//
// Pseudo-line i (0-based, label i+1) is the polyline through
// (columns[c], y[i][c]), extended by a ray of slope left_slopes[i] to the left
// of the first column and right_slopes[i] to the right of the last one.
// Ray slopes increase strictly with i, which makes the order at left infinity
// the identity and completes every pair that has not crossed between the
// columns.

#include "apl/rational.hpp"
#include "apl/seqcore.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace apl {

struct PolyArrangement {
  std::vector<Rational> columns;
  std::vector<std::vector<Rational>> y;
  std::vector<Rational> left_slopes;
  std::vector<Rational> right_slopes;
  std::vector<std::string> colors;  // empty, or one tag per line

  int size() const { return static_cast<int>(y.size()); }
  int column_count() const { return static_cast<int>(columns.size()); }
  bool colored() const { return !colors.empty(); }

  friend bool operator==(const PolyArrangement&, const PolyArrangement&) = default;
};

/// Default ray slopes: i - (n-1)/2, strictly increasing and centred on zero.
inline std::vector<Rational> default_ray_slopes(int n) {
  std::vector<Rational> s;
  s.reserve(n);
  for (int i = 0; i < n; ++i) s.push_back(make_rational(2 * i - (n - 1), 2));
  return s;
}

/// Throws unless the arrangement is structurally well formed.
inline void check_structure(const PolyArrangement& arr) {
  const int n = arr.size();
  const int m = arr.column_count();
  if (n < 1) throw Error("arrangement has no lines");
  if (m < 1) throw Error("arrangement has no columns");
  for (int c = 0; c + 1 < m; ++c)
    if (!(arr.columns[c] < arr.columns[c + 1])) throw Error("columns are not strictly increasing");
  for (int i = 0; i < n; ++i)
    if (static_cast<int>(arr.y[i].size()) != m)
      throw Error("line " + std::to_string(i + 1) + " has " + std::to_string(arr.y[i].size()) +
                  " values, expected " + std::to_string(m));
  if (static_cast<int>(arr.left_slopes.size()) != n || static_cast<int>(arr.right_slopes.size()) != n)
    throw Error("ray slope count differs from line count");
  if (!arr.colors.empty() && static_cast<int>(arr.colors.size()) != n)
    throw Error("color count differs from line count");
}

/// Value of line i (0-based) at x.
inline Rational evaluate(const PolyArrangement& arr, int i, const Rational& x) {
  const auto& cols = arr.columns;
  const auto& row = arr.y[i];
  const int m = arr.column_count();
  if (x <= cols.front()) return row.front() + arr.left_slopes[i] * (x - cols.front());
  if (x >= cols.back()) return row.back() + arr.right_slopes[i] * (x - cols.back());
  auto it = std::upper_bound(cols.begin(), cols.end(), x);
  int c = static_cast<int>(it - cols.begin()) - 1;
  if (cols[c] == x) return row[c];
  (void)m;
  Rational t = (x - cols[c]) / (cols[c + 1] - cols[c]);
  return row[c] + t * (row[c + 1] - row[c]);
}

/// Slope of line i on the open interval just right of x.
inline Rational slope_right_of(const PolyArrangement& arr, int i, const Rational& x) {
  const auto& cols = arr.columns;
  if (x >= cols.back()) return arr.right_slopes[i];
  if (x < cols.front()) return arr.left_slopes[i];
  auto it = std::upper_bound(cols.begin(), cols.end(), x);
  int c = static_cast<int>(it - cols.begin()) - 1;
  return (arr.y[i][c + 1] - arr.y[i][c]) / (cols[c + 1] - cols[c]);
}

/// Checks the approaching inequalities between consecutive columns, the ray
/// slope order (strict, or weak when `strict` is false) and, for pairs with
/// equal ray slopes, that the crossing is not lost beyond the columns.
inline ValidationReport validate_approaching(const PolyArrangement& arr, bool strict) {
  check_structure(arr);
  ValidationReport report;
  const int n = arr.size();
  const int m = arr.column_count();
  auto pair_name = [](int i, int j) { return std::to_string(i + 1) + "," + std::to_string(j + 1); };
  for (int i = 0; i + 1 < n; ++i) {
    const bool left_bad = strict ? !(arr.left_slopes[i] < arr.left_slopes[i + 1])
                                 : arr.left_slopes[i] > arr.left_slopes[i + 1];
    const bool right_bad = strict ? !(arr.right_slopes[i] < arr.right_slopes[i + 1])
                                  : arr.right_slopes[i] > arr.right_slopes[i + 1];
    if (left_bad) report.add("left ray slopes of lines " + pair_name(i, i + 1) + " out of order");
    if (right_bad) report.add("right ray slopes of lines " + pair_name(i, i + 1) + " out of order");
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      for (int c = 0; c + 1 < m; ++c) {
        Rational d0 = arr.y[i][c] - arr.y[j][c];
        Rational d1 = arr.y[i][c + 1] - arr.y[j][c + 1];
        if (d0 < d1)
          report.add("difference of lines " + pair_name(i, j) + " increases between columns " + std::to_string(c) +
                     " and " + std::to_string(c + 1));
        else if (strict && d0 == d1)
          report.add("lines " + pair_name(i, j) + " are parallel between columns " + std::to_string(c) + " and " +
                     std::to_string(c + 1));
      }
      if (arr.left_slopes[i] == arr.left_slopes[j] && arr.y[i][0] < arr.y[j][0])
        report.add("difference of lines " + pair_name(i, j) + " is not surjective: no crossing on the left");
      if (arr.right_slopes[i] == arr.right_slopes[j] && arr.y[i][m - 1] > arr.y[j][m - 1])
        report.add("difference of lines " + pair_name(i, j) + " is not surjective: no crossing on the right");
    }
  return report;
}

inline bool is_strictly_approaching(const PolyArrangement& arr) { return validate_approaching(arr, true).ok(); }

/// Lines meeting at a common point. `lines` is sorted and has size >= 2.
struct CrossingEvent {
  std::vector<int> lines;
  Rational x;
  Rational y;
};

/// Crossing point of lines i < j. Throws if the pair never crosses or shares
/// a segment.
inline Point pair_crossing(const PolyArrangement& arr, int i, int j) {
  const auto& cols = arr.columns;
  const int m = arr.column_count();
  auto diff = [&](int c) -> Rational { return arr.y[i][c] - arr.y[j][c]; };
  auto name = [&] { return "lines " + std::to_string(i + 1) + "," + std::to_string(j + 1); };
  Rational x;
  Rational d_first = diff(0);
  Rational d_last = diff(m - 1);
  if (d_first < 0) {
    Rational ds = arr.left_slopes[i] - arr.left_slopes[j];
    if (ds >= 0) throw Error(name() + " never cross on the left ray");
    x = cols.front() - d_first / ds;
  } else if (d_last > 0) {
    Rational ds = arr.right_slopes[i] - arr.right_slopes[j];
    if (ds >= 0) throw Error(name() + " never cross on the right ray");
    x = cols.back() - d_last / ds;
  } else {
    int c = 0;
    while (diff(c) > 0) ++c;  // terminates: d_last <= 0
    Rational dc = diff(c);
    if (dc == 0) {
      bool left_flat = (c == 0) ? !(arr.left_slopes[i] < arr.left_slopes[j]) : false;
      bool right_flat = (c + 1 < m) ? diff(c + 1) == 0 : !(arr.right_slopes[i] < arr.right_slopes[j]);
      if (left_flat || right_flat) throw Error(name() + " share a segment");
      x = cols[c];
    } else {
      // diff(c-1) > 0 > diff(c)
      Rational dp = diff(c - 1);
      x = cols[c - 1] + (cols[c] - cols[c - 1]) * dp / (dp - dc);
    }
  }
  return {x, evaluate(arr, i, x)};
}

/// Every crossing, sorted by (x, y); coincident crossings merged into blocks.
inline std::vector<CrossingEvent> crossings(const PolyArrangement& arr) {
  check_structure(arr);
  const int n = arr.size();
  std::map<Point, std::set<int>> at;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Point p = pair_crossing(arr, i, j);
      auto& s = at[p];
      s.insert(i);
      s.insert(j);
    }
  std::vector<CrossingEvent> events;
  events.reserve(at.size());
  for (auto& [p, s] : at) events.push_back({std::vector<int>(s.begin(), s.end()), p.x, p.y});
  // A block must contain every pair among its lines; otherwise two distinct
  // crossings would coincide, which pseudo-lines cannot do.
  for (const auto& e : events)
    for (std::size_t a = 0; a < e.lines.size(); ++a)
      for (std::size_t b = a + 1; b < e.lines.size(); ++b) {
        Point p = pair_crossing(arr, e.lines[a], e.lines[b]);
        if (p.x != e.x || p.y != e.y) throw Error("lines touch without crossing");
      }
  return events;
}

/// Allowable sequence met by a vertical sweep (one step per distinct x).
inline PermSequence sweep_sequence(const PolyArrangement& arr) {
  auto events = crossings(arr);
  const int n = arr.size();
  PermSequence seq;
  seq.n = n;
  seq.perms.push_back(Permutation::identity(n));
  std::vector<int> order = seq.perms.back().order();
  std::size_t k = 0;
  while (k < events.size()) {
    std::size_t e = k;
    std::vector<int> pos(n + 1);
    for (int p = 0; p < n; ++p) pos[order[p]] = p;
    while (e < events.size() && events[e].x == events[k].x) {
      const auto& ev = events[e];
      int lo = n, hi = -1;
      for (int line : ev.lines) {
        lo = std::min(lo, pos[line + 1]);
        hi = std::max(hi, pos[line + 1]);
      }
      if (hi - lo + 1 != static_cast<int>(ev.lines.size()))
        throw Error("crossing block at x=" + to_string(ev.x) + " is not contiguous in the sweep order");
      std::reverse(order.begin() + lo, order.begin() + hi + 1);
      ++e;
    }
    seq.perms.emplace_back(order);
    k = e;
  }
  return seq;
}

struct TranslateResult {
  PolyArrangement arrangement;
  ValidationReport warnings;
};

/// Vertical translation of line i by delta.
inline TranslateResult translate(const PolyArrangement& arr, int i, const Rational& delta) {
  check_structure(arr);
  if (i < 0 || i >= arr.size()) throw Error("line index out of range");
  TranslateResult out{arr, {}};
  if (!is_strictly_approaching(arr))
    out.warnings.add("input is not strictly approaching; translation may merge curves over an interval");
  for (auto& v : out.arrangement.y[i]) v += delta;
  if (!validate_approaching(out.arrangement, true).ok())
    out.warnings.add("translated arrangement is not strictly approaching");
  return out;
}

namespace detail {

// Smallest positive vertical distance between two lines at any column or crossing x.
inline Rational min_vertical_clearance(const PolyArrangement& arr, const std::vector<CrossingEvent>& events) {
  std::vector<Rational> xs(arr.columns.begin(), arr.columns.end());
  for (const auto& e : events) xs.push_back(e.x);
  std::optional<Rational> best;
  const int n = arr.size();
  for (const auto& x : xs) {
    std::vector<Rational> vals;
    vals.reserve(n);
    for (int i = 0; i < n; ++i) vals.push_back(evaluate(arr, i, x));
    std::sort(vals.begin(), vals.end());
    for (int k = 0; k + 1 < n; ++k) {
      Rational d = vals[k + 1] - vals[k];
      if (d > 0 && (!best || d < *best)) best = d;
    }
  }
  return best ? *best : Rational(1);
}

}  // namespace detail

/// Vertical translations by exact epsilons until the sweep is simple; the
/// resulting sequence refines the input's.
inline PolyArrangement perturb_to_simple(const PolyArrangement& arr) {
  if (!is_strictly_approaching(arr)) throw Error("perturb_to_simple requires a strictly approaching arrangement");
  PolyArrangement cur = arr;
  const int n = arr.size();
  const std::size_t target = static_cast<std::size_t>(binomial2(n)) + 1;
  auto seq = sweep_sequence(cur);
  for (int round = 0; seq.perms.size() < target; ++round) {
    if (round > 4 * binomial2(n) + 8) throw Error("perturb_to_simple did not converge");
    auto events = crossings(cur);
    // First step with a block of >= 3 lines or several blocks at one x.
    int chosen = -1;
    for (std::size_t k = 0; k < events.size() && chosen < 0; ++k) {
      if (events[k].lines.size() >= 3) chosen = events[k].lines.front();
      else if (k + 1 < events.size() && events[k + 1].x == events[k].x) chosen = events[k + 1].lines.front();
    }
    if (chosen < 0) throw Error("perturb_to_simple: no degeneracy found in non-simple sweep");
    Rational eps = detail::min_vertical_clearance(cur, events) / 2;
    bool done = false;
    for (int halving = 0; halving < 256 && !done; ++halving, eps /= 2) {
      PolyArrangement trial = cur;
      for (auto& v : trial.y[chosen]) v += eps;
      PermSequence tseq;
      try {
        tseq = sweep_sequence(trial);
      } catch (const Error&) {
        continue;
      }
      if (tseq.perms.size() > seq.perms.size() && contains_snapshots(tseq, seq)) {
        cur = std::move(trial);
        seq = std::move(tseq);
        done = true;
      }
    }
    if (!done) throw Error("perturb_to_simple: no admissible epsilon found");
  }
  return cur;
}

/// x-isomorphic strictly approaching arrangement for a simple sweep: each slab
/// with parallel segments is redrawn from a helper column slightly to its left.
inline PolyArrangement strictify(const PolyArrangement& arr) {
  auto report = validate_approaching(arr, false);
  if (!report.ok()) throw Error("strictify requires an approaching arrangement:\n" + report.str());
  const auto seq = sweep_sequence(arr);
  if (!is_simple_sequence(seq)) throw Error("strictify requires a simple sweep sequence");
  PolyArrangement cur = arr;
  const int n = arr.size();
  auto first_parallel_slab = [&](const PolyArrangement& a) -> int {
    for (int c = 0; c + 1 < a.column_count(); ++c)
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (a.y[i][c] - a.y[j][c] == a.y[i][c + 1] - a.y[j][c + 1]) return c;
    return -1;
  };
  for (int guard = 0;; ++guard) {
    int c = first_parallel_slab(cur);
    if (c < 0) break;
    if (guard > 4 * arr.column_count() + 8) throw Error("strictify did not converge");
    const Rational v = cur.columns[c];
    Rational gap = (c == 0) ? Rational(1) : (v - cur.columns[c - 1]) / 2;
    bool done = false;
    for (int halving = 0; halving < 256 && !done; ++halving, gap /= 2) {
      PolyArrangement trial = cur;
      Rational vp = v - gap;
      trial.columns[c] = vp;
      for (int i = 0; i < n; ++i) trial.y[i][c] = evaluate(cur, i, vp);
      try {
        if (sweep_sequence(trial) == seq) {
          cur = std::move(trial);
          done = true;
        }
      } catch (const Error&) {
      }
    }
    if (!done) throw Error("strictify: no admissible helper column found");
  }
  return cur;
}

/// Clips the columns to [vminus, vplus] and re-anchors the rays there.
inline PolyArrangement truncate(const PolyArrangement& arr, const Rational& vminus, const Rational& vplus) {
  if (!(vminus < vplus)) throw Error("truncation window is empty");
  for (const auto& e : crossings(arr))
    if (!(vminus < e.x && e.x < vplus))
      throw Error("crossing at x=" + to_string(e.x) + " is not strictly inside the truncation window");
  PolyArrangement out;
  out.left_slopes = arr.left_slopes;
  out.right_slopes = arr.right_slopes;
  out.colors = arr.colors;
  if (vminus > arr.columns.front()) out.columns.push_back(vminus);
  for (const auto& c : arr.columns)
    if (vminus < c && c < vplus) out.columns.push_back(c);
    else if ((c == vminus && vminus <= arr.columns.front()) || (c == vplus && vplus >= arr.columns.back()))
      out.columns.push_back(c);
  if (vplus < arr.columns.back()) out.columns.push_back(vplus);
  if (out.columns.empty()) out.columns.push_back(vminus);
  std::sort(out.columns.begin(), out.columns.end());
  out.columns.erase(std::unique(out.columns.begin(), out.columns.end()), out.columns.end());
  out.y.assign(arr.size(), {});
  for (int i = 0; i < arr.size(); ++i)
    for (const auto& x : out.columns) out.y[i].push_back(evaluate(arr, i, x));
  return out;
}

struct TriangleCell {
  std::array<int, 3> lines;      // sorted
  std::array<Point, 3> vertices;  // crossing of (l0,l1), (l0,l2), (l1,l2)

  friend bool operator==(const TriangleCell& a, const TriangleCell& b) { return a.lines == b.lines; }
  friend bool operator<(const TriangleCell& a, const TriangleCell& b) { return a.lines < b.lines; }
};

/// All triangular cells of a simple arrangement. A triple bounds a cell iff on
/// each of its three lines the two mutual crossings are consecutive.
inline std::vector<TriangleCell> triangle_cells(const PolyArrangement& arr) {
  auto events = crossings(arr);
  for (const auto& e : events)
    if (e.lines.size() > 2) throw Error("triangle_cells requires a simple arrangement");
  const int n = arr.size();
  std::vector<std::vector<std::pair<Rational, int>>> along(n);
  std::vector<std::vector<Point>> point(n, std::vector<Point>(n));
  for (const auto& e : events) {
    int a = e.lines[0], b = e.lines[1];
    along[a].push_back({e.x, b});
    along[b].push_back({e.x, a});
    point[a][b] = point[b][a] = {e.x, e.y};
  }
  // rank[a][b]: position of the crossing with b along line a.
  std::vector<std::vector<int>> rank(n, std::vector<int>(n, -1));
  for (int a = 0; a < n; ++a) {
    std::sort(along[a].begin(), along[a].end());
    for (int k = 0; k < static_cast<int>(along[a].size()); ++k) rank[a][along[a][k].second] = k;
  }
  auto consecutive = [&](int a, int b, int c) { return std::abs(rank[a][b] - rank[a][c]) == 1; };
  std::set<std::array<int, 3>> seen;
  std::vector<TriangleCell> out;
  for (int a = 0; a < n; ++a)
    for (int k = 0; k + 1 < static_cast<int>(along[a].size()); ++k) {
      int b = along[a][k].second, c = along[a][k + 1].second;
      std::array<int, 3> t{a, b, c};
      std::sort(t.begin(), t.end());
      if (seen.count(t)) continue;
      if (consecutive(b, a, c) && consecutive(c, a, b)) {
        seen.insert(t);
        out.push_back({t, {point[t[0]][t[1]], point[t[0]][t[2]], point[t[1]][t[2]]}});
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

/// Arrangement of straight lines y = slope*x + intercept, given in increasing
/// slope order, represented with a single column at x = anchor.
inline PolyArrangement from_lines(const std::vector<std::pair<Rational, Rational>>& lines,
                                  const Rational& anchor = Rational(0)) {
  PolyArrangement arr;
  arr.columns = {anchor};
  for (const auto& [s, b] : lines) {
    arr.y.push_back({s * anchor + b});
    arr.left_slopes.push_back(s);
    arr.right_slopes.push_back(s);
  }
  return arr;
}

/// Same lines as from_lines, with helper columns at every crossing abscissa.
inline PolyArrangement lines_with_crossing_columns(const std::vector<std::pair<Rational, Rational>>& lines) {
  std::set<Rational> xs;
  for (std::size_t a = 0; a < lines.size(); ++a)
    for (std::size_t b = a + 1; b < lines.size(); ++b) {
      Rational ds = lines[a].first - lines[b].first;
      if (ds == 0) throw Error("parallel lines");
      xs.insert((lines[b].second - lines[a].second) / ds);
    }
  if (xs.empty()) xs.insert(Rational(0));
  PolyArrangement arr;
  arr.columns.assign(xs.begin(), xs.end());
  for (const auto& [s, b] : lines) {
    std::vector<Rational> row;
    for (const auto& x : arr.columns) row.push_back(s * x + b);
    arr.y.push_back(std::move(row));
    arr.left_slopes.push_back(s);
    arr.right_slopes.push_back(s);
  }
  return arr;
}

}  // namespace apl

#endif  // APL_ARRANGEMENT_HPP
