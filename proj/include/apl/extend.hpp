#ifndef APL_EXTEND_HPP
#define APL_EXTEND_HPP

// Adding pseudo-lines to an approaching arrangement without losing the
// approaching property.

#include "apl/arrangement.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace apl {

enum class Side { Top, Bottom };

namespace detail {

inline PolyArrangement insert_line(const PolyArrangement& arr, int at, std::vector<Rational> row, Rational left,
                                   Rational right, const std::string& color) {
  PolyArrangement out = arr;
  out.y.insert(out.y.begin() + at, std::move(row));
  out.left_slopes.insert(out.left_slopes.begin() + at, std::move(left));
  out.right_slopes.insert(out.right_slopes.begin() + at, std::move(right));
  if (out.colored()) out.colors.insert(out.colors.begin() + at, color);
  return out;
}

inline void require_approaching(const PolyArrangement& arr, const char* what) {
  auto report = validate_approaching(arr, false);
  if (!report.ok()) throw Error(std::string(what) + " requires an approaching arrangement:\n" + report.str());
}

// Same curves with x added to the columns.
inline PolyArrangement with_column(const PolyArrangement& arr, const Rational& x) {
  if (std::binary_search(arr.columns.begin(), arr.columns.end(), x)) return arr;
  PolyArrangement out = arr;
  auto pos = std::upper_bound(out.columns.begin(), out.columns.end(), x) - out.columns.begin();
  out.columns.insert(out.columns.begin() + pos, x);
  for (int i = 0; i < arr.size(); ++i) out.y[i].insert(out.y[i].begin() + pos, evaluate(arr, i, x));
  return out;
}

}  // namespace detail

/// Inserts lambda*l_i + (1-lambda)*l_{i+1} between lines i and i+1 (0-based),
/// columnwise and on the rays. The new line gets index i+1.
inline PolyArrangement convex_combination(const PolyArrangement& arr, int i, const Rational& lambda,
                                          const std::string& color = "new") {
  detail::require_approaching(arr, "convex_combination");
  if (i < 0 || i + 1 >= arr.size()) throw Error("convex_combination needs two adjacent lines i, i+1");
  if (lambda < 0 || lambda > 1) throw Error("convex_combination: lambda outside [0,1]");
  const Rational mu = 1 - lambda;
  std::vector<Rational> row;
  for (int c = 0; c < arr.column_count(); ++c) row.push_back(lambda * arr.y[i][c] + mu * arr.y[i + 1][c]);
  return detail::insert_line(arr, i + 1, std::move(row), lambda * arr.left_slopes[i] + mu * arr.left_slopes[i + 1],
                             lambda * arr.right_slopes[i] + mu * arr.right_slopes[i + 1], color);
}

/// Bottom: appends l_n + delta*(l_n - l_{n-1}). Top: prepends
/// l_1 + delta*(l_1 - l_2), which becomes line 1.
inline PolyArrangement extend_extreme(const PolyArrangement& arr, const Rational& delta, Side side,
                                      const std::string& color = "new") {
  detail::require_approaching(arr, "extend_extreme");
  if (arr.size() < 2) throw Error("extend_extreme needs at least two lines");
  if (delta <= 0) throw Error("extend_extreme: delta must be positive");
  const int n = arr.size();
  const int a = side == Side::Bottom ? n - 1 : 0;
  const int b = side == Side::Bottom ? n - 2 : 1;
  auto combine = [&](const Rational& u, const Rational& v) -> Rational { return u + delta * (u - v); };
  std::vector<Rational> row;
  for (int c = 0; c < arr.column_count(); ++c) row.push_back(combine(arr.y[a][c], arr.y[b][c]));
  return detail::insert_line(arr, side == Side::Bottom ? n : 0, std::move(row),
                             combine(arr.left_slopes[a], arr.left_slopes[b]),
                             combine(arr.right_slopes[a], arr.right_slopes[b]), color);
}

struct LeviResult {
  PolyArrangement arrangement;
  int new_line = -1;   // 0-based index of the added line
  bool copy = false;   // the added line is a vertical translate of an old one
  int parallel_to = -1;  // that old line's index in the output, when copy is set
};

/// Adds a pseudo-line through p and q. Every line is translated to pass
/// through p, the new line is chosen inside that pencil so that it meets q,
/// and the old lines are moved back.
inline LeviResult levi_extension(const PolyArrangement& arr, Point p, Point q, const std::string& color = "new") {
  if (!is_strictly_approaching(arr)) throw Error("levi_extension requires a strictly approaching arrangement");
  if (p.x == q.x) throw Error("levi_extension: p and q have the same x-coordinate");
  if (q.x < p.x) std::swap(p, q);
  const int n = arr.size();

  PolyArrangement pencil = detail::with_column(detail::with_column(arr, p.x), q.x);
  std::vector<Rational> shift(n);
  for (int i = 0; i < n; ++i) {
    shift[i] = p.y - evaluate(pencil, i, p.x);
    for (auto& v : pencil.y[i]) v += shift[i];
  }
  // Right of p the pencil is in reverse label order: values increase with i.
  std::vector<Rational> at_q(n);
  for (int i = 0; i < n; ++i) at_q[i] = evaluate(pencil, i, q.x);

  LeviResult res;
  if (n == 1) {
    // A single line: add a linear function vanishing at p.
    Rational s = (q.y - at_q[0]) / (q.x - p.x);
    res.copy = s == 0;
    std::vector<Rational> row;
    for (int c = 0; c < pencil.column_count(); ++c)
      row.push_back(pencil.y[0][c] + s * (pencil.columns[c] - p.x));
    res.new_line = s >= 0 ? 1 : 0;
    if (res.copy) res.parallel_to = 1 - res.new_line;
    res.arrangement = detail::insert_line(pencil, res.new_line, std::move(row), pencil.left_slopes[0] + s,
                                          pencil.right_slopes[0] + s, color);
  } else {
    int hit = -1;
    for (int i = 0; i < n; ++i)
      if (at_q[i] == q.y) hit = i;
    if (hit >= 0) {
      res.copy = true;
      res.new_line = hit + 1;
      res.parallel_to = hit;
      res.arrangement = detail::insert_line(pencil, hit + 1, pencil.y[hit], pencil.left_slopes[hit],
                                            pencil.right_slopes[hit], color);
    } else if (q.y > at_q[n - 1]) {
      Rational delta = (q.y - at_q[n - 1]) / (at_q[n - 1] - at_q[n - 2]);
      res.new_line = n;
      res.arrangement = extend_extreme(pencil, delta, Side::Bottom, color);
    } else if (q.y < at_q[0]) {
      Rational delta = (at_q[0] - q.y) / (at_q[1] - at_q[0]);
      res.new_line = 0;
      res.arrangement = extend_extreme(pencil, delta, Side::Top, color);
    } else {
      int k = 0;
      while (!(at_q[k] < q.y && q.y < at_q[k + 1])) ++k;
      Rational lambda = (at_q[k + 1] - q.y) / (at_q[k + 1] - at_q[k]);
      res.new_line = k + 1;
      res.arrangement = convex_combination(pencil, k, lambda, color);
    }
  }
  for (int i = 0, j = 0; i < res.arrangement.size(); ++i) {
    if (i == res.new_line) continue;
    for (auto& v : res.arrangement.y[i]) v -= shift[j];
    ++j;
  }
  const auto& out = res.arrangement;
  if (evaluate(out, res.new_line, p.x) != p.y || evaluate(out, res.new_line, q.x) != q.y)
    throw Error("levi_extension: new line misses p or q");
  if (res.copy) {
    // The copy never meets its original; every other pair must still approach.
    for (int drop : {res.new_line, res.parallel_to}) {
      PolyArrangement rest = out;
      rest.y.erase(rest.y.begin() + drop);
      rest.left_slopes.erase(rest.left_slopes.begin() + drop);
      rest.right_slopes.erase(rest.right_slopes.begin() + drop);
      if (rest.colored()) rest.colors.erase(rest.colors.begin() + drop);
      detail::require_approaching(rest, "levi_extension output check");
    }
  } else {
    detail::require_approaching(out, "levi_extension output check");
  }
  return res;
}

/// Truncates to [vminus, vplus] and frames the result by two straight lines,
/// one steeper downward and one steeper upward than every segment and ray.
/// They cross above all curves at x = (vminus + vplus)/2 and become the first
/// and last lines.
inline PolyArrangement bounding_frame(const PolyArrangement& arr, const Rational& vminus, const Rational& vplus) {
  PolyArrangement t = truncate(arr, vminus, vplus);
  Rational steep = 1;
  Rational top = t.y[0][0];
  for (int i = 0; i < t.size(); ++i) {
    steep = std::max({steep, abs_value(t.left_slopes[i]), abs_value(t.right_slopes[i])});
    for (int c = 0; c < t.column_count(); ++c) {
      top = std::max(top, t.y[i][c]);
      if (c + 1 < t.column_count())
        steep = std::max(steep, abs_value((t.y[i][c + 1] - t.y[i][c]) / (t.columns[c + 1] - t.columns[c])));
    }
  }
  steep += 1;
  top += 1;
  const Rational mid = (vminus + vplus) / 2;
  auto straight = [&](const Rational& s) {
    std::vector<Rational> row;
    for (const auto& x : t.columns) row.push_back(top + s * (x - mid));
    return row;
  };
  PolyArrangement out = detail::insert_line(t, 0, straight(-steep), -steep, -steep, "frame");
  out = detail::insert_line(out, out.size(), straight(steep), steep, steep, "frame");
  return out;
}

}  // namespace apl

#endif  // APL_EXTEND_HPP
