#ifndef APL_GENERATORS_HPP
#define APL_GENERATORS_HPP

// Families of approaching arrangements and sequences: baselines, the two
// counting constructions, the search for non-realizable triples and the
// wedge augmentation.

#include "apl/arrangement.hpp"
#include "apl/realize.hpp"
#include "apl/seqcore.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace apl {

/// n lines through the origin with slopes i - (n-1)/2.
inline PolyArrangement pencil(int n) {
  if (n < 1) throw Error("pencil needs n >= 1");
  std::vector<std::pair<Rational, Rational>> lines;
  for (auto& s : default_ray_slopes(n)) lines.emplace_back(s, Rational(0));
  return from_lines(lines);
}

/// n straight lines with distinct random slopes and half-integer intercepts,
/// with a column at every crossing abscissa.
inline PolyArrangement random_lines(int n, std::uint64_t seed) {
  if (n < 1) throw Error("random_lines needs n >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> d(-4 * n, 4 * n);
  std::set<int> slopes;
  while (static_cast<int>(slopes.size()) < n) slopes.insert(d(rng));
  std::vector<std::pair<Rational, Rational>> lines;
  for (int s : slopes) lines.emplace_back(Rational(s), make_rational(d(rng), 2));
  auto arr = lines_with_crossing_columns(lines);
  if (!is_strictly_approaching(arr)) throw Error("random_lines produced a non-approaching arrangement");
  return arr;
}

/// Random polygonal arrangement on m columns: on every slab the segment
/// slopes strictly increase with the line index.
inline PolyArrangement random_approaching(int n, int m, std::uint64_t seed) {
  if (n < 1 || m < 1) throw Error("random_approaching needs n >= 1 and m >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> d(-6, 6);
  PolyArrangement arr;
  for (int c = 0; c < m; ++c) arr.columns.push_back(Rational(2 * c));
  arr.y.assign(n, std::vector<Rational>(m));
  for (int i = 0; i < n; ++i) arr.y[i][0] = Rational(d(rng) * n);
  auto increasing = [&] {
    std::set<int> s;
    while (static_cast<int>(s.size()) < n) s.insert(d(rng) * n + static_cast<int>(rng() % n));
    return std::vector<int>(s.begin(), s.end());
  };
  for (int c = 0; c + 1 < m; ++c) {
    auto s = increasing();
    for (int i = 0; i < n; ++i) arr.y[i][c + 1] = arr.y[i][c] + Rational(2 * s[i]);
  }
  auto l = increasing(), r = increasing();
  for (int i = 0; i < n; ++i) {
    arr.left_slopes.push_back(Rational(l[i]));
    arr.right_slopes.push_back(Rational(r[i]));
  }
  return arr;
}

/// A uniformly random path of adjacent transpositions from the identity to
/// the reversal (a random simple allowable sequence).
template <class Rng>
PermSequence random_simple_sequence(int n, Rng& rng) {
  if (n < 1) throw Error("random_simple_sequence needs n >= 1");
  std::vector<int> o(n);
  std::iota(o.begin(), o.end(), 1);
  PermSequence seq;
  seq.n = n;
  seq.perms.emplace_back(o);
  for (;;) {
    std::vector<int> swaps;
    for (int p = 0; p + 1 < n; ++p)
      if (o[p] < o[p + 1]) swaps.push_back(p);
    if (swaps.empty()) break;
    int p = swaps[rng() % swaps.size()];
    std::swap(o[p], o[p + 1]);
    seq.perms.emplace_back(o);
  }
  return seq;
}

/// m snapshots taken in order from a random simple sequence, so the result
/// is always pairwise monotone. Repeated snapshots are possible.
template <class Rng>
PermSequence random_candidate(int n, int m, Rng& rng) {
  auto full = random_simple_sequence(n, rng);
  std::vector<std::size_t> picks;
  for (int k = 0; k < m; ++k) picks.push_back(rng() % full.perms.size());
  std::sort(picks.begin(), picks.end());
  PermSequence sub;
  sub.n = n;
  for (auto k : picks) sub.perms.push_back(full.perms[k]);
  return sub;
}

// ---------------------------------------------------------------------------
// 2^(n^2) family: horizontals, parabolas, near-verticals.

/// Decision pairs (i, j), i, j >= 1, i + j <= n, in lexicographic order.
inline std::vector<std::pair<int, int>> matousek_pairs(int n) {
  std::vector<std::pair<int, int>> out;
  for (int i = 1; i < n; ++i)
    for (int j = 1; i + j <= n; ++j) out.emplace_back(i, j);
  return out;
}

/// Line indices in a matousek_family arrangement (i, j, k are 1-based).
inline int matousek_horizontal(int, int k) { return k - 1; }
inline int matousek_parabola(int n, int i) { return n + i - 1; }
inline int matousek_vertical(int n, int j) { return 2 * n + j - 1; }

/// 3n lines: horizontals near y = k^2, parabolas (x + i)^2 - eps sampled at
/// x = 0 and j +- 1/4, j, and near-verticals through (j, 0). Bit (i, j) set
/// routes parabola i above the crossing of horizontal i+j and vertical j.
inline PolyArrangement matousek_family(int n, const std::vector<bool>& above) {
  if (n < 1) throw Error("matousek_family needs n >= 1");
  const auto pairs = matousek_pairs(n);
  if (above.size() != pairs.size())
    throw Error("matousek_family: expected " + std::to_string(pairs.size()) + " decisions for n = " +
                std::to_string(n) + ", got " + std::to_string(above.size()));
  const Rational delta = make_rational(1, 4);
  const Rational eps = delta * delta / 4;
  const Rational n3 = Rational(n) * n * n;

  PolyArrangement arr;
  arr.columns.push_back(Rational(0));
  for (int j = 1; j <= n; ++j)
    for (Rational x : {Rational(j - delta), Rational(j), Rational(j + delta)}) arr.columns.push_back(x);
  const Rational last = arr.columns.back();

  std::map<std::pair<int, int>, bool> lifted;
  for (std::size_t b = 0; b < pairs.size(); ++b) lifted[pairs[b]] = above[b];

  auto add = [&](std::vector<Rational> row, Rational left, Rational right, const std::string& tag) {
    arr.y.push_back(std::move(row));
    arr.left_slopes.push_back(std::move(left));
    arr.right_slopes.push_back(std::move(right));
    arr.colors.push_back(tag);
  };
  for (int k = 1; k <= n; ++k) {
    Rational tau = make_rational(k, 64L * n * (n + 1));
    std::vector<Rational> row;
    for (const auto& x : arr.columns) row.push_back(Rational(k * k) + tau * x);
    add(std::move(row), tau, tau, "h");
  }
  for (int i = 1; i <= n; ++i) {
    auto base = [&](const Rational& x) -> Rational { return (x + i) * (x + i) - eps; };
    std::vector<Rational> row;
    for (const auto& x : arr.columns) row.push_back(base(x));
    for (int j = 1; j <= n; ++j) {
      auto it = lifted.find({i, j});
      // Chord between j - delta and j + delta: slope 2(i+j), clearance delta^2 - eps.
      if (it != lifted.end() && it->second) row[3 * j - 1] = (base(j - delta) + base(j + delta)) / 2;
    }
    add(std::move(row), Rational(2 * i), 2 * (last + i), "p");
  }
  for (int j = 1; j <= n; ++j) {
    Rational steep = 256 * n3 + j;
    std::vector<Rational> row;
    for (const auto& x : arr.columns) row.push_back(steep * (x - j));
    add(std::move(row), steep, steep, "v");
  }
  if (!is_strictly_approaching(arr)) throw Error("matousek_family output is not strictly approaching");
  return arr;
}

/// Reads the decision bits back: is parabola i above the crossing of
/// horizontal i+j and vertical j?
inline std::vector<bool> matousek_decode(const PolyArrangement& arr, int n) {
  if (arr.size() != 3 * n) throw Error("matousek_decode: expected " + std::to_string(3 * n) + " lines");
  std::vector<bool> bits;
  for (auto [i, j] : matousek_pairs(n)) {
    Point c = pair_crossing(arr, matousek_horizontal(n, i + j), matousek_vertical(n, j));
    bits.push_back(evaluate(arr, matousek_parabola(n, i), c.x) > c.y);
  }
  return bits;
}

// ---------------------------------------------------------------------------
// Superfactorial family: horizontals and parabolas only.

/// Product of j! for j = 1..n-1, the number of distinct choice vectors.
inline std::uint64_t superfactorial_count(int n) {
  std::uint64_t total = 1, fact = 1;
  for (int j = 1; j < n; ++j) {
    fact *= j;
    total *= fact;
  }
  return total;
}

/// 2n lines. choices[j-1] is a permutation of 1..n-j; near x = j the
/// crossing of parabola i with horizontal i+j sits at x = j - alpha_i with
/// alpha_{pi(1)} < alpha_{pi(2)} < ..., so crossings happen in the reverse
/// of pi from left to right.
inline PolyArrangement superfactorial_family(int n, const std::vector<std::vector<int>>& choices) {
  if (n < 1) throw Error("superfactorial_family needs n >= 1");
  if (static_cast<int>(choices.size()) != std::max(n - 1, 0) &&
      !(static_cast<int>(choices.size()) == n && choices.back().empty()))
    throw Error("superfactorial_family: expected one permutation per j = 1.." + std::to_string(n - 1));
  const Rational delta = make_rational(1, 4);
  const Rational unit = make_rational(1, 16L * n * n);
  // alpha[i][j], zero where there is no designated crossing.
  std::vector<std::vector<Rational>> alpha(n + 1, std::vector<Rational>(n + 1));
  for (int j = 1; j < n; ++j) {
    const auto& pi = choices[j - 1];
    const int m = n - j;
    std::vector<bool> seen(m + 1, false);
    if (static_cast<int>(pi.size()) != m) throw Error("choice for j = " + std::to_string(j) + " has wrong length");
    for (int r = 0; r < m; ++r) {
      int i = pi[r];
      if (i < 1 || i > m || seen[i]) throw Error("choice for j = " + std::to_string(j) + " is not a permutation");
      seen[i] = true;
      alpha[i][j] = unit * (r + 1);
    }
  }
  auto tau = [&](int k) { return make_rational(k, 64L * n * (n + 1)); };

  PolyArrangement arr;
  for (int j = 1; j <= n; ++j) {
    arr.columns.push_back(Rational(j) - delta);
    arr.columns.push_back(Rational(j) + delta);
  }
  for (int k = 1; k <= n; ++k) {
    std::vector<Rational> row;
    for (const auto& x : arr.columns) row.push_back(Rational(k * k) + tau(k) * x);
    arr.y.push_back(std::move(row));
    arr.left_slopes.push_back(tau(k));
    arr.right_slopes.push_back(tau(k));
    arr.colors.push_back("h");
  }
  for (int i = 1; i <= n; ++i) {
    std::vector<Rational> row;
    for (int j = 1; j <= n; ++j) {
      // Segment of slope 2(i+j) on [j - delta, j + delta]; it meets
      // horizontal i+j at x = j - alpha when that horizontal exists.
      const int k = i + j;
      const Rational x0 = Rational(j) - alpha[i][j];
      const Rational y0 = k <= n ? Rational(k * k) + tau(k) * x0 : Rational(k * k);
      for (Rational x : {Rational(j - delta), Rational(j + delta)}) row.push_back(y0 + 2 * k * (x - x0));
    }
    arr.y.push_back(std::move(row));
    arr.left_slopes.push_back(Rational(2 * i));
    arr.right_slopes.push_back(Rational(2 * (i + n) + 1));
    arr.colors.push_back("p");
  }
  if (!is_strictly_approaching(arr)) throw Error("superfactorial_family output is not strictly approaching");
  return arr;
}

/// All choice vectors for n, in lexicographic order of the permutations.
inline std::vector<std::vector<std::vector<int>>> superfactorial_choices(int n) {
  std::vector<std::vector<std::vector<int>>> out{{}};
  for (int j = 1; j < n; ++j) {
    std::vector<int> pi(n - j);
    std::iota(pi.begin(), pi.end(), 1);
    std::vector<std::vector<int>> perms;
    do perms.push_back(pi);
    while (std::next_permutation(pi.begin(), pi.end()));
    std::vector<std::vector<std::vector<int>>> next;
    for (const auto& prefix : out)
      for (const auto& p : perms) {
        next.push_back(prefix);
        next.back().push_back(p);
      }
    out = std::move(next);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Non-realizable triples.

struct AsinowskiWitness {
  PermSequence triple;  // (id, pi1, pi2)
  lp::FarkasCertificate certificate;
};

struct AsinowskiResult {
  int n = 0;
  std::size_t candidates = 0;  // pairs passing the prefilter
  std::size_t examined = 0;    // LPs solved
  bool exhausted = false;      // every candidate examined
  std::vector<AsinowskiWitness> witnesses;
};

namespace detail {

inline std::vector<std::uint64_t> inversion_masks(const std::vector<Permutation>& perms, int n) {
  std::vector<std::uint64_t> masks;
  for (const auto& p : perms) {
    auto pos = p.positions();
    std::uint64_t m = 0;
    int bit = 0;
    for (int a = 1; a <= n; ++a)
      for (int b = a + 1; b <= n; ++b, ++bit)
        if (pos[b] < pos[a]) m |= std::uint64_t{1} << bit;
    masks.push_back(m);
  }
  return masks;
}

}  // namespace detail

/// Decides (id, pi1, pi2) for pairs in lexicographic order with
/// inv(pi1) a proper subset of inv(pi2), pi1 not the identity and pi2 not the
/// reversal, until `budget` LPs have been solved (0 = no cap). Every
/// returned certificate has been verified.
inline AsinowskiResult asinowski_search(int n, std::size_t budget = 0) {
  if (n < 2 || n > 8) throw Error("asinowski_search supports 2 <= n <= 8");
  std::vector<Permutation> perms;
  std::vector<int> o(n);
  std::iota(o.begin(), o.end(), 1);
  do perms.emplace_back(o);
  while (std::next_permutation(o.begin(), o.end()));
  auto masks = detail::inversion_masks(perms, n);
  const std::uint64_t full = masks.back();

  AsinowskiResult res;
  res.n = n;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 1; a < perms.size(); ++a)
    for (std::size_t b = 0; b + 1 < perms.size(); ++b)
      if (masks[a] != masks[b] && (masks[a] & ~masks[b]) == 0 && masks[b] != full) pairs.emplace_back(a, b);
  res.candidates = pairs.size();
  for (auto [a, b] : pairs) {
    if (budget && res.examined >= budget) break;
    PermSequence triple;
    triple.n = n;
    triple.perms = {perms.front(), perms[a], perms[b]};
    auto d = decide_realizable(triple, EncodingMode::Reduced);
    ++res.examined;
    if (!d.realizable) res.witnesses.push_back({triple, std::move(*d.certificate)});
  }
  res.exhausted = res.examined == res.candidates;
  return res;
}

/// Allowable sequence on n+4 labels. Two thin lines per snapshot cross
/// above all original lines and form a wedge that the originals cross in the
/// order of that snapshot. Labels: 1 and 2 descend (second and first
/// wedge), originals become 3..n+2, n+3 and n+4 ascend (first and second
/// wedge).
inline PermSequence wedge_augment(const PermSequence& sub) {
  auto report = validate_subcandidate(sub);
  if (!report.ok()) throw Error("wedge_augment: invalid candidate:\n" + report.str());
  std::vector<Permutation> snaps = sub.perms;
  if (snaps.size() == 3 && snaps.front().is_identity()) snaps.erase(snaps.begin());
  if (snaps.size() != 2) throw Error("wedge_augment expects (id, pi1, pi2) or (pi1, pi2)");
  const int n = sub.n;
  const int a2 = 1, a1 = 2, b1 = n + 3, b2 = n + 4;

  PermSequence out;
  out.n = n + 4;
  std::vector<int> cur(n + 4);
  std::iota(cur.begin(), cur.end(), 1);
  out.perms.emplace_back(cur);
  auto swap_labels = [&](int x, int y) {
    auto px = std::find(cur.begin(), cur.end(), x), py = std::find(cur.begin(), cur.end(), y);
    if (std::abs(px - py) != 1) throw Error("wedge_augment: internal error, labels not adjacent");
    std::iter_swap(px, py);
    out.perms.emplace_back(cur);
  };
  // Originals occupy a contiguous block of cur; move them to `target`.
  auto reorder_middle = [&](const Permutation& target) {
    auto first = std::find_if(cur.begin(), cur.end(), [&](int v) { return v >= 3 && v <= n + 2; });
    std::vector<int> mid(first, first + n);
    for (int& v : mid) v -= 2;
    for (const auto& step : bubble_path(Permutation(mid), target)) {
      for (int p = 0; p < n; ++p) first[p] = step[p] + 2;
      out.perms.emplace_back(cur);
    }
  };
  auto pass_up = [&](int line) {  // ascend through every original
    for (int k = 0; k < n; ++k) {
      auto it = std::find(cur.begin(), cur.end(), line);
      swap_labels(line, *(it - 1));
    }
  };
  auto pass_down = [&](int line) {
    for (int k = 0; k < n; ++k) {
      auto it = std::find(cur.begin(), cur.end(), line);
      swap_labels(line, *(it + 1));
    }
  };
  reorder_middle(snaps[0]);
  pass_up(b1);
  swap_labels(a1, b1);
  pass_down(a1);
  swap_labels(a2, b1);
  swap_labels(a1, b2);
  reorder_middle(snaps[1]);
  pass_up(b2);
  swap_labels(a2, b2);
  pass_down(a2);
  reorder_middle(Permutation::reversal(n));
  swap_labels(b1, b2);
  swap_labels(a1, a2);
  auto check = validate_allowable(out);
  if (!check.ok()) throw Error("wedge_augment produced an invalid sequence:\n" + check.str());
  return out;
}

/// The originals' snapshots pinned by the wedges of a wedge_augment output.
inline PermSequence wedge_snapshots(const PermSequence& augmented) {
  const int n = augmented.n - 4;
  PermSequence sub;
  sub.n = n;
  sub.perms.push_back(Permutation::identity(n));
  for (std::size_t k = 0; k + 1 < augmented.perms.size(); ++k) {
    auto step = transposition_decomposition(augmented.perms[k], augmented.perms[k + 1]);
    const auto& blk = step.blocks.front();
    std::pair<int, int> pr{augmented.perms[k][blk.first], augmented.perms[k][blk.last]};
    if (pr == std::pair{2, n + 3} || pr == std::pair{1, n + 4}) {
      std::vector<int> mid;
      for (int v : augmented.perms[k].order())
        if (v >= 3 && v <= n + 2) mid.push_back(v - 2);
      sub.perms.emplace_back(mid);
    }
  }
  return sub;
}

// ---------------------------------------------------------------------------
// Non-Pappus.

/// Pappus configuration: three points on each of two lines and the three
/// cross-join points, which are collinear. Coordinates are chosen with
/// distinct x and no collinear triples beyond the nine Pappus lines.
inline std::vector<Point> pappus_points() {
  std::vector<Point> a = {{Rational(0), Rational(0)}, {Rational(2), Rational(0)}, {Rational(7), Rational(0)}};
  std::vector<Point> b = {{Rational(1), Rational(4)}, {Rational(4), Rational(5)}, {Rational(10), Rational(7)}};
  auto meet = [](const Point& p, const Point& q, const Point& r, const Point& s) {
    // Intersection of lines pq and rs.
    Rational d1x = q.x - p.x, d1y = q.y - p.y, d2x = s.x - r.x, d2y = s.y - r.y;
    Rational den = d1x * d2y - d1y * d2x;
    if (den == 0) throw Error("pappus_points: parallel joins");
    Rational t = ((r.x - p.x) * d2y - (r.y - p.y) * d2x) / den;
    return Point{p.x + t * d1x, p.y + t * d1y};
  };
  std::vector<Point> pts = a;
  pts.insert(pts.end(), b.begin(), b.end());
  pts.push_back(meet(a[0], b[1], a[1], b[0]));
  pts.push_back(meet(a[0], b[2], a[2], b[0]));
  pts.push_back(meet(a[1], b[2], a[2], b[1]));
  return pts;
}

/// Allowable sequence of the dual line arrangement of a point set
/// (point (a, b) becomes y = a x - b). Points need distinct x.
inline PermSequence point_set_sequence(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(), [](const Point& p, const Point& q) { return p.x < q.x; });
  std::vector<std::pair<Rational, Rational>> lines;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (k && pts[k].x == pts[k - 1].x) throw Error("point_set_sequence: points share an x-coordinate");
    lines.emplace_back(pts[k].x, -pts[k].y);
  }
  return sweep_sequence(lines_with_crossing_columns(lines));
}

/// Non-Pappus allowable sequence: the dual sweep of the Pappus
/// configuration, with the block of the three cross-join points replaced by
/// three single transpositions. Any line realization would satisfy the
/// Pappus theorem, so it has none.
inline PermSequence non_pappus() {
  auto pts = pappus_points();
  std::vector<Point> sorted = pts;
  std::sort(sorted.begin(), sorted.end(), [](const Point& p, const Point& q) { return p.x < q.x; });
  std::set<int> joins;
  for (int k = 6; k < 9; ++k)
    joins.insert(static_cast<int>(std::find(sorted.begin(), sorted.end(), pts[k]) - sorted.begin()) + 1);
  auto seq = point_set_sequence(pts);
  PermSequence out;
  out.n = seq.n;
  out.perms.push_back(seq.perms.front());
  bool split = false;
  for (std::size_t k = 0; k + 1 < seq.perms.size(); ++k) {
    const auto& from = seq.perms[k];
    auto step = transposition_decomposition(from, seq.perms[k + 1]);
    for (const auto& blk : step.blocks) {
      std::set<int> members;
      for (int p = blk.first; p <= blk.last; ++p) members.insert(from[p]);
      if (members != joins) continue;
      // Reverse (x y z) by x<->y, x<->z, y<->z, leaving the other blocks
      // of this step for the last move.
      std::vector<int> o = from.order();
      std::swap(o[blk.first], o[blk.first + 1]);
      out.perms.emplace_back(o);
      std::swap(o[blk.first + 1], o[blk.first + 2]);
      out.perms.emplace_back(o);
      split = true;
    }
    out.perms.push_back(seq.perms[k + 1]);
  }
  if (!split) throw Error("non_pappus: the join points are not collinear in the sweep");
  auto check = validate_allowable(out);
  if (!check.ok()) throw Error("non_pappus produced an invalid sequence:\n" + check.str());
  return out;
}

}  // namespace apl

#endif  // APL_GENERATORS_HPP
