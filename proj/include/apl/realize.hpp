#ifndef APL_REALIZE_HPP
#define APL_REALIZE_HPP

// Realizability of (sub)allowable sequences by approaching arrangements.
//
// Every snapshot permutation gets a helper column; the y-value of line i at
// column c is an LP variable. Consecutive lines of a snapshot are separated by
// at least 1, and for every pair i < j the difference y_i - y_j may not grow
// from one column to the next. The system has a solution iff an approaching
// arrangement realizing the snapshots exists.

#include "apl/arrangement.hpp"
#include "apl/seqcore.hpp"
#include "apl/simplex.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace apl {

/// FULL states the approaching condition for every pair of lines. REDUCED
/// states it only for label-consecutive pairs (i, i+1), which implies the
/// rest: y_i - y_j telescopes over i, i+1, ..., j.
enum class EncodingMode { Full, Reduced };

inline const char* mode_name(EncodingMode m) { return m == EncodingMode::Full ? "full" : "reduced"; }

struct Encoding {
  lp::LinearConstraintSystem system;
  int lines = 0;
  int columns = 0;
  PermSequence snapshots;  // identity-prefixed
  bool exact = false;      // columns sit on crossings (encode_allowable)

  int var(int line, int column) const { return line * columns + column; }

  struct Census {
    std::size_t variables = 0;
    std::size_t ordering = 0;
    std::size_t approaching = 0;
    std::size_t anchoring = 0;
    std::size_t incidence = 0;
  };
  Census census() const {
    Census c;
    c.variables = static_cast<std::size_t>(system.variable_count);
    for (const auto& k : system.constraints) switch (k.origin) {
        case lp::Origin::Ordering: ++c.ordering; break;
        case lp::Origin::Approaching: ++c.approaching; break;
        case lp::Origin::Anchoring: ++c.anchoring; break;
        case lp::Origin::Incidence: ++c.incidence; break;
        default: break;
      }
    return c;
  }
};

namespace detail {

inline void add_approaching(Encoding& enc, EncodingMode mode) {
  const int n = enc.lines;
  for (int c = 0; c + 1 < enc.columns; ++c)
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        if (mode == EncodingMode::Reduced && j != i + 1) continue;
        enc.system.add({{enc.var(i, c), 1}, {enc.var(j, c), -1}, {enc.var(i, c + 1), -1}, {enc.var(j, c + 1), 1}},
                       lp::Relation::GreaterEqual, 0, lp::Origin::Approaching);
      }
}

}  // namespace detail

/// Snapshot encoding of a suballowable candidate. An identity column is
/// prepended when the first permutation is not the identity.
inline Encoding encode(const PermSequence& sub, EncodingMode mode) {
  auto report = validate_subcandidate(sub);
  if (!report.ok()) throw Error("invalid subsequence candidate:\n" + report.str());
  Encoding enc;
  enc.lines = sub.n;
  enc.snapshots.n = sub.n;
  if (!sub.perms.front().is_identity()) enc.snapshots.perms.push_back(Permutation::identity(sub.n));
  for (const auto& p : sub.perms) enc.snapshots.perms.push_back(p);
  enc.columns = static_cast<int>(enc.snapshots.perms.size());
  enc.system.variable_count = enc.lines * enc.columns;
  for (int c = 0; c < enc.columns; ++c) {
    const auto& p = enc.snapshots.perms[c];
    for (int k = 0; k + 1 < sub.n; ++k)
      enc.system.add({{enc.var(p[k] - 1, c), 1}, {enc.var(p[k + 1] - 1, c), -1}}, lp::Relation::GreaterEqual, 1,
                     lp::Origin::Ordering);
  }
  detail::add_approaching(enc, mode);
  enc.system.add({{enc.var(0, 0), 1}}, lp::Relation::Equal, 0, lp::Origin::Anchoring);
  return enc;
}

/// Encoding of a full allowable sequence with one helper column per step,
/// placed on the step's crossings: lines of a reversed block are equal there
/// and every other adjacent pair is separated by at least 1. Realizations are
/// x-isomorphic to the sequence, multiple crossings included.
inline Encoding encode_allowable(const PermSequence& seq, EncodingMode mode) {
  auto report = validate_allowable(seq);
  if (!report.ok()) throw Error("not an allowable sequence:\n" + report.str());
  Encoding enc;
  enc.exact = true;
  enc.lines = seq.n;
  enc.snapshots = seq;
  const int steps = static_cast<int>(seq.perms.size()) - 1;
  enc.columns = std::max(steps, 1);
  enc.system.variable_count = enc.lines * enc.columns;
  if (steps == 0) {
    for (int k = 0; k + 1 < seq.n; ++k)
      enc.system.add({{enc.var(k, 0), 1}, {enc.var(k + 1, 0), -1}}, lp::Relation::GreaterEqual, 1,
                     lp::Origin::Ordering);
  }
  for (int g = 0; g < steps; ++g) {
    const auto& before = seq.perms[g];
    auto step = transposition_decomposition(before, seq.perms[g + 1]);
    std::vector<int> group(seq.n);
    for (int p = 0; p < seq.n; ++p) group[p] = p;
    for (const auto& b : step.blocks)
      for (int p = b.first; p <= b.last; ++p) group[p] = b.first;
    for (int p = 0; p + 1 < seq.n; ++p) {
      int a = before[p] - 1, b = before[p + 1] - 1;
      if (group[p] == group[p + 1])
        enc.system.add({{enc.var(a, g), 1}, {enc.var(b, g), -1}}, lp::Relation::Equal, 0, lp::Origin::Incidence);
      else
        enc.system.add({{enc.var(a, g), 1}, {enc.var(b, g), -1}}, lp::Relation::GreaterEqual, 1,
                       lp::Origin::Ordering);
    }
  }
  detail::add_approaching(enc, mode);
  enc.system.add({{enc.var(0, 0), 1}}, lp::Relation::Equal, 0, lp::Origin::Anchoring);
  return enc;
}

/// Columns at x = 1..m, y from the witness, default increasing ray slopes.
inline PolyArrangement realization_from_witness(const Encoding& enc, const lp::FeasWitness& w) {
  if (!lp::verify_witness(enc.system, w)) throw Error("witness does not satisfy the encoding");
  PolyArrangement arr;
  for (int c = 0; c < enc.columns; ++c) arr.columns.push_back(Rational(c + 1));
  arr.y.assign(enc.lines, std::vector<Rational>(enc.columns));
  for (int i = 0; i < enc.lines; ++i)
    for (int c = 0; c < enc.columns; ++c) arr.y[i][c] = w.values[enc.var(i, c)];
  arr.left_slopes = default_ray_slopes(enc.lines);
  arr.right_slopes = arr.left_slopes;
  return arr;
}

/// Adds eps*(2i-n+1)*x to every line. On a snapshot realization (gaps >= 1 at
/// every column) eps = 1/(2nm) keeps all snapshot orders and makes every
/// difference strictly decreasing.
inline PolyArrangement tilt(const PolyArrangement& arr, const Rational& eps) {
  PolyArrangement out = arr;
  const int n = arr.size();
  for (int i = 0; i < n; ++i) {
    Rational s = eps * (2 * i - n + 1);
    for (int c = 0; c < arr.column_count(); ++c) out.y[i][c] += s * arr.columns[c];
    out.left_slopes[i] += s;
    out.right_slopes[i] += s;
  }
  return out;
}

struct Decision {
  bool realizable = false;
  std::optional<PolyArrangement> arrangement;         // strictly approaching when possible
  std::optional<lp::FarkasCertificate> certificate;   // LP infeasibility
  std::string reason;                                 // combinatorial rejection
  std::optional<Encoding> encoding;
};

/// Realizability of a suballowable candidate. Feasible answers carry a
/// strictly approaching arrangement whose sweep contains the snapshots;
/// infeasible ones carry a verified Farkas certificate, or a combinatorial
/// reason when the candidate is not pairwise monotone.
inline Decision decide_realizable(const PermSequence& sub, EncodingMode mode = EncodingMode::Full) {
  Decision d;
  auto report = validate_subcandidate(sub);
  if (!report.ok()) {
    d.reason = report.str();
    return d;
  }
  d.encoding = encode(sub, mode);
  auto outcome = lp::solve_feasibility(d.encoding->system);
  if (auto* w = std::get_if<lp::FeasWitness>(&outcome)) {
    const auto& enc = *d.encoding;
    auto raw = realization_from_witness(enc, *w);
    auto arr = tilt(raw, Rational(1) / (2 * enc.lines * enc.columns));
    if (!validate_approaching(arr, true).ok()) throw Error("tilted realization is not strictly approaching");
    if (!contains_snapshots(sweep_sequence(arr), enc.snapshots))
      throw Error("realization does not contain the input snapshots");
    d.realizable = true;
    d.arrangement = std::move(arr);
  } else {
    auto& cert = std::get<lp::FarkasCertificate>(outcome);
    if (!lp::verify_certificate(d.encoding->system, cert)) throw Error("certificate failed verification");
    d.certificate = std::move(cert);
  }
  return d;
}

/// Realizability of a full allowable sequence up to x-isomorphism. Simple
/// sequences come back strictly approaching.
inline Decision decide_allowable(const PermSequence& seq, EncodingMode mode = EncodingMode::Full) {
  Decision d;
  auto report = validate_allowable(seq);
  if (!report.ok()) {
    d.reason = report.str();
    return d;
  }
  d.encoding = encode_allowable(seq, mode);
  auto outcome = lp::solve_feasibility(d.encoding->system);
  if (auto* w = std::get_if<lp::FeasWitness>(&outcome)) {
    auto arr = realization_from_witness(*d.encoding, *w);
    if (!validate_approaching(arr, false).ok()) throw Error("realization is not approaching");
    if (sweep_sequence(arr) != seq) throw Error("realization is not x-isomorphic to the sequence");
    if (is_simple_sequence(seq) && !is_strictly_approaching(arr)) arr = strictify(arr);
    d.realizable = true;
    d.arrangement = std::move(arr);
  } else {
    auto& cert = std::get<lp::FarkasCertificate>(outcome);
    if (!lp::verify_certificate(d.encoding->system, cert)) throw Error("certificate failed verification");
    d.certificate = std::move(cert);
  }
  return d;
}

/// Feasibility of the exact encoding alone, without building an arrangement.
/// The LP answer is re-checked either way.
inline bool allowable_feasible(const PermSequence& seq, EncodingMode mode = EncodingMode::Full) {
  if (!validate_allowable(seq).ok()) return false;
  auto enc = encode_allowable(seq, mode);
  auto outcome = lp::solve_feasibility(enc.system);
  if (auto* w = std::get_if<lp::FeasWitness>(&outcome)) return lp::verify_witness(enc.system, *w);
  if (!lp::verify_certificate(enc.system, std::get<lp::FarkasCertificate>(outcome)))
    throw Error("certificate failed verification");
  return false;
}

struct Line {
  Rational slope;
  Rational intercept;
  Rational at(const Rational& x) const { return slope * x + intercept; }
  friend bool operator==(const Line&, const Line&) = default;
};

/// Order of lines (as labels, top to bottom) at x; throws on ties.
inline Permutation order_at(const std::vector<Line>& lines, const Rational& x) {
  std::vector<int> o(lines.size());
  for (std::size_t k = 0; k < o.size(); ++k) o[k] = static_cast<int>(k) + 1;
  std::sort(o.begin(), o.end(), [&](int a, int b) { return lines[a - 1].at(x) > lines[b - 1].at(x); });
  for (std::size_t k = 0; k + 1 < o.size(); ++k)
    if (lines[o[k] - 1].at(x) == lines[o[k + 1] - 1].at(x)) throw Error("lines tie at the queried abscissa");
  return Permutation(std::move(o));
}

/// Straight lines through the points of each pseudo-line at x = v1 and x = v2.
/// On a strictly approaching arrangement their slopes increase with the
/// label, so they realize (id, order at v1, order at v2).
inline std::vector<Line> lines_from_three_snapshots(const PolyArrangement& arr, const Rational& v1,
                                                    const Rational& v2) {
  if (!(v1 < v2)) throw Error("snapshot abscissae must satisfy v1 < v2");
  if (!is_strictly_approaching(arr))
    throw Error("arrangement is not strictly approaching; apply strictify or tilt first");
  std::vector<Line> lines;
  for (int i = 0; i < arr.size(); ++i) {
    Rational a = evaluate(arr, i, v1), b = evaluate(arr, i, v2);
    Rational s = (b - a) / (v2 - v1);
    lines.push_back({s, a - s * v1});
  }
  for (std::size_t i = 0; i + 1 < lines.size(); ++i)
    if (!(lines[i].slope < lines[i + 1].slope))
      throw Error("extracted slopes are not strictly increasing; apply strictify first");
  return lines;
}

inline PolyArrangement arrangement_from_lines(const std::vector<Line>& lines) {
  std::vector<std::pair<Rational, Rational>> raw;
  for (const auto& l : lines) raw.emplace_back(l.slope, l.intercept);
  return from_lines(raw);
}

/// Columnwise convex combination (1-t)A + tB, columns included.
inline PolyArrangement interpolate_realizations(const PolyArrangement& a, const PolyArrangement& b,
                                                const Rational& t) {
  if (t < 0 || t > 1) throw Error("interpolation parameter outside [0,1]");
  if (a.size() != b.size() || a.column_count() != b.column_count())
    throw Error("arrangements differ in line or column count");
  auto seq = sweep_sequence(a);
  if (sweep_sequence(b) != seq) throw Error("arrangements are not x-isomorphic");
  PolyArrangement out = a;
  Rational s = 1 - t;
  for (int c = 0; c < a.column_count(); ++c) out.columns[c] = s * a.columns[c] + t * b.columns[c];
  for (int i = 0; i < a.size(); ++i) {
    for (int c = 0; c < a.column_count(); ++c) out.y[i][c] = s * a.y[i][c] + t * b.y[i][c];
    out.left_slopes[i] = s * a.left_slopes[i] + t * b.left_slopes[i];
    out.right_slopes[i] = s * a.right_slopes[i] + t * b.right_slopes[i];
  }
  if (!validate_approaching(out, false).ok()) throw Error("interpolation is not approaching");
  if (sweep_sequence(out) != seq) throw Error("columns do not pin the crossing order; interpolation changed it");
  return out;
}

}  // namespace apl

#endif  // APL_REALIZE_HPP
