#ifndef APL_SIMPLEX_HPP
#define APL_SIMPLEX_HPP

// Exact rational phase-1 simplex for systems of linear constraints over free
// variables. A run ends with either a feasible point or a Farkas certificate;
// both are re-checked with plain arithmetic that does not touch the tableau.

#include "apl/rational.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace apl::lp {

enum class Relation { GreaterEqual, Equal };

/// Where a constraint came from; carried through to certificates.
enum class Origin { Ordering, Approaching, Anchoring, Incidence, Other };

inline const char* origin_name(Origin o) {
  switch (o) {
    case Origin::Ordering: return "ordering";
    case Origin::Approaching: return "approaching";
    case Origin::Anchoring: return "anchoring";
    case Origin::Incidence: return "incidence";
    case Origin::Other: return "other";
  }
  return "other";
}

struct Term {
  int var;
  Rational coeff;
};

/// sum(terms) REL rhs
struct Constraint {
  std::vector<Term> terms;
  Relation relation = Relation::GreaterEqual;
  Rational rhs;
  Origin origin = Origin::Other;
};

struct LinearConstraintSystem {
  int variable_count = 0;
  std::vector<Constraint> constraints;

  int add_variable() { return variable_count++; }
  void add(std::vector<Term> terms, Relation rel, Rational rhs, Origin origin) {
    constraints.push_back({std::move(terms), rel, std::move(rhs), origin});
  }
  std::size_t inequality_count() const {
    std::size_t k = 0;
    for (const auto& c : constraints)
      if (c.relation == Relation::GreaterEqual) ++k;
    return k;
  }
};

struct FeasWitness {
  std::vector<Rational> values;
};

/// One multiplier per constraint: nonnegative on inequalities, unrestricted on
/// equalities. The weighted sum of the constraints reads 0 >= positive.
struct FarkasCertificate {
  std::vector<Rational> multipliers;
};

using FeasibilityOutcome = std::variant<FeasWitness, FarkasCertificate>;

struct SolveStats {
  std::size_t rows = 0;
  std::size_t columns = 0;
  std::size_t pivots = 0;
};

inline Rational lhs_value(const Constraint& c, const std::vector<Rational>& x) {
  Rational s = 0;
  for (const auto& t : c.terms) s += t.coeff * x[t.var];
  return s;
}

inline bool verify_witness(const LinearConstraintSystem& sys, const FeasWitness& w) {
  if (static_cast<int>(w.values.size()) != sys.variable_count) throw Error("witness dimension mismatch");
  for (const auto& c : sys.constraints) {
    Rational v = lhs_value(c, w.values);
    if (c.relation == Relation::Equal ? v != c.rhs : v < c.rhs) return false;
  }
  return true;
}

inline bool verify_certificate(const LinearConstraintSystem& sys, const FarkasCertificate& cert) {
  if (cert.multipliers.size() != sys.constraints.size()) throw Error("certificate dimension mismatch");
  std::vector<Rational> combined(sys.variable_count);
  Rational rhs = 0;
  for (std::size_t r = 0; r < sys.constraints.size(); ++r) {
    const auto& c = sys.constraints[r];
    const auto& u = cert.multipliers[r];
    if (c.relation == Relation::GreaterEqual && u < 0) return false;
    if (u == 0) continue;
    for (const auto& t : c.terms) combined[t.var] += u * t.coeff;
    rhs += u * c.rhs;
  }
  for (const auto& v : combined)
    if (v != 0) return false;
  return rhs > 0;
}

namespace detail {

// Dense tableau over mpq_t with zero-skipping row updates.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_((rows + 1) * (cols + 1)) {}

  mpq_class& at(std::size_t r, std::size_t c) { return data_[r * (cols_ + 1) + c]; }
  mpq_class& rhs(std::size_t r) { return at(r, cols_); }
  // Row `rows_` is the objective row.
  mpq_class& obj(std::size_t c) { return at(rows_, c); }

  void pivot(std::size_t pr, std::size_t pc) {
    mpq_class inv = 1 / at(pr, pc);
    nonzero_.clear();
    for (std::size_t c = 0; c <= cols_; ++c) {
      mpq_class& v = at(pr, c);
      if (sgn(v) != 0) {
        v *= inv;
        nonzero_.push_back(c);
      }
    }
    mpq_class f, tmp;
    for (std::size_t r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      mpq_class& head = at(r, pc);
      if (sgn(head) == 0) continue;
      f = head;
      mpq_class* row = &at(r, 0);
      const mpq_class* prow = &at(pr, 0);
      for (std::size_t c : nonzero_) {
        mpq_mul(tmp.get_mpq_t(), f.get_mpq_t(), prow[c].get_mpq_t());
        mpq_sub(row[c].get_mpq_t(), row[c].get_mpq_t(), tmp.get_mpq_t());
      }
    }
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<mpq_class> data_;
  std::vector<std::size_t> nonzero_;
};

}  // namespace detail

/// Phase-1 simplex with Bland's rule. Free variables are split into a
/// difference of two nonnegative columns.
inline FeasibilityOutcome solve_feasibility(const LinearConstraintSystem& sys, SolveStats* stats = nullptr) {
  const std::size_t rows = sys.constraints.size();
  const std::size_t nvar = static_cast<std::size_t>(sys.variable_count);

  // Column layout: [x+ / x- pairs][one slack per inequality][artificials].
  std::vector<int> sign(rows, 1);
  std::vector<long> slack_col(rows, -1);
  std::vector<long> art_col(rows, -1);
  std::size_t col = 2 * nvar;
  for (std::size_t r = 0; r < rows; ++r)
    if (sys.constraints[r].relation == Relation::GreaterEqual) slack_col[r] = static_cast<long>(col++);
  const std::size_t first_art = col;
  for (std::size_t r = 0; r < rows; ++r) {
    const auto& c = sys.constraints[r];
    if (c.relation == Relation::GreaterEqual) {
      if (c.rhs > 0) art_col[r] = static_cast<long>(col++);
      else sign[r] = -1;  // -(a.x) + s = -rhs >= 0; the slack starts basic
    } else {
      if (c.rhs < 0) sign[r] = -1;
      art_col[r] = static_cast<long>(col++);
    }
  }
  const std::size_t cols = col;
  detail::Tableau t(rows, cols);
  std::vector<std::size_t> basis(rows);
  std::vector<std::size_t> initial(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto& c = sys.constraints[r];
    for (const auto& term : c.terms) {
      Rational v = term.coeff * sign[r];
      t.at(r, 2 * term.var) += v;
      t.at(r, 2 * term.var + 1) -= v;
    }
    if (slack_col[r] >= 0) t.at(r, slack_col[r]) = -sign[r];
    if (art_col[r] >= 0) t.at(r, art_col[r]) = 1;
    t.rhs(r) = c.rhs * sign[r];
    basis[r] = initial[r] = art_col[r] >= 0 ? static_cast<std::size_t>(art_col[r]) : static_cast<std::size_t>(slack_col[r]);
  }
  // Objective: minimise the sum of artificials, expressed in nonbasic terms.
  for (std::size_t r = 0; r < rows; ++r) {
    if (art_col[r] < 0) continue;
    for (std::size_t c = 0; c <= cols; ++c) {
      if (c >= first_art && c < cols) continue;
      const mpq_class& v = t.at(r, c);
      if (sgn(v) != 0) t.obj(c) -= v;
    }
  }

  std::size_t pivots = 0;
  for (;;) {
    std::size_t enter = cols;
    for (std::size_t c = 0; c < first_art; ++c)
      if (sgn(t.obj(c)) < 0) {
        enter = c;
        break;
      }
    if (enter == cols) break;
    std::size_t leave = rows;
    mpq_class best, ratio;
    for (std::size_t r = 0; r < rows; ++r) {
      const mpq_class& a = t.at(r, enter);
      if (sgn(a) <= 0) continue;
      ratio = t.rhs(r) / a;
      if (leave == rows || ratio < best || (ratio == best && basis[r] < basis[leave])) {
        best = ratio;
        leave = r;
      }
    }
    // Phase 1 is bounded below by zero, so an entering column always has a
    // positive entry.
    if (leave == rows) throw Error("simplex: unbounded phase-1 direction");
    t.pivot(leave, enter);
    basis[leave] = enter;
    ++pivots;
  }
  if (stats) *stats = {rows, cols, pivots};

  if (sgn(t.obj(cols)) == 0) {
    FeasWitness w;
    w.values.assign(nvar, Rational(0));
    for (std::size_t r = 0; r < rows; ++r) {
      std::size_t b = basis[r];
      if (b < 2 * nvar) {
        if (b % 2 == 0) w.values[b / 2] += t.rhs(r);
        else w.values[b / 2] -= t.rhs(r);
      }
    }
    if (!verify_witness(sys, w)) throw Error("simplex produced a witness that fails verification");
    return w;
  }
  FarkasCertificate cert;
  cert.multipliers.resize(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    Rational cost = art_col[r] >= 0 ? 1 : 0;
    Rational u = cost - t.obj(initial[r]);
    cert.multipliers[r] = u * sign[r];
  }
  if (!verify_certificate(sys, cert)) throw Error("simplex produced a certificate that fails verification");
  return cert;
}

}  // namespace apl::lp

#endif  // APL_SIMPLEX_HPP
