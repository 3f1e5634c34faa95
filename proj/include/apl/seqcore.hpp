#ifndef APL_SEQCORE_HPP
#define APL_SEQCORE_HPP

// Permutations, allowable and suballowable sequences.
//
// A permutation lists the labels 1..n in the top-to-bottom order in which a
// vertical sweep line meets the pseudo-lines. Label k always denotes the
// pseudo-line with index k-1 in an arrangement.

#include "apl/rational.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace apl {

class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<int> order) : order_(std::move(order)) {
    if (order_.empty()) throw Error("permutation must have at least one label");
    std::vector<bool> seen(order_.size() + 1, false);
    for (int v : order_) {
      if (v < 1 || v > size() || seen[v])
        throw Error("not a permutation of 1.." + std::to_string(size()));
      seen[v] = true;
    }
  }

  static Permutation identity(int n) {
    std::vector<int> o(n);
    std::iota(o.begin(), o.end(), 1);
    return Permutation(std::move(o));
  }

  static Permutation reversal(int n) {
    std::vector<int> o(n);
    std::iota(o.rbegin(), o.rend(), 1);
    return Permutation(std::move(o));
  }

  int size() const { return static_cast<int>(order_.size()); }
  int operator[](int pos) const { return order_[pos]; }
  const std::vector<int>& order() const { return order_; }

  /// pos[label] for label in 1..n (index 0 unused).
  std::vector<int> positions() const {
    std::vector<int> pos(order_.size() + 1, -1);
    for (int p = 0; p < size(); ++p) pos[order_[p]] = p;
    return pos;
  }

  bool is_identity() const {
    for (int p = 0; p < size(); ++p)
      if (order_[p] != p + 1) return false;
    return true;
  }

  /// True iff label a is above label b.
  bool before(int a, int b) const {
    auto pos = positions();
    return pos[a] < pos[b];
  }

  std::string str() const {
    std::string s = "(";
    for (int p = 0; p < size(); ++p) {
      if (p) s += ' ';
      s += std::to_string(order_[p]);
    }
    return s + ")";
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> order_;
};

/// Ordered list of permutations of a common width. Used both for full
/// allowable sequences and for suballowable candidates.
struct PermSequence {
  int n = 0;
  std::vector<Permutation> perms;

  std::size_t length() const { return perms.size(); }
  friend bool operator==(const PermSequence&, const PermSequence&) = default;
};

using AllowableSequence = PermSequence;
using SubSequenceCandidate = PermSequence;

inline PermSequence make_sequence(std::vector<std::vector<int>> rows) {
  PermSequence seq;
  if (rows.empty()) throw Error("sequence must contain at least one permutation");
  seq.n = static_cast<int>(rows.front().size());
  for (auto& r : rows) seq.perms.emplace_back(std::move(r));
  return seq;
}

/// A reversed block of positions [first, last], 0-based and inclusive.
struct Block {
  int first;
  int last;
  int length() const { return last - first + 1; }
  friend bool operator==(const Block&, const Block&) = default;
};

struct MoveStep {
  std::vector<Block> blocks;
};

inline int binomial2(int n) { return n * (n - 1) / 2; }

namespace detail {

inline void require_consistent_widths(const PermSequence& seq) {
  if (seq.perms.empty()) throw Error("sequence must contain at least one permutation");
  for (std::size_t k = 0; k < seq.perms.size(); ++k)
    if (seq.perms[k].size() != seq.n)
      throw Error("permutation " + std::to_string(k) + " has width " +
                  std::to_string(seq.perms[k].size()) + ", expected " + std::to_string(seq.n));
}

// Decomposes without throwing; returns the first offending position or -1.
inline int try_decompose(const Permutation& a, const Permutation& b, MoveStep& step) {
  const int n = a.size();
  auto pos_a = a.positions();
  int p = 0;
  while (p < n) {
    if (a[p] == b[p]) {
      ++p;
      continue;
    }
    const int q = pos_a[b[p]];
    if (q <= p) return p;
    for (int k = 0; k <= q - p; ++k)
      if (b[p + k] != a[q - k]) return p + k;
    step.blocks.push_back({p, q});
    p = q + 1;
  }
  return -1;
}

}  // namespace detail

/// Maximal reversed blocks turning a into b. Throws when b is not obtained
/// from a by reversing non-overlapping contiguous blocks.
inline MoveStep transposition_decomposition(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw Error("permutations of different widths");
  MoveStep step;
  int bad = detail::try_decompose(a, b, step);
  if (bad >= 0)
    throw Error("not a block reversal: " + a.str() + " -> " + b.str() + " fails at position " +
                std::to_string(bad));
  return step;
}

inline Permutation apply_step(const Permutation& a, const MoveStep& step) {
  std::vector<int> o = a.order();
  for (const auto& blk : step.blocks) std::reverse(o.begin() + blk.first, o.begin() + blk.last + 1);
  return Permutation(std::move(o));
}

/// Checks every clause of the allowable-sequence definition.
inline ValidationReport validate_allowable(const PermSequence& seq) {
  detail::require_consistent_widths(seq);
  ValidationReport report;
  const int n = seq.n;
  if (!seq.perms.front().is_identity())
    report.add("first permutation " + seq.perms.front().str() + " is not the identity");

  std::vector<int> count(static_cast<std::size_t>(n + 1) * (n + 1), 0);
  for (std::size_t k = 0; k + 1 < seq.perms.size(); ++k) {
    const auto& a = seq.perms[k];
    const auto& b = seq.perms[k + 1];
    if (a == b) {
      report.add("step " + std::to_string(k + 1) + " reverses nothing");
      continue;
    }
    MoveStep step;
    int bad = detail::try_decompose(a, b, step);
    if (bad >= 0) {
      report.add("step " + std::to_string(k + 1) + " is not a reversal of non-overlapping blocks (position " +
                 std::to_string(bad) + ")");
      // Count pair flips directly so later clauses are still reported.
      auto pa = a.positions();
      auto pb = b.positions();
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
          if ((pa[i] < pa[j]) != (pb[i] < pb[j])) ++count[i * (n + 1) + j];
      continue;
    }
    for (const auto& blk : step.blocks)
      for (int p = blk.first; p <= blk.last; ++p)
        for (int q = p + 1; q <= blk.last; ++q) {
          int i = std::min(a[p], a[q]), j = std::max(a[p], a[q]);
          ++count[i * (n + 1) + j];
        }
  }
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      int c = count[i * (n + 1) + j];
      if (c != 1)
        report.add("pair {" + std::to_string(i) + "," + std::to_string(j) + "} reversed " + std::to_string(c) +
                   " times");
    }
  if (seq.perms.back() != Permutation::reversal(n))
    report.add("last permutation " + seq.perms.back().str() + " is not the full reversal");
  return report;
}

inline bool is_simple_sequence(const PermSequence& seq) {
  auto report = validate_allowable(seq);
  if (!report.ok()) throw Error("not an allowable sequence:\n" + report.str());
  for (std::size_t k = 0; k + 1 < seq.perms.size(); ++k) {
    auto step = transposition_decomposition(seq.perms[k], seq.perms[k + 1]);
    if (step.blocks.size() != 1 || step.blocks.front().length() != 2) return false;
  }
  return true;
}

/// Pairwise monotonicity relative to an implicit leading identity: once j is
/// above i (i < j) it must stay above.
inline ValidationReport validate_subcandidate(const PermSequence& sub) {
  detail::require_consistent_widths(sub);
  ValidationReport report;
  const int n = sub.n;
  std::vector<char> reversed(static_cast<std::size_t>(n + 1) * (n + 1), 0);
  std::vector<char> reported(reversed.size(), 0);
  for (std::size_t k = 0; k < sub.perms.size(); ++k) {
    auto pos = sub.perms[k].positions();
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        const std::size_t idx = i * (n + 1) + j;
        bool now = pos[j] < pos[i];
        if (reversed[idx] && !now && !reported[idx]) {
          report.add("pair {" + std::to_string(i) + "," + std::to_string(j) + "} re-crosses at permutation " +
                     std::to_string(k));
          reported[idx] = 1;
        }
        reversed[idx] = reversed[idx] || now;
      }
  }
  return report;
}

/// Greedy check that every permutation of `snapshots` occurs in `sweep` in
/// order; a run of equal snapshots may match one sweep permutation.
inline bool contains_snapshots(const PermSequence& sweep, const PermSequence& snapshots) {
  if (sweep.n != snapshots.n) return false;
  std::size_t k = 0;
  for (const auto& p : sweep.perms)
    while (k < snapshots.perms.size() && p == snapshots.perms[k]) ++k;
  return k == snapshots.perms.size();
}

/// True iff `fine` is a valid allowable sequence refining `coarse`.
inline bool is_refinement(const PermSequence& fine, const PermSequence& coarse) {
  if (fine.n != coarse.n) return false;
  if (!validate_allowable(fine).ok() || !validate_allowable(coarse).ok()) return false;
  return contains_snapshots(fine, coarse);
}

/// Unordered label pair {a,b} with a < b.
struct LabelPair {
  int a;
  int b;
  friend bool operator==(const LabelPair&, const LabelPair&) = default;
  friend auto operator<=>(const LabelPair&, const LabelPair&) = default;
};

/// For a simple allowable sequence, the pair swapped at each step.
inline std::vector<LabelPair> crossing_word(const PermSequence& seq) {
  std::vector<LabelPair> word;
  for (std::size_t k = 0; k + 1 < seq.perms.size(); ++k) {
    auto step = transposition_decomposition(seq.perms[k], seq.perms[k + 1]);
    if (step.blocks.size() != 1 || step.blocks.front().length() != 2)
      throw Error("step " + std::to_string(k + 1) + " is not a single adjacent transposition");
    int x = seq.perms[k][step.blocks.front().first];
    int y = seq.perms[k][step.blocks.front().last];
    word.push_back({std::min(x, y), std::max(x, y)});
  }
  return word;
}

/// Rebuilds a simple sequence from its ordered crossing pairs. Throws if a pair
/// is not adjacent when its turn comes.
inline PermSequence sequence_from_word(int n, const std::vector<LabelPair>& word) {
  PermSequence seq;
  seq.n = n;
  seq.perms.push_back(Permutation::identity(n));
  std::vector<int> o = seq.perms.back().order();
  for (const auto& pr : word) {
    auto it = std::find(o.begin(), o.end(), pr.a);
    if (it == o.end()) throw Error("label out of range in crossing word");
    std::size_t p = static_cast<std::size_t>(it - o.begin());
    if (p + 1 < o.size() && o[p + 1] == pr.b) {
      std::swap(o[p], o[p + 1]);
    } else if (p > 0 && o[p - 1] == pr.b) {
      std::swap(o[p], o[p - 1]);
    } else {
      throw Error("labels " + std::to_string(pr.a) + "," + std::to_string(pr.b) + " are not adjacent");
    }
    seq.perms.emplace_back(o);
  }
  return seq;
}

/// Adjacent-transposition path from a to b (bubble sort); every pair inverted
/// between a and b is swapped exactly once.
inline std::vector<Permutation> bubble_path(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw Error("permutations of different widths");
  auto target = b.positions();
  std::vector<int> o = a.order();
  std::vector<Permutation> path;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t p = 0; p + 1 < o.size(); ++p)
      if (target[o[p]] > target[o[p + 1]]) {
        std::swap(o[p], o[p + 1]);
        path.emplace_back(o);
        changed = true;
      }
  }
  return path;
}

/// A simple allowable sequence passing through every permutation of a valid
/// subcandidate (identity prepended when absent).
inline PermSequence simple_completion(const PermSequence& sub) {
  auto report = validate_subcandidate(sub);
  if (!report.ok()) throw Error("invalid subcandidate:\n" + report.str());
  PermSequence seq;
  seq.n = sub.n;
  seq.perms.push_back(Permutation::identity(sub.n));
  auto extend_to = [&](const Permutation& target) {
    for (auto& p : bubble_path(seq.perms.back(), target)) seq.perms.push_back(std::move(p));
  };
  for (const auto& p : sub.perms) extend_to(p);
  extend_to(Permutation::reversal(sub.n));
  return seq;
}

/// All simple allowable sequences on n labels (reduced words of the longest
/// permutation). Exponential; intended for n <= 6.
inline std::vector<PermSequence> all_simple_sequences(int n) {
  std::vector<PermSequence> out;
  std::vector<int> o(n);
  std::iota(o.begin(), o.end(), 1);
  PermSequence cur;
  cur.n = n;
  cur.perms.emplace_back(o);
  auto rec = [&](auto&& self) -> void {
    bool any = false;
    for (int p = 0; p + 1 < n; ++p)
      if (o[p] < o[p + 1]) {
        any = true;
        std::swap(o[p], o[p + 1]);
        cur.perms.emplace_back(o);
        self(self);
        cur.perms.pop_back();
        std::swap(o[p], o[p + 1]);
      }
    if (!any) out.push_back(cur);
  };
  rec(rec);
  return out;
}

}  // namespace apl

#endif  // APL_SEQCORE_HPP
