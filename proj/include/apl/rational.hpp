#ifndef APL_RATIONAL_HPP
#define APL_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace apl {

/// Exact rational scalar. Every coordinate in the library is one of these.
using Rational = mpq_class;

/// Base class of all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw Error("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "p", "-p", or "p/q" into canonical form.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error("empty rational literal");
  Rational r;
  if (r.set_str(s, 10) != 0) throw Error("malformed rational literal '" + s + "'");
  if (r.get_den() == 0) throw Error("rational with zero denominator '" + s + "'");
  r.canonicalize();
  return r;
}

/// Lowest terms, "p" for integers and "p/q" otherwise.
inline std::string to_string(const Rational& r) { return r.get_str(10); }

inline double to_double(const Rational& r) { return r.get_d(); }

inline int sign(const Rational& r) { return sgn(r); }

inline Rational abs_value(const Rational& r) { return abs(r); }

struct Point {
  Rational x;
  Rational y;

  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator<(const Point& a, const Point& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  }
};

/// A list of human-readable violations. Empty means the check passed.
struct ValidationReport {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
  explicit operator bool() const { return ok(); }
  void add(std::string message) { violations.push_back(std::move(message)); }
  void merge(const ValidationReport& other) {
    violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  }
  std::string str() const {
    std::string out;
    for (const auto& v : violations) {
      out += v;
      out += '\n';
    }
    return out;
  }
};

}  // namespace apl

#endif  // APL_RATIONAL_HPP
