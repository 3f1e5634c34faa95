#ifndef APL_IO_HPP
#define APL_IO_HPP

// Text and JSON formats: .perms, .arr.json, .cert.json, .cfg.json.
// Rationals are written as strings in lowest terms ("3", "-7/2").

#include "apl/arrangement.hpp"
#include "apl/duality.hpp"
#include "apl/realize.hpp"
#include "apl/seqcore.hpp"
#include "apl/simplex.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace apl::io {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// .perms: first line "n m", then m permutations, '#' starts a comment line.

inline std::string write_perms(const PermSequence& seq) {
  std::string out = std::to_string(seq.n) + " " + std::to_string(seq.perms.size()) + "\n";
  for (const auto& p : seq.perms) {
    for (int k = 0; k < p.size(); ++k) {
      if (k) out += ' ';
      out += std::to_string(p[k]);
    }
    out += '\n';
  }
  return out;
}

inline PermSequence read_perms(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<int>> rows;
  int n = -1;
  long m = -1;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::vector<long> vals;
    std::string tok;
    while (ls >> tok) {
      try {
        std::size_t used = 0;
        long v = std::stol(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        vals.push_back(v);
      } catch (const std::exception&) {
        throw Error(".perms line " + std::to_string(lineno) + ": not an integer: '" + tok + "'");
      }
    }
    if (n < 0) {
      if (vals.size() != 2 || vals[0] < 1 || vals[1] < 1)
        throw Error(".perms line " + std::to_string(lineno) + ": header must be 'n m' with n, m >= 1");
      n = static_cast<int>(vals[0]);
      m = vals[1];
      continue;
    }
    if (static_cast<int>(vals.size()) != n)
      throw Error(".perms line " + std::to_string(lineno) + ": expected " + std::to_string(n) + " labels, got " +
                  std::to_string(vals.size()));
    rows.emplace_back(vals.begin(), vals.end());
  }
  if (n < 0) throw Error(".perms: missing header");
  if (static_cast<long>(rows.size()) != m)
    throw Error(".perms: header announces " + std::to_string(m) + " permutations, found " +
                std::to_string(rows.size()));
  return make_sequence(std::move(rows));
}

// ---------------------------------------------------------------------------
// Rationals and arrangements.

inline Json rational_json(const Rational& r) { return to_string(r); }

inline Rational rational_from(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
  throw Error("expected a rational string or an integer, got " + j.dump());
}

inline Json rationals_json(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& r : v) a.push_back(rational_json(r));
  return a;
}

inline std::vector<Rational> rationals_from(const Json& j, const char* what) {
  if (!j.is_array()) throw Error(std::string(what) + " must be an array");
  std::vector<Rational> out;
  for (const auto& e : j) out.push_back(rational_from(e));
  return out;
}

inline Json arrangement_json(const PolyArrangement& arr) {
  Json j;
  j["n"] = arr.size();
  j["columns"] = rationals_json(arr.columns);
  Json y = Json::array();
  for (const auto& row : arr.y) y.push_back(rationals_json(row));
  j["y"] = y;
  j["left_slopes"] = rationals_json(arr.left_slopes);
  j["right_slopes"] = rationals_json(arr.right_slopes);
  if (arr.colored()) j["colors"] = arr.colors;
  return j;
}

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline PolyArrangement arrangement_from(const Json& j) {
  PolyArrangement arr;
  arr.columns = rationals_from(field(j, "columns"), "columns");
  const Json& y = field(j, "y");
  if (!y.is_array()) throw Error("y must be an array of rows");
  for (const auto& row : y) arr.y.push_back(rationals_from(row, "y row"));
  arr.left_slopes = rationals_from(field(j, "left_slopes"), "left_slopes");
  arr.right_slopes = rationals_from(field(j, "right_slopes"), "right_slopes");
  if (j.contains("colors")) arr.colors = j.at("colors").get<std::vector<std::string>>();
  if (j.contains("n") && j.at("n").get<int>() != arr.size())
    throw Error("field n = " + j.at("n").dump() + " but y has " + std::to_string(arr.size()) + " rows");
  check_structure(arr);
  return arr;
}

inline std::string write_arrangement(const PolyArrangement& arr) { return arrangement_json(arr).dump(2) + "\n"; }

inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(std::string("malformed JSON: ") + e.what());
  }
}

inline PolyArrangement read_arrangement(const std::string& text) { return arrangement_from(parse_json(text)); }

// ---------------------------------------------------------------------------
// Certificates: the full constraint system plus one multiplier per row, so a
// reader can re-verify without re-encoding.

inline lp::Origin origin_from(const std::string& s) {
  for (auto o : {lp::Origin::Ordering, lp::Origin::Approaching, lp::Origin::Anchoring, lp::Origin::Incidence,
                 lp::Origin::Other})
    if (s == lp::origin_name(o)) return o;
  throw Error("unknown constraint origin '" + s + "'");
}

inline Json certificate_json(const lp::LinearConstraintSystem& sys, const lp::FarkasCertificate& cert) {
  Json j;
  j["variables"] = sys.variable_count;
  Json rows = Json::array();
  for (const auto& c : sys.constraints) {
    Json terms = Json::array();
    for (const auto& t : c.terms) terms.push_back(Json::array({t.var, rational_json(t.coeff)}));
    rows.push_back({{"terms", terms},
                    {"relation", c.relation == lp::Relation::Equal ? "=" : ">="},
                    {"rhs", rational_json(c.rhs)},
                    {"origin", lp::origin_name(c.origin)}});
  }
  j["constraints"] = rows;
  j["multipliers"] = rationals_json(cert.multipliers);
  return j;
}

inline std::pair<lp::LinearConstraintSystem, lp::FarkasCertificate> certificate_from(const Json& j) {
  lp::LinearConstraintSystem sys;
  sys.variable_count = field(j, "variables").get<int>();
  for (const auto& row : field(j, "constraints")) {
    lp::Constraint c;
    for (const auto& t : field(row, "terms")) {
      if (!t.is_array() || t.size() != 2) throw Error("constraint term must be [variable, coefficient]");
      c.terms.push_back({t[0].get<int>(), rational_from(t[1])});
    }
    const auto rel = field(row, "relation").get<std::string>();
    if (rel != "=" && rel != ">=") throw Error("unknown relation '" + rel + "'");
    c.relation = rel == "=" ? lp::Relation::Equal : lp::Relation::GreaterEqual;
    c.rhs = rational_from(field(row, "rhs"));
    c.origin = row.contains("origin") ? origin_from(row.at("origin").get<std::string>()) : lp::Origin::Other;
    sys.constraints.push_back(std::move(c));
  }
  lp::FarkasCertificate cert{rationals_from(field(j, "multipliers"), "multipliers")};
  return {std::move(sys), std::move(cert)};
}

inline Json sequence_json(const PermSequence& seq) {
  Json a = Json::array();
  for (const auto& p : seq.perms) a.push_back(p.order());
  return a;
}

inline PermSequence sequence_from(const Json& j) {
  if (!j.is_array()) throw Error("a sequence must be an array of permutations");
  return make_sequence(j.get<std::vector<std::vector<int>>>());
}

/// .cert.json for a negative decision.
inline Json decision_certificate_json(const PermSequence& input, const Decision& d, EncodingMode mode) {
  if (!d.certificate || !d.encoding) throw Error("decision has no certificate");
  Json j = certificate_json(d.encoding->system, *d.certificate);
  j["status"] = "not_realizable";
  j["mode"] = mode_name(mode);
  j["encoding"] = d.encoding->exact ? "allowable" : "snapshots";
  j["input"] = sequence_json(input);
  return j;
}

// ---------------------------------------------------------------------------
// Configurations.

inline Json config_json(const GenConfig& cfg) {
  Json j;
  j["arrangement"] = arrangement_json(cfg.base);
  Json pts = Json::array();
  for (const auto& p : cfg.points) pts.push_back(Json::array({rational_json(p.x), rational_json(p.y)}));
  j["points"] = pts;
  Json inc = Json::array();
  for (const auto& pr : cfg.incidence) inc.push_back(Json::array({pr.a, pr.b}));
  j["incidence"] = inc;
  return j;
}

inline GenConfig config_from(const Json& j) {
  GenConfig cfg;
  cfg.base = arrangement_from(field(j, "arrangement"));
  for (const auto& p : field(j, "points")) {
    if (!p.is_array() || p.size() != 2) throw Error("a point must be [x, y]");
    cfg.points.push_back({rational_from(p[0]), rational_from(p[1])});
  }
  for (const auto& pr : field(j, "incidence")) {
    if (!pr.is_array() || pr.size() != 2) throw Error("an incidence entry must be [a, b]");
    int a = pr[0].get<int>(), b = pr[1].get<int>();
    cfg.incidence.push_back({std::min(a, b), std::max(a, b)});
  }
  return cfg;
}

// ---------------------------------------------------------------------------
// Files.

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
  if (!out) throw Error("write to '" + path + "' failed");
}

}  // namespace apl::io

#endif  // APL_IO_HPP
