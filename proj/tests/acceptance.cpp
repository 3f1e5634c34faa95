// Acceptance suite: one PASS/FAIL line per criterion, details indented.
// Exits non-zero when any criterion fails.

#include "apl/apl.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <numeric>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

using namespace apl;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Verdict {
  bool pass = true;
  std::ostringstream detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      pass = false;
      detail << "    failed: " << what << "\n";
    }
  }
};

int failures = 0;

void run(int id, const std::string& title, const std::function<void(Verdict&)>& body) {
  Verdict v;
  auto t = Clock::now();
  try {
    body(v);
  } catch (const std::exception& e) {
    v.pass = false;
    v.detail << "    exception: " << e.what() << "\n";
  }
  std::cout << (v.pass ? "PASS" : "FAIL") << " " << id << " " << title << " (" << std::fixed
            << std::setprecision(1) << seconds_since(t) << " s)\n"
            << v.detail.str() << std::flush;
  if (!v.pass) ++failures;
}

// Candidate mix for criteria 2 and 3: random snapshot lists, plus lists
// threaded through a known non-realizable pair so negatives are present.
std::vector<PermSequence> candidate_pool(int count) {
  std::mt19937_64 rng(20240607);
  const std::vector<std::vector<int>> hard1 = {{2, 3, 6, 1, 4, 5}, {4, 1, 2, 5, 6, 3}};
  const std::vector<std::vector<int>> hard2 = {{3, 6, 5, 2, 1, 4}, {5, 4, 1, 6, 3, 2}};
  std::vector<PermSequence> pool;
  for (int k = 0; k < count; ++k) {
    if (k % 10 == 9) {
      const int w = (k / 10) % 2;
      PermSequence core;
      core.n = 6;
      core.perms = {Permutation(hard1[w]), Permutation(hard2[w])};
      auto path = simple_completion(core);
      // Keep pi1 and pi2, add up to two more snapshots from the path.
      std::set<std::size_t> picks;
      for (std::size_t i = 0; i < path.perms.size(); ++i)
        if (path.perms[i] == core.perms[0] || path.perms[i] == core.perms[1]) picks.insert(i);
      for (int e = static_cast<int>(rng() % 3); e > 0; --e) picks.insert(rng() % path.perms.size());
      PermSequence sub;
      sub.n = 6;
      for (auto i : picks) sub.perms.push_back(path.perms[i]);
      pool.push_back(sub);
    } else {
      int n = 2 + static_cast<int>(rng() % 5);
      int m = 1 + static_cast<int>(rng() % 5);
      pool.push_back(random_candidate(n, m, rng));
    }
  }
  return pool;
}

// Orders of points sorted by y - s x as s sweeps every critical slope.
PermSequence rotating_direction_sequence(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end());
  const int n = static_cast<int>(pts.size());
  std::set<Rational> critical;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) critical.insert((pts[b].y - pts[a].y) / (pts[b].x - pts[a].x));
  std::vector<Rational> cs(critical.begin(), critical.end()), probes{cs.front() - 1};
  for (std::size_t k = 0; k + 1 < cs.size(); ++k) probes.push_back((cs[k] + cs[k + 1]) / 2);
  probes.push_back(cs.back() + 1);
  PermSequence seq;
  seq.n = n;
  for (const auto& s : probes) {
    std::vector<int> o(n);
    std::iota(o.begin(), o.end(), 1);
    std::sort(o.begin(), o.end(), [&](int a, int b) {
      return pts[a - 1].y - s * pts[a - 1].x < pts[b - 1].y - s * pts[b - 1].x;
    });
    seq.perms.emplace_back(o);
  }
  return seq;
}

bool is_simple_arrangement(const PolyArrangement& arr) {
  for (const auto& e : crossings(arr))
    if (e.lines.size() > 2) return false;
  return true;
}

// Triples whose three crossings are not separated by any other line.
std::set<std::array<int, 3>> brute_force_triangles(const PolyArrangement& arr) {
  std::set<std::array<int, 3>> out;
  const int n = arr.size();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) {
        std::array<Point, 3> v = {pair_crossing(arr, a, b), pair_crossing(arr, a, c), pair_crossing(arr, b, c)};
        bool empty = true;
        for (int l = 0; l < n && empty; ++l) {
          if (l == a || l == b || l == c) continue;
          int above = 0, below = 0;
          for (const auto& p : v) {
            Rational d = p.y - evaluate(arr, l, p.x);
            above += d > 0;
            below += d < 0;
          }
          empty = above == 3 || below == 3;
        }
        if (empty) out.insert({a, b, c});
      }
  return out;
}

PolyArrangement random_simple_arrangement(int n, std::mt19937_64& rng) {
  for (;;) {
    auto arr = rng() % 2 ? random_lines(n, rng()) : random_approaching(n, 2 + static_cast<int>(rng() % 4), rng());
    if (is_strictly_approaching(arr) && is_simple_arrangement(arr)) return arr;
  }
}

}  // namespace

int main() {
  std::cout << "Acceptance suite\n";

  run(1, "LP size: n*m variables, O(n^4) rows in O(n^3) variables; n = 6 decide under 60 s", [](Verdict& v) {
    std::mt19937_64 rng(1);
    for (int n = 4; n <= 8; ++n) {
      auto seq = random_simple_sequence(n, rng);
      const std::size_t m = seq.perms.size();
      v.require(m == static_cast<std::size_t>(binomial2(n) + 1), "m = C(n,2)+1");
      auto enc = encode(seq, EncodingMode::Full);
      auto c = enc.census();
      const std::size_t n4 = static_cast<std::size_t>(n) * n * n * n, n3 = static_cast<std::size_t>(n) * n * n;
      const std::size_t rows = enc.system.inequality_count();
      v.detail << "    n=" << n << " m=" << m << " variables=" << c.variables << " ordering=" << c.ordering
               << " approaching=" << c.approaching << " inequalities=" << rows << " (n^4=" << n4 << ")\n";
      v.require(c.variables == n * m, "variables = n*m at n = " + std::to_string(n));
      v.require(c.variables <= n3, "variables <= n^3 at n = " + std::to_string(n));
      v.require(rows <= n4, "inequalities <= n^4 at n = " + std::to_string(n));
      v.require(c.approaching == static_cast<std::size_t>(binomial2(n)) * (m - 1), "approaching rows C(n,2)(m-1)");
    }
    auto seq = random_simple_sequence(6, rng);
    auto t = Clock::now();
    auto d = decide_realizable(seq, EncodingMode::Full);
    double s = seconds_since(t);
    v.detail << "    decide n=6 m=" << seq.perms.size() << ": " << (d.realizable ? "realizable" : "not realizable")
             << " in " << s << " s\n";
    v.require(seq.perms.size() == 16, "m = 16");
    v.require(s < 60, "decide under 60 s");
  });

  const auto pool = candidate_pool(500);
  std::vector<int> full_answer(pool.size(), -1);

  run(2, "Soundness on 500 random candidates (n <= 6)", [&](Verdict& v) {
    int yes = 0, no_lp = 0, no_comb = 0;
    for (std::size_t k = 0; k < pool.size(); ++k) {
      const auto& sub = pool[k];
      auto d = decide_realizable(sub, EncodingMode::Full);
      full_answer[k] = d.realizable;
      if (d.realizable) {
        ++yes;
        bool ok = validate_approaching(*d.arrangement, true).ok() &&
                  contains_snapshots(sweep_sequence(*d.arrangement), d.encoding->snapshots);
        v.require(ok, "witness re-validation for candidate " + std::to_string(k));
      } else if (d.certificate) {
        ++no_lp;
        v.require(lp::verify_certificate(d.encoding->system, *d.certificate),
                  "certificate re-verification for candidate " + std::to_string(k));
        // Re-encode from scratch and check again.
        v.require(lp::verify_certificate(encode(sub, EncodingMode::Full).system, *d.certificate),
                  "certificate against a fresh encoding, candidate " + std::to_string(k));
      } else {
        ++no_comb;
        v.require(!validate_subcandidate(sub).ok(), "combinatorial rejection of a valid candidate");
      }
    }
    v.detail << "    realizable " << yes << ", infeasible with certificate " << no_lp << ", combinatorial " << no_comb
             << "\n";
    v.require(no_lp > 0, "the pool contains infeasible instances");
  });

  run(3, "FULL and REDUCED encodings agree on the same 500 candidates", [&](Verdict& v) {
    int disagree = 0;
    for (std::size_t k = 0; k < pool.size(); ++k) {
      auto d = decide_realizable(pool[k], EncodingMode::Reduced);
      if (d.certificate) v.require(lp::verify_certificate(d.encoding->system, *d.certificate), "reduced certificate");
      if (static_cast<int>(d.realizable) != full_answer[k]) ++disagree;
    }
    v.detail << "    disagreements: " << disagree << "\n";
    v.require(disagree == 0, "no disagreement");
  });

  run(4, "Three snapshots: LP feasible iff straight lines realize (id, pi1, pi2), n = 4 exhaustive", [](Verdict& v) {
    std::vector<Permutation> perms;
    std::vector<int> o{1, 2, 3, 4};
    do perms.emplace_back(o);
    while (std::next_permutation(o.begin(), o.end()));
    int triples = 0, feasible = 0, agree = 0;
    for (const auto& p1 : perms)
      for (const auto& p2 : perms) {
        PermSequence sub;
        sub.n = 4;
        sub.perms = {Permutation::identity(4), p1, p2};
        if (!validate_subcandidate(sub).ok()) continue;
        ++triples;
        auto d = decide_realizable(sub);
        bool lines_ok = false;
        if (d.realizable) {
          ++feasible;
          try {
            auto lines = lines_from_three_snapshots(*d.arrangement, Rational(2), Rational(3));
            lines_ok = true;
            for (std::size_t i = 0; i + 1 < lines.size(); ++i) lines_ok &= lines[i].slope < lines[i + 1].slope;
            lines_ok &= order_at(lines, Rational(2)) == p1 && order_at(lines, Rational(3)) == p2;
          } catch (const Error&) {
            lines_ok = false;
          }
        }
        agree += d.realizable == lines_ok;
      }
    v.detail << "    valid triples " << triples << ", feasible " << feasible << ", agreeing " << agree << "\n";
    v.require(agree == triples, "full agreement");
  });

  run(5, "Non-realizable triple: exhaustive n = 6 search, certificates, wedge augmentation", [](Verdict& v) {
    auto four = asinowski_search(4);
    v.detail << "    n=4: " << four.candidates << " candidates, " << four.witnesses.size() << " witnesses\n";
    v.require(four.exhausted && four.witnesses.empty(), "n = 4 has no witness");
    auto six = asinowski_search(6);
    v.detail << "    n=6: " << six.candidates << " candidates, " << six.examined << " examined, "
             << six.witnesses.size() << " witnesses\n";
    v.require(six.exhausted, "n = 6 run is exhaustive");
    v.require(!six.witnesses.empty(), "at least one witness at n = 6");
    for (const auto& w : six.witnesses) {
      v.detail << "      " << w.triple.perms[1].str() << " " << w.triple.perms[2].str() << "\n";
      v.require(lp::verify_certificate(encode(w.triple, EncodingMode::Reduced).system, w.certificate),
                "witness certificate verifies");
    }
    if (six.witnesses.empty()) return;
    auto augmented = wedge_augment(six.witnesses.front().triple);
    auto d = decide_realizable(augmented, EncodingMode::Reduced);
    v.detail << "    wedge augmentation: " << augmented.n << " lines, " << augmented.perms.size()
             << " permutations, " << (d.realizable ? "realizable" : "not realizable") << "\n";
    v.require(validate_allowable(augmented).ok() && is_simple_sequence(augmented), "augmented sequence is simple");
    v.require(!d.realizable && d.certificate && lp::verify_certificate(d.encoding->system, *d.certificate),
              "augmented sequence infeasible with verified certificate");
  });

  run(6, "Non-Pappus allowable sequence is realizable by approaching pseudo-lines", [](Verdict& v) {
    auto seq = non_pappus();
    auto d = decide_allowable(seq);
    v.require(d.realizable, "realizable");
    if (d.realizable) {
      v.require(validate_approaching(*d.arrangement, false).ok(), "witness is approaching");
      v.require(sweep_sequence(*d.arrangement) == seq, "witness is x-isomorphic to the sequence");
      v.detail << "    " << seq.n << " lines, " << seq.perms.size() - 1 << " sweep steps\n";
    }
  });

  run(7, "Bichromatic triangle on 100 random 2-colored arrangements (n <= 10)", [](Verdict& v) {
    std::mt19937_64 rng(7);
    int found = 0, census = 0;
    for (int t = 0; t < 100; ++t) {
      int n = 3 + t % 8;
      auto arr = random_simple_arrangement(n, rng);
      arr.colors.assign(n, "B");
      arr.colors[rng() % n] = "R";
      for (int i = 0; i < n; ++i)
        if (rng() % 2) arr.colors[i] = "R";
      if (std::count(arr.colors.begin(), arr.colors.end(), "B") == 0) arr.colors[0] = "B";
      auto res = bichromatic_triangle(arr);
      const auto& l = res.cell.lines;
      bool mixed = !(arr.colors[l[0]] == arr.colors[l[1]] && arr.colors[l[1]] == arr.colors[l[2]]);
      bool empty = true;
      for (int o = 0; o < n; ++o) {
        if (o == l[0] || o == l[1] || o == l[2]) continue;
        int above = 0, below = 0;
        for (const auto& p : res.cell.vertices) {
          Rational d = p.y - evaluate(arr, o, p.x);
          above += d > 0;
          below += d < 0;
        }
        empty &= above == 3 || below == 3;
      }
      v.require(mixed && empty, "instance " + std::to_string(t));
      found += mixed && empty;
      if (t % 5 == 0) {
        ++census;
        auto brute = brute_force_triangles(arr);
        std::set<std::array<int, 3>> fast;
        for (const auto& c : triangle_cells(arr)) fast.insert(c.lines);
        v.require(brute == fast, "brute-force census matches on instance " + std::to_string(t));
        v.require(brute.count(l) == 1, "found triangle is in the census, instance " + std::to_string(t));
      }
    }
    v.detail << "    verified " << found << "/100, census cross-checks " << census << "\n";
  });

  run(8, "Duality: worked example, 50 random configurations, primalize round trip n = 3, 4", [](Verdict& v) {
    auto worked = straight_config({{Rational(0), Rational(0)}, {Rational(1), Rational(3)}, {Rational(2), Rational(1)}});
    auto expected = make_sequence({{1, 2, 3}, {1, 3, 2}, {3, 1, 2}, {3, 2, 1}});
    auto wd = dualize(worked, DualFormula::Corrected);
    v.require(wd.direct && sweep_sequence(wd.arrangement) == expected, "worked example");
    std::mt19937_64 rng(8);
    int configs = 0;
    while (configs < 50) {
      int n = 2 + configs % 5;
      std::set<int> xs;
      while (static_cast<int>(xs.size()) < n) xs.insert(static_cast<int>(rng() % 61) - 30);
      std::vector<Point> pts;
      for (int x : xs) pts.push_back({Rational(x), Rational(static_cast<int>(rng() % 61) - 30)});
      GenConfig cfg;
      try {
        cfg = straight_config(pts);
      } catch (const Error&) {
        continue;  // collinear triple or parallel joins
      }
      ++configs;
      auto seq = config_sequence(cfg);
      auto res = dualize(cfg);
      v.require(sweep_sequence(res.arrangement) == seq, "dual sweep equals configuration sequence");
      v.require(rotating_direction_sequence(pts) == seq, "configuration sequence equals rotating-direction oracle");
    }
    int round_trips = 0, total = 0;
    for (int n : {3, 4})
      for (const auto& seq : all_simple_sequences(n)) {
        ++total;
        auto d = decide_allowable(seq);
        if (!d.realizable) {
          v.require(false, "simple sequence not realizable");
          continue;
        }
        auto cfg = primalize(*d.arrangement);
        bool ok = validate_config(cfg).ok() && config_sequence(cfg) == seq &&
                  sweep_sequence(dualize(cfg).arrangement) == seq;
        v.require(ok, "round trip for a simple sequence on " + std::to_string(n));
        round_trips += ok;
      }
    v.detail << "    random configurations 50, round trips " << round_trips << "/" << total << "\n";
  });

  run(9, "Flip graph connected under the approaching filter for n = 3, 4, 5", [](Verdict& v) {
    for (int n : {3, 4, 5}) {
      auto t = Clock::now();
      auto g = flip_graph(n, FlipFilter::Approaching);
      double s = seconds_since(t);
      v.detail << "    n=" << n << ": nodes " << g.nodes.size() << ", edges " << g.edges.size() << ", excluded "
               << g.excluded << ", connected " << (g.connected ? "yes" : "no") << ", " << s << " s\n";
      v.require(g.connected, "connected at n = " + std::to_string(n));
      if (n == 3) v.require(g.nodes.size() == 2 && g.edges.size() == 1, "n = 3 is two nodes and one edge");
      if (n == 5) v.require(s < 1800, "n = 5 under 30 min");
    }
  });

  run(10, "Counting constructions: bit recovery and superfactorial distinctness", [](Verdict& v) {
    const auto pairs3 = matousek_pairs(3).size();
    std::set<std::vector<bool>> profiles;
    for (unsigned mask = 0; mask < (1u << pairs3); ++mask) {
      std::vector<bool> bits(pairs3);
      for (std::size_t k = 0; k < pairs3; ++k) bits[k] = (mask >> k) & 1u;
      auto arr = matousek_family(3, bits);
      v.require(is_strictly_approaching(arr), "n = 3 output approaching");
      auto back = matousek_decode(arr, 3);
      v.require(back == bits, "n = 3 bit recovery");
      profiles.insert(back);
    }
    v.require(profiles.size() == (1u << pairs3), "n = 3 profiles distinct");
    std::mt19937_64 rng(10);
    int recovered = 0;
    for (int t = 0; t < 50; ++t) {
      std::vector<bool> bits(matousek_pairs(6).size());
      for (std::size_t k = 0; k < bits.size(); ++k) bits[k] = rng() & 1u;
      recovered += matousek_decode(matousek_family(6, bits), 6) == bits;
    }
    v.require(recovered == 50, "n = 6 bit recovery on 50 random vectors");
    std::set<std::vector<Permutation>> seqs;
    for (const auto& choice : superfactorial_choices(4)) seqs.insert(sweep_sequence(superfactorial_family(4, choice)).perms);
    v.detail << "    matousek n=3: " << profiles.size() << " profiles; n=6: " << recovered
             << "/50 recovered; superfactorial n=4: " << seqs.size() << " sequences (designed "
             << superfactorial_count(4) << ")\n";
    v.require(seqs.size() == superfactorial_count(4), "superfactorial count");
  });

  run(11, "Triangle census: 200 random approaching arrangements (n <= 8) have >= n-2 triangles", [](Verdict& v) {
    std::mt19937_64 rng(11);
    int below = 0;
    for (int t = 0; t < 200; ++t) {
      int n = 3 + t % 6;
      auto arr = random_simple_arrangement(n, rng);
      auto cells = triangle_cells(arr);
      if (static_cast<int>(cells.size()) < n - 2) {
        ++below;
        std::filesystem::create_directories("acceptance_counterexamples");
        io::write_file("acceptance_counterexamples/census_" + std::to_string(t) + ".arr.json",
                       io::write_arrangement(arr));
      }
    }
    v.detail << "    below n-2: " << below << (below ? " (archived in acceptance_counterexamples/)" : "") << "\n";
  });

  std::cout << (failures ? "FAILED " : "ALL PASSED ") << "(" << failures << " failing)\n";
  return failures ? 1 : 0;
}
