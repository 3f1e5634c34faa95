// Command-line front end. Exit status: 0 success or realizable, 2 a
// mathematical negative (not realizable, invalid sequence), 1 usage or
// input error.

#include "apl/apl.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <random>
#include <sstream>

using namespace apl;

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kNegative = 2;

struct Outcome {
  int code = kOk;
};

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string stem(const std::string& path) {
  for (const char* ext : {".perms", ".arr.json", ".cfg.json", ".cert.json", ".json"})
    if (ends_with(path, ext)) return path.substr(0, path.size() - std::string(ext).size());
  return path;
}

// Writes to `path`, or to stdout when path is "-" or empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") std::cout << text;
  else io::write_file(path, text);
}

EncodingMode parse_mode(const std::string& s) { return s == "reduced" ? EncodingMode::Reduced : EncodingMode::Full; }

Point parse_point(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) throw Error("point must be written x,y: '" + s + "'");
  return {parse_rational(s.substr(0, comma)), parse_rational(s.substr(comma + 1))};
}

std::string line_list(const std::array<int, 3>& l) {
  return std::to_string(l[0] + 1) + " " + std::to_string(l[1] + 1) + " " + std::to_string(l[2] + 1);
}

int write_decision(const PermSequence& seq, const Decision& d, EncodingMode mode, const std::string& out_arg,
                   const std::string& in_path) {
  if (d.realizable) {
    const std::string out = out_arg.empty() ? stem(in_path) + ".arr.json" : out_arg;
    emit(out, io::write_arrangement(*d.arrangement));
    std::cerr << "realizable";
    if (out != "-") std::cerr << ": witness written to " << out;
    std::cerr << "\n";
    return kOk;
  }
  const std::string out = out_arg.empty() ? stem(in_path) + ".cert.json" : out_arg;
  io::Json j;
  if (d.certificate) {
    j = io::decision_certificate_json(seq, d, mode);
  } else {
    j["status"] = "not_realizable";
    j["reason"] = d.reason;
    j["input"] = io::sequence_json(seq);
  }
  emit(out, j.dump(2) + "\n");
  if (!d.reason.empty()) std::cerr << "not realizable (combinatorial):\n" << d.reason;
  else std::cerr << "not realizable: Farkas certificate\n";
  if (out != "-") std::cerr << "written to " << out << "\n";
  return kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approaching pseudo-line arrangements: realizability, construction, sweeps."};
  app.require_subcommand(1);
  Outcome result;

  // validate
  std::string v_in, v_kind = "auto";
  auto* validate = app.add_subcommand("validate", "Check a .perms file (allowable or suballowable)");
  validate->add_option("input", v_in, ".perms file")->required();
  validate->add_option("--kind", v_kind, "allowable, sub or auto")->check(CLI::IsMember({"auto", "allowable", "sub"}));
  validate->callback([&] {
    auto seq = io::read_perms(io::read_file(v_in));
    auto full = validate_allowable(seq);
    auto sub = validate_subcandidate(seq);
    bool ok = false;
    if (v_kind == "allowable" || (v_kind == "auto" && full.ok())) {
      ok = full.ok();
      std::cout << (ok ? "valid allowable sequence" : "not an allowable sequence:\n" + full.str());
      if (ok) std::cout << (is_simple_sequence(seq) ? " (simple)" : " (non-simple)");
    } else {
      ok = sub.ok();
      std::cout << (ok ? "valid suballowable candidate" : "not pairwise monotone:\n" + sub.str());
    }
    std::cout << "\n";
    result.code = ok ? kOk : kNegative;
  });

  // decide / realize
  std::string d_in, d_out, d_mode = "full";
  auto* decide = app.add_subcommand("decide", "Realizability of snapshots by approaching pseudo-lines");
  decide->add_option("input", d_in, ".perms file")->required();
  decide->add_option("-o,--out", d_out, "output file (default: input stem + .arr.json/.cert.json, '-' for stdout)");
  decide->add_option("--mode", d_mode, "LP encoding")->check(CLI::IsMember({"full", "reduced"}));
  decide->callback([&] {
    auto seq = io::read_perms(io::read_file(d_in));
    auto d = decide_realizable(seq, parse_mode(d_mode));
    result.code = write_decision(seq, d, parse_mode(d_mode), d_out, d_in);
  });

  std::string r_in, r_out, r_mode = "full";
  auto* realize = app.add_subcommand("realize", "x-isomorphic approaching realization of an allowable sequence");
  realize->add_option("input", r_in, ".perms file with a full allowable sequence")->required();
  realize->add_option("-o,--out", r_out, "output file");
  realize->add_option("--mode", r_mode, "LP encoding")->check(CLI::IsMember({"full", "reduced"}));
  realize->callback([&] {
    auto seq = io::read_perms(io::read_file(r_in));
    auto d = decide_allowable(seq, parse_mode(r_mode));
    result.code = write_decision(seq, d, parse_mode(r_mode), r_out, r_in);
  });

  // sweep
  std::string s_in, s_out;
  auto* sweep = app.add_subcommand("sweep", "Allowable sequence of an arrangement");
  sweep->add_option("input", s_in, ".arr.json file")->required();
  sweep->add_option("-o,--out", s_out, ".perms output (default stdout)");
  sweep->callback([&] {
    auto arr = io::read_arrangement(io::read_file(s_in));
    auto report = validate_approaching(arr, false);
    if (!report.ok()) std::cerr << "warning: arrangement is not approaching:\n" << report.str();
    emit(s_out, io::write_perms(sweep_sequence(arr)));
  });

  // dual / primal
  std::string du_in, du_out, du_formula = "corrected";
  auto* dual = app.add_subcommand("dual", "Dual approaching arrangement of a configuration (.cfg.json)");
  dual->add_option("input", du_in, ".cfg.json file")->required();
  dual->add_option("-o,--out", du_out, ".arr.json output (default stdout)");
  dual->add_option("--formula", du_formula, "corrected or verbatim")
      ->check(CLI::IsMember({"corrected", "verbatim"}));
  dual->callback([&] {
    auto cfg = io::config_from(io::parse_json(io::read_file(du_in)));
    auto report = validate_config(cfg);
    if (!report.ok()) throw Error("invalid configuration:\n" + report.str());
    auto res = dualize(cfg, du_formula == "verbatim" ? DualFormula::Verbatim : DualFormula::Corrected);
    if (!res.diagnostic.empty()) std::cerr << res.diagnostic << "\n";
    if (!res.direct) std::cerr << "dual built by the LP fallback\n";
    emit(du_out, io::write_arrangement(res.arrangement));
    result.code = res.matches ? kOk : kNegative;
  });

  std::string pr_in, pr_out;
  auto* primal = app.add_subcommand("primal", "Configuration whose dual is x-isomorphic to the input");
  primal->add_option("input", pr_in, ".arr.json (strictly approaching) or .perms (simple sequence)")->required();
  primal->add_option("-o,--out", pr_out, ".cfg.json output (default stdout)");
  primal->callback([&] {
    const auto text = io::read_file(pr_in);
    PrimalStats stats;
    GenConfig cfg = ends_with(pr_in, ".perms") ? primalize_sequence(io::read_perms(text), &stats)
                                               : primalize(io::read_arrangement(text), &stats);
    std::cerr << "LP attempts: " << stats.attempts << (stats.strict ? " (strict)" : "") << "\n";
    emit(pr_out, io::config_json(cfg).dump(2) + "\n");
  });

  // extend
  std::string e_in, e_out, e_op = "levi", e_p, e_q, e_side = "bottom", e_color = "new";
  std::string e_lambda = "1/2", e_delta = "1", e_from, e_to;
  int e_index = 1;
  auto* extend = app.add_subcommand("extend", "Add a pseudo-line to an approaching arrangement");
  extend->add_option("input", e_in, ".arr.json file")->required();
  extend->add_option("-o,--out", e_out, ".arr.json output (default stdout)");
  extend->add_option("--op", e_op, "levi, convex, extreme or frame")
      ->check(CLI::IsMember({"levi", "convex", "extreme", "frame"}));
  extend->add_option("--p", e_p, "levi: first point x,y");
  extend->add_option("--q", e_q, "levi: second point x,y");
  extend->add_option("--index", e_index, "convex: insert between lines index and index+1 (1-based)");
  extend->add_option("--lambda", e_lambda, "convex: weight of the upper line");
  extend->add_option("--side", e_side, "extreme: top or bottom")->check(CLI::IsMember({"top", "bottom"}));
  extend->add_option("--delta", e_delta, "extreme: positive offset factor");
  extend->add_option("--from", e_from, "frame: left end of the window");
  extend->add_option("--to", e_to, "frame: right end of the window");
  extend->add_option("--color", e_color, "tag of the new line");
  extend->callback([&] {
    auto arr = io::read_arrangement(io::read_file(e_in));
    PolyArrangement out;
    if (e_op == "levi") {
      if (e_p.empty() || e_q.empty()) throw Error("levi needs --p and --q");
      auto res = levi_extension(arr, parse_point(e_p), parse_point(e_q), e_color);
      std::cerr << "new line " << res.new_line + 1;
      if (res.copy) std::cerr << " (vertical translate of line " << res.parallel_to + 1 << ")";
      std::cerr << "\n";
      out = res.arrangement;
    } else if (e_op == "convex") {
      out = convex_combination(arr, e_index - 1, parse_rational(e_lambda), e_color);
    } else if (e_op == "extreme") {
      out = extend_extreme(arr, parse_rational(e_delta), e_side == "top" ? Side::Top : Side::Bottom, e_color);
    } else {
      if (e_from.empty() || e_to.empty()) throw Error("frame needs --from and --to");
      out = bounding_frame(arr, parse_rational(e_from), parse_rational(e_to));
    }
    emit(e_out, io::write_arrangement(out));
  });

  // bichromatic / triangles
  std::string b_in, b_svg;
  auto* bichromatic = app.add_subcommand("bichromatic", "Find a triangle bounded by lines of both colors");
  bichromatic->add_option("input", b_in, ".arr.json with two color tags")->required();
  bichromatic->add_option("--svg", b_svg, "also render the arrangement with the triangle highlighted");
  bichromatic->callback([&] {
    auto arr = io::read_arrangement(io::read_file(b_in));
    auto res = bichromatic_triangle(arr);
    const auto& l = res.cell.lines;
    std::cout << "triangle: lines " << line_list(l) << " (" << arr.colors[l[0]] << arr.colors[l[1]]
              << arr.colors[l[2]] << ")\n";
    std::cout << "found by moving class " << split_colors(arr).moving_tag << " " << direction_name(res.direction)
              << " by t = " << to_string(res.event.t) << (res.perturbed ? " after separating ties" : "") << "\n";
    for (const auto& v : res.cell.vertices) std::cout << "vertex " << to_string(v.x) << " " << to_string(v.y) << "\n";
    if (!b_svg.empty()) {
      SvgStyle style;
      style.highlight = {res.cell};
      io::write_file(b_svg, render_svg(arr, style));
    }
  });

  std::string t_in;
  auto* triangles = app.add_subcommand("triangles", "List triangular cells of a simple arrangement");
  triangles->add_option("input", t_in, ".arr.json file")->required();
  triangles->callback([&] {
    auto arr = io::read_arrangement(io::read_file(t_in));
    auto cells = triangle_cells(arr);
    std::cout << cells.size() << " triangles (n - 2 = " << arr.size() - 2 << ")\n";
    for (const auto& c : cells) std::cout << line_list(c.lines) << "\n";
  });

  // flipgraph
  int f_n = 4;
  std::string f_filter = "approaching", f_out;
  auto* flip = app.add_subcommand("flipgraph", "Triangle-flip graph on commutation classes");
  flip->add_option("--n", f_n, "number of pseudo-lines (2..7)")->required();
  flip->add_option("--filter", f_filter, "all or approaching")->check(CLI::IsMember({"all", "approaching"}));
  flip->add_option("-o,--out", f_out, "adjacency list output");
  flip->callback([&] {
    auto g = flip_graph(f_n, f_filter == "all" ? FlipFilter::All : FlipFilter::Approaching);
    std::cout << "n = " << g.n << "\nclasses: " << g.total_classes << "\nreduced words: " << g.reduced_words
              << "\nnodes: " << g.nodes.size() << "\nexcluded by filter: " << g.excluded
              << "\nedges: " << g.edges.size() << "\nconnected: " << (g.connected ? "yes" : "no") << "\n";
    if (!f_out.empty()) {
      std::ostringstream os;
      os << "# node: index, canonical crossing word\n";
      for (std::size_t k = 0; k < g.nodes.size(); ++k) {
        os << "node " << k;
        for (const auto& pr : g.nodes[k]) os << ' ' << pr.a << pr.b;
        os << '\n';
      }
      os << "# edge: node node, flipped triangle\n";
      for (std::size_t k = 0; k < g.edges.size(); ++k)
        os << "edge " << g.edges[k].first << ' ' << g.edges[k].second << ' ' << g.edge_labels[k][0] << ' '
           << g.edge_labels[k][1] << ' ' << g.edge_labels[k][2] << '\n';
      io::write_file(f_out, os.str());
    }
    result.code = g.connected ? kOk : kNegative;
  });

  // generate
  std::string g_kind, g_out, g_bits, g_choices, g_in, g_points;
  int g_n = 4, g_columns = 0, g_length = 3;
  std::uint64_t g_seed = 1;
  auto* generate = app.add_subcommand("generate", "Generate arrangements or sequences");
  generate->add_option("kind", g_kind, "pencil, random, matousek, superfactorial, nonpappus, wedge, candidate or config")
      ->required()
      ->check(CLI::IsMember({"pencil", "random", "matousek", "superfactorial", "nonpappus", "wedge", "candidate", "config"}));
  generate->add_option("--n", g_n, "number of lines");
  generate->add_option("--seed", g_seed, "random seed");
  generate->add_option("--columns", g_columns, "random: polygonal with this many columns (0 = straight lines)");
  generate->add_option("--bits", g_bits, "matousek: one 0/1 per pair (i,j), i+j <= n (default: random by seed)");
  generate->add_option("--choices", g_choices,
                       "superfactorial: permutations for j = 1..n-1 separated by ';', e.g. '21;1'");
  generate->add_option("--input", g_in, "wedge: .perms with (id, pi1, pi2)");
  generate->add_option("--length", g_length, "candidate: number of snapshots");
  generate->add_option("--points", g_points, "config: points x,y separated by ';' (distinct x)");
  generate->add_option("-o,--out", g_out, "output file (default stdout)");
  generate->callback([&] {
    std::mt19937_64 rng(g_seed);
    if (g_kind == "pencil") {
      emit(g_out, io::write_arrangement(pencil(g_n)));
    } else if (g_kind == "random") {
      emit(g_out, io::write_arrangement(g_columns > 0 ? random_approaching(g_n, g_columns, g_seed)
                                                      : random_lines(g_n, g_seed)));
    } else if (g_kind == "matousek") {
      std::vector<bool> bits(matousek_pairs(g_n).size());
      if (!g_bits.empty()) {
        if (g_bits.size() != bits.size())
          throw Error("--bits needs " + std::to_string(bits.size()) + " digits for n = " + std::to_string(g_n));
        for (std::size_t k = 0; k < bits.size(); ++k) {
          if (g_bits[k] != '0' && g_bits[k] != '1') throw Error("--bits may only contain 0 and 1");
          bits[k] = g_bits[k] == '1';
        }
      } else {
        for (std::size_t k = 0; k < bits.size(); ++k) bits[k] = rng() & 1u;
      }
      emit(g_out, io::write_arrangement(matousek_family(g_n, bits)));
    } else if (g_kind == "superfactorial") {
      std::vector<std::vector<int>> choices;
      if (!g_choices.empty()) {
        std::stringstream ss(g_choices);
        std::string part;
        while (std::getline(ss, part, ';')) {
          std::vector<int> pi;
          for (char c : part)
            if (c >= '1' && c <= '9') pi.push_back(c - '0');
            else if (c != ' ') throw Error("--choices: unexpected character '" + std::string(1, c) + "'");
          choices.push_back(pi);
        }
      } else {
        for (int j = 1; j < g_n; ++j) {
          std::vector<int> pi(g_n - j);
          std::iota(pi.begin(), pi.end(), 1);
          std::shuffle(pi.begin(), pi.end(), rng);
          choices.push_back(pi);
        }
      }
      emit(g_out, io::write_arrangement(superfactorial_family(g_n, choices)));
    } else if (g_kind == "nonpappus") {
      emit(g_out, io::write_perms(non_pappus()));
    } else if (g_kind == "wedge") {
      if (g_in.empty()) throw Error("wedge needs --input");
      emit(g_out, io::write_perms(wedge_augment(io::read_perms(io::read_file(g_in)))));
    } else if (g_kind == "config") {
      if (g_points.empty()) throw Error("config needs --points");
      std::vector<Point> pts;
      std::stringstream ss(g_points);
      std::string part;
      while (std::getline(ss, part, ';')) pts.push_back(parse_point(part));
      emit(g_out, io::config_json(straight_config(pts)).dump(2) + "\n");
    } else {
      emit(g_out, io::write_perms(random_candidate(g_n, g_length, rng)));
    }
  });

  // search
  std::string se_kind, se_out;
  int se_n = 6;
  std::size_t se_budget = 0;
  auto* search = app.add_subcommand("search", "Search for non-realizable triples (id, pi1, pi2)");
  search->add_option("kind", se_kind, "asinowski")->required()->check(CLI::IsMember({"asinowski"}));
  search->add_option("--n", se_n, "number of lines");
  search->add_option("--budget", se_budget, "maximum number of LPs (0 = exhaustive)");
  search->add_option("-o,--out", se_out, "witness list (JSON)");
  search->callback([&] {
    auto res = asinowski_search(se_n, se_budget);
    std::cout << "n = " << res.n << ", candidates " << res.candidates << ", examined " << res.examined
              << (res.exhausted ? " (exhaustive)" : " (budget reached)") << ", witnesses " << res.witnesses.size()
              << "\n";
    io::Json j;
    j["n"] = res.n;
    j["candidates"] = res.candidates;
    j["examined"] = res.examined;
    j["exhausted"] = res.exhausted;
    j["witnesses"] = io::Json::array();
    for (const auto& w : res.witnesses) {
      std::cout << w.triple.perms[1].str() << " " << w.triple.perms[2].str() << "\n";
      auto enc = encode(w.triple, EncodingMode::Reduced);
      io::Json cert = io::certificate_json(enc.system, w.certificate);
      cert["input"] = io::sequence_json(w.triple);
      j["witnesses"].push_back(cert);
    }
    if (res.witnesses.empty() && !res.exhausted) std::cout << "inconclusive: budget exhausted without a witness\n";
    if (!se_out.empty()) io::write_file(se_out, j.dump(2) + "\n");
  });

  // render
  std::string re_in, re_out;
  bool re_triangles = false, re_no_crossings = false;
  int re_width = 640, re_height = 480;
  auto* render = app.add_subcommand("render", "Draw an arrangement as SVG");
  render->add_option("input", re_in, ".arr.json file")->required();
  render->add_option("-o,--out", re_out, "SVG output (default stdout)");
  render->add_flag("--triangles", re_triangles, "highlight triangular cells (simple arrangements)");
  render->add_flag("--no-crossings", re_no_crossings, "omit crossing markers");
  render->add_option("--width", re_width, "pixels");
  render->add_option("--height", re_height, "pixels");
  render->callback([&] {
    auto arr = io::read_arrangement(io::read_file(re_in));
    SvgStyle style;
    style.width = re_width;
    style.height = re_height;
    style.mark_crossings = !re_no_crossings;
    if (re_triangles) style.highlight = triangle_cells(arr);
    emit(re_out, render_svg(arr, style));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return result.code;
}
