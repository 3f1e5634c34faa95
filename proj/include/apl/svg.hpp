#ifndef APL_SVG_HPP
#define APL_SVG_HPP

// SVG drawing of a polygonal arrangement.

#include "apl/arrangement.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

namespace apl {

struct SvgStyle {
  int width = 640;
  int height = 480;
  int margin = 24;
  bool mark_crossings = true;
  bool labels = true;
  std::vector<TriangleCell> highlight;  // filled in light yellow
};

namespace detail {

inline std::string svg_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

inline std::string tag_color(const std::string& tag, int index) {
  static const std::map<std::string, std::string> named = {
      {"R", "#d62728"}, {"B", "#1f77b4"}, {"frame", "#7f7f7f"}, {"new", "#2ca02c"},
      {"h", "#1f77b4"}, {"p", "#d62728"}, {"v", "#2ca02c"}};
  if (auto it = named.find(tag); it != named.end()) return it->second;
  static const char* cycle[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  return cycle[index % 10];
}

}  // namespace detail

/// One <path> per pseudo-line, drawn over [xmin, xmax] where the window
/// covers every column and crossing with a margin on both sides. The
/// mapping is affine in the exact coordinates; only the final pixel values
/// are rounded.
inline std::string render_svg(const PolyArrangement& arr, const SvgStyle& style = {}) {
  check_structure(arr);
  auto events = crossings(arr);
  Rational lo = arr.columns.front(), hi = arr.columns.back();
  for (const auto& e : events) {
    lo = std::min(lo, e.x);
    hi = std::max(hi, e.x);
  }
  Rational pad = (hi - lo) / 8;
  if (pad == 0) pad = 1;
  lo -= pad;
  hi += pad;

  std::vector<Rational> xs{lo};
  for (const auto& c : arr.columns) xs.push_back(c);
  xs.push_back(hi);
  std::vector<std::vector<Rational>> ys(arr.size());
  Rational ylo, yhi;
  bool first = true;
  for (int i = 0; i < arr.size(); ++i)
    for (const auto& x : xs) {
      ys[i].push_back(evaluate(arr, i, x));
      const Rational& v = ys[i].back();
      if (first || v < ylo) ylo = v;
      if (first || v > yhi) yhi = v;
      first = false;
    }
  if (ylo == yhi) {
    ylo -= 1;
    yhi += 1;
  }
  const double w = style.width - 2.0 * style.margin, h = style.height - 2.0 * style.margin;
  auto px = [&](const Rational& x) { return style.margin + to_double((x - lo) / (hi - lo)) * w; };
  auto py = [&](const Rational& y) { return style.margin + to_double((yhi - y) / (yhi - ylo)) * h; };

  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(style.width) + "\" height=\"" +
         std::to_string(style.height) + "\" viewBox=\"0 0 " + std::to_string(style.width) + " " +
         std::to_string(style.height) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const auto& t : style.highlight) {
    out += "<polygon class=\"triangle\" fill=\"#ffe680\" stroke=\"none\" points=\"";
    for (int k = 0; k < 3; ++k) {
      if (k) out += ' ';
      out += detail::svg_number(px(t.vertices[k].x)) + "," + detail::svg_number(py(t.vertices[k].y));
    }
    out += "\"/>\n";
  }
  for (int i = 0; i < arr.size(); ++i) {
    const std::string color = detail::tag_color(arr.colored() ? arr.colors[i] : "", i);
    out += "<path class=\"line\" id=\"line" + std::to_string(i + 1) + "\" fill=\"none\" stroke=\"" + color +
           "\" stroke-width=\"1.5\" d=\"";
    for (std::size_t k = 0; k < xs.size(); ++k) {
      out += k ? " L " : "M ";
      out += detail::svg_number(px(xs[k])) + " " + detail::svg_number(py(ys[i][k]));
    }
    out += "\"/>\n";
    if (style.labels)
      out += "<text x=\"" + detail::svg_number(px(xs.front()) - 4) + "\" y=\"" +
             detail::svg_number(py(ys[i].front()) + 4) + "\" font-size=\"10\" text-anchor=\"end\">" +
             std::to_string(i + 1) + "</text>\n";
  }
  if (style.mark_crossings)
    for (const auto& e : events)
      out += "<circle class=\"crossing\" cx=\"" + detail::svg_number(px(e.x)) + "\" cy=\"" +
             detail::svg_number(py(e.y)) + "\" r=\"" + (e.lines.size() > 2 ? "4" : "2.5") + "\" fill=\"black\"/>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace apl

#endif  // APL_SVG_HPP
