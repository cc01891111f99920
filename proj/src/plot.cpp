#include "pldyn/plot.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace pldyn {

namespace {

constexpr double kMargin = 60;
const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c",
                               "#9467bd", "#ff7f0e", "#8c564b"};

std::string fixed(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

class Svg {
 public:
  Svg(double w, double h) : w_(w), h_(h) {}

  void line(double x1, double y1, double x2, double y2,
            const std::string& stroke, double width = 1) {
    body_ << "<line x1=\"" << fixed(x1) << "\" y1=\"" << fixed(y1)
          << "\" x2=\"" << fixed(x2) << "\" y2=\"" << fixed(y2)
          << "\" stroke=\"" << stroke << "\" stroke-width=\"" << fixed(width)
          << "\"/>\n";
  }
  void polyline(const std::vector<std::pair<double, double>>& pts,
                const std::string& stroke) {
    body_ << "<polyline fill=\"none\" stroke=\"" << stroke
          << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      body_ << (i ? " " : "") << fixed(pts[i].first) << ','
            << fixed(pts[i].second);
    }
    body_ << "\"/>\n";
  }
  void circle(double x, double y, double r, const std::string& fill) {
    body_ << "<circle cx=\"" << fixed(x) << "\" cy=\"" << fixed(y)
          << "\" r=\"" << fixed(r) << "\" fill=\"" << fill << "\"/>\n";
  }
  void rect(double x, double y, double w, double h, const std::string& fill,
            const std::string& stroke = "none") {
    body_ << "<rect x=\"" << fixed(x) << "\" y=\"" << fixed(y) << "\" width=\""
          << fixed(w) << "\" height=\"" << fixed(h) << "\" fill=\"" << fill
          << "\" stroke=\"" << stroke << "\"/>\n";
  }
  void text(double x, double y, const std::string& s, int size = 11,
            const std::string& anchor = "start",
            const std::string& fill = "#000") {
    body_ << "<text x=\"" << fixed(x) << "\" y=\"" << fixed(y)
          << "\" font-family=\"monospace\" font-size=\"" << size
          << "\" text-anchor=\"" << anchor << "\" fill=\"" << fill << "\">"
          << escape(s) << "</text>\n";
  }
  [[nodiscard]] std::string str() const {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(w_, 0)
        << "\" height=\"" << fixed(h_, 0) << "\" viewBox=\"0 0 "
        << fixed(w_, 0) << ' ' << fixed(h_, 0) << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n"
        << body_.str() << "</svg>\n";
    return out.str();
  }

 private:
  double w_, h_;
  std::ostringstream body_;
};

std::string label(const Rational& r) {
  return r.str() + " (" + fixed(r.approx(), 6) + ")";
}

const json& require(const json& j, const std::string& key,
                    const std::string& what) {
  if (!j.is_object() || !j.contains(key) || j[key].is_null()) {
    throw PlotError("report has no " + what);
  }
  return j[key];
}

// Shade from white to dark blue.
std::string shade(double t) {
  t = std::clamp(t, 0.0, 1.0);
  auto c = [&](int from, int to) {
    return static_cast<int>(from + (to - from) * t + 0.5);
  };
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c(255, 8), c(255, 48),
                c(255, 107));
  return buf;
}

std::string svg_orbit(const json& orbit) {
  const auto& levels = require(orbit, "hit_by_length", "orbit levels");
  std::size_t n = 0;
  for (const auto& level : levels) {
    for (const auto& c : level) n = std::max(n, c.get<std::size_t>() + 1);
  }
  if (orbit.contains("n_cells")) n = orbit["n_cells"].get<std::size_t>();
  n = std::max<std::size_t>(n, 1);
  const std::size_t rows = std::max<std::size_t>(levels.size(), 1);
  const double cw = std::max(4.0, 640.0 / static_cast<double>(n));
  const double rh = std::max(4.0, 400.0 / static_cast<double>(rows));
  const double w = 2 * kMargin + cw * static_cast<double>(n);
  const double h = 2 * kMargin + rh * static_cast<double>(rows);
  Svg svg(w, h);
  svg.text(w / 2, kMargin / 2,
           "orbit of " + orbit.value("origin", std::string("?")) +
               ": cells hit by word length",
           13, "middle");
  for (std::size_t r = 0; r < levels.size(); ++r) {
    for (const auto& c : levels[r]) {
      svg.rect(kMargin + cw * static_cast<double>(c.get<std::size_t>()),
               kMargin + rh * static_cast<double>(r), cw, rh, "#08306b");
    }
  }
  svg.rect(kMargin, kMargin, cw * static_cast<double>(n),
           rh * static_cast<double>(rows), "none", "#000");
  svg.text(w / 2, h - kMargin / 3, "cell (0 .. " + std::to_string(n - 1) + ")",
           11, "middle");
  svg.text(kMargin / 4, kMargin + 10, "|w| = 1", 10);
  svg.text(kMargin / 4, h - kMargin, "|w| = " + std::to_string(levels.size()),
           10);
  return svg.str();
}

std::string svg_heatmap(const json& sens) {
  const auto& entries = require(sens, "entries", "sensitivity entries");
  const auto& radii = require(sens, "radii", "sensitivity radii");
  const std::size_t n = sens.value("n_cells", std::size_t{0});
  const std::size_t nr = radii.size();
  if (n == 0 || nr == 0) throw PlotError("report has no sensitivity grid");
  double vmax = 0;
  for (const auto& e : entries) {
    vmax = std::max(
        vmax, Rational::parse(e["best_separation"].get<std::string>()).approx());
  }
  if (vmax <= 0) vmax = 1;
  const double cw = std::max(6.0, 640.0 / static_cast<double>(n));
  const double rh = 40;
  const double w = 2 * kMargin + 80 + cw * static_cast<double>(n);
  const double h = 2 * kMargin + rh * static_cast<double>(nr) + 30;
  Svg svg(w, h);
  svg.text(w / 2, kMargin / 2,
           "best separation per (cell, radius), delta = " +
               sens.value("delta", std::string("?")) + ", max = " +
               fixed(vmax, 6),
           13, "middle");
  const double x0 = kMargin + 80;
  for (const auto& e : entries) {
    std::size_t cell = e["cell"].get<std::size_t>();
    std::size_t r = 0;
    while (r < nr && radii[r] != e["radius"]) ++r;
    double v =
        Rational::parse(e["best_separation"].get<std::string>()).approx();
    svg.rect(x0 + cw * static_cast<double>(cell),
             kMargin + rh * static_cast<double>(r), cw, rh, shade(v / vmax),
             e["witness"].is_null() ? "none" : "#e6550d");
  }
  for (std::size_t r = 0; r < nr; ++r) {
    svg.text(x0 - 6, kMargin + rh * (static_cast<double>(r) + 0.6),
             "r = " + radii[r].get<std::string>(), 11, "end");
  }
  svg.text(x0 + cw * static_cast<double>(n) / 2,
           kMargin + rh * static_cast<double>(nr) + 20,
           "cell (0 .. " + std::to_string(n - 1) +
               "); outlined entries have a witness",
           11, "middle");
  return svg.str();
}

}  // namespace

std::vector<std::string> plot_kinds() {
  return {"map-graph", "orbit", "separation-heatmap"};
}

std::string svg_map_graph(const SystemDef& system) {
  const double side = 560;
  const double w = 2 * kMargin + side + 160, h = 2 * kMargin + side;
  Svg svg(w, h);
  auto px = [&](const Rational& x) { return kMargin + x.approx() * side; };
  auto py = [&](const Rational& y) {
    return kMargin + (1 - y.approx()) * side;
  };
  svg.rect(kMargin, kMargin, side, side, "none", "#000");
  svg.line(kMargin, kMargin + side, kMargin + side, kMargin, "#bbb");
  svg.text(kMargin + side / 2, kMargin / 2,
           escape(system.name) + " (" + to_string(system.space) + ")", 14,
           "middle");
  svg.text(kMargin, kMargin + side + 16, "0", 11, "middle");
  svg.text(kMargin + side, kMargin + side + 16, "1", 11, "middle");
  svg.text(kMargin - 8, kMargin + 4, "1", 11, "end");

  for (std::size_t g = 0; g < system.generators.size(); ++g) {
    const std::string color = kColors[g % std::size(kColors)];
    const auto& pts = system.generators[g].breakpoints();
    if (system.space == Space::interval) {
      std::vector<std::pair<double, double>> line;
      for (const auto& p : pts) line.emplace_back(px(p.x), py(p.y));
      svg.polyline(line, color);
    } else {
      // Draw the lift mod 1, breaking it where it crosses an integer.
      for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        std::vector<Breakpoint> cuts{pts[i]};
        const auto& a = pts[i];
        const auto& b = pts[i + 1];
        if (a.y != b.y) {
          long k_lo = floor_int(min(a.y, b.y)) + 1;
          long k_hi = ceil_int(max(a.y, b.y)) - 1;
          std::vector<Breakpoint> mids;
          for (long k = k_lo; k <= k_hi; ++k) {
            Rational t = a.x + (Rational(k) - a.y) * (b.x - a.x) / (b.y - a.y);
            mids.push_back({t, Rational(k)});
          }
          if (b.y < a.y) std::reverse(mids.begin(), mids.end());
          cuts.insert(cuts.end(), mids.begin(), mids.end());
        }
        cuts.push_back(b);
        for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
          Rational base(floor_int(min(cuts[j].y, cuts[j + 1].y)));
          svg.polyline({{px(cuts[j].x), py(cuts[j].y - base)},
                        {px(cuts[j + 1].x), py(cuts[j + 1].y - base)}},
                       color);
        }
      }
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
      Rational y = normalize_point(system.space, pts[i].y);
      svg.circle(px(pts[i].x), py(y), 3.5, color);
      svg.text(px(pts[i].x) + 6, py(y) - 6 - 12 * static_cast<double>(g),
               "(" + label(pts[i].x) + ", " + label(y) + ")", 9, "start",
               color);
    }
    svg.text(kMargin + side + 20, kMargin + 20 + 18 * static_cast<double>(g),
             system.letter_name(g) + " : " + std::to_string(pts.size()) +
                 " breakpoints",
             12, "start", color);
  }
  return svg.str();
}

std::string render_plot(const json& report, const std::string& kind) {
  if (kind == "map-graph") {
    return svg_map_graph(system_from_json(require(report, "system", "system")));
  }
  const auto& checks = require(report, "checks", "checks");
  if (kind == "orbit") {
    json orbit = require(checks, "orbit", "orbit section (run with --point)");
    if (!orbit.contains("n_cells") && report.contains("parameters")) {
      orbit["n_cells"] = report["parameters"].value("grid", 0);
    }
    return svg_orbit(orbit);
  }
  if (kind == "separation-heatmap") {
    return svg_heatmap(require(checks, "sensitivity", "sensitivity section"));
  }
  throw PlotError("unknown plot kind \"" + kind +
                  "\" (expected map-graph, orbit or separation-heatmap)");
}

}  // namespace pldyn
