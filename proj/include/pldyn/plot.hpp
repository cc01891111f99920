// Standalone SVG renderings of analysis reports.

#ifndef PLDYN_PLOT_HPP_
#define PLDYN_PLOT_HPP_

#include <stdexcept>
#include <string>
#include <vector>

#include "pldyn/report.hpp"

namespace pldyn {

class PlotError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// "map-graph", "orbit", "separation-heatmap".
std::vector<std::string> plot_kinds();

// Reads report["system"], report["checks"]["orbit"] or
// report["checks"]["sensitivity"] depending on the kind. Throws PlotError
// when the report lacks them.
std::string render_plot(const json& report, const std::string& kind);

std::string svg_map_graph(const SystemDef& system);

}  // namespace pldyn

#endif  // PLDYN_PLOT_HPP_
