#pragma once

// Static SVG illustration of a planar Monge configuration: shape outlines,
// the three homothety centers with (i,j) labels, dashed guide lines from
// the larger shape of each pair to its center, and the common line.

#include <string>

#include "monge/monge.hpp"
#include "monge/scenario.hpp"

namespace monge {

struct FigureOptions {
  double margin = 40.0;
  /// Pixel length of the longer side of the drawing area.
  double extent = 560.0;
};

/// Throws ScenarioError unless the scenario holds Euclidean shapes in the
/// plane; geometric failures surface as GeometryError.
std::string render_figure(const Json& scenario, const FigureOptions& options = {});

std::string render_figure(const MongeConfig<double>& config, const MongeReport<double>& report,
                          const FigureOptions& options = {});

}  // namespace monge
