#pragma once

#include <string>
#include <vector>

#include "qg3d/csv.hpp"

namespace qg3d {

struct PlotOptions {
  int width = 800;
  int height = 500;
  std::string title;
  std::string x_column = "t";
  /// Divide each series by its first finite nonzero value.
  bool normalize = false;
};

/// Self-contained SVG with axes, tick labels, a legend and one <polyline> per
/// selected column. Throws FormatError for unknown columns.
std::string render_svg(const CsvTable& table, const std::vector<std::string>& columns, const PlotOptions& options = {});

}  // namespace qg3d
