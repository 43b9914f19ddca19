#include "qg3d/svg_plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "qg3d/error.hpp"

namespace qg3d {

namespace {

constexpr std::array<const char*, 8> palette{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                             "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

}  // namespace

std::string render_svg(const CsvTable& table, const std::vector<std::string>& columns, const PlotOptions& opt) {
  const std::size_t xc = table.column(opt.x_column);
  std::vector<std::size_t> ycols;
  for (const auto& c : columns) ycols.push_back(table.column(c));

  std::vector<std::vector<double>> series(ycols.size());
  for (std::size_t s = 0; s < ycols.size(); ++s) {
    double scale = 1.0;
    if (opt.normalize) {
      for (const auto& row : table.rows) {
        const double v = row[ycols[s]];
        if (std::isfinite(v) && v != 0.0) {
          scale = v;
          break;
        }
      }
    }
    for (const auto& row : table.rows) series[s].push_back(row[ycols[s]] / scale);
  }

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const double x = table.rows[r][xc];
    if (!std::isfinite(x)) continue;
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    for (const auto& s : series) {
      if (std::isfinite(s[r])) {
        ymin = std::min(ymin, s[r]);
        ymax = std::max(ymax, s[r]);
      }
    }
  }
  if (!std::isfinite(xmin)) xmin = 0.0, xmax = 1.0;
  if (!std::isfinite(ymin)) ymin = 0.0, ymax = 1.0;
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax == ymin) {
    const double pad = ymin == 0.0 ? 1.0 : 0.05 * std::abs(ymin);
    ymin -= pad;
    ymax += pad;
  }

  const double left = 80, right = 170, top = 40, bottom = 50;
  const double pw = opt.width - left - right;
  const double ph = opt.height - top - bottom;
  auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return top + (1.0 - (y - ymin) / (ymax - ymin)) * ph; };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width << "\" height=\"" << opt.height
     << "\" viewBox=\"0 0 " << opt.width << ' ' << opt.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!opt.title.empty()) {
    os << "<text x=\"" << left + pw / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << escape(opt.title)
       << "</text>\n";
  }
  os << "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n"
     << "<line x1=\"" << left << "\" y1=\"" << top + ph << "\" x2=\"" << left + pw << "\" y2=\"" << top + ph << "\"/>\n"
     << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + ph << "\"/>\n"
     << "</g>\n";
  constexpr int ticks = 5;
  for (int i = 0; i <= ticks; ++i) {
    const double fx = xmin + (xmax - xmin) * i / ticks;
    const double fy = ymin + (ymax - ymin) * i / ticks;
    os << "<line x1=\"" << px(fx) << "\" y1=\"" << top + ph << "\" x2=\"" << px(fx) << "\" y2=\"" << top + ph + 5
       << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << px(fx) << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">" << fmt(fx) << "</text>\n"
       << "<line x1=\"" << left - 5 << "\" y1=\"" << py(fy) << "\" x2=\"" << left << "\" y2=\"" << py(fy)
       << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << left - 8 << "\" y=\"" << py(fy) + 4 << "\" text-anchor=\"end\">" << fmt(fy) << "</text>\n";
  }
  os << "<text x=\"" << left + pw / 2 << "\" y=\"" << opt.height - 10 << "\" text-anchor=\"middle\">"
     << escape(opt.x_column) << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* colour = palette[s % palette.size()];
    os << "<polyline class=\"series\" data-column=\"" << escape(columns[s]) << "\" fill=\"none\" stroke=\"" << colour
       << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      const double x = table.rows[r][xc];
      const double y = series[s][r];
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if (!first) os << ' ';
      os << px(x) << ',' << py(y);
      first = false;
    }
    os << "\"/>\n";
  }

  os << "<g class=\"legend\">\n";
  for (std::size_t s = 0; s < series.size(); ++s) {
    const double ly = top + 10 + 20.0 * static_cast<double>(s);
    const double lx = left + pw + 15;
    os << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 25 << "\" y2=\"" << ly << "\" stroke=\""
       << palette[s % palette.size()] << "\" stroke-width=\"2\"/>\n"
       << "<text x=\"" << lx + 32 << "\" y=\"" << ly + 4 << "\">" << escape(columns[s]) << "</text>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace qg3d
