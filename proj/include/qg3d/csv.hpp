#pragma once

#include <string>
#include <vector>

#include "qg3d/diagnostics.hpp"
#include "qg3d/lagrangian.hpp"

namespace qg3d {

/// Column names of the diagnostics time series, in file order.
const std::vector<std::string>& diagnostics_columns();

std::string diagnostics_csv(const std::vector<DiagnosticsRecord>& history);
void write_diagnostics_csv(const std::string& path, const std::vector<DiagnosticsRecord>& history);

std::string ratios_csv(const std::vector<RatioSample>& samples);

struct ParticleRow {
  std::size_t particle_id = 0;
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double integral = 0.0;
  double residual = 0.0;
};

std::string particles_csv(const std::vector<ParticleRow>& rows);

/// Numeric CSV with a header row.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  /// Index of a column, or throws FormatError.
  std::size_t column(const std::string& name) const;
};

CsvTable parse_csv(const std::string& text);
CsvTable read_csv(const std::string& path);

}  // namespace qg3d
