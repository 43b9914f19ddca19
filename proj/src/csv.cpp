#include "qg3d/csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>

#include "qg3d/error.hpp"
#include "qg3d/snapshot.hpp"

namespace qg3d {

namespace {

void put(std::ostringstream& os, double v, bool first = false) {
  if (!first) os << ',';
  os << v;
}

std::string join_header(const std::vector<std::string>& cols) {
  std::string out;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i) out += ',';
    out += cols[i];
  }
  return out + '\n';
}

}  // namespace

const std::vector<std::string>& diagnostics_columns() {
  static const std::vector<std::string> cols{"t",      "v_l2",    "q_l2",  "q_l4",  "q_l6",  "q_linf",
                                             "v_linf", "v2_l6",   "v2_linf", "dq_l2", "dq_l3", "dq_l4",
                                             "d2q_l3", "hm_q",    "hm_v",  "grad_v_linf"};
  return cols;
}

std::string diagnostics_csv(const std::vector<DiagnosticsRecord>& history) {
  std::ostringstream os;
  os.precision(17);
  os << join_header(diagnostics_columns());
  for (const auto& r : history) {
    put(os, r.t, true);
    for (double v : {r.v_l2, r.q_l2, r.q_l4, r.q_l6, r.q_linf, r.v_linf, r.v2_l6, r.v2_linf, r.dq_l2, r.dq_l3, r.dq_l4,
                     r.d2q_l3, r.hm_q, r.hm_v, r.grad_v_linf}) {
      put(os, v);
    }
    os << '\n';
  }
  return os.str();
}

void write_diagnostics_csv(const std::string& path, const std::vector<DiagnosticsRecord>& history) {
  write_file_atomic(path, diagnostics_csv(history));
}

std::string ratios_csv(const std::vector<RatioSample>& samples) {
  std::ostringstream os;
  os.precision(17);
  os << "t,cz_l2,cz_l4,gn,q_l2_growth,q_l4_growth,q_l6_growth,q_linf_growth,d2q_l3\n";
  auto opt = [&](const std::optional<double>& v) {
    os << ',';
    if (v) os << *v;
  };
  for (const auto& s : samples) {
    os << s.t;
    opt(s.cz_l2);
    opt(s.cz_l4);
    opt(s.gn);
    for (double v : {s.q_l2_growth, s.q_l4_growth, s.q_l6_growth, s.q_linf_growth, s.d2q_l3}) put(os, v);
    os << '\n';
  }
  return os.str();
}

std::string particles_csv(const std::vector<ParticleRow>& rows) {
  std::ostringstream os;
  os.precision(17);
  os << "particle_id,t,x,y,z,integral,residual\n";
  for (const auto& r : rows) {
    os << r.particle_id;
    for (double v : {r.t, r.x, r.y, r.z, r.integral, r.residual}) put(os, v);
    os << '\n';
  }
  return os.str();
}

std::size_t CsvTable::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw FormatError("CSV has no column '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

CsvTable parse_csv(const std::string& text) {
  CsvTable t;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    if (t.header.empty()) {
      t.header = std::move(cells);
      continue;
    }
    if (cells.size() != t.header.size()) {
      throw FormatError("CSV line " + std::to_string(line_no) + ": expected " + std::to_string(t.header.size()) +
                        " cells");
    }
    std::vector<double> row;
    for (const auto& c : cells) {
      double v = std::numeric_limits<double>::quiet_NaN();
      if (!c.empty()) {
        const auto [p, ec] = std::from_chars(c.data(), c.data() + c.size(), v);
        if (ec != std::errc() || p != c.data() + c.size()) {
          throw FormatError("CSV line " + std::to_string(line_no) + ": not a number '" + c + "'");
        }
      }
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  if (t.header.empty()) throw FormatError("CSV is empty");
  return t;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read '" + path + "'");
  return parse_csv({std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()});
}

}  // namespace qg3d
