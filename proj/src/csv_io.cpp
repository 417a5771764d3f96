#include "softedge/csv_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace softedge {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_preamble(std::ostream& os, const nlohmann::json& metadata, const char* header) {
  os << "# " << metadata.dump() << '\n' << header << '\n';
}

std::vector<double> parse_row(const std::string& line, std::size_t expected, std::size_t lineno) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(cell, &used));
      if (used != cell.size() && cell.find_first_not_of(" \t\r", used) != std::string::npos) {
        throw std::invalid_argument(cell);
      }
    } catch (const std::exception&) {
      throw CsvError("line " + std::to_string(lineno) + ": not a number: '" + cell + "'");
    }
  }
  if (out.size() != expected) {
    throw CsvError("line " + std::to_string(lineno) + ": expected " + std::to_string(expected) +
                   " columns, found " + std::to_string(out.size()));
  }
  return out;
}

}  // namespace

void write_binned_csv(std::ostream& os, const BinnedCurve& c, const nlohmann::json& metadata) {
  write_preamble(os, metadata, kBinnedHeader);
  for (std::size_t i = 0; i < c.size(); ++i) {
    os << num(c.bin_left[i]) << ',' << num(c.bin_right[i]) << ',' << num(c.density[i]) << ','
       << num(c.stderr[i]) << ',' << c.counts[i] << '\n';
  }
}

void write_xy_csv(std::ostream& os, const std::vector<double>& x, const std::vector<double>& y,
                  const nlohmann::json& metadata) {
  if (x.size() != y.size()) throw std::invalid_argument("write_xy_csv: length mismatch");
  write_preamble(os, metadata, kXyHeader);
  for (std::size_t i = 0; i < x.size(); ++i) os << num(x[i]) << ',' << num(y[i]) << '\n';
}

void write_table_csv(std::ostream& os, const EdgeTable& t, const nlohmann::json& metadata) {
  write_preamble(os, metadata, kTableHeader);
  for (std::size_t i = 0; i < t.size(); ++i) {
    os << num(t.x()[i]) << ',' << num(t.q()[i]) << ',' << num(t.q_prime()[i]) << ','
       << num(t.R()[i]) << ',' << num(t.I()[i]) << ',' << num(t.F2()[i]) << '\n';
  }
}

CurveFile read_curve_csv(std::istream& is) {
  CurveFile file;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (!file.header.empty()) continue;
      try {
        file.metadata = nlohmann::json::parse(line.substr(1));
      } catch (const nlohmann::json::exception& e) {
        throw CsvError("line " + std::to_string(lineno) + ": bad metadata: " + e.what());
      }
      continue;
    }
    if (file.header.empty()) {
      if (line != kBinnedHeader && line != kXyHeader) {
        throw CsvError("unrecognized header '" + line + "' (expected '" + kBinnedHeader +
                       "' or '" + kXyHeader + "')");
      }
      file.header = line;
      continue;
    }
    if (file.header == kBinnedHeader) {
      const auto row = parse_row(line, 5, lineno);
      file.curve.x.push_back(0.5 * (row[0] + row[1]));
      file.curve.y.push_back(row[2]);
      file.curve.stderr.push_back(row[3]);
    } else {
      const auto row = parse_row(line, 2, lineno);
      file.curve.x.push_back(row[0]);
      file.curve.y.push_back(row[1]);
      file.curve.stderr.push_back(0.0);
    }
  }
  if (file.header.empty()) throw CsvError("no header line found");
  try {
    file.curve.validate();
  } catch (const std::invalid_argument& e) {
    throw CsvError(e.what());
  }
  return file;
}

}  // namespace softedge
