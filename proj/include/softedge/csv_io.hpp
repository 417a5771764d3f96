#pragma once

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "softedge/edge_table.hpp"
#include "softedge/estimators.hpp"

namespace softedge {

/// Malformed or schema-mismatched curve file.
class CsvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File layout: "# <json metadata>", a header line, then rows printed with %.17g.

inline constexpr const char* kBinnedHeader = "bin_left,bin_right,density,stderr,counts";
inline constexpr const char* kXyHeader = "x,y";
inline constexpr const char* kTableHeader = "x,q,q_prime,R,I,F2";

void write_binned_csv(std::ostream& os, const BinnedCurve& c, const nlohmann::json& metadata);
void write_xy_csv(std::ostream& os, const std::vector<double>& x, const std::vector<double>& y,
                  const nlohmann::json& metadata);
void write_table_csv(std::ostream& os, const EdgeTable& table, const nlohmann::json& metadata);

struct CurveFile {
  nlohmann::json metadata;
  std::string header;
  Curve curve;  // midpoints for binned files; stderr 0 for x,y files
};

/// Reads either curve schema. Throws CsvError on anything else.
CurveFile read_curve_csv(std::istream& is);

}  // namespace softedge
