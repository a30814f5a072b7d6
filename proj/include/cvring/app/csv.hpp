#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "cvring/covariance.hpp"

namespace cvring::app {

/// Shortest text that round-trips a double (std::to_chars), used for every number
/// written to CSV so reruns are byte identical.
std::string format_number(double value);

/// Compact form for labels and file names ("%g").
std::string format_label(double value);

/// Ordered key=value metadata written as "# " comment lines.
using CsvMetadata = std::vector<std::pair<std::string, std::string>>;

/// Covariance CSV: comment header, column row "row,x1,y1,...,xN,yN", then one
/// row per quadrature in interleaved order. Entries with |v| < display_threshold
/// are written as 0 (display copies only).
void write_covariance_csv(std::ostream& out, const CovarianceMatrix& v,
                          const CsvMetadata& metadata, double display_threshold = 0.0);

struct ParsedCovarianceCsv {
  std::map<std::string, std::string> metadata;
  std::vector<std::string> columns;
  CovarianceMatrix covariance;
};

/// Inverse of write_covariance_csv; throws std::runtime_error on schema errors.
ParsedCovarianceCsv read_covariance_csv(std::istream& in);

inline constexpr const char* kVlfColumns =
    "series,n_modes,coupling_per_mm,eta_per_mm,profile,set,z_mm,mode_a,mode_b,"
    "theta_a,theta_b,transmittance,value_lossless,value,set_verdict";

}  // namespace cvring::app
