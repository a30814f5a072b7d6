#include "cvring/app/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace cvring::app {
namespace {

std::string quadrature_name(int row) {
  return (row % 2 == 0 ? "x" : "y") + std::to_string(row / 2 + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

std::string format_number(double value) {
  if (value == 0.0) return "0";  // also folds -0
  char buf[32];
  const auto end = std::to_chars(buf, buf + sizeof buf, value).ptr;
  return std::string(buf, end);
}

std::string format_label(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", value);
  return buf;
}

void write_covariance_csv(std::ostream& out, const CovarianceMatrix& v,
                          const CsvMetadata& metadata, double display_threshold) {
  const auto dim = static_cast<int>(v.matrix.rows());
  out << "# cvring covariance schema=1\n";
  out << "#";
  for (const auto& [key, value] : metadata) out << ' ' << key << '=' << value;
  out << '\n';
  out << "# basis=" << to_string(v.basis) << " ordering=interleaved z_mm=" << format_number(v.z)
      << " display_threshold=" << format_number(display_threshold) << '\n';
  out << "row";
  for (int c = 0; c < dim; ++c) out << ',' << quadrature_name(c);
  out << '\n';
  for (int r = 0; r < dim; ++r) {
    out << quadrature_name(r);
    for (int c = 0; c < dim; ++c) {
      const double entry = v.matrix(r, c);
      out << ',' << format_number(std::abs(entry) < display_threshold ? 0.0 : entry);
    }
    out << '\n';
  }
}

ParsedCovarianceCsv read_covariance_csv(std::istream& in) {
  ParsedCovarianceCsv parsed;
  std::string line;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::istringstream tokens(line.substr(1));
      std::string token;
      while (tokens >> token) {
        const auto eq = token.find('=');
        if (eq != std::string::npos) parsed.metadata[token.substr(0, eq)] = token.substr(eq + 1);
      }
      continue;
    }
    auto fields = split(line, ',');
    if (parsed.columns.empty()) {
      if (fields.empty() || fields.front() != "row") {
        throw std::runtime_error("covariance CSV: expected a 'row,...' column header");
      }
      parsed.columns.assign(fields.begin() + 1, fields.end());
      continue;
    }
    if (fields.size() != parsed.columns.size() + 1) {
      throw std::runtime_error("covariance CSV: ragged row '" + fields.front() + "'");
    }
    std::vector<double> values;
    for (std::size_t k = 1; k < fields.size(); ++k) values.push_back(std::stod(fields[k]));
    rows.push_back(std::move(values));
  }
  if (rows.size() != parsed.columns.size() || rows.empty() || rows.size() % 2 != 0) {
    throw std::runtime_error("covariance CSV: matrix is not square with even dimension");
  }
  const auto dim = static_cast<int>(rows.size());
  parsed.covariance.matrix.resize(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) parsed.covariance.matrix(r, c) = rows[r][c];
  }
  const auto basis = parsed.metadata.find("basis");
  parsed.covariance.basis = (basis != parsed.metadata.end() && basis->second == "fourier")
                                ? Basis::kFourier
                                : Basis::kIndividual;
  if (const auto z = parsed.metadata.find("z_mm"); z != parsed.metadata.end()) {
    parsed.covariance.z = std::stod(z->second);
  }
  return parsed;
}

}  // namespace cvring::app
