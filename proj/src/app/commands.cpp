#include "cvring/app/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "cvring/app/csv.hpp"
#include "cvring/app/parallel.hpp"
#include "cvring/witness.hpp"

namespace cvring::app {
namespace {

namespace fs = std::filesystem;

constexpr double kDisplayThreshold = 1e-2;
constexpr double kLossLawTolerance = 1e-12;

bool has_closed_form_covariance(const ArrayConfig& config) {
  if (!config.homogeneous()) return false;
  const auto shift = pump_shift(config.pump, config.n_modes);
  const int n = config.n_modes;
  return shift && (*shift == 0 || (n % 2 == 0 && *shift == n / 2) ||
                   (n % 4 == 0 && *shift == n / 4));
}

std::string route_label(const ArrayConfig& config, Route route) {
  if (route == Route::kNumerical) return "numerical";
  if (has_closed_form_covariance(config)) return "closed_form";
  const bool shift = pump_shift(config.pump, config.n_modes).has_value() && config.homogeneous();
  return shift ? "analytic_propagator" : "numerical";
}

std::string file_safe(std::string label) {
  std::replace(label.begin(), label.end(), ':', '-');
  return label;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

void prepare_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw std::runtime_error("cannot create output directory " + dir.string());
  }
}

void validate_or_throw(const ArrayConfig& config, bool zero_mode_claims, std::ostream& log) {
  auto diagnostics = validate_config(config, zero_mode_claims);
  for (const auto& d : diagnostics) {
    if (d.severity == Diagnostic::Severity::kWarning) log << "warning: " << d.message << '\n';
  }
  if (has_errors(diagnostics)) throw ConfigError(std::move(diagnostics));
}

struct Series {
  std::string name;
  ArrayConfig config;
};

struct SweepRow {
  std::string text;
  std::string set;
  double value = 0.0;
  double loss_residual = 0.0;
};

}  // namespace

CovarianceMatrix covariance_for(const ArrayConfig& config, double z, Route route) {
  if (route != Route::kNumerical && has_closed_form_covariance(config)) {
    return closed_form_covariance(config, z);
  }
  return propagated_covariance(config, z, route);
}

CommandResult cmd_covariance(const RunManifest& manifest, const fs::path& out_dir,
                             std::ostream& log) {
  CommandResult result;
  const auto configs = manifest.expand();
  for (const auto& config : configs) validate_or_throw(config, false, log);
  prepare_dir(out_dir);

  for (const auto& config : configs) {
    const double z = manifest.z_eval.value_or(config.z_max);
    const CovarianceMatrix lossless = covariance_for(config, z, manifest.route);
    const CovarianceMatrix v = apply_loss(lossless, config.transmittance);

    const std::string label = profile_label(config.pump);
    const CsvMetadata metadata{
        {"config_hash", manifest.hash()},
        {"n_modes", std::to_string(config.n_modes)},
        {"coupling_per_mm", format_number(config.coupling)},
        {"eta_per_mm", format_number(config.eta_mag)},
        {"profile", label},
        {"route", route_label(config, manifest.route)},
        {"transmittance", format_number(config.transmittance)},
    };
    const std::string stem = "covariance_" + file_safe(label) + "_N" +
                             std::to_string(config.n_modes) + "_J" +
                             format_label(config.coupling);
    for (const auto& [suffix, threshold] :
         {std::pair{std::string(".csv"), 0.0}, std::pair{std::string("_display.csv"),
                                                         kDisplayThreshold}}) {
      const fs::path path = out_dir / (stem + suffix);
      auto out = open_output(path);
      write_covariance_csv(out, v, metadata, threshold);
      result.files.push_back(path);
    }
    log << "wrote " << stem << ".csv (N=" << config.n_modes << ", profile " << label
        << ", z=" << format_label(z) << " mm, route " << route_label(config, manifest.route)
        << ")\n";
  }
  return result;
}

CommandResult cmd_vlf_sweep(const RunManifest& manifest, const fs::path& out_dir,
                            std::ostream& log) {
  CommandResult result;
  std::vector<std::vector<Series>> per_ring;
  for (int n : manifest.n_modes) {
    std::vector<Series> series;
    for (double j : manifest.couplings) {
      for (const auto& pump : manifest.pumps) {
        series.push_back({"main", manifest.config_for(n, j, pump)});
      }
    }
    if (manifest.reference_coupling) {
      for (const auto& pump : manifest.pumps) {
        series.push_back({"reference", manifest.config_for(n, *manifest.reference_coupling, pump)});
      }
    }
    for (const auto& s : series) validate_or_throw(s.config, true, log);
    per_ring.push_back(std::move(series));
  }
  prepare_dir(out_dir);

  const double transmittance = manifest.transmittance;
  for (std::size_t ring = 0; ring < per_ring.size(); ++ring) {
    const int n = manifest.n_modes[ring];
    const ModeSets sets = partition_mode_sets(n);
    const fs::path path = out_dir / ("vlf_N" + std::to_string(n) + ".csv");
    auto out = open_output(path);
    out << "# cvring vlf-sweep schema=1\n";
    out << "# config_hash=" << manifest.hash() << " n_modes=" << n
        << " eta_per_mm=" << format_number(manifest.eta_mag)
        << " z_max_mm=" << format_number(manifest.z_max) << " z_steps=" << manifest.z_steps
        << " transmittance=" << format_number(transmittance) << " threshold=4\n";
    out << kVlfColumns << '\n';

    double worst_loss_residual = 0.0;
    for (const auto& series : per_ring[ring]) {
      const ArrayConfig& config = series.config;
      const std::vector<double> grid = z_grid(config);
      const std::string prefix = series.name + ',' + std::to_string(n) + ',' +
                                 format_number(config.coupling) + ',' +
                                 format_number(config.eta_mag) + ',' +
                                 profile_label(config.pump) + ',';

      auto rows_at = [&](std::size_t k) {
        const double z = grid[k];
        const CovarianceMatrix lossless = covariance_for(config, z, manifest.route);
        const CovarianceMatrix lossy = apply_loss(lossless, transmittance);
        std::vector<SweepRow> rows;
        for (const auto& [set_name, modes] :
             {std::pair{std::string("odd"), sets.odd}, std::pair{std::string("even"), sets.even}}) {
          if (modes.size() < 2) continue;
          const VlfReport clean = full_inseparability_check(lossless, modes);
          const VlfReport report = full_inseparability_check(lossy, modes, {}, transmittance);
          for (std::size_t i = 0; i < report.pairs.size(); ++i) {
            const auto& pair = report.pairs[i];
            const double expected =
                transmittance * clean.pairs[i].value + 4.0 * (1.0 - transmittance);
            std::string text = prefix + set_name + ',' + format_number(z) + ',' +
                               std::to_string(pair.mode_a) + ',' + std::to_string(pair.mode_b) +
                               ',' + format_number(pair.theta_a) + ',' +
                               format_number(pair.theta_b) + ',' + format_number(transmittance) +
                               ',' + format_number(clean.pairs[i].value) + ',' +
                               format_number(pair.value) + ',' +
                               (report.fully_inseparable ? "fully_inseparable" : "not_inseparable");
            rows.push_back({std::move(text), set_name, pair.value,
                            std::abs(pair.value - expected) / std::max(1.0, std::abs(expected))});
          }
        }
        return rows;
      };
      const auto points = parallel_map(grid.size(), rows_at);

      double max_odd = -1.0, max_even = -1.0;
      for (std::size_t k = 0; k < points.size(); ++k) {
        for (const auto& row : points[k]) {
          out << row.text << '\n';
          worst_loss_residual = std::max(worst_loss_residual, row.loss_residual);
          if (k == 0) continue;
          double& worst = row.set == "odd" ? max_odd : max_even;
          worst = std::max(worst, row.value);
        }
      }
      log << "N=" << n << " J=" << format_label(config.coupling) << " ("
          << series.name << ", " << profile_label(config.pump) << "): max VLF over z>0 odd="
          << format_label(max_odd) << " even=" << format_label(max_even) << '\n';
    }
    const bool loss_ok = worst_loss_residual <= kLossLawTolerance;
    out << "# loss_law max_residual=" << format_number(worst_loss_residual)
        << " tolerance=" << format_number(kLossLawTolerance)
        << " status=" << (loss_ok ? "pass" : "fail") << '\n';
    if (!loss_ok) {
      log << "loss law violated in " << path.string() << " (max residual "
          << worst_loss_residual << ")\n";
      result.exit_code = 1;
    }
    result.files.push_back(path);
    log << "wrote " << path.filename().string() << '\n';
  }
  return result;
}

CommandResult cmd_figure(const RunManifest& manifest, const fs::path& out_dir,
                         std::ostream& log) {
  switch (manifest.figure) {
    case 2: return cmd_covariance(manifest, out_dir, log);
    case 3:
    case 4: return cmd_vlf_sweep(manifest, out_dir, log);
    default:
      throw std::invalid_argument("figure must be 2, 3 or 4, got " +
                                  std::to_string(manifest.figure));
  }
}

}  // namespace cvring::app
