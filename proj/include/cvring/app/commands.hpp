#pragma once

#include <filesystem>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "cvring/app/manifest.hpp"
#include "cvring/gaussian.hpp"

namespace cvring::app {

struct CommandResult {
  int exit_code = 0;
  std::vector<std::filesystem::path> files;
};

/// Vacuum-input covariance at z honouring the manifest route: closed forms
/// when available (or forced), the matrix exponential with kNumerical.
CovarianceMatrix covariance_for(const ArrayConfig& config, double z, Route route);

/// Writes covariance_<profile>_N<n>_J<J>.csv and a *_display.csv copy with
/// entries below 1e-2 zeroed, per expanded configuration.
CommandResult cmd_covariance(const RunManifest& manifest,
                             const std::filesystem::path& out_dir, std::ostream& log);

/// Writes vlf_N<n>.csv per ring size: chain-pair VLF values along the z grid
/// for the odd and even mode sets, every coupling (series "main") and the
/// optional reference coupling (series "reference"). The loss law is checked
/// row by row and recorded in a trailing comment; a violation sets exit 1.
CommandResult cmd_vlf_sweep(const RunManifest& manifest,
                            const std::filesystem::path& out_dir, std::ostream& log);

CommandResult cmd_figure(const RunManifest& manifest, const std::filesystem::path& out_dir,
                         std::ostream& log);

// ---- verification suite --------------------------------------------------

struct CheckResult {
  std::string name;
  double worst = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  /// Drift builder under test; tests swap in a corrupted one.
  std::function<Eigen::MatrixXd(const ArrayConfig&)> drift_builder = build_drift_matrix;
  std::vector<int> ring_sizes{4, 8, 12, 16};
  std::vector<double> couplings{0.45, 2.0};
  std::vector<double> etas{0.015, 0.1};
  std::vector<double> distances{0.0, 5.0, 10.0, 20.0};
  int max_dft_size = 64;
  /// Extra configurations (from a manifest) checked at 0, z_max/2 and z_max.
  std::vector<ArrayConfig> extra_configs;
};

std::vector<CheckResult> run_verification(const VerifyOptions& options);

void print_check_table(const std::vector<CheckResult>& checks, std::ostream& out);

/// Validates the manifest's configurations first (exit 2 with the diagnostics
/// on rejection), then runs the suite on the default grid plus the manifest's
/// own configurations. Exit 1 if any check fails.
CommandResult cmd_verify(const RunManifest* manifest, const VerifyOptions& options,
                         std::ostream& log);

}  // namespace cvring::app
