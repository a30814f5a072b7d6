#pragma once

// Run manifests: a JSON document naming the command and the parameter sweep.
// Units are carried in key names (coupling_per_mm, eta_per_mm, z_max_mm).
// n_modes, coupling_per_mm and pump accept a single value or a list; the
// manifest expands to their Cartesian product.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cvring/model.hpp"
#include "cvring/propagate.hpp"

namespace cvring::app {

inline constexpr int kManifestSchemaVersion = 1;

struct RunManifest {
  std::string command = "covariance";  // covariance | vlf-sweep | verify | figure
  int figure = 0;
  std::vector<int> n_modes{8};
  std::vector<double> couplings{0.45};
  std::optional<double> reference_coupling;  // extra vlf-sweep series
  double eta_mag = 0.015;
  std::vector<PumpProfile> pumps{UniformPhase{}};
  double z_max = 20.0;
  int z_steps = 400;
  double transmittance = 1.0;
  std::optional<double> z_eval;  // covariance evaluation point, default z_max
  std::vector<double> edge_couplings;
  Route route = Route::kAuto;

  /// One ArrayConfig per (N, J, pump), in that nesting order.
  std::vector<ArrayConfig> expand() const;
  ArrayConfig config_for(int n_modes, double coupling, const PumpProfile& pump) const;

  nlohmann::json to_json() const;
  /// FNV-1a 64-bit hash of the canonical JSON dump, as 16 hex digits.
  std::string hash() const;
};

/// Relative "custom:<file>" pump paths resolve against base_dir. Throws
/// std::invalid_argument on unknown keys or bad values.
RunManifest manifest_from_json(const nlohmann::json& doc,
                               const std::filesystem::path& base_dir = {});
RunManifest load_manifest(const std::filesystem::path& path);

/// Reads a custom pump file: a JSON array of phases (radians) or an object
/// with a "phases_rad" array.
CustomPhases load_custom_phases(const std::filesystem::path& path);

/// Pump from a command-line/manifest label, including custom:<file>.
PumpProfile profile_from_label(const std::string& label,
                               const std::filesystem::path& base_dir = {});

/// Built-in manifests for the covariance-map figure (2), the small-ring VLF
/// sweep (3) and the large-ring VLF sweep (4).
RunManifest figure_manifest(int figure);

std::string fnv1a_hex(std::string_view bytes);

}  // namespace cvring::app
