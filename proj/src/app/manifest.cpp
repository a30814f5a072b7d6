#include "cvring/app/manifest.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <stdexcept>

namespace cvring::app {
namespace {

using nlohmann::json;

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "schema_version",  "command",       "figure",    "n_modes",
      "coupling_per_mm", "reference_coupling_per_mm", "eta_per_mm",
      "pump",            "z_max_mm",      "z_steps",   "transmittance",
      "z_mm",            "edge_couplings_per_mm",      "route"};
  return keys;
}

template <class T>
std::vector<T> scalar_or_list(const json& value, const char* key) {
  std::vector<T> out;
  try {
    if (value.is_array()) {
      for (const auto& item : value) out.push_back(item.get<T>());
    } else {
      out.push_back(value.get<T>());
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("manifest key '") + key + "': " + e.what());
  }
  if (out.empty()) throw std::invalid_argument(std::string("manifest key '") + key + "' is empty");
  return out;
}

PumpProfile pump_from_json(const json& value, const std::filesystem::path& base_dir) {
  if (value.is_string()) return profile_from_label(value.get<std::string>(), base_dir);
  if (value.is_object() && value.contains("custom_phases_rad")) {
    return CustomPhases{value.at("custom_phases_rad").get<std::vector<double>>()};
  }
  throw std::invalid_argument("pump must be a profile label or {\"custom_phases_rad\": [...]}");
}

json pump_to_json(const PumpProfile& pump) {
  if (const auto* custom = std::get_if<CustomPhases>(&pump)) {
    return json{{"custom_phases_rad", custom->phases_rad}};
  }
  return profile_label(pump);
}

std::string route_name(Route route) {
  switch (route) {
    case Route::kAuto: return "auto";
    case Route::kAnalytic: return "analytic";
    case Route::kNumerical: return "numerical";
  }
  return "auto";
}

Route route_from_name(const std::string& name) {
  if (name == "auto") return Route::kAuto;
  if (name == "analytic") return Route::kAnalytic;
  if (name == "numerical") return Route::kNumerical;
  throw std::invalid_argument("route must be auto, analytic or numerical, got '" + name + "'");
}

}  // namespace

ArrayConfig RunManifest::config_for(int n, double coupling, const PumpProfile& pump) const {
  ArrayConfig config;
  config.n_modes = n;
  config.coupling = coupling;
  config.eta_mag = eta_mag;
  config.pump = pump;
  config.z_max = z_max;
  config.z_steps = z_steps;
  config.transmittance = transmittance;
  config.edge_couplings = edge_couplings;
  return config;
}

std::vector<ArrayConfig> RunManifest::expand() const {
  std::vector<ArrayConfig> configs;
  for (int n : n_modes) {
    for (double j : couplings) {
      for (const auto& pump : pumps) configs.push_back(config_for(n, j, pump));
    }
  }
  return configs;
}

json RunManifest::to_json() const {
  json doc;
  doc["schema_version"] = kManifestSchemaVersion;
  doc["command"] = command;
  if (command == "figure") doc["figure"] = figure;
  doc["n_modes"] = n_modes;
  doc["coupling_per_mm"] = couplings;
  if (reference_coupling) doc["reference_coupling_per_mm"] = *reference_coupling;
  doc["eta_per_mm"] = eta_mag;
  json pump_list = json::array();
  for (const auto& p : pumps) pump_list.push_back(pump_to_json(p));
  doc["pump"] = pump_list;
  doc["z_max_mm"] = z_max;
  doc["z_steps"] = z_steps;
  doc["transmittance"] = transmittance;
  if (z_eval) doc["z_mm"] = *z_eval;
  if (!edge_couplings.empty()) doc["edge_couplings_per_mm"] = edge_couplings;
  doc["route"] = route_name(route);
  return doc;
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string RunManifest::hash() const { return fnv1a_hex(to_json().dump()); }

CustomPhases load_custom_phases(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open custom pump file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw std::invalid_argument("custom pump file " + path.string() + ": " + e.what());
  }
  const json& phases = doc.is_object() ? doc.at("phases_rad") : doc;
  return CustomPhases{phases.get<std::vector<double>>()};
}

PumpProfile profile_from_label(const std::string& label, const std::filesystem::path& base_dir) {
  constexpr std::string_view kCustom = "custom:";
  if (label.starts_with(kCustom)) {
    std::filesystem::path file = label.substr(kCustom.size());
    if (file.is_relative() && !base_dir.empty()) file = base_dir / file;
    return load_custom_phases(file);
  }
  return parse_profile(label);
}

RunManifest manifest_from_json(const json& doc, const std::filesystem::path& base_dir) {
  if (!doc.is_object()) throw std::invalid_argument("manifest must be a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (!known_keys().contains(key)) {
      throw std::invalid_argument("unknown manifest key '" + key + "'");
    }
  }
  if (doc.contains("schema_version") && doc["schema_version"] != kManifestSchemaVersion) {
    throw std::invalid_argument("unsupported manifest schema_version " +
                                doc["schema_version"].dump());
  }

  RunManifest m;
  try {
    if (doc.contains("command")) m.command = doc["command"].get<std::string>();
    if (doc.contains("figure")) m.figure = doc["figure"].get<int>();
    if (doc.contains("n_modes")) m.n_modes = scalar_or_list<int>(doc["n_modes"], "n_modes");
    if (doc.contains("coupling_per_mm")) {
      m.couplings = scalar_or_list<double>(doc["coupling_per_mm"], "coupling_per_mm");
    }
    if (doc.contains("reference_coupling_per_mm")) {
      m.reference_coupling = doc["reference_coupling_per_mm"].get<double>();
    }
    if (doc.contains("eta_per_mm")) m.eta_mag = doc["eta_per_mm"].get<double>();
    if (doc.contains("pump")) {
      m.pumps.clear();
      const json& pump = doc["pump"];
      if (pump.is_array()) {
        for (const auto& p : pump) m.pumps.push_back(pump_from_json(p, base_dir));
      } else {
        m.pumps.push_back(pump_from_json(pump, base_dir));
      }
      if (m.pumps.empty()) throw std::invalid_argument("manifest key 'pump' is empty");
    }
    if (doc.contains("z_max_mm")) m.z_max = doc["z_max_mm"].get<double>();
    if (doc.contains("z_steps")) m.z_steps = doc["z_steps"].get<int>();
    if (doc.contains("transmittance")) m.transmittance = doc["transmittance"].get<double>();
    if (doc.contains("z_mm")) m.z_eval = doc["z_mm"].get<double>();
    if (doc.contains("edge_couplings_per_mm")) {
      m.edge_couplings = doc["edge_couplings_per_mm"].get<std::vector<double>>();
    }
    if (doc.contains("route")) m.route = route_from_name(doc["route"].get<std::string>());
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("manifest: ") + e.what());
  }
  return m;
}

RunManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open manifest " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw std::invalid_argument("manifest " + path.string() + ": " + e.what());
  }
  return manifest_from_json(doc, path.parent_path());
}

RunManifest figure_manifest(int figure) {
  RunManifest m;
  m.command = "figure";
  m.figure = figure;
  m.eta_mag = 0.015;
  m.z_max = 20.0;
  m.z_steps = 400;
  m.transmittance = 1.0;
  switch (figure) {
    case 2:
      m.n_modes = {8};
      m.couplings = {0.45};
      m.pumps = {UniformPhase{}, AlternatingPi{}, AlternatingHalfPi{}};
      break;
    case 3:
      m.n_modes = {4, 8};
      m.couplings = {0.45};
      m.reference_coupling = 100.0;
      m.pumps = {UniformPhase{}};
      break;
    case 4:
      m.n_modes = {40, 60, 80};
      m.couplings = {100.0};
      m.pumps = {UniformPhase{}};
      break;
    default:
      throw std::invalid_argument("figure must be 2, 3 or 4, got " + std::to_string(figure));
  }
  return m;
}

}  // namespace cvring::app
