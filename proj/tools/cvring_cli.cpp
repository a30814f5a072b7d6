// cvring: covariance maps, VLF sweeps and the self-verification suite for
// chi(2) waveguide rings.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cvring/app/commands.hpp"

namespace fs = std::filesystem;
using namespace cvring;
using namespace cvring::app;

namespace {

struct Overrides {
  std::string config;
  std::string out = "out";
  std::vector<std::string> profiles;
  std::optional<double> loss;
  bool oracle = false;
  bool analytic = false;
  std::optional<double> z;
  std::optional<double> reference_coupling;
  std::vector<int> n_modes;
  std::vector<double> couplings;
  std::optional<double> eta;
  std::optional<double> z_max;
  std::optional<int> z_steps;
};

void add_common(CLI::App* cmd, Overrides& o, bool with_output = true) {
  cmd->add_option("--config", o.config, "JSON run manifest")->check(CLI::ExistingFile);
  if (with_output) cmd->add_option("--out", o.out, "output directory")->capture_default_str();
  cmd->add_option("--profile", o.profiles, "pump profile: r0|rN2|rN4|general:<r>|custom:<file>");
  cmd->add_option("--loss", o.loss, "transmittance T in [0,1]");
  auto* oracle = cmd->add_flag("--oracle", o.oracle, "force the matrix-exponential route");
  auto* analytic = cmd->add_flag("--analytic", o.analytic, "force the closed-form route");
  oracle->excludes(analytic);
  cmd->add_option("-N,--modes", o.n_modes, "ring size(s)");
  cmd->add_option("-J,--coupling", o.couplings, "coupling(s), mm^-1");
  cmd->add_option("--eta", o.eta, "nonlinearity magnitude, mm^-1");
  cmd->add_option("--z-max", o.z_max, "propagation length, mm");
  cmd->add_option("--z-steps", o.z_steps, "z grid intervals");
}

RunManifest build_manifest(const Overrides& o, RunManifest manifest) {
  if (!o.config.empty()) manifest = load_manifest(o.config);
  if (!o.profiles.empty()) {
    manifest.pumps.clear();
    for (const auto& label : o.profiles) manifest.pumps.push_back(profile_from_label(label));
  }
  if (o.loss) manifest.transmittance = *o.loss;
  if (o.oracle) manifest.route = Route::kNumerical;
  if (o.analytic) manifest.route = Route::kAnalytic;
  if (o.z) manifest.z_eval = *o.z;
  if (o.reference_coupling) manifest.reference_coupling = *o.reference_coupling;
  if (!o.n_modes.empty()) manifest.n_modes = o.n_modes;
  if (!o.couplings.empty()) manifest.couplings = o.couplings;
  if (o.eta) manifest.eta_mag = *o.eta;
  if (o.z_max) manifest.z_max = *o.z_max;
  if (o.z_steps) manifest.z_steps = *o.z_steps;
  return manifest;
}

void print_diagnostics(const ConfigError& e) {
  std::cerr << "configuration rejected:\n";
  for (const auto& d : e.diagnostics()) {
    if (d.severity == Diagnostic::Severity::kError) std::cerr << "  " << d.message << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian-state simulator for circular chi(2) waveguide arrays"};
  app.require_subcommand(1);

  Overrides o;
  int figure = 0;

  auto* covariance = app.add_subcommand("covariance", "write covariance matrices as CSV");
  add_common(covariance, o);
  covariance->add_option("--z", o.z, "evaluation point, mm (default: z max)");

  auto* sweep = app.add_subcommand("vlf-sweep", "VLF values along z for both parity sets");
  add_common(sweep, o);
  sweep->add_option("--reference-coupling", o.reference_coupling,
                    "extra series at this coupling, mm^-1");

  auto* verify = app.add_subcommand("verify", "run the invariant suite");
  add_common(verify, o, false);

  auto* fig = app.add_subcommand("figure", "reproduce the data behind a figure");
  fig->add_option("figure", figure, "2, 3 or 4")->required()->check(CLI::IsMember({2, 3, 4}));
  fig->add_option("--out", o.out, "output directory")->capture_default_str();
  fig->add_option("--loss", o.loss, "transmittance T in [0,1]");
  auto* fo = fig->add_flag("--oracle", o.oracle, "force the matrix-exponential route");
  fo->excludes(fig->add_flag("--analytic", o.analytic, "force the closed-form route"));

  CLI11_PARSE(app, argc, argv);

  try {
    CommandResult result;
    if (covariance->parsed()) {
      result = cmd_covariance(build_manifest(o, {}), o.out, std::cout);
    } else if (sweep->parsed()) {
      RunManifest defaults;
      defaults.command = "vlf-sweep";
      result = cmd_vlf_sweep(build_manifest(o, defaults), o.out, std::cout);
    } else if (verify->parsed()) {
      const bool has_manifest = !o.config.empty() || !o.profiles.empty() || !o.n_modes.empty() ||
                                !o.couplings.empty() || o.eta || o.z_max || o.loss;
      std::optional<RunManifest> manifest;
      if (has_manifest) manifest = build_manifest(o, {});
      result = cmd_verify(manifest ? &*manifest : nullptr, {}, std::cout);
    } else {
      result = cmd_figure(build_manifest(o, figure_manifest(figure)), o.out, std::cout);
    }
    return result.exit_code;
  } catch (const ConfigError& e) {
    print_diagnostics(e);
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
