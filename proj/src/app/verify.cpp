#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "cvring/app/commands.hpp"
#include "cvring/fourier.hpp"
#include "cvring/witness.hpp"

namespace cvring::app {
namespace {

constexpr double kUnitarityTol = 1e-12;
constexpr double kOrthonormalityTol = 1e-12;
constexpr double kHamiltonianTol = 1e-14;
constexpr double kSymplecticTol = 1e-10;
constexpr double kOracleTol = 1e-9;
constexpr double kPurityTol = 1e-8;
constexpr double kLossTol = 1e-12;
constexpr double kSymmetryTol = 1e-10;
constexpr double kPhysicalTol = 1e-9;

struct Tracker {
  CheckResult result;
  Tracker(std::string name, double tolerance) {
    result.name = std::move(name);
    result.tolerance = tolerance;
  }
  void observe(double value, const std::string& where) {
    if (!std::isfinite(value)) value = INFINITY;
    if (value >= result.worst) {
      result.worst = value;
      result.detail = where;
    }
  }
  CheckResult finish() {
    result.passed = result.worst <= result.tolerance;
    return result;
  }
};

std::string describe(const ArrayConfig& c, double z) {
  char buffer[160];
  std::snprintf(buffer, sizeof buffer, "N=%d J=%g eta=%g %s z=%g", c.n_modes, c.coupling,
                c.eta_mag, profile_label(c.pump).c_str(), z);
  return buffer;
}

bool closed_form_available(const ArrayConfig& c) {
  if (!c.homogeneous()) return false;
  const auto shift = pump_shift(c.pump, c.n_modes);
  const int n = c.n_modes;
  return shift && (*shift == 0 || (n % 2 == 0 && *shift == n / 2) ||
                   (n % 4 == 0 && *shift == n / 4));
}

bool analytic_available(const ArrayConfig& c) {
  return c.homogeneous() && pump_shift(c.pump, c.n_modes).has_value();
}

std::vector<ArrayConfig> default_grid(const VerifyOptions& options) {
  std::vector<ArrayConfig> configs;
  for (int n : options.ring_sizes) {
    std::vector<PumpProfile> pumps{UniformPhase{}};
    if (n % 2 == 0) pumps.push_back(AlternatingPi{});
    if (n % 4 == 0) pumps.push_back(AlternatingHalfPi{});
    if (n > 2) pumps.push_back(GeneralShift{1});
    for (double j : options.couplings) {
      for (double eta : options.etas) {
        for (const auto& pump : pumps) {
          ArrayConfig c;
          c.n_modes = n;
          c.coupling = j;
          c.eta_mag = eta;
          c.pump = pump;
          c.z_max = options.distances.empty() ? 0.0 : options.distances.back();
          configs.push_back(c);
        }
      }
    }
  }
  return configs;
}

// Covariance of mode-shifted ring: V'(j, k) = V(j+1, k+1).
Eigen::MatrixXd rotate_modes(const Eigen::MatrixXd& v, int n) {
  Eigen::MatrixXd out(v.rows(), v.cols());
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const int sa = (a + 1) % n;
      const int sb = (b + 1) % n;
      out.block<2, 2>(2 * a, 2 * b) = v.block<2, 2>(2 * sa, 2 * sb);
    }
  }
  return out;
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  std::vector<CheckResult> checks;

  {
    Tracker t("dft unitarity", kUnitarityTol);
    for (int n = 1; n <= options.max_dft_size; ++n) {
      t.observe(unitarity_residual(dft_matrix(n)), "N=" + std::to_string(n));
    }
    checks.push_back(t.finish());
  }
  {
    Tracker t("shifted orthonormality", kOrthonormalityTol);
    for (int n = 4; n <= options.max_dft_size; ++n) {
      t.observe(orthonormality_residual(n, PairingRelation::kUniform), "N=" + std::to_string(n) + " r=0");
      if (n % 2 == 0) {
        t.observe(orthonormality_residual(n, PairingRelation::kAlternatingSign),
                  "N=" + std::to_string(n) + " r=N/2");
      }
      if (n % 4 == 0) {
        t.observe(orthonormality_residual(n, PairingRelation::kAlternatingQuarter),
                  "N=" + std::to_string(n) + " r=N/4");
      }
    }
    for (int n : options.ring_sizes) {
      for (long r = 0; r < n; ++r) {
        t.observe(orthonormality_residual(n, r),
                  "N=" + std::to_string(n) + " r=" + std::to_string(r));
      }
    }
    checks.push_back(t.finish());
  }
  {
    // Count of zero eigenvalues mismatching the N = 0 mod 4 rule.
    Tracker t("zero-mode count", 0.0);
    for (int n = 1; n <= options.max_dft_size; ++n) {
      const auto lambda = eigenvalues(n, 1.0);
      std::vector<int> zeros;
      for (int p = 1; p <= n; ++p) {
        if (std::abs(lambda(p)) < 1e-12) zeros.push_back(p);
      }
      const auto expected = zero_mode_indices(n);
      const bool ok = expected ? zeros == std::vector<int>{expected->first, expected->second}
                               : zeros.empty();
      t.observe(ok ? 0.0 : 1.0, "N=" + std::to_string(n));
    }
    checks.push_back(t.finish());
  }

  std::vector<ArrayConfig> configs = default_grid(options);
  configs.insert(configs.end(), options.extra_configs.begin(), options.extra_configs.end());
  const std::size_t n_default = configs.size() - options.extra_configs.size();

  Tracker hamiltonian("drift generator hamiltonian", kHamiltonianTol);
  Tracker symplectic("propagator symplectic", kSymplecticTol);
  Tracker propagators("analytic vs numerical propagator", kOracleTol);
  Tracker covariances("closed-form vs numerical covariance", kOracleTol);
  Tracker purity("purity |det V - 1|", kPurityTol);
  Tracker loss("loss law", kLossTol);
  Tracker physical("physicality under loss", kPhysicalTol);
  Tracker symmetry("ring symmetry (uniform pump)", kSymmetryTol);

  std::mt19937 rng(20240611u);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  for (std::size_t i = 0; i < configs.size(); ++i) {
    const ArrayConfig& config = configs[i];
    const int n = config.n_modes;
    const Eigen::MatrixXd drift = options.drift_builder(config);
    hamiltonian.observe(hamiltonian_residual(drift), describe(config, 0.0));

    std::vector<double> distances = options.distances;
    if (i >= n_default) distances = {0.0, config.z_max / 2.0, config.z_max};

    for (double z : distances) {
      const std::string where = describe(config, z);
      const Propagator numeric = numerical_propagator(drift, z);
      symplectic.observe(symplectic_residual(numeric.matrix), where + " numerical");

      const CovarianceMatrix v_num = evolve_covariance(numeric, vacuum(n));
      // Purity is judged on the covariance the commands report: closed forms
      // where they exist, otherwise the default propagator route.
      const CovarianceMatrix v_reported = covariance_for(config, z, Route::kAuto);
      purity.observe(std::abs(gaussian_determinant(v_reported.matrix) - 1.0), where);

      if (analytic_available(config)) {
        const Propagator analytic = propagate(config, z, Route::kAnalytic);
        symplectic.observe(symplectic_residual(analytic.matrix), where + " analytic");
        propagators.observe(max_abs(Eigen::MatrixXd(analytic.matrix - numeric.matrix)), where);
      }
      if (closed_form_available(config)) {
        const CovarianceMatrix v_closed = closed_form_covariance(config, z);
        covariances.observe(max_abs(Eigen::MatrixXd(v_closed.matrix - v_num.matrix)), where);
      }

      const double transmittance = std::round(unit(rng) * 100.0) / 100.0;
      const CovarianceMatrix lossy = apply_loss(v_num, transmittance);
      physical.observe(std::max(0.0, -min_physical_eigenvalue(lossy.matrix)),
                       where + " T=" + std::to_string(transmittance));
      if (n >= 2) {
        const int a = 1 + static_cast<int>(unit(rng) * n) % n;
        const int b = 1 + (a % n);
        const double ta = unit(rng) * 2.0 * M_PI;
        const double tb = unit(rng) * 2.0 * M_PI;
        const double expected =
            transmittance * vlf_pair(v_num, a, b, ta, tb) + 4.0 * (1.0 - transmittance);
        loss.observe(std::abs(vlf_pair(lossy, a, b, ta, tb) - expected) /
                         std::max(1.0, std::abs(expected)),
                     where);
      }

      if (std::holds_alternative<UniformPhase>(config.pump) && config.homogeneous() &&
          n % 4 == 0) {
        const double scale_v = std::max(1.0, max_abs(v_num.matrix));
        symmetry.observe(max_abs(Eigen::MatrixXd(rotate_modes(v_num.matrix, n) - v_num.matrix)) /
                             scale_v,
                         where + " translation");
        const ModeSets sets = partition_mode_sets(n);
        const VlfReport odd = full_inseparability_check(v_num, sets.odd);
        const VlfReport even = full_inseparability_check(v_num, sets.even);
        const double reference = odd.pairs.front().value;
        for (const auto* report : {&odd, &even}) {
          for (const auto& pair : report->pairs) {
            symmetry.observe(std::abs(pair.value - reference) / scale_v, where + " chain pairs");
          }
        }
      }
    }
  }

  for (auto* t : {&hamiltonian, &symplectic, &propagators, &covariances, &purity, &loss,
                  &physical, &symmetry}) {
    checks.push_back(t->finish());
  }
  return checks;
}

void print_check_table(const std::vector<CheckResult>& checks, std::ostream& out) {
  std::size_t width = 5;
  for (const auto& c : checks) width = std::max(width, c.name.size());
  char line[512];
  std::snprintf(line, sizeof line, "%-*s  %12s  %9s  %s\n", static_cast<int>(width), "check",
                "worst", "tolerance", "status");
  out << line;
  for (const auto& c : checks) {
    std::snprintf(line, sizeof line, "%-*s  %12.3e  %9.0e  %s", static_cast<int>(width),
                  c.name.c_str(), c.worst, c.tolerance, c.passed ? "PASS" : "FAIL");
    out << line;
    if (!c.passed && !c.detail.empty()) out << "  (" << c.detail << ')';
    out << '\n';
  }
}

CommandResult cmd_verify(const RunManifest* manifest, const VerifyOptions& options,
                         std::ostream& log) {
  CommandResult result;
  VerifyOptions effective = options;
  if (manifest) {
    bool rejected = false;
    for (const auto& config : manifest->expand()) {
      for (const auto& d : validate_config(config)) {
        const bool error = d.severity == Diagnostic::Severity::kError;
        log << (error ? "error: " : "warning: ") << d.message << '\n';
        rejected = rejected || error;
      }
      if (!rejected) effective.extra_configs.push_back(config);
    }
    if (rejected) {
      log << "configuration rejected\n";
      result.exit_code = 2;
      return result;
    }
  }
  const auto checks = run_verification(effective);
  print_check_table(checks, log);
  const bool all = std::all_of(checks.begin(), checks.end(),
                               [](const CheckResult& c) { return c.passed; });
  log << (all ? "all checks passed" : "verification failed") << '\n';
  result.exit_code = all ? 0 : 1;
  return result;
}

}  // namespace cvring::app
