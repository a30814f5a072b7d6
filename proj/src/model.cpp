#include "cvring/model.hpp"

#include <cmath>
#include <sstream>

#include "cvring/fourier.hpp"

namespace cvring {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

std::string join_errors(const std::vector<Diagnostic>& diagnostics) {
  std::ostringstream out;
  out << "invalid array configuration:";
  for (const auto& d : diagnostics) {
    if (d.severity == Diagnostic::Severity::kError) out << "\n  - " << d.message;
  }
  return out.str();
}

}  // namespace

std::optional<int> pump_shift(const PumpProfile& pump, int n_modes) {
  return std::visit(
      Overloaded{
          [](const UniformPhase&) -> std::optional<int> { return 0; },
          [n_modes](const AlternatingPi&) -> std::optional<int> {
            if (n_modes % 2 != 0) throw std::invalid_argument("r=N/2 requires N even");
            return n_modes / 2;
          },
          [n_modes](const AlternatingHalfPi&) -> std::optional<int> {
            if (n_modes % 4 != 0) {
              throw std::invalid_argument("r=N/4 requires N = 0 mod 4");
            }
            return n_modes / 4;
          },
          [n_modes](const GeneralShift& g) -> std::optional<int> {
            return static_cast<int>(((g.shift % n_modes) + n_modes) % n_modes);
          },
          [](const CustomPhases&) -> std::optional<int> { return std::nullopt; },
      },
      pump);
}

std::string profile_label(const PumpProfile& pump) {
  return std::visit(
      Overloaded{
          [](const UniformPhase&) -> std::string { return "r0"; },
          [](const AlternatingPi&) -> std::string { return "rN2"; },
          [](const AlternatingHalfPi&) -> std::string { return "rN4"; },
          [](const GeneralShift& g) -> std::string {
            return "general:" + std::to_string(g.shift);
          },
          [](const CustomPhases&) -> std::string { return "custom"; },
      },
      pump);
}

PumpProfile parse_profile(const std::string& label) {
  if (label == "r0") return UniformPhase{};
  if (label == "rN2") return AlternatingPi{};
  if (label == "rN4") return AlternatingHalfPi{};
  constexpr std::string_view kGeneral = "general:";
  if (label.starts_with(kGeneral)) {
    const std::string digits = label.substr(kGeneral.size());
    std::size_t used = 0;
    long shift = 0;
    try {
      shift = std::stol(digits, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (digits.empty() || used != digits.size()) {
      throw std::invalid_argument("bad shift in pump profile '" + label + "'");
    }
    return GeneralShift{shift};
  }
  throw std::invalid_argument("unknown pump profile '" + label +
                              "' (expected r0, rN2, rN4, general:<r> or custom:<file>)");
}

std::vector<double> z_grid(const ArrayConfig& config) {
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(config.z_steps) + 1);
  for (int k = 0; k <= config.z_steps; ++k) {
    grid.push_back(config.z_max * static_cast<double>(k) / config.z_steps);
  }
  return grid;
}

std::vector<Complex> nonlinearity_profile(const ArrayConfig& config) {
  const int n = config.n_modes;
  std::vector<Complex> eta(n);
  if (const auto* custom = std::get_if<CustomPhases>(&config.pump)) {
    if (static_cast<int>(custom->phases_rad.size()) != n) {
      throw std::invalid_argument("custom pump phases must have one entry per waveguide");
    }
    for (int j = 0; j < n; ++j) eta[j] = std::polar(config.eta_mag, custom->phases_rad[j]);
    return eta;
  }
  const long shift = *pump_shift(config.pump, n);
  for (long j = 1; j <= n; ++j) {
    eta[j - 1] = config.eta_mag * unit_phase(-j * shift, n);
  }
  return eta;
}

Eigen::MatrixXd build_drift_matrix(const ArrayConfig& config) {
  const int n = config.n_modes;
  if (n < 3) throw std::invalid_argument("build_drift_matrix: ring needs N >= 3");
  if (!config.homogeneous() && static_cast<int>(config.edge_couplings.size()) != n) {
    throw std::invalid_argument("edge_couplings must have one entry per edge (N)");
  }
  const std::vector<Complex> eta = nonlinearity_profile(config);
  // Coupling on the edge between waveguides j and j+1 (0-based slot j).
  auto edge = [&](int slot) {
    return config.homogeneous() ? config.coupling : config.edge_couplings[slot];
  };

  Eigen::MatrixXd drift = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    const double eta_r = eta[j].real();
    const double eta_i = eta[j].imag();
    drift(x_row(j), x_row(j)) = 2.0 * eta_i;
    drift(x_row(j), y_row(j)) = -2.0 * eta_r;
    drift(y_row(j), x_row(j)) = -2.0 * eta_r;
    drift(y_row(j), y_row(j)) = -2.0 * eta_i;

    const int prev = (j + n - 1) % n;
    const int next = (j + 1) % n;
    drift(x_row(j), y_row(prev)) += edge(prev);
    drift(x_row(j), y_row(next)) += edge(j);
    drift(y_row(j), x_row(prev)) -= edge(prev);
    drift(y_row(j), x_row(next)) -= edge(j);
  }
  return drift;
}

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::kOscillatory: return "oscillatory";
    case Regime::kHyperbolic: return "hyperbolic";
    case Regime::kDegenerate: return "degenerate";
  }
  return "unknown";
}

Regime classify_rate(double effective_lambda, double eta_mag) {
  const double gap = std::abs(effective_lambda) - 2.0 * std::abs(eta_mag);
  if (std::abs(gap) <= 1e-12) return Regime::kDegenerate;
  return gap > 0.0 ? Regime::kOscillatory : Regime::kHyperbolic;
}

std::vector<Regime> regime_classify(const ArrayConfig& config) {
  if (!std::holds_alternative<UniformPhase>(config.pump)) {
    throw std::invalid_argument("regime_classify: defined for the uniform pump only");
  }
  const EigenvalueSet lambda = eigenvalues(config.n_modes, config.coupling);
  std::vector<Regime> regimes;
  regimes.reserve(lambda.values.size());
  for (double l : lambda.values) regimes.push_back(classify_rate(l, config.eta_mag));
  return regimes;
}

std::vector<Diagnostic> validate_config(const ArrayConfig& config, bool zero_mode_claims) {
  std::vector<Diagnostic> out;
  auto error = [&](std::string message) {
    out.push_back({Diagnostic::Severity::kError, std::move(message)});
  };
  const int n = config.n_modes;

  if (n < 3) error("n_modes must be >= 3 for a ring, got " + std::to_string(n));
  if (!(config.coupling >= 0.0) || !std::isfinite(config.coupling)) {
    error("coupling_per_mm must be finite and >= 0");
  }
  if (!(config.eta_mag >= 0.0) || !std::isfinite(config.eta_mag)) {
    error("eta_per_mm must be finite and >= 0");
  }
  if (!(config.z_max > 0.0) || !std::isfinite(config.z_max)) {
    error("z_max_mm must be finite and > 0");
  }
  if (config.z_steps < 1) error("z_steps must be >= 1");
  if (!(config.transmittance >= 0.0 && config.transmittance <= 1.0)) {
    std::ostringstream msg;
    msg << "transmittance " << config.transmittance << " out of [0,1]";
    error(msg.str());
  }
  if (!config.homogeneous()) {
    if (static_cast<int>(config.edge_couplings.size()) != n) {
      error("edge_couplings must have N entries");
    }
    for (double j : config.edge_couplings) {
      if (!(j >= 0.0) || !std::isfinite(j)) {
        error("edge couplings must be finite and >= 0");
        break;
      }
    }
  }

  if (n >= 1) {
    if (std::holds_alternative<AlternatingPi>(config.pump) && n % 2 != 0) {
      error("r=N/2 requires N even, got N=" + std::to_string(n));
    }
    if (std::holds_alternative<AlternatingHalfPi>(config.pump) && n % 4 != 0) {
      error("r=N/4 requires N = 0 mod 4, got N=" + std::to_string(n));
    }
    if (const auto* custom = std::get_if<CustomPhases>(&config.pump)) {
      if (static_cast<int>(custom->phases_rad.size()) != n) {
        error("custom pump has " + std::to_string(custom->phases_rad.size()) +
              " phases for N=" + std::to_string(n));
      }
      for (double phi : custom->phases_rad) {
        if (!std::isfinite(phi)) {
          error("custom pump phases must be finite");
          break;
        }
      }
    }
  }

  if (zero_mode_claims && n >= 1 && n % 4 != 0) {
    out.push_back({Diagnostic::Severity::kWarning,
                   "N=" + std::to_string(n) +
                       " is not a multiple of 4: the ring has no zero Fourier modes, so "
                       "odd/even-set entanglement is not expected"});
  }
  return out;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  for (const auto& d : diagnostics) {
    if (d.severity == Diagnostic::Severity::kError) return true;
  }
  return false;
}

ConfigError::ConfigError(std::vector<Diagnostic> diagnostics)
    : std::invalid_argument(join_errors(diagnostics)), diagnostics_(std::move(diagnostics)) {}

void require_valid(const ArrayConfig& config) {
  auto diagnostics = validate_config(config);
  if (has_errors(diagnostics)) throw ConfigError(std::move(diagnostics));
}

}  // namespace cvring
