#pragma once

// Physical description of the circular array and the quadrature drift matrix.
//
// Per-waveguide nonlinearity: eta_j = eta_mag * e^{i phi_j}. Shift profiles use
// phi_j = -2 pi j r / N, a unit-magnitude profile, so the |eta| appearing in
// every closed-form Fourier-mode solution equals eta_mag exactly:
//   dB_p/dz = -i lambda_p B_p - 2 i eta_mag B^dagger_{N-(p+r)}.

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "cvring/quadrature.hpp"

namespace cvring {

struct UniformPhase {};        // r = 0
struct AlternatingPi {};       // r = N/2, eta_j = (-1)^j eta
struct AlternatingHalfPi {};   // r = N/4, eta_j = (-i)^j eta
struct GeneralShift {
  long shift = 0;  // r, taken mod N
};
struct CustomPhases {
  std::vector<double> phases_rad;  // phi_1..phi_N
};

using PumpProfile = std::variant<UniformPhase, AlternatingPi, AlternatingHalfPi,
                                 GeneralShift, CustomPhases>;

/// Shift r in 0..N-1 for shift-type profiles; nullopt for custom phases.
/// Throws std::invalid_argument if the divisibility the variant needs fails.
std::optional<int> pump_shift(const PumpProfile& pump, int n_modes);

/// Short label used on the command line and in file names:
/// r0, rN2, rN4, general:<r>, custom.
std::string profile_label(const PumpProfile& pump);

/// Parses r0 | rN2 | rN4 | general:<r>. Custom profiles are file based and
/// parsed by the application layer.
PumpProfile parse_profile(const std::string& label);

struct ArrayConfig {
  int n_modes = 8;
  double coupling = 0.45;   // J, mm^-1
  double eta_mag = 0.015;   // |eta|, mm^-1
  PumpProfile pump = UniformPhase{};
  double z_max = 20.0;      // mm
  int z_steps = 400;
  double transmittance = 1.0;
  // Per-edge couplings J_j between waveguides j and j+1. Empty means
  // homogeneous J. Only the numerical route accepts them.
  std::vector<double> edge_couplings;

  bool homogeneous() const { return edge_couplings.empty(); }
};

/// z_k = k z_max / z_steps for k = 0..z_steps.
std::vector<double> z_grid(const ArrayConfig& config);

/// eta_j for j = 1..N (element j-1).
std::vector<Complex> nonlinearity_profile(const ArrayConfig& config);

/// Real D with d xi/dz = D xi:
///   dx_j/dz =  2 eta_I x_j - 2 eta_R y_j + J (y_{j-1} + y_{j+1})
///   dy_j/dz = -2 eta_R x_j - 2 eta_I y_j - J (x_{j-1} + x_{j+1})
Eigen::MatrixXd build_drift_matrix(const ArrayConfig& config);

enum class Regime { kOscillatory, kHyperbolic, kDegenerate };

std::string_view to_string(Regime regime);

/// Classifies |x| against 2|eta|: oscillatory above, hyperbolic below,
/// degenerate within 1e-12.
Regime classify_rate(double effective_lambda, double eta_mag);

/// Per Fourier index p = 1..N for the uniform pump. Throws for other profiles.
std::vector<Regime> regime_classify(const ArrayConfig& config);

struct Diagnostic {
  enum class Severity { kError, kWarning };
  Severity severity = Severity::kError;
  std::string message;
};

/// Collects every violation; never throws. With zero_mode_claims set, warns
/// when N is not a multiple of 4 (the ring then has no zero Fourier modes).
std::vector<Diagnostic> validate_config(const ArrayConfig& config,
                                        bool zero_mode_claims = false);

bool has_errors(const std::vector<Diagnostic>& diagnostics);

class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

/// Throws ConfigError listing every error-level diagnostic.
void require_valid(const ArrayConfig& config);

}  // namespace cvring
