#include "cvring/propagate.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "cvring/fourier.hpp"

namespace cvring {
namespace {

constexpr Complex kI{0.0, 1.0};

void require_nonnegative(double z) {
  if (!(z >= 0.0) || !std::isfinite(z)) {
    throw std::invalid_argument("propagation distance must be finite and >= 0, got " +
                                std::to_string(z));
  }
}

Propagator identity_propagator(int n_modes, double z, Basis basis, Method method) {
  return {Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes), z, basis, method};
}

/// S diag(weights) S^dagger, i.e. sum_p S_{j,p} S*_{j',p} w_p.
Eigen::MatrixXcd fourier_sum(const FourierBasis& s, const Eigen::VectorXcd& weights) {
  return s.matrix() * weights.asDiagonal() * s.matrix().adjoint();
}

int partner_slot(int p, long shift, int n_modes) {
  return mode_slot(static_cast<long>(n_modes) - (p + shift), n_modes);
}

}  // namespace

std::string_view to_string(Method method) {
  switch (method) {
    case Method::kNumerical: return "numerical";
    case Method::kAnalyticR0: return "analytic_r0";
    case Method::kAnalyticRN2: return "analytic_rN2";
    case Method::kAnalyticRN4: return "analytic_rN4";
    case Method::kAnalyticGeneralR: return "analytic_general_r";
  }
  return "unknown";
}

Propagator numerical_propagator(const Eigen::MatrixXd& drift, double z) {
  require_nonnegative(z);
  if (drift.rows() != drift.cols() || drift.rows() % 2 != 0) {
    throw std::invalid_argument("numerical_propagator: drift must be square with even size");
  }
  const int n = static_cast<int>(drift.rows() / 2);
  if (z == 0.0) return identity_propagator(n, z, Basis::kIndividual, Method::kNumerical);
  Eigen::MatrixXd m = (drift * z).exp();
  if (!m.allFinite()) {
    throw std::domain_error("numerical_propagator: matrix exponential is not finite");
  }
  return {std::move(m), z, Basis::kIndividual, Method::kNumerical};
}

OscillatorFactors oscillator_factors(double f_squared, double z) {
  const double phase_sq = f_squared * z * z;  // (F z)^2
  if (std::abs(phase_sq) < 1e-8) {
    return {1.0 - phase_sq / 2.0 + phase_sq * phase_sq / 24.0,
            z * (1.0 - phase_sq / 6.0 + phase_sq * phase_sq / 120.0)};
  }
  if (f_squared > 0.0) {
    const double f = std::sqrt(f_squared);
    return {std::cos(f * z), std::sin(f * z) / f};
  }
  const double kappa = std::sqrt(-f_squared);
  return {std::cosh(kappa * z), std::sinh(kappa * z) / kappa};
}

double ModePairBlock::magnitude() const { return std::sqrt(std::abs(f_squared)); }

std::vector<ModePairBlock> mode_pair_blocks(int n_modes, double coupling, double eta_mag,
                                            long shift) {
  const EigenvalueSet lambda = eigenvalues(n_modes, coupling);
  std::vector<ModePairBlock> blocks;
  blocks.reserve(n_modes);
  for (int p = 1; p <= n_modes; ++p) {
    const int q = mode_index(partner_slot(p, shift, n_modes));
    const double sum = 0.5 * (lambda(p) + lambda(q));
    blocks.push_back({p, q, sum * sum - 4.0 * eta_mag * eta_mag,
                      classify_rate(sum, eta_mag)});
  }
  return blocks;
}

std::vector<Eigen::Matrix2d> analytic_fourier_blocks_r0(int n_modes, double coupling,
                                                        double eta_mag, double z) {
  require_nonnegative(z);
  const EigenvalueSet lambda = eigenvalues(n_modes, coupling);
  std::vector<Eigen::Matrix2d> blocks;
  blocks.reserve(n_modes);
  for (double l : lambda.values) {
    const auto [c, g] = oscillator_factors(l * l - 4.0 * eta_mag * eta_mag, z);
    Eigen::Matrix2d block;
    block << c, (l - 2.0 * eta_mag) * g,
             -(l + 2.0 * eta_mag) * g, c;
    blocks.push_back(block);
  }
  return blocks;
}

std::optional<double> squeeze_parameter_r0(double lambda, double eta_mag) {
  if (classify_rate(lambda, eta_mag) != Regime::kOscillatory) return std::nullopt;
  return 0.5 * std::log((lambda + 2.0 * eta_mag) / (lambda - 2.0 * eta_mag));
}

Eigen::MatrixXd standing_wave_transform(int n_modes) {
  const double h = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(n_modes, n_modes);
  for (int p = 1; p <= n_modes; ++p) {
    const int slot = p - 1;
    const int partner = mode_slot(n_modes - p, n_modes);
    if (partner == slot) {
      w(slot, slot) = 1.0;
    } else if (slot < partner) {
      w(slot, slot) = h;
      w(slot, partner) = h;
      w(partner, slot) = kI * h;
      w(partner, partner) = -kI * h;
    }
  }
  return realify_passive(w);
}

Propagator analytic_general_r(int n_modes, double coupling, double eta_mag, long shift,
                              double z) {
  require_nonnegative(z);
  const EigenvalueSet lambda = eigenvalues(n_modes, coupling);
  Eigen::MatrixXcd passive = Eigen::MatrixXcd::Zero(n_modes, n_modes);
  Eigen::MatrixXcd active = Eigen::MatrixXcd::Zero(n_modes, n_modes);
  for (int p = 1; p <= n_modes; ++p) {
    const int q_slot = partner_slot(p, shift, n_modes);
    const double lp = lambda(p);
    const double lq = lambda.values[q_slot];
    const double sum = 0.5 * (lp + lq);
    const double diff = 0.5 * (lp - lq);
    const auto [c, g] = oscillator_factors(sum * sum - 4.0 * eta_mag * eta_mag, z);
    const Complex rotation = std::polar(1.0, -diff * z);
    passive(p - 1, p - 1) = rotation * Complex(c, -sum * g);
    active(p - 1, q_slot) = rotation * Complex(0.0, -2.0 * eta_mag * g);
  }
  return {realify_bogoliubov(passive, active), z, Basis::kFourier,
          Method::kAnalyticGeneralR};
}

Bogoliubov individual_bogoliubov(const ArrayConfig& config, double z) {
  require_nonnegative(z);
  if (!config.homogeneous()) {
    throw std::invalid_argument("closed-form propagators require homogeneous coupling");
  }
  const int n = config.n_modes;
  const auto shift = pump_shift(config.pump, n);
  if (!shift) throw std::invalid_argument("closed-form propagators require a shift pump profile");

  const FourierBasis s(n);
  const EigenvalueSet lambda = eigenvalues(n, config.coupling);
  const double eta = config.eta_mag;
  Eigen::VectorXcd passive_w(n);
  Eigen::VectorXcd active_w(n);

  if (*shift == 0) {
    for (int p = 1; p <= n; ++p) {
      const double l = lambda(p);
      const auto [c, g] = oscillator_factors(l * l - 4.0 * eta * eta, z);
      passive_w(p - 1) = Complex(c, -l * g);     // U
      active_w(p - 1) = Complex(0.0, 2.0 * eta * g);  // U'
    }
    return {fourier_sum(s, passive_w), -fourier_sum(s, active_w)};
  }

  if (n % 2 == 0 && *shift == n / 2) {
    for (int p = 1; p <= n; ++p) passive_w(p - 1) = std::polar(1.0, -lambda(p) * z);
    const Eigen::MatrixXcd coupler = fourier_sum(s, passive_w);  // U~
    const double ch = std::cosh(2.0 * eta * z);
    const double sh = std::sinh(2.0 * eta * z);
    Bogoliubov out{ch * coupler, Eigen::MatrixXcd(n, n)};
    for (int k = 0; k < n; ++k) {
      const double sign = (mode_index(k) % 2 == 0) ? 1.0 : -1.0;  // (-1)^{j'}
      out.active.col(k) = -sign * kI * sh * coupler.col(k);
    }
    return out;
  }

  if (n % 4 == 0 && *shift == n / 4) {
    for (int p = 1; p <= n; ++p) {
      const double lp = lambda(p);
      const double lq = lambda(3L * n / 4 - p);
      const double sum = 0.5 * (lp + lq);
      const auto [c, g] = oscillator_factors(sum * sum - 4.0 * eta * eta, z);
      const Complex rotation = std::polar(1.0, -0.5 * (lp - lq) * z);
      passive_w(p - 1) = rotation * Complex(c, -sum * g);      // beta~_p
      active_w(p - 1) = rotation * Complex(0.0, 2.0 * eta * g);  // delta~_p
    }
    Bogoliubov out{fourier_sum(s, passive_w), fourier_sum(s, active_w)};
    for (int k = 0; k < n; ++k) {
      out.active.col(k) *= -unit_phase(-static_cast<long>(mode_index(k)), 4);  // -(-i)^{j'}
    }
    return out;
  }

  throw std::invalid_argument("individual-basis closed form exists for r in {0, N/2, N/4}; got " +
                              profile_label(config.pump) + " with N=" + std::to_string(n));
}

Propagator analytic_individual_propagator(const ArrayConfig& config, double z) {
  const int n = config.n_modes;
  const int shift = pump_shift(config.pump, n).value_or(-1);
  Method method = Method::kAnalyticR0;
  if (shift != 0) method = (n % 2 == 0 && shift == n / 2) ? Method::kAnalyticRN2 : Method::kAnalyticRN4;
  const Bogoliubov transfer = individual_bogoliubov(config, z);
  if (z == 0.0) return identity_propagator(n, z, Basis::kIndividual, method);
  return {realify_bogoliubov(transfer.passive, transfer.active), z, Basis::kIndividual, method};
}

Propagator propagate(const ArrayConfig& config, double z, Route route) {
  require_nonnegative(z);
  const int n = config.n_modes;
  const auto shift = pump_shift(config.pump, n);
  const bool closed_form_possible = shift.has_value() && config.homogeneous();

  if (route == Route::kNumerical || (route == Route::kAuto && !closed_form_possible)) {
    return numerical_propagator(build_drift_matrix(config), z);
  }
  if (!closed_form_possible) {
    throw std::invalid_argument(
        "no closed form for this configuration (custom phases or inhomogeneous coupling); "
        "use the numerical route");
  }
  const bool special = *shift == 0 || (n % 2 == 0 && *shift == n / 2) ||
                       (n % 4 == 0 && *shift == n / 4);
  if (special) return analytic_individual_propagator(config, z);

  if (z == 0.0) return identity_propagator(n, z, Basis::kIndividual, Method::kAnalyticGeneralR);
  const Propagator fourier =
      analytic_general_r(n, config.coupling, config.eta_mag, *shift, z);
  const Eigen::MatrixXd r = FourierBasis(n).realified();
  return {r * fourier.matrix * r.transpose(), z, Basis::kIndividual,
          Method::kAnalyticGeneralR};
}

}  // namespace cvring
