#include "cvring/gaussian.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cvring/fourier.hpp"

namespace cvring {
namespace {

constexpr Complex kI{0.0, 1.0};

int checked_shift(const ArrayConfig& config, int expected, const char* what) {
  if (!config.homogeneous()) {
    throw std::invalid_argument(std::string(what) + ": requires homogeneous coupling");
  }
  const auto shift = pump_shift(config.pump, config.n_modes);
  if (!shift || *shift != expected) {
    throw std::invalid_argument(std::string(what) + ": pump profile " +
                                profile_label(config.pump) + " does not match");
  }
  return *shift;
}

// Sums of the form sum_p S_ip S*_jp w_p and sum_p S*_ip S_jp w_p.
Eigen::MatrixXcd forward_sum(const FourierBasis& s, const Eigen::VectorXcd& w) {
  return s.matrix() * w.asDiagonal() * s.matrix().adjoint();
}
Eigen::MatrixXcd backward_sum(const FourierBasis& s, const Eigen::VectorXcd& w) {
  return s.matrix().conjugate() * w.asDiagonal() * s.matrix().transpose();
}

Eigen::MatrixXcd interleave(const Eigen::MatrixXcd& xx, const Eigen::MatrixXcd& yy,
                            const Eigen::MatrixXcd& xy) {
  const auto n = static_cast<int>(xx.rows());
  Eigen::MatrixXcd out(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      out(x_row(i), x_row(j)) = xx(i, j);
      out(y_row(i), y_row(j)) = yy(i, j);
      out(x_row(i), y_row(j)) = xy(i, j);
      out(y_row(j), x_row(i)) = xy(i, j);
    }
  }
  return out;
}

CovarianceMatrix real_part_of(const Eigen::MatrixXcd& sums, double z) {
  return {sums.real(), Basis::kIndividual, z};
}

}  // namespace

CovarianceMatrix evolve_covariance(const Propagator& prop, const CovarianceMatrix& v0) {
  if (prop.basis != v0.basis) {
    throw std::invalid_argument(std::string("evolve_covariance: propagator is in the ") +
                                std::string(to_string(prop.basis)) +
                                " basis, covariance in the " +
                                std::string(to_string(v0.basis)));
  }
  if (prop.matrix.rows() != v0.matrix.rows()) {
    throw std::invalid_argument("evolve_covariance: dimension mismatch");
  }
  Eigen::MatrixXd v = prop.matrix * v0.matrix * prop.matrix.transpose();
  return {0.5 * (v + v.transpose()), v0.basis, v0.z + prop.z};
}

Eigen::MatrixXcd covariance_r0_sums(const ArrayConfig& config, double z) {
  checked_shift(config, 0, "covariance_r0");
  const int n = config.n_modes;
  const FourierBasis s(n);
  const EigenvalueSet lambda = eigenvalues(n, config.coupling);
  const double eta = config.eta_mag;

  Eigen::VectorXcd zeta(n), beta(n), gamma(n), delta(n);
  for (int p = 1; p <= n; ++p) {
    const double l = lambda(p);
    const auto [c, g] = oscillator_factors(l * l - 4.0 * eta * eta, z);
    zeta(p - 1) = c * c + l * l * g * g;
    beta(p - 1) = 2.0 * kI * eta * g * c;
    gamma(p - 1) = 2.0 * eta * l * g * g;
    delta(p - 1) = 4.0 * eta * eta * g * g;
  }
  const Eigen::MatrixXcd xx =
      forward_sum(s, zeta - beta - gamma) + backward_sum(s, beta - gamma + delta);
  const Eigen::MatrixXcd yy =
      forward_sum(s, zeta + beta + gamma) + backward_sum(s, gamma - beta + delta);
  const Eigen::MatrixXcd xy =
      kI * (forward_sum(s, beta + gamma) + backward_sum(s, beta - gamma));
  return interleave(xx, yy, xy);
}

CovarianceMatrix covariance_r0(const ArrayConfig& config, double z) {
  const Eigen::MatrixXcd sums = covariance_r0_sums(config, z);
  if (z == 0.0) return vacuum(config.n_modes);
  return real_part_of(sums, z);
}

CovarianceMatrix covariance_rhalf(const ArrayConfig& config, double z) {
  if (config.n_modes % 2 != 0) throw std::invalid_argument("covariance_rhalf: N must be even");
  checked_shift(config, config.n_modes / 2, "covariance_rhalf");
  if (!(z >= 0.0)) throw std::invalid_argument("covariance_rhalf: z must be >= 0");
  const int n = config.n_modes;
  CovarianceMatrix v = vacuum(n);
  v.z = z;
  if (z == 0.0) return v;
  const double ch = std::cosh(4.0 * config.eta_mag * z);
  const double sh = std::sinh(4.0 * config.eta_mag * z);
  for (int k = 0; k < n; ++k) {
    const double sign = (mode_index(k) % 2 == 0) ? 1.0 : -1.0;  // (-1)^j
    v.matrix(x_row(k), x_row(k)) = ch;
    v.matrix(y_row(k), y_row(k)) = ch;
    v.matrix(x_row(k), y_row(k)) = -sign * sh;
    v.matrix(y_row(k), x_row(k)) = -sign * sh;
  }
  return v;
}

Eigen::MatrixXcd covariance_rquarter_sums(const ArrayConfig& config, double z) {
  if (config.n_modes % 4 != 0) {
    throw std::invalid_argument("covariance_rquarter: N must be a multiple of 4");
  }
  checked_shift(config, config.n_modes / 4, "covariance_rquarter");
  const int n = config.n_modes;
  const FourierBasis s(n);
  const EigenvalueSet lambda = eigenvalues(n, config.coupling);
  const double eta = config.eta_mag;

  Eigen::VectorXcd beta_sq(n), delta_sq(n), cross(n);
  for (int p = 1; p <= n; ++p) {
    const double sum = 0.5 * (lambda(p) + lambda(3L * n / 4 - p));
    const auto [c, g] = oscillator_factors(sum * sum - 4.0 * eta * eta, z);
    const Complex beta_t(c, -sum * g);
    const Complex delta_t(0.0, 2.0 * eta * g);
    beta_sq(p - 1) = std::norm(beta_t);
    delta_sq(p - 1) = std::norm(delta_t);
    cross(p - 1) = beta_t * delta_t;
  }
  const Eigen::MatrixXcd g_fwd = forward_sum(s, beta_sq);
  const Eigen::MatrixXcd g_bwd = backward_sum(s, beta_sq);
  const Eigen::MatrixXcd k_bwd = backward_sum(s, delta_sq);
  const Eigen::MatrixXcd k_fwd = forward_sum(s, delta_sq);
  // T_ij = <A_i A_j> = -(-i)^j sum_p S_ip S*_jp beta~ delta~, and its conjugate.
  Eigen::MatrixXcd t = forward_sum(s, cross);
  Eigen::MatrixXcd t_bar = backward_sum(s, cross.conjugate());
  for (int k = 0; k < n; ++k) {
    const Complex phase = unit_phase(-static_cast<long>(mode_index(k)), 4);  // (-i)^j
    t.col(k) *= -phase;
    t_bar.col(k) *= -std::conj(phase);
  }
  const Eigen::MatrixXcd xx = g_fwd + k_bwd + t + t_bar;
  const Eigen::MatrixXcd yy = g_fwd + k_bwd - t - t_bar;
  const Eigen::MatrixXcd xy =
      0.5 * kI * (g_fwd - g_bwd) - 0.5 * kI * (k_bwd - k_fwd) - kI * (t - t_bar);
  return interleave(xx, yy, xy);
}

CovarianceMatrix covariance_rquarter(const ArrayConfig& config, double z) {
  const Eigen::MatrixXcd sums = covariance_rquarter_sums(config, z);
  if (z == 0.0) return vacuum(config.n_modes);
  return real_part_of(sums, z);
}

CovarianceMatrix closed_form_covariance(const ArrayConfig& config, double z) {
  const int n = config.n_modes;
  const auto shift = pump_shift(config.pump, n);
  if (shift && *shift == 0) return covariance_r0(config, z);
  if (shift && n % 2 == 0 && *shift == n / 2) return covariance_rhalf(config, z);
  if (shift && n % 4 == 0 && *shift == n / 4) return covariance_rquarter(config, z);
  throw std::invalid_argument("closed-form covariance exists for r in {0, N/2, N/4}; got " +
                              profile_label(config.pump));
}

CovarianceMatrix propagated_covariance(const ArrayConfig& config, double z, Route route) {
  return evolve_covariance(propagate(config, z, route), vacuum(config.n_modes));
}

CovarianceMatrix apply_loss(const CovarianceMatrix& v, double transmittance) {
  if (!(transmittance >= 0.0 && transmittance <= 1.0)) {
    throw std::invalid_argument("transmittance must lie in [0, 1], got " +
                                std::to_string(transmittance));
  }
  CovarianceMatrix out = v;
  const auto dim = v.matrix.rows();
  out.matrix = transmittance * v.matrix +
               (1.0 - transmittance) * Eigen::MatrixXd::Identity(dim, dim);
  return out;
}

double min_physical_eigenvalue(const Eigen::MatrixXd& v) {
  const int n = static_cast<int>(v.rows() / 2);
  Eigen::MatrixXcd h = v.cast<Complex>();
  h += kI * symplectic_form(n).cast<Complex>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double gaussian_determinant(const Eigen::MatrixXd& v) {
  using MatrixXld = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  const MatrixXld wide = v.cast<long double>();
  return static_cast<double>(wide.fullPivLu().determinant());
}

StateDiagnostics purity_and_symplectic_report(const CovarianceMatrix& v,
                                              const Propagator* prop) {
  StateDiagnostics d;
  d.determinant = gaussian_determinant(v.matrix);
  d.min_physical_eigenvalue = min_physical_eigenvalue(v.matrix);
  d.asymmetry = max_abs(Eigen::MatrixXd(v.matrix - v.matrix.transpose()));
  d.pure = std::abs(d.determinant - 1.0) <= 1e-8;
  d.physical = d.min_physical_eigenvalue >= -1e-9 && d.asymmetry <= 1e-12;
  if (prop != nullptr) {
    d.symplectic_residual = symplectic_residual(prop->matrix);
    d.symplectic = *d.symplectic_residual <= 1e-10;
  }
  return d;
}

}  // namespace cvring
