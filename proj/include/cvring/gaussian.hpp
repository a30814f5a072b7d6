#pragma once

#include <optional>

#include <Eigen/Dense>

#include "cvring/covariance.hpp"
#include "cvring/model.hpp"
#include "cvring/propagate.hpp"

namespace cvring {

/// V(z) = M V(0) M^T. Throws std::invalid_argument on a basis or dimension
/// mismatch.
CovarianceMatrix evolve_covariance(const Propagator& prop,
                                   const CovarianceMatrix& v0);

/// Complex-valued evaluation of the closed-form covariance sums, before the
/// (vanishing) imaginary part is dropped. Interleaved 2N x 2N layout.
Eigen::MatrixXcd covariance_r0_sums(const ArrayConfig& config, double z);
Eigen::MatrixXcd covariance_rquarter_sums(const ArrayConfig& config, double z);

/// Uniform pump, vacuum input, individual basis:
///   V(x_i,x_j) = sum_p [S_ip S*_jp (zeta - beta - gamma) + S*_ip S_jp (beta - gamma + delta)]
///   V(y_i,y_j) = sum_p [S_ip S*_jp (zeta + beta + gamma) + S*_ip S_jp (gamma - beta + delta)]
///   V(x_i,y_j) = sum_p i [S_ip S*_jp (beta + gamma) + S*_ip S_jp (beta - gamma)]
CovarianceMatrix covariance_r0(const ArrayConfig& config, double z);

/// Alternating-pi pump: product of single-mode squeezed states,
/// V(x_j,x_j) = V(y_j,y_j) = cosh(4 eta z), V(x_j,y_j) = -(-1)^j sinh(4 eta z).
CovarianceMatrix covariance_rhalf(const ArrayConfig& config, double z);

/// Alternating-pi/2 pump (N multiple of 4), evaluated from the second moments
/// G = <A A^dagger>, K = <A^dagger A>, T = <A A>:
///   G_ij = sum_p S_ip S*_jp |b~_p|^2,  K_ij = sum_p S*_ip S_jp |d~_p|^2,
///   T_ij = -(-i)^j sum_p S_ip S*_jp b~_p d~_p,
/// b~_p = cos Fz - i (lambda_p + lambda_{3N/4-p}) sin(Fz)/(2F),
/// d~_p = 2 i eta sin(Fz)/F.
CovarianceMatrix covariance_rquarter(const ArrayConfig& config, double z);

/// Dispatches on the pump profile (uniform, alternating pi, alternating pi/2).
CovarianceMatrix closed_form_covariance(const ArrayConfig& config, double z);

/// Vacuum-input covariance from the chosen propagator route.
CovarianceMatrix propagated_covariance(const ArrayConfig& config, double z,
                                       Route route = Route::kAuto);

/// V_T = T V + (1 - T) I. Throws std::invalid_argument for T outside [0, 1].
CovarianceMatrix apply_loss(const CovarianceMatrix& v, double transmittance);

/// Smallest eigenvalue of the Hermitian matrix V + i Omega; >= 0 for a
/// physical state.
double min_physical_eigenvalue(const Eigen::MatrixXd& v);

/// det V by full-pivot LU in extended precision; squeezed states have large
/// entries whose products cancel down to 1.
double gaussian_determinant(const Eigen::MatrixXd& v);

struct StateDiagnostics {
  double determinant = 1.0;
  double min_physical_eigenvalue = 0.0;
  double asymmetry = 0.0;
  std::optional<double> symplectic_residual;
  bool pure = true;        // |det V - 1| <= 1e-8
  bool physical = true;    // V + i Omega >= -1e-9, symmetric to 1e-12
  bool symplectic = true;  // residual <= 1e-10 (true when no propagator given)
};

StateDiagnostics purity_and_symplectic_report(const CovarianceMatrix& v,
                                              const Propagator* prop = nullptr);

}  // namespace cvring
