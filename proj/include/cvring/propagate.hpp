#pragma once

// Symplectic propagators xi(z) = M(z) xi(0).
//
// Two independent routes: the matrix exponential of the drift matrix, and the
// closed-form two-mode-squeezer solution of the Fourier-mode equations
//   B_p(z) = e^{-i d z} [ (cos Fz - i s sin(Fz)/F) B_p(0)
//                         - 2 i eta sin(Fz)/F B^dagger_q(0) ],
// with q = N-(p+r), s = (lambda_p + lambda_q)/2, d = (lambda_p - lambda_q)/2
// and F^2 = s^2 - 4 eta^2. cos(Fz) and sin(Fz)/F are even in F, so every
// closed form is evaluated from F^2 and stays real on both branches.

#include <vector>

#include <Eigen/Dense>

#include "cvring/model.hpp"
#include "cvring/quadrature.hpp"

namespace cvring {

enum class Method {
  kNumerical,
  kAnalyticR0,
  kAnalyticRN2,
  kAnalyticRN4,
  kAnalyticGeneralR,
};

std::string_view to_string(Method method);

struct Propagator {
  Eigen::MatrixXd matrix;
  double z = 0.0;  // mm
  Basis basis = Basis::kIndividual;
  Method method = Method::kNumerical;

  int n_modes() const { return static_cast<int>(matrix.rows() / 2); }
};

/// exp(D z) by scaling and squaring. Throws std::invalid_argument for z < 0
/// and std::domain_error on non-finite output.
Propagator numerical_propagator(const Eigen::MatrixXd& drift, double z);

/// cos(F z) and sin(F z)/F as functions of F^2 (negative on the hyperbolic
/// branch). A short series is used when |F z| < 1e-4.
struct OscillatorFactors {
  double cos_term;
  double sinc_term;  // sin(F z) / F, tends to z
};
OscillatorFactors oscillator_factors(double f_squared, double z);

struct ModePairBlock {
  int p = 1;
  int partner = 1;  // N - (p + r) mod N, reported 1-based
  double f_squared = 0.0;
  Regime branch = Regime::kOscillatory;

  /// |F_p|; imaginary on the hyperbolic branch.
  double magnitude() const;
};

/// Pair structure for a shift-r pump. partner is an involution.
std::vector<ModePairBlock> mode_pair_blocks(int n_modes, double coupling,
                                            double eta_mag, long shift);

/// Uniform-pump 2x2 blocks S_p(z) = exp(z [[0, lambda_p - 2 eta],
/// [-(lambda_p + 2 eta), 0]]), p = 1..N. In the oscillatory regime this is
///   [[cos Fz, sgn(lambda_p) e^{-r_p} sin Fz],
///    [-sgn(lambda_p) e^{r_p} sin Fz, cos Fz]],
///   r_p = ln[(lambda_p + 2 eta)/(lambda_p - 2 eta)]/2,
/// and it is the cosh/sinh(2 eta z) squeezer for a zero mode. The blocks act on
/// the standing-wave quadratures of standing_wave_transform.
std::vector<Eigen::Matrix2d> analytic_fourier_blocks_r0(int n_modes,
                                                        double coupling,
                                                        double eta_mag,
                                                        double z);

/// Squeezing parameter r_p of a uniform-pump block; only defined in the
/// oscillatory regime (nullopt otherwise).
std::optional<double> squeeze_parameter_r0(double lambda, double eta_mag);

/// Orthogonal symplectic map from complex-Fourier quadratures to standing-wave
/// quadratures: self-paired modes (2p = 0 mod N) are kept, other pairs become
/// (B_p + B_{N-p})/sqrt2 at slot p and i(B_p - B_{N-p})/sqrt2 at slot N-p.
Eigen::MatrixXd standing_wave_transform(int n_modes);

/// Closed-form propagator in the Fourier basis for eta_j = eta e^{-i2pi jr/N}.
Propagator analytic_general_r(int n_modes, double coupling, double eta_mag,
                              long shift, double z);

/// A(z) = passive A(0) + active A^dagger(0) in the individual basis.
struct Bogoliubov {
  Eigen::MatrixXcd passive;
  Eigen::MatrixXcd active;
};

/// Individual-basis mode transfer for r in {0, N/2, N/4}: the U, U' sums for
/// the uniform pump (active = -U'), U~ with cosh/sinh(2 eta z) for r = N/2,
/// and the U-bar form with beta~_p, delta~_p for r = N/4. Throws
/// std::invalid_argument for any other profile or inhomogeneous coupling.
Bogoliubov individual_bogoliubov(const ArrayConfig& config, double z);

Propagator analytic_individual_propagator(const ArrayConfig& config, double z);

enum class Route { kAuto, kAnalytic, kNumerical };

/// Individual-basis propagator. kAuto picks the closed form when the profile
/// allows one and falls back to the matrix exponential otherwise.
Propagator propagate(const ArrayConfig& config, double z,
                     Route route = Route::kAuto);

}  // namespace cvring
