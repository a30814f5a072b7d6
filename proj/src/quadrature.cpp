#include "cvring/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cvring/covariance.hpp"

namespace cvring {

std::string_view to_string(Basis basis) {
  return basis == Basis::kIndividual ? "individual" : "fourier";
}

Complex unit_phase(long numerator, long denominator) {
  if (denominator <= 0) throw std::invalid_argument("unit_phase: denominator must be positive");
  long k = ((numerator % denominator) + denominator) % denominator;
  if ((4 * k) % denominator == 0) {
    switch ((4 * k) / denominator) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) /
                       static_cast<double>(denominator);
  return std::polar(1.0, angle);
}

Eigen::MatrixXd symplectic_form(int n_modes) {
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
  for (int k = 0; k < n_modes; ++k) {
    omega(x_row(k), y_row(k)) = 1.0;
    omega(y_row(k), x_row(k)) = -1.0;
  }
  return omega;
}

Eigen::MatrixXd realify_bogoliubov(const Eigen::MatrixXcd& passive,
                                   const Eigen::MatrixXcd& active) {
  if (passive.rows() != passive.cols() || active.rows() != passive.rows() ||
      active.cols() != passive.cols()) {
    throw std::invalid_argument("realify_bogoliubov: shape mismatch");
  }
  const auto n = static_cast<int>(passive.rows());
  Eigen::MatrixXd out(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      const Complex a = passive(j, k);
      const Complex b = active(j, k);
      out(x_row(j), x_row(k)) = a.real() + b.real();
      out(x_row(j), y_row(k)) = -a.imag() + b.imag();
      out(y_row(j), x_row(k)) = a.imag() + b.imag();
      out(y_row(j), y_row(k)) = a.real() - b.real();
    }
  }
  return out;
}

Eigen::MatrixXd realify_passive(const Eigen::MatrixXcd& passive) {
  return realify_bogoliubov(
      passive, Eigen::MatrixXcd::Zero(passive.rows(), passive.cols()));
}

double symplectic_residual(const Eigen::MatrixXd& m) {
  const Eigen::MatrixXd omega = symplectic_form(static_cast<int>(m.rows() / 2));
  return max_abs(Eigen::MatrixXd(m * omega * m.transpose() - omega));
}

double hamiltonian_residual(const Eigen::MatrixXd& generator) {
  const Eigen::MatrixXd omega =
      symplectic_form(static_cast<int>(generator.rows() / 2));
  return max_abs(Eigen::MatrixXd(generator * omega + omega * generator.transpose()));
}

double max_abs(const Eigen::MatrixXd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double max_abs(const Eigen::MatrixXcd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

CovarianceMatrix vacuum(int n_modes, Basis basis) {
  return {Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes), basis, 0.0};
}

}  // namespace cvring
