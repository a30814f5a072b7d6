#include "cvring/fourier.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cvring {

FourierBasis::FourierBasis(int n_modes) : n_modes_(n_modes) {
  if (n_modes < 1) throw std::invalid_argument("dft_matrix: n_modes must be >= 1");
  const double norm = 1.0 / std::sqrt(static_cast<double>(n_modes));
  entries_.resize(n_modes, n_modes);
  for (long j = 1; j <= n_modes; ++j) {
    for (long p = 1; p <= n_modes; ++p) {
      entries_(j - 1, p - 1) = norm * unit_phase(j * p, n_modes);
    }
  }
}

Eigen::MatrixXd FourierBasis::realified() const { return realify_passive(entries_); }

FourierBasis dft_matrix(int n_modes) { return FourierBasis(n_modes); }

double unitarity_residual(const FourierBasis& basis) {
  const Eigen::MatrixXcd& s = basis.matrix();
  const Eigen::MatrixXcd gram = s.transpose() * s.conjugate();  // (p,q): sum_j S_jp S*_jq
  return max_abs(Eigen::MatrixXcd(
      gram - Eigen::MatrixXcd::Identity(basis.n_modes(), basis.n_modes())));
}

EigenvalueSet eigenvalues(int n_modes, double coupling) {
  if (n_modes < 1) throw std::invalid_argument("eigenvalues: n_modes must be >= 1");
  EigenvalueSet set;
  set.coupling = coupling;
  set.values.reserve(n_modes);
  for (long p = 1; p <= n_modes; ++p) {
    set.values.push_back(2.0 * coupling * unit_phase(p, n_modes).real());
  }
  return set;
}

std::optional<std::pair<int, int>> zero_mode_indices(int n_modes) {
  if (n_modes < 1) throw std::invalid_argument("zero_mode_indices: n_modes must be >= 1");
  if (n_modes % 4 != 0) return std::nullopt;
  return std::pair{n_modes / 4, 3 * n_modes / 4};
}

double orthonormality_residual(int n_modes, long shift) {
  const FourierBasis s(n_modes);
  const double root_n = std::sqrt(static_cast<double>(n_modes));
  double worst = 0.0;
  for (long p = 1; p <= n_modes; ++p) {
    for (long q = 1; q <= n_modes; ++q) {
      Complex sum = 0.0;
      for (long j = 1; j <= n_modes; ++j) {
        sum += root_n * s(j, shift) * s(j, p) * s(j, q);
      }
      const bool paired = mode_slot(p, n_modes) == mode_slot(n_modes - (q + shift), n_modes);
      worst = std::max(worst, std::abs(sum - (paired ? 1.0 : 0.0)));
    }
  }
  return worst;
}

double orthonormality_residual(int n_modes, PairingRelation relation) {
  switch (relation) {
    case PairingRelation::kUniform:
      return orthonormality_residual(n_modes, 0L);
    case PairingRelation::kAlternatingSign:
      if (n_modes % 2 != 0) {
        throw std::invalid_argument("alternating-sign relation needs N even, got N=" +
                                    std::to_string(n_modes));
      }
      return orthonormality_residual(n_modes, static_cast<long>(n_modes / 2));
    case PairingRelation::kAlternatingQuarter:
      if (n_modes % 4 != 0) {
        throw std::invalid_argument(
            "alternating-quarter relation needs N to be a multiple of 4, got N=" +
            std::to_string(n_modes));
      }
      return orthonormality_residual(n_modes, static_cast<long>(n_modes / 4));
  }
  throw std::logic_error("unknown pairing relation");
}

CovarianceMatrix change_basis(const CovarianceMatrix& cov, const FourierBasis& basis,
                              BasisChange direction) {
  if (cov.matrix.rows() != 2 * basis.n_modes() || cov.matrix.cols() != cov.matrix.rows()) {
    throw std::invalid_argument("change_basis: covariance is " +
                                std::to_string(cov.matrix.rows()) + "x" +
                                std::to_string(cov.matrix.cols()) + ", basis has N=" +
                                std::to_string(basis.n_modes()));
  }
  const Basis source =
      direction == BasisChange::kToFourier ? Basis::kIndividual : Basis::kFourier;
  if (cov.basis != source) {
    throw std::invalid_argument(std::string("change_basis: covariance is already in the ") +
                                std::string(to_string(cov.basis)) + " basis");
  }
  const Eigen::MatrixXd r = basis.realified();
  CovarianceMatrix out = cov;
  if (direction == BasisChange::kToIndividual) {
    out.matrix = r * cov.matrix * r.transpose();
    out.basis = Basis::kIndividual;
  } else {
    out.matrix = r.transpose() * cov.matrix * r;
    out.basis = Basis::kFourier;
  }
  return out;
}

}  // namespace cvring
