#pragma once

// Discrete Fourier (supermode) machinery for the nearest-neighbour ring.
//
// S_{j,p} = e^{i 2 pi j p / N} / sqrt(N) diagonalizes the circulant coupling
// matrix; its columns are the Fourier modes, B_p = sum_j S*_{j,p} A_j, with
// propagation constants lambda_p = 2 J cos(2 pi p / N).

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cvring/covariance.hpp"
#include "cvring/quadrature.hpp"

namespace cvring {

class FourierBasis {
 public:
  /// Throws std::invalid_argument when n_modes < 1.
  explicit FourierBasis(int n_modes);

  int n_modes() const { return n_modes_; }

  /// S_{j,p} for 1-based indices taken mod N.
  Complex operator()(long j, long p) const {
    return entries_(mode_slot(j, n_modes_), mode_slot(p, n_modes_));
  }

  /// Row j-1, column p-1 holds S_{j,p}.
  const Eigen::MatrixXcd& matrix() const { return entries_; }

  /// Orthogonal symplectic map from Fourier-mode quadratures to individual
  /// quadratures: xi_individual = R xi_fourier.
  Eigen::MatrixXd realified() const;

 private:
  int n_modes_;
  Eigen::MatrixXcd entries_;
};

FourierBasis dft_matrix(int n_modes);

/// max_{p,q} |sum_j S_{j,p} S*_{j,q} - delta_{p,q}|.
double unitarity_residual(const FourierBasis& basis);

struct EigenvalueSet {
  double coupling = 0.0;
  std::vector<double> values;  // values[p-1] = lambda_p

  double operator()(long p) const {
    return values[mode_slot(p, static_cast<int>(values.size()))];
  }
  int n_modes() const { return static_cast<int>(values.size()); }
};

/// lambda_p = 2 J cos(2 pi p / N), exact zeros at p = N/4, 3N/4.
EigenvalueSet eigenvalues(int n_modes, double coupling);

/// (N/4, 3N/4) when N is a multiple of 4; the ring has no zero modes otherwise.
std::optional<std::pair<int, int>> zero_mode_indices(int n_modes);

/// Residual of the shifted triple-product identity
///   max_{p,q} |sum_j sqrt(N) S_{j,r} S_{j,p} S_{j,q} - delta_{p, N-(q+r)}|
/// for any shift r (taken mod N).
double orthonormality_residual(int n_modes, long shift);

/// The three special pump symmetries: uniform (r = 0), alternating sign
/// (r = N/2, needs N even) and alternating quarter turn (r = N/4, needs N a
/// multiple of 4).
enum class PairingRelation { kUniform, kAlternatingSign, kAlternatingQuarter };

/// Throws std::invalid_argument when N does not admit the relation.
double orthonormality_residual(int n_modes, PairingRelation relation);

enum class BasisChange { kToFourier, kToIndividual };

/// Applies the real orthogonal-symplectic transform induced by S. Throws
/// std::invalid_argument on a dimension mismatch or when cov is not in the
/// source basis of the requested direction.
CovarianceMatrix change_basis(const CovarianceMatrix& cov,
                              const FourierBasis& basis, BasisChange direction);

}  // namespace cvring
