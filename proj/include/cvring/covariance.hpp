#pragma once

#include <Eigen/Dense>

#include "cvring/quadrature.hpp"

namespace cvring {

/// Real symmetric 2N x 2N second-moment matrix in interleaved (x, y) ordering,
/// V_ab = <{xi_a, xi_b}>/2 for a zero-mean state.
struct CovarianceMatrix {
  Eigen::MatrixXd matrix;
  Basis basis = Basis::kIndividual;
  double z = 0.0;  // mm

  int n_modes() const { return static_cast<int>(matrix.rows() / 2); }
};

CovarianceMatrix vacuum(int n_modes, Basis basis = Basis::kIndividual);

}  // namespace cvring
