#pragma once

// Quadrature conventions shared by every module.
//
// Modes are exposed 1-based (j = 1..N, index N plays the role of 0) and stored
// 0-based. The quadrature vector is interleaved, xi = (x_1, y_1, ..., x_N, y_N),
// with x = A + A^dagger and y = i(A^dagger - A), so the vacuum covariance is the
// identity (shot noise 1) and [xi_a, xi_b] = 2i Omega_ab.

#include <complex>
#include <string_view>

#include <Eigen/Dense>

namespace cvring {

using Complex = std::complex<double>;

enum class Basis { kIndividual, kFourier };

std::string_view to_string(Basis basis);

/// Wraps a 1-based (possibly out-of-range) mode index onto the storage
/// position 0..n-1, with index n (and 0) landing on position n-1.
inline int mode_slot(long index, int n_modes) {
  long wrapped = ((index - 1) % n_modes + n_modes) % n_modes;
  return static_cast<int>(wrapped);
}

/// Inverse of mode_slot: storage position to 1-based index.
inline int mode_index(int slot) { return slot + 1; }

inline int x_row(int slot) { return 2 * slot; }
inline int y_row(int slot) { return 2 * slot + 1; }

/// e^{i 2 pi numerator / denominator}, exact at quarter turns.
Complex unit_phase(long numerator, long denominator);

/// Block-diagonal symplectic form with 2x2 blocks [[0, 1], [-1, 0]].
Eigen::MatrixXd symplectic_form(int n_modes);

/// Real 2N x 2N matrix acting on quadratures for the mode map
/// A_out = passive * A_in + active * A_in^dagger.
///
/// Each pair of entries a = passive(j,k), b = active(j,k) contributes the block
///   [[Re a + Re b, -Im a + Im b],
///    [Im a + Im b,  Re a - Re b]]
/// at rows (x_j, y_j), columns (x_k, y_k).
Eigen::MatrixXd realify_bogoliubov(const Eigen::MatrixXcd& passive,
                                   const Eigen::MatrixXcd& active);

/// Same as realify_bogoliubov with a zero active part; a unitary maps to an
/// orthogonal symplectic matrix.
Eigen::MatrixXd realify_passive(const Eigen::MatrixXcd& passive);

/// max |M Omega M^T - Omega|.
double symplectic_residual(const Eigen::MatrixXd& m);

/// max |D Omega + Omega D^T|; zero for generators of symplectic flows.
double hamiltonian_residual(const Eigen::MatrixXd& generator);

double max_abs(const Eigen::MatrixXd& m);
double max_abs(const Eigen::MatrixXcd& m);

}  // namespace cvring
