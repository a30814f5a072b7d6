#pragma once

// van Loock-Furusawa pairwise inequalities
//   VLF = V[x_a(t_a) - x_b(t_b)] + V[y_a(t_a) + y_b(t_b)] >= 4,
// x(t) = x cos t + y sin t, y(t) = -x sin t + y cos t. Simultaneous violation
// along a chain of modes certifies full inseparability of that set.

#include <span>
#include <vector>

#include "cvring/covariance.hpp"

namespace cvring {

inline constexpr double kVlfThreshold = 4.0;

/// Throws std::invalid_argument for a == b, indices outside 1..N or a
/// Fourier-basis covariance.
double vlf_pair(const CovarianceMatrix& v, int a, int b, double theta_a,
                double theta_b);

struct ModeSets {
  std::vector<int> odd;   // 1, 3, ..., N-1
  std::vector<int> even;  // 2, 4, ..., N
};

ModeSets partition_mode_sets(int n_modes);

/// 0, pi/2, 0, pi/2, ... along a chain.
std::vector<double> default_chain_angles(std::size_t count);

struct VlfPairValue {
  int mode_a = 0;
  int mode_b = 0;
  double theta_a = 0.0;
  double theta_b = 0.0;
  double value = 0.0;
};

struct VlfReport {
  std::vector<VlfPairValue> pairs;
  double threshold = kVlfThreshold;
  std::vector<int> modes;
  bool fully_inseparable = false;
  double transmittance_applied = 1.0;
  bool pure_state = false;  // det V = 1 within 1e-8

  /// For pure states full inseparability implies genuine multipartite
  /// entanglement; no independent genuineness test is run.
  bool genuine_by_purity() const { return fully_inseparable && pure_state; }
};

/// Evaluates the |modes| - 1 adjacent pairs of the ordered chain. Empty
/// angles select default_chain_angles.
VlfReport full_inseparability_check(const CovarianceMatrix& v,
                                    std::span<const int> modes,
                                    std::span<const double> angles = {},
                                    double transmittance_applied = 1.0);

struct AngleScanResult {
  double theta_a = 0.0;
  double theta_b = 0.0;
  double value = 0.0;
};

/// Exhaustive grid over [0, 2pi)^2 with grid_size points per axis (plus the
/// default (0, pi/2)); ties go to the lexicographically smallest angles.
AngleScanResult angle_scan(const CovarianceMatrix& v, int a, int b,
                           int grid_size);

}  // namespace cvring
