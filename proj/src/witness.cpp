#include "cvring/witness.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "cvring/gaussian.hpp"

namespace cvring {
namespace {

void require_mode(int mode, int n_modes) {
  if (mode < 1 || mode > n_modes) {
    throw std::invalid_argument("mode index " + std::to_string(mode) + " outside 1.." +
                                std::to_string(n_modes));
  }
}

}  // namespace

double vlf_pair(const CovarianceMatrix& v, int a, int b, double theta_a, double theta_b) {
  if (v.basis != Basis::kIndividual) {
    throw std::invalid_argument("vlf_pair: covariance must be in the individual basis");
  }
  const int n = v.n_modes();
  require_mode(a, n);
  require_mode(b, n);
  if (a == b) throw std::invalid_argument("vlf_pair: modes must differ");

  // Only the 4x4 block of (x_a, y_a, x_b, y_b) enters.
  const int sa = a - 1;
  const int sb = b - 1;
  const int rows[4] = {x_row(sa), y_row(sa), x_row(sb), y_row(sb)};
  Eigen::Matrix4d block;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) block(r, c) = v.matrix(rows[r], rows[c]);
  }
  const double ca = std::cos(theta_a), sa_ = std::sin(theta_a);
  const double cb = std::cos(theta_b), sb_ = std::sin(theta_b);
  const Eigen::Vector4d amplitude(ca, sa_, -cb, -sb_);  // x_a(t_a) - x_b(t_b)
  const Eigen::Vector4d phase(-sa_, ca, -sb_, cb);      // y_a(t_a) + y_b(t_b)
  return amplitude.dot(block * amplitude) + phase.dot(block * phase);
}

ModeSets partition_mode_sets(int n_modes) {
  ModeSets sets;
  for (int j = 1; j <= n_modes; ++j) (j % 2 == 1 ? sets.odd : sets.even).push_back(j);
  return sets;
}

std::vector<double> default_chain_angles(std::size_t count) {
  std::vector<double> angles(count);
  for (std::size_t k = 0; k < count; ++k) angles[k] = (k % 2 == 0) ? 0.0 : std::numbers::pi / 2;
  return angles;
}

VlfReport full_inseparability_check(const CovarianceMatrix& v, std::span<const int> modes,
                                    std::span<const double> angles,
                                    double transmittance_applied) {
  if (modes.size() < 2) {
    throw std::invalid_argument("full_inseparability_check: need at least two modes");
  }
  std::vector<double> chosen(angles.begin(), angles.end());
  if (chosen.empty()) chosen = default_chain_angles(modes.size());
  if (chosen.size() != modes.size()) {
    throw std::invalid_argument("full_inseparability_check: one angle per mode required");
  }
  for (std::size_t i = 0; i < modes.size(); ++i) {
    require_mode(modes[i], v.n_modes());
    for (std::size_t k = 0; k < i; ++k) {
      if (modes[k] == modes[i]) {
        throw std::invalid_argument("full_inseparability_check: repeated mode " +
                                    std::to_string(modes[i]));
      }
    }
  }

  VlfReport report;
  report.modes.assign(modes.begin(), modes.end());
  report.transmittance_applied = transmittance_applied;
  report.fully_inseparable = true;
  for (std::size_t k = 0; k + 1 < modes.size(); ++k) {
    VlfPairValue pair{modes[k], modes[k + 1], chosen[k], chosen[k + 1], 0.0};
    pair.value = vlf_pair(v, pair.mode_a, pair.mode_b, pair.theta_a, pair.theta_b);
    report.fully_inseparable = report.fully_inseparable && pair.value < report.threshold;
    report.pairs.push_back(pair);
  }
  report.pure_state = std::abs(gaussian_determinant(v.matrix) - 1.0) <= 1e-8;
  return report;
}

AngleScanResult angle_scan(const CovarianceMatrix& v, int a, int b, int grid_size) {
  if (grid_size < 2) throw std::invalid_argument("angle_scan: grid_size must be >= 2");
  const double step = 2.0 * std::numbers::pi / grid_size;
  AngleScanResult best{0.0, std::numbers::pi / 2, vlf_pair(v, a, b, 0.0, std::numbers::pi / 2)};
  auto better = [&](double ta, double tb, double value) {
    if (value < best.value) return true;
    if (value > best.value) return false;
    return ta < best.theta_a || (ta == best.theta_a && tb < best.theta_b);
  };
  for (int i = 0; i < grid_size; ++i) {
    for (int k = 0; k < grid_size; ++k) {
      const double ta = i * step;
      const double tb = k * step;
      const double value = vlf_pair(v, a, b, ta, tb);
      if (better(ta, tb, value)) best = {ta, tb, value};
    }
  }
  return best;
}

}  // namespace cvring
