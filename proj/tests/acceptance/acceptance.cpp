// Acceptance checks: one line per criterion, [PASS] or [FAIL].
//   cvring_acceptance               run all criteria
//   cvring_acceptance --criterion k run criterion k only
// Exit status is nonzero when any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "cvring/app/commands.hpp"
#include "cvring/app/parallel.hpp"
#include "cvring/fourier.hpp"
#include "cvring/gaussian.hpp"
#include "cvring/witness.hpp"

using namespace cvring;

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

struct Outcome {
  bool passed = false;
  std::string summary;
};

std::string fmt(const char* format, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof buffer, format, args...);
  return buffer;
}

ArrayConfig make(int n, double j, double eta, PumpProfile pump) {
  ArrayConfig c;
  c.n_modes = n;
  c.coupling = j;
  c.eta_mag = eta;
  c.pump = pump;
  return c;
}

std::vector<PumpProfile> special_pumps(int n) {
  std::vector<PumpProfile> pumps{UniformPhase{}};
  if (n % 2 == 0) pumps.push_back(AlternatingPi{});
  if (n % 4 == 0) pumps.push_back(AlternatingHalfPi{});
  return pumps;
}

// The parameter grid shared by criteria 1, 5 and 6.
std::vector<ArrayConfig> grid_configs() {
  std::vector<ArrayConfig> out;
  for (int n : {4, 8, 12, 16}) {
    for (const auto& pump : special_pumps(n)) {
      for (double j : {0.45, 2.0}) {
        for (double eta : {0.015, 0.1}) out.push_back(make(n, j, eta, pump));
      }
    }
  }
  return out;
}

constexpr double kGridDistances[] = {0.0, 5.0, 10.0, 20.0};

double max_abs_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Outcome oracle_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  std::string where;
  for (const auto& c : grid_configs()) {
    const Eigen::MatrixXd drift = build_drift_matrix(c);
    for (double z : kGridDistances) {
      const CovarianceMatrix oracle = evolve_covariance(numerical_propagator(drift, z), vacuum(c.n_modes));
      const CovarianceMatrix closed = closed_form_covariance(c, z);
      const CovarianceMatrix routed = evolve_covariance(propagate(c, z, Route::kAnalytic), vacuum(c.n_modes));
      for (const auto* v : {&closed, &routed}) {
        const double d = max_abs_diff(v->matrix, oracle.matrix);
        if (d >= worst) {
          worst = d;
          where = fmt("N=%d %s J=%g eta=%g z=%g", c.n_modes, profile_label(c.pump).c_str(),
                      c.coupling, c.eta_mag, z);
        }
      }
    }
  }
  const double elapsed = seconds_since(start);
  const bool ok = worst <= 1e-9 && elapsed < 60.0;
  return {ok, fmt("max |analytic - oracle| = %.3e (tol 1e-9) at %s; runtime %.2f s (limit 60 s)",
                  worst, where.c_str(), elapsed)};
}

Outcome figure_two() {
  const double z = 20.0;
  const Eigen::MatrixXd flat = closed_form_covariance(make(8, 0.45, 0.015, UniformPhase{}), z).matrix;
  const ArrayConfig alt = make(8, 0.45, 0.015, AlternatingPi{});
  const Eigen::MatrixXd half = closed_form_covariance(alt, z).matrix;
  const Eigen::MatrixXd half_oracle =
      evolve_covariance(numerical_propagator(build_drift_matrix(alt), z), vacuum(8)).matrix;
  const Eigen::MatrixXd quarter =
      closed_form_covariance(make(8, 0.45, 0.015, AlternatingHalfPi{}), z).matrix;

  auto block = [](const Eigen::MatrixXd& v, int a, int b) {
    return v.block<2, 2>(2 * a, 2 * b).cwiseAbs().maxCoeff();
  };
  // (a) same-parity modes correlated above 1e-2 and dominating opposite parity.
  double same = 1e300, opposite = 0.0;
  for (int a = 0; a < 8; ++a) {
    for (int b = 0; b < 8; ++b) {
      if (a == b) continue;
      if ((a - b) % 2 == 0) same = std::min(same, block(flat, a, b));
      else opposite = std::max(opposite, block(flat, a, b));
    }
  }
  const bool a_ok = same > 1e-2 && same > opposite;

  // (b) product of single-mode squeezers.
  double cross = 0.0, local = 0.0;
  for (int a = 0; a < 8; ++a) {
    for (int b = 0; b < 8; ++b) {
      if (a != b) cross = std::max({cross, block(half, a, b), block(half_oracle, a, b)});
    }
    const double sign = (a + 1) % 2 == 0 ? -1.0 : 1.0;  // -(-1)^j
    Eigen::Matrix2d expected;
    expected << std::cosh(1.2), sign * std::sinh(1.2), sign * std::sinh(1.2), std::cosh(1.2);
    for (const auto* v : {&half, &half_oracle}) {
      local = std::max(local, (v->block<2, 2>(2 * a, 2 * a) - expected).cwiseAbs().maxCoeff());
    }
  }
  const bool b_ok = cross < 1e-10 && local <= 1e-10;

  // (c) a different set of correlations.
  double differs = 0.0;
  for (int a = 0; a < 8; ++a) {
    for (int b = 0; b < 8; ++b) {
      if (a != b) {
        differs = std::max(differs, (quarter.block<2, 2>(2 * a, 2 * b) - flat.block<2, 2>(2 * a, 2 * b))
                                        .cwiseAbs()
                                        .maxCoeff());
      }
    }
  }
  const bool c_ok = differs > 1e-2;
  return {a_ok && b_ok && c_ok,
          fmt("(a) min same-parity %.4f > 1e-2, max opposite %.4f: %s; (b) cross %.1e < 1e-10, "
              "block error %.1e <= 1e-10: %s; (c) max r0/rN4 cross difference %.4f > 1e-2: %s",
              same, opposite, a_ok ? "ok" : "no", cross, local, b_ok ? "ok" : "no", differs,
              c_ok ? "ok" : "no")};
}

struct SweepStats {
  double max_value = -1.0;      // over z > 0
  double max_value_z = 0.0;
  double max_spread = 0.0;      // within a parity set
  bool origin_exact = true;     // all values 4 at z = 0
  std::vector<double> final_values;
};

SweepStats sweep(const ArrayConfig& c) {
  const std::vector<double> grid = z_grid(c);
  const ModeSets sets = partition_mode_sets(c.n_modes);
  auto values_at = [&](std::size_t k) {
    const CovarianceMatrix v = closed_form_covariance(c, grid[k]);
    std::vector<std::vector<double>> per_set;
    for (const auto* set : {&sets.odd, &sets.even}) {
      std::vector<double> values;
      for (std::size_t i = 0; i + 1 < set->size(); ++i) {
        values.push_back(vlf_pair(v, (*set)[i], (*set)[i + 1], 0.0, kHalfPi));
      }
      per_set.push_back(values);
    }
    return per_set;
  };
  const auto points = app::parallel_map(grid.size(), values_at);
  SweepStats s;
  for (std::size_t k = 0; k < points.size(); ++k) {
    for (const auto& values : points[k]) {
      const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
      s.max_spread = std::max(s.max_spread, *hi - *lo);
      for (double v : values) {
        if (k == 0) {
          s.origin_exact = s.origin_exact && v == 4.0;
        } else if (v > s.max_value) {
          s.max_value = v;
          s.max_value_z = grid[k];
        }
        if (k + 1 == points.size()) s.final_values.push_back(v);
      }
    }
  }
  return s;
}

Outcome figure_three() {
  bool ok = true;
  std::string detail;
  for (int n : {4, 8}) {
    for (double j : {0.45, 100.0}) {
      const SweepStats s = sweep(make(n, j, 0.015, UniformPhase{}));
      const bool below = s.max_value < 4.0;
      const bool pass = below && s.max_spread <= 1e-10 && s.origin_exact;
      ok = ok && pass;
      detail += fmt("%sN=%d J=%g: max VLF(z>0) %.9f at z=%g%s, spread %.1e, z=0 exact %s",
                    detail.empty() ? "" : "; ", n, j, s.max_value, s.max_value_z,
                    below ? "" : " (>= 4)", s.max_spread, s.origin_exact ? "yes" : "no");
    }
  }
  return {ok, detail};
}

Outcome figure_four() {
  const auto start = std::chrono::steady_clock::now();
  bool below = true;
  std::vector<double> at_end;
  std::string detail;
  for (int n : {40, 60, 80}) {
    const SweepStats s = sweep(make(n, 100.0, 0.015, UniformPhase{}));
    below = below && s.max_value < 4.0;
    at_end.push_back(s.final_values.front());
    detail += fmt("N=%d: max %.6f, VLF(z=20) %.6f; ", n, s.max_value, s.final_values.front());
  }
  const bool increasing = at_end[0] < at_end[1] && at_end[1] < at_end[2];
  const double elapsed = seconds_since(start);
  const bool ok = below && increasing && elapsed < 60.0;
  return {ok, detail + fmt("all < 4: %s; increasing in N: %s; runtime %.2f s (limit 60 s)",
                           below ? "yes" : "no", increasing ? "yes" : "no", elapsed)};
}

Outcome loss_law() {
  std::mt19937 rng(5u);
  const auto configs = grid_configs();
  std::uniform_int_distribution<std::size_t> pick_config(0, configs.size() - 1);
  std::uniform_int_distribution<int> pick_z(1, 3);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  double worst = 0.0, worst_abs = 0.0, min_eig = 1e300;
  for (int state = 0; state < 20; ++state) {
    const ArrayConfig& c = configs[pick_config(rng)];
    const CovarianceMatrix v = closed_form_covariance(c, kGridDistances[pick_z(rng)]);
    for (double t : {0.0, 0.3, 0.7, 1.0}) {
      const CovarianceMatrix lossy = apply_loss(v, t);
      min_eig = std::min(min_eig, min_physical_eigenvalue(lossy.matrix));
      for (int a = 1; a <= c.n_modes; ++a) {
        const int b = a % c.n_modes + 1;
        const double ta = angle(rng), tb = angle(rng);
        const double expected = t * vlf_pair(v, a, b, ta, tb) + 4.0 * (1.0 - t);
        const double residual = std::abs(vlf_pair(lossy, a, b, ta, tb) - expected);
        worst_abs = std::max(worst_abs, residual);
        worst = std::max(worst, residual / std::max(1.0, std::abs(expected)));
      }
    }
  }
  const bool ok = worst <= 1e-12 && min_eig >= -1e-9;
  return {ok, fmt("max residual %.3e relative to max(1,|VLF|) (tol 1e-12; absolute %.3e); "
                  "min eig(V_T + i Omega) %.3e (tol -1e-9)",
                  worst, worst_abs, min_eig)};
}

Outcome structural() {
  double unitarity = 0.0, orthonormality = 0.0;
  bool zero_modes = true;
  for (int n = 1; n <= 64; ++n) unitarity = std::max(unitarity, unitarity_residual(dft_matrix(n)));
  for (int n = 4; n <= 64; ++n) {
    orthonormality = std::max(orthonormality, orthonormality_residual(n, PairingRelation::kUniform));
    if (n % 2 == 0) {
      orthonormality =
          std::max(orthonormality, orthonormality_residual(n, PairingRelation::kAlternatingSign));
    }
    if (n % 4 == 0) {
      orthonormality =
          std::max(orthonormality, orthonormality_residual(n, PairingRelation::kAlternatingQuarter));
    }
    for (long r = 1; r <= n; ++r) orthonormality = std::max(orthonormality, orthonormality_residual(n, r));
    if (n % 4 == 0) {
      const auto lambda = eigenvalues(n, 0.45);
      int zeros = 0;
      for (double l : lambda.values) zeros += std::abs(l) < 1e-12 * 0.45;
      zero_modes = zero_modes && zeros == 2;
    }
  }

  double symplectic = 0.0, purity = 0.0;
  auto configs = grid_configs();
  for (int n : {4, 8, 12, 16}) configs.push_back(make(n, 0.45, 0.015, GeneralShift{1}));
  for (const auto& c : configs) {
    const Eigen::MatrixXd drift = build_drift_matrix(c);
    for (double z : kGridDistances) {
      symplectic = std::max(symplectic, symplectic_residual(numerical_propagator(drift, z).matrix));
      symplectic = std::max(symplectic, symplectic_residual(propagate(c, z, Route::kAnalytic).matrix));
      purity = std::max(purity, std::abs(gaussian_determinant(app::covariance_for(c, z, Route::kAuto).matrix) - 1.0));
    }
  }
  const bool ok = unitarity < 1e-12 && orthonormality < 1e-12 && symplectic <= 1e-10 &&
                  purity <= 1e-8 && zero_modes;
  return {ok, fmt("dft unitarity %.1e, orthonormality %.1e (tol 1e-12); symplectic %.1e (tol "
                  "1e-10); |det V - 1| %.1e (tol 1e-8); two zero modes for N = 0 mod 4: %s",
                  unitarity, orthonormality, symplectic, purity, zero_modes ? "yes" : "no")};
}

Outcome negative_controls() {
  double min_value = 1e300;
  bool any_inseparable = false;
  for (int n : {4, 8}) {
    const ArrayConfig c = make(n, 0.45, 0.015, AlternatingPi{});
    const ModeSets sets = partition_mode_sets(n);
    for (double z : z_grid(c)) {
      const CovarianceMatrix v = closed_form_covariance(c, z);
      for (const auto* set : {&sets.odd, &sets.even}) {
        const VlfReport r = full_inseparability_check(v, *set);
        any_inseparable = any_inseparable || r.fully_inseparable;
        for (const auto& p : r.pairs) min_value = std::min(min_value, p.value);
      }
    }
  }
  const auto diagnostics = validate_config(make(6, 0.45, 0.015, AlternatingHalfPi{}));
  const bool rejected = has_errors(diagnostics);
  const bool ok = !any_inseparable && min_value >= 4.0 && rejected;
  return {ok, fmt("r=N/2: min pair value %.6f (>= 4), verdict %s; N=6 r=N/4 %s%s%s", min_value,
                  any_inseparable ? "inseparable" : "not inseparable",
                  rejected ? "rejected: " : "accepted",
                  rejected ? diagnostics.front().message.c_str() : "", "")};
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "oracle equivalence", oracle_equivalence},
      {2, "figure 2 covariance patterns", figure_two},
      {3, "figure 3 VLF below threshold", figure_three},
      {4, "figure 4 threshold approach", figure_four},
      {5, "loss law", loss_law},
      {6, "structural suite", structural},
      {7, "negative controls", negative_controls},
  };
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion 1-7]\n", argv[0]);
      return 2;
    }
  }
  bool all = true;
  bool ran = false;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    ran = true;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.passed;
    std::printf("[%s] AC%d %s: %s\n", o.passed ? "PASS" : "FAIL", c.id, c.title, o.summary.c_str());
    std::fflush(stdout);
  }
  if (!ran) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  return all ? 0 : 1;
}
