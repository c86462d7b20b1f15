// Copyright 2026 The ucg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ucg/game.hpp"

namespace ucg {

/// Cross-trajectory statistics of S_{L/2}(t) for one (model, p, L) cell.
struct EnsembleSeries {
  ModelKind model = ModelKind::classical;
  double p = 0.0;
  std::size_t L = 0;
  std::vector<double> times;
  std::vector<double> mean;
  // Population variance over trajectories.
  std::vector<double> variance;
  // Per-time mean profile, when every record kept its profiles.
  std::vector<std::vector<double>> mean_profiles;
  std::size_t n_traj = 0;

  std::vector<double> standard_error() const;
};

/// Records must share their config and row times; throws ConfigError otherwise.
EnsembleSeries aggregate(std::span<const TrajectoryRecord> records);

struct ScalingFit {
  double exponent = 0.0;
  double stderr_exponent = 0.0;
  double prefactor = 0.0;
  double r2 = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  std::size_t points = 0;
};

/// Least squares of log y on log x over lo <= x <= hi. Throws ConfigError on
/// non-positive values in the window or fewer than 2 points.
ScalingFit fit_power_law(std::span<const double> xs, std::span<const double> ys, double lo,
                         double hi);

/// Ordinary least squares y = a + b x with the standard error of b.
struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
  double stderr_slope = 0.0;
  double rss = 0.0;
  double r2 = 0.0;
};
LineFit fit_line(std::span<const double> xs, std::span<const double> ys);

/// First index i such that the means of [i - window, i) and [i, i + window)
/// differ by at most tol times their pooled standard error. Returns
/// series.size() when no such index exists; throws ConfigError when the
/// series is shorter than 2 windows.
std::size_t detect_steady_state(std::span<const double> series, std::size_t window, double tol);

/// Mean over snapshots of sqrt(mean_x (S_x - Sbar_x)^2), Sbar the snapshot
/// mean profile. Needs at least two snapshots.
double spatial_fluctuations(const std::vector<std::vector<double>>& profiles);

/// values[traj][time] -> per-time standard deviation over trajectories.
std::vector<double> temporal_fluctuations(const std::vector<std::vector<double>>& values);

/// G(r) = sqrt(mean over snapshots of (S_c - S_{c+r})^2) for r = 1..r_max,
/// profiles indexed from bond 1, `center` 1-based.
std::vector<double> spatial_correlation(const std::vector<std::vector<double>>& profiles,
                                        std::size_t center, std::size_t r_max);

struct CrossoverEstimate {
  double t_c = 0.0;
  ScalingFit critical;
  ScalingFit late;
  // Amplitude v of the slope-one fit v t on the late window.
  double velocity = 0.0;
};

/// Crossover time between B t^beta (fitted on the critical curve in
/// [crit_lo, crit_hi]) and the linear law v t (fitted with unit log-log slope
/// on the off-critical curve in [late_lo, late_hi]). Throws ConfigError when
/// the windows overlap or the late window does not look linear (free
/// exponent below the midpoint of beta and 1).
CrossoverEstimate estimate_tc(std::span<const double> times, std::span<const double> critical,
                              std::span<const double> offcritical, double crit_lo,
                              double crit_hi, double late_lo, double late_hi);

struct ScalingCurve {
  std::size_t L = 0;
  std::vector<double> p;
  std::vector<double> value;  // S_{L/2}
};

/// Mean pairwise distance between the curves after x -> (p - p_c) L^{1/nu},
/// y -> S / L, compared by piecewise-linear interpolation on the overlaps.
double collapse_quality(const std::vector<ScalingCurve>& curves, double p_c, double nu);

struct CollapseResult {
  double nu = 0.0;
  double quality = 0.0;
};

/// Scans nu over [nu_lo, nu_hi] in steps of `step`. Needs >= 3 sizes.
CollapseResult fss_collapse(const std::vector<ScalingCurve>& curves, double p_c,
                            double nu_lo = 0.5, double nu_hi = 2.0, double step = 0.01);

/// Locations where curve b - curve a changes sign on a shared p grid, by
/// linear interpolation.
std::vector<double> crossings(std::span<const double> ps, std::span<const double> a,
                              std::span<const double> b);

/// Akaike comparison of log y = a + b x (exponential) against
/// log y = a + b log x (power law); both have two parameters.
struct GrowthModelComparison {
  double aic_exponential = 0.0;
  double aic_power = 0.0;
  LineFit exponential;
  LineFit power;
  bool exponential_preferred() const { return aic_exponential < aic_power; }
};
GrowthModelComparison compare_growth_models(std::span<const double> xs,
                                            std::span<const double> ys);

double harmonic_number(std::size_t n);

}  // namespace ucg
