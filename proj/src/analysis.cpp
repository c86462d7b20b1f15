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

#include "ucg/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ucg/errors.hpp"

namespace ucg {

std::vector<double> EnsembleSeries::standard_error() const {
  std::vector<double> out(variance.size(), 0.0);
  for (std::size_t i = 0; i < variance.size(); ++i) {
    out[i] = n_traj > 1 ? std::sqrt(variance[i] / static_cast<double>(n_traj - 1)) : 0.0;
  }
  return out;
}

EnsembleSeries aggregate(std::span<const TrajectoryRecord> records) {
  if (records.empty()) throw ConfigError("aggregate needs at least one trajectory");
  const auto& first = records.front();
  EnsembleSeries out;
  out.model = first.config.model;
  out.p = first.config.p;
  out.L = first.config.L;
  out.n_traj = records.size();
  const std::size_t rows = first.rows.size();
  bool profiles = true;
  for (const auto& rec : records) {
    if (rec.rows.size() != rows || rec.config.L != out.L || rec.config.p != out.p ||
        rec.config.model != out.model) {
      throw ConfigError("records do not belong to one ensemble");
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (rec.rows[i].t != first.rows[i].t) throw ConfigError("records have different row times");
      profiles &= !rec.rows[i].profile.empty();
    }
  }
  const double n = static_cast<double>(records.size());
  for (std::size_t i = 0; i < rows; ++i) {
    double s = 0.0, s2 = 0.0;
    for (const auto& rec : records) {
      s += rec.rows[i].s_half;
      s2 += rec.rows[i].s_half * rec.rows[i].s_half;
    }
    const double m = s / n;
    out.times.push_back(first.rows[i].t);
    out.mean.push_back(m);
    out.variance.push_back(std::max(0.0, s2 / n - m * m));
    if (profiles) {
      std::vector<double> mp(first.rows[i].profile.size(), 0.0);
      for (const auto& rec : records)
        for (std::size_t x = 0; x < mp.size(); ++x) mp[x] += rec.rows[i].profile[x] / n;
      out.mean_profiles.push_back(std::move(mp));
    }
  }
  return out;
}

LineFit fit_line(std::span<const double> xs, std::span<const double> ys) {
  const std::size_t n = xs.size();
  if (n != ys.size() || n < 2) throw ConfigError("line fit needs at least two points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (!(sxx > 0)) throw ConfigError("line fit needs distinct x values");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ys[i] - f.intercept - f.slope * xs[i];
    f.rss += r * r;
  }
  f.stderr_slope = n > 2 ? std::sqrt(f.rss / (n - 2) / sxx) : 0.0;
  f.r2 = syy > 0 ? 1.0 - f.rss / syy : 1.0;
  return f;
}

ScalingFit fit_power_law(std::span<const double> xs, std::span<const double> ys, double lo,
                         double hi) {
  if (xs.size() != ys.size()) throw ConfigError("fit inputs differ in length");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] < lo || xs[i] > hi) continue;
    if (!(xs[i] > 0) || !(ys[i] > 0)) throw ConfigError("power-law fit needs positive data");
    lx.push_back(std::log(xs[i]));
    ly.push_back(std::log(ys[i]));
  }
  if (lx.size() < 2) throw ConfigError("power-law fit window holds fewer than 2 points");
  const LineFit line = fit_line(lx, ly);
  ScalingFit f;
  f.exponent = line.slope;
  f.stderr_exponent = line.stderr_slope;
  f.prefactor = std::exp(line.intercept);
  f.r2 = line.r2;
  f.window_lo = lo;
  f.window_hi = hi;
  f.points = lx.size();
  return f;
}

std::size_t detect_steady_state(std::span<const double> series, std::size_t window, double tol) {
  if (window < 1 || series.size() < 2 * window) {
    throw ConfigError("steady-state detection needs at least two windows of data");
  }
  auto stats = [&](std::size_t from) {
    double s = 0, s2 = 0;
    for (std::size_t i = from; i < from + window; ++i) {
      s += series[i];
      s2 += series[i] * series[i];
    }
    const double m = s / window;
    const double var = window > 1 ? std::max(0.0, (s2 - window * m * m) / (window - 1)) : 0.0;
    return std::pair{m, var / window};
  };
  for (std::size_t i = window; i + window <= series.size(); ++i) {
    const auto [ma, va] = stats(i - window);
    const auto [mb, vb] = stats(i);
    if (std::abs(mb - ma) <= tol * std::sqrt(va + vb)) return i;
  }
  return series.size();
}

double spatial_fluctuations(const std::vector<std::vector<double>>& profiles) {
  if (profiles.size() < 2) throw ConfigError("spatial fluctuations need two snapshots");
  const std::size_t L = profiles.front().size();
  std::vector<double> mean(L, 0.0);
  for (const auto& p : profiles) {
    if (p.size() != L) throw ConfigError("snapshots differ in length");
    for (std::size_t x = 0; x < L; ++x) mean[x] += p[x];
  }
  for (double& m : mean) m /= static_cast<double>(profiles.size());
  double w = 0.0;
  for (const auto& p : profiles) {
    double s = 0.0;
    for (std::size_t x = 0; x < L; ++x) s += (p[x] - mean[x]) * (p[x] - mean[x]);
    w += std::sqrt(s / static_cast<double>(L));
  }
  return w / static_cast<double>(profiles.size());
}

std::vector<double> temporal_fluctuations(const std::vector<std::vector<double>>& values) {
  if (values.size() < 2) throw ConfigError("temporal fluctuations need two trajectories");
  const std::size_t T = values.front().size();
  std::vector<double> out(T, 0.0);
  const double n = static_cast<double>(values.size());
  for (std::size_t t = 0; t < T; ++t) {
    double s = 0, s2 = 0;
    for (const auto& v : values) {
      if (v.size() != T) throw ConfigError("trajectories differ in length");
      s += v[t];
      s2 += v[t] * v[t];
    }
    const double m = s / n;
    out[t] = std::sqrt(std::max(0.0, s2 / n - m * m));
  }
  return out;
}

std::vector<double> spatial_correlation(const std::vector<std::vector<double>>& profiles,
                                        std::size_t center, std::size_t r_max) {
  if (profiles.empty()) throw ConfigError("spatial correlation needs snapshots");
  const std::size_t L = profiles.front().size();
  if (center < 1 || center + r_max > L) throw ConfigError("correlation range leaves the chain");
  std::vector<double> g(r_max, 0.0);
  for (std::size_t r = 1; r <= r_max; ++r) {
    double s = 0.0;
    for (const auto& p : profiles) {
      const double d = p[center - 1] - p[center - 1 + r];
      s += d * d;
    }
    g[r - 1] = std::sqrt(s / static_cast<double>(profiles.size()));
  }
  return g;
}

CrossoverEstimate estimate_tc(std::span<const double> times, std::span<const double> critical,
                              std::span<const double> offcritical, double crit_lo,
                              double crit_hi, double late_lo, double late_hi) {
  if (late_lo <= crit_hi) throw ConfigError("crossover fit windows overlap");
  CrossoverEstimate out;
  out.critical = fit_power_law(times, critical, crit_lo, crit_hi);
  out.late = fit_power_law(times, offcritical, late_lo, late_hi);
  const double beta = out.critical.exponent;
  if (out.late.exponent < 0.5 * (beta + 1.0)) {
    throw ConfigError("off-critical curve shows no linear regime");
  }
  // Slope-one fit: log v = mean(log y - log t).
  double s = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < late_lo || times[i] > late_hi) continue;
    s += std::log(offcritical[i]) - std::log(times[i]);
    ++n;
  }
  out.velocity = std::exp(s / static_cast<double>(n));
  out.t_c = std::pow(out.critical.prefactor / out.velocity, 1.0 / (1.0 - beta));
  return out;
}

namespace {

double interpolate(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  if (it == xs.begin()) return ys.front();
  if (it == xs.end()) return ys.back();
  const std::size_t j = static_cast<std::size_t>(it - xs.begin());
  const double t = (x - xs[j - 1]) / (xs[j] - xs[j - 1]);
  return ys[j - 1] + t * (ys[j] - ys[j - 1]);
}

}  // namespace

double collapse_quality(const std::vector<ScalingCurve>& curves, double p_c, double nu) {
  struct Scaled {
    std::vector<double> x, y;
  };
  std::vector<Scaled> scaled;
  for (const auto& c : curves) {
    if (c.p.size() != c.value.size() || c.p.size() < 2) {
      throw ConfigError("scaling curve needs matching p and value lists");
    }
    std::vector<std::size_t> order(c.p.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return c.p[a] < c.p[b]; });
    Scaled s;
    const double L = static_cast<double>(c.L);
    for (std::size_t i : order) {
      s.x.push_back((c.p[i] - p_c) * std::pow(L, 1.0 / nu));
      s.y.push_back(c.value[i] / L);
    }
    scaled.push_back(std::move(s));
  }
  double total = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < scaled.size(); ++i) {
    for (std::size_t j = 0; j < scaled.size(); ++j) {
      if (i == j) continue;
      const double lo = std::max(scaled[i].x.front(), scaled[j].x.front());
      const double hi = std::min(scaled[i].x.back(), scaled[j].x.back());
      for (std::size_t k = 0; k < scaled[i].x.size(); ++k) {
        const double x = scaled[i].x[k];
        if (x < lo || x > hi) continue;
        total += std::abs(scaled[i].y[k] - interpolate(scaled[j].x, scaled[j].y, x));
        ++count;
      }
    }
  }
  return count ? total / static_cast<double>(count) : std::numeric_limits<double>::infinity();
}

CollapseResult fss_collapse(const std::vector<ScalingCurve>& curves, double p_c, double nu_lo,
                            double nu_hi, double step) {
  if (curves.size() < 3) throw ConfigError("collapse needs at least three system sizes");
  CollapseResult best{nu_lo, std::numeric_limits<double>::infinity()};
  const int steps = static_cast<int>(std::floor((nu_hi - nu_lo) / step + 0.5));
  for (int k = 0; k <= steps; ++k) {
    const double nu = nu_lo + k * step;
    const double q = collapse_quality(curves, p_c, nu);
    if (q < best.quality) best = {nu, q};
  }
  return best;
}

std::vector<double> crossings(std::span<const double> ps, std::span<const double> a,
                              std::span<const double> b) {
  if (ps.size() != a.size() || ps.size() != b.size()) throw ConfigError("curves differ in length");
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < ps.size(); ++i) {
    const double d0 = b[i] - a[i], d1 = b[i + 1] - a[i + 1];
    if (d0 == 0.0) {
      out.push_back(ps[i]);
    } else if ((d0 < 0) != (d1 < 0) && d1 != 0.0) {
      out.push_back(ps[i] + (ps[i + 1] - ps[i]) * d0 / (d0 - d1));
    }
  }
  if (!ps.empty() && b.back() == a.back()) out.push_back(ps.back());
  return out;
}

GrowthModelComparison compare_growth_models(std::span<const double> xs,
                                            std::span<const double> ys) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0) || !(ys[i] > 0)) throw ConfigError("growth comparison needs positive data");
    lx.push_back(std::log(xs[i]));
    ly.push_back(std::log(ys[i]));
  }
  GrowthModelComparison c;
  c.exponential = fit_line(xs, ly);
  c.power = fit_line(lx, ly);
  const double n = static_cast<double>(xs.size());
  auto aic = [&](double rss) { return n * std::log(std::max(rss, 1e-300) / n) + 2.0 * 2.0; };
  c.aic_exponential = aic(c.exponential.rss);
  c.aic_power = aic(c.power.rss);
  return c;
}

double harmonic_number(std::size_t n) {
  double h = 0.0;
  for (std::size_t k = 1; k <= n; ++k) h += 1.0 / static_cast<double>(k);
  return h;
}

}  // namespace ucg
