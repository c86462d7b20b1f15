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

#include "ucg/nelder_mead.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace ucg {

NelderMeadResult nelder_mead(const Objective& f, const Eigen::VectorXd& x0,
                             const NelderMeadOptions& options) {
  const Eigen::Index n = x0.size();
  std::vector<Eigen::VectorXd> x(n + 1, x0);
  std::vector<double> fx(n + 1);
  NelderMeadResult result;

  auto eval = [&](const Eigen::VectorXd& p) {
    ++result.evaluations;
    return f(p);
  };
  auto hit = [&](double v) { return options.target && v <= *options.target; };

  for (Eigen::Index i = 0; i <= n; ++i) {
    if (i > 0) x[i](i - 1) += options.initial_step;
    fx[i] = eval(x[i]);
    if (hit(fx[i])) {
      result.x = x[i];
      result.f = fx[i];
      result.reached_target = true;
      return result;
    }
  }

  std::vector<Eigen::Index> order(n + 1);
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return fx[a] < fx[b]; });
  };
  auto replace_worst = [&](const Eigen::VectorXd& p, double v) {
    x[order[n]] = p;
    fx[order[n]] = v;
  };

  sort_simplex();
  for (; result.iterations < options.max_iterations; ++result.iterations) {
    const Eigen::Index best = order[0], worst = order[n], second = order[n - 1];
    if (hit(fx[best])) {
      result.reached_target = true;
      break;
    }
    double spread_x = 0.0;
    for (Eigen::Index i = 1; i <= n; ++i) {
      spread_x = std::max(spread_x, (x[order[i]] - x[best]).cwiseAbs().maxCoeff());
    }
    if (fx[worst] - fx[best] <= options.f_tolerance && spread_x <= options.x_tolerance) {
      result.converged = true;
      break;
    }

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) centroid += x[order[i]];
    centroid /= static_cast<double>(n);

    const Eigen::VectorXd xr = centroid + (centroid - x[worst]);
    const double fr = eval(xr);
    if (fr < fx[best]) {
      const Eigen::VectorXd xe = centroid + 2.0 * (centroid - x[worst]);
      const double fe = eval(xe);
      if (fe < fr) {
        replace_worst(xe, fe);
      } else {
        replace_worst(xr, fr);
      }
    } else if (fr < fx[second]) {
      replace_worst(xr, fr);
    } else {
      const bool outside = fr < fx[worst];
      const Eigen::VectorXd xc = outside ? Eigen::VectorXd(centroid + 0.5 * (xr - centroid))
                                         : Eigen::VectorXd(centroid + 0.5 * (x[worst] - centroid));
      const double fc = eval(xc);
      if (fc < (outside ? fr : fx[worst])) {
        replace_worst(xc, fc);
      } else {
        for (Eigen::Index i = 1; i <= n; ++i) {
          const Eigen::Index k = order[i];
          x[k] = x[best] + 0.5 * (x[k] - x[best]);
          fx[k] = eval(x[k]);
        }
      }
    }
    sort_simplex();
  }
  result.x = x[order[0]];
  result.f = fx[order[0]];
  if (hit(result.f)) result.reached_target = true;
  return result;
}

}  // namespace ucg
