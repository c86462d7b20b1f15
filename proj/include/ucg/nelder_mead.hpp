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

#include <Eigen/Dense>
#include <functional>
#include <optional>

namespace ucg {

struct NelderMeadOptions {
  int max_iterations = 400;
  double initial_step = 0.5;
  // Stop once the simplex spans less than both tolerances.
  double f_tolerance = 1e-10;
  double x_tolerance = 1e-7;
  // Stop as soon as a value at or below this is seen.
  std::optional<double> target;
};

struct NelderMeadResult {
  Eigen::VectorXd x;
  double f = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
  bool reached_target = false;
};

using Objective = std::function<double(const Eigen::VectorXd&)>;

/// Downhill simplex with the standard reflection/expansion/contraction/shrink
/// coefficients (1, 2, 1/2, 1/2). The initial simplex is x0 plus
/// initial_step along each axis.
NelderMeadResult nelder_mead(const Objective& f, const Eigen::VectorXd& x0,
                             const NelderMeadOptions& options);

}  // namespace ucg
