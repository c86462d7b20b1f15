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

#include <algorithm>
#include <numbers>

#include "dense_oracle.hpp"
#include "doctest.h"
#include "ucg/errors.hpp"
#include "ucg/haar_game.hpp"
#include "ucg/nelder_mead.hpp"
#include "ucg/state_vector.hpp"

using namespace ucg;

namespace {

// Reduced density matrix of the first `left` qubits by an explicit partial trace.
testing::Mat reduced_left(const Eigen::VectorXcd& psi, int qubits, int left) {
  const Eigen::Index dl = Eigen::Index{1} << left, dr = Eigen::Index{1} << (qubits - left);
  testing::Mat rho = testing::Mat::Zero(dl, dl);
  for (Eigen::Index i = 0; i < dl; ++i)
    for (Eigen::Index j = 0; j < dl; ++j)
      for (Eigen::Index k = 0; k < dr; ++k) rho(i, j) += psi(i * dr + k) * std::conj(psi(j * dr + k));
  return rho;
}

double reference_entropy(const Eigen::VectorXcd& psi, int qubits, int left, double alpha) {
  Eigen::SelfAdjointEigenSolver<testing::Mat> es(reduced_left(psi, qubits, left));
  double s = 0.0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double p = es.eigenvalues()(k);
    if (p <= 1e-15) continue;
    s += alpha == 1.0 ? -p * std::log2(p) : std::pow(p, alpha);
  }
  return alpha == 1.0 ? s : std::log2(s) / (1.0 - alpha);
}

Matrix4c random_local(Rng& rng) {
  auto one = [&] {
    return euler_rotation(2 * std::numbers::pi * rng.uniform(), std::numbers::pi * rng.uniform(),
                          2 * std::numbers::pi * rng.uniform());
  };
  const Eigen::Matrix2cd a = one(), b = one();
  Matrix4c m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return m;
}

Eigen::VectorXd random_theta(Rng& rng) {
  Eigen::VectorXd th(9);
  for (int k = 0; k < 9; ++k) th(k) = std::numbers::pi * (2 * rng.uniform() - 1);
  return th;
}

}  // namespace

TEST_CASE("gate application basics") {
  StateVector s(3);
  const auto before = s.amplitudes();
  s.apply(Matrix4c::Identity(), 2);
  CHECK((s.amplitudes() - before).norm() == 0.0);

  StateVector bell(2);
  bell.apply(testing::cnot_matrix() * testing::hadamard_on_first(), 1);
  CHECK(std::abs(bell.amplitudes()(0) - 1 / std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(bell.amplitudes()(3) - 1 / std::sqrt(2.0)) < 1e-12);
  CHECK(bond_entropy(bell, 1) == doctest::Approx(1.0));
  CHECK(bond_entropy(bell, 1, 2.0) == doctest::Approx(1.0));

  Matrix4c bad = Matrix4c::Identity();
  bad(0, 0) = 1.001;
  CHECK_THROWS_AS(s.apply(bad, 1), ConfigError);
  CHECK_THROWS_AS(s.apply(Matrix4c::Identity(), 3), std::out_of_range);
}

TEST_CASE("gate matches the dense embedding") {
  Rng rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(4));
    StateVector s = StateVector::haar_random(n, rng);
    const Eigen::VectorXcd psi = s.amplitudes();
    const Matrix4c u = sample_haar_u4(rng);
    const int bond = 1 + static_cast<int>(rng.below(n - 1));
    s.apply(u, bond);
    const Eigen::VectorXcd ref = testing::embed_two_qubit(u, n, bond) * psi;
    CHECK((s.amplitudes() - ref).norm() < 1e-12);
  }
}

TEST_CASE("gate then inverse restores the state") {
  Rng rng(2);
  StateVector s = StateVector::haar_random(6, rng);
  const auto psi = s.amplitudes();
  const Matrix4c u = sample_haar_u4(rng);
  s.apply(u, 3);
  s.apply(u.adjoint(), 3);
  CHECK(std::abs(psi.dot(s.amplitudes())) > 1 - 1e-9);
}

TEST_CASE("norm survives long gate sequences") {
  Rng rng(3);
  StateVector s(8);
  for (int k = 0; k < 10000; ++k) s.apply_unchecked(sample_haar_u4(rng), 1 + rng.below(7));
  CHECK(std::abs(s.norm() - 1.0) < 1e-8);
}

TEST_CASE("haar unitaries") {
  Rng rng(4);
  const int draws = 100000;
  double sum = 0.0, sum2 = 0.0;
  std::vector<double> phases;
  for (int k = 0; k < draws; ++k) {
    const Matrix4c u = sample_haar_u4(rng);
    REQUIRE(unitarity_error(u) < 1e-12);
    const double v = std::norm(u(0, 0));
    sum += v;
    sum2 += v * v;
    if (k < 20000) {
      Eigen::ComplexEigenSolver<Matrix4c> es(u);
      phases.push_back(std::arg(es.eigenvalues()(static_cast<Eigen::Index>(rng.below(4)))));
    }
  }
  const double mean = sum / draws;
  const double sd = std::sqrt(sum2 / draws - mean * mean);
  CHECK(std::abs(mean - 0.25) < 5 * sd / std::sqrt(static_cast<double>(draws)));

  // One eigenphase per matrix, Kolmogorov-Smirnov against uniform on (-pi, pi].
  std::sort(phases.begin(), phases.end());
  const double n = static_cast<double>(phases.size());
  double d = 0.0;
  for (std::size_t i = 0; i < phases.size(); ++i) {
    const double cdf = (phases[i] + std::numbers::pi) / (2 * std::numbers::pi);
    d = std::max({d, std::abs(cdf - i / n), std::abs(cdf - (i + 1) / n)});
  }
  CHECK(d < 1.628 / std::sqrt(n));
}

TEST_CASE("entropies agree with an explicit partial trace") {
  Rng rng(5);
  for (int n = 2; n <= 6; ++n) {
    const StateVector s = StateVector::haar_random(n, rng);
    for (int x = 1; x < n; ++x) {
      for (double alpha : {1.0, 2.0, 3.0}) {
        CHECK(bond_entropy(s, x, alpha) ==
              doctest::Approx(reference_entropy(s.amplitudes(), n, x, alpha)).epsilon(1e-10));
      }
    }
  }
  Eigen::VectorXcd ghz = Eigen::VectorXcd::Zero(8);
  ghz(0) = ghz(7) = 1.0;
  const auto g = StateVector::from_amplitudes(ghz);
  CHECK(bond_entropy(g, 1) == doctest::Approx(1.0));
  CHECK(bond_entropy(g, 2) == doctest::Approx(1.0));
  for (double e : entropy_profile(StateVector(5))) CHECK(e == 0.0);
}

TEST_CASE("entropy is blind to local unitaries") {
  Rng rng(6);
  StateVector s = StateVector::haar_random(6, rng);
  const double before = bond_entropy(s, 3);
  // Local gates on qubits 2,3 and 4,5 straddle nothing at cut 3.
  s.apply(random_local(rng), 2);
  s.apply(random_local(rng), 4);
  s.apply(sample_haar_u4(rng), 1);
  s.apply(sample_haar_u4(rng), 4);
  CHECK(bond_entropy(s, 3) == doctest::Approx(before).epsilon(1e-10));
}

TEST_CASE("gate parameters") {
  CHECK((gate_from_params(Eigen::VectorXd::Zero(9)) - Matrix4c::Identity()).norm() < 1e-14);
  Eigen::VectorXd th = Eigen::VectorXd::Zero(9);
  th.head(3).setConstant(std::numbers::pi / 4);
  const Matrix4c u = gate_from_params(th);
  const Complex phase = u(0, 0);
  CHECK(std::abs(std::abs(phase) - 1.0) < 1e-12);
  CHECK((u - phase * testing::swap_matrix()).norm() < 1e-12);

  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto theta = random_theta(rng);
    const Matrix4c g = gate_from_params(theta);
    CHECK(unitarity_error(g) < 1e-12);
    StateVector a = StateVector::haar_random(4, rng);
    StateVector b = a;
    a.apply(g, 2);
    b.apply(random_local(rng) * g, 2);
    CHECK(bond_entropy(a, 2) == doctest::Approx(bond_entropy(b, 2)).epsilon(1e-10));
  }
  CHECK_THROWS_AS(gate_from_params(Eigen::VectorXd::Zero(3)), ConfigError);
}

TEST_CASE("bond core scores gates exactly") {
  Rng rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(6));
    StateVector s(n);
    const std::size_t gates = rng.below(3 * n);
    for (std::size_t k = 0; k < gates; ++k) s.apply(sample_haar_u4(rng), 1 + rng.below(n - 1));
    const int bond = 1 + static_cast<int>(rng.below(n - 1));
    const BondCore core(s, bond);
    for (int k = 0; k < 5; ++k) {
      const Matrix4c u = sample_haar_u4(rng);
      StateVector t = s;
      t.apply(u, bond);
      for (double alpha : {1.0, 2.0}) {
        CHECK(core.entropy_after(u, alpha) ==
              doctest::Approx(bond_entropy(t, bond, alpha)).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("nelder-mead on smooth functions") {
  NelderMeadOptions opts;
  opts.max_iterations = 5000;
  opts.f_tolerance = 1e-14;
  opts.x_tolerance = 1e-9;
  const auto rosen = [](const Eigen::VectorXd& x) {
    return 100 * std::pow(x(1) - x(0) * x(0), 2) + std::pow(1 - x(0), 2);
  };
  const auto r = nelder_mead(rosen, Eigen::Vector2d(-1.2, 1.0), opts);
  CHECK(r.converged);
  CHECK(r.x(0) == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(r.x(1) == doctest::Approx(1.0).epsilon(1e-5));

  const auto bowl = [](const Eigen::VectorXd& x) { return (x.array() - 2.0).square().sum(); };
  opts.target = 1e-3;
  const auto b = nelder_mead(bowl, Eigen::VectorXd::Zero(5), opts);
  CHECK(b.reached_target);
  CHECK(b.f <= 1e-3);

  NelderMeadOptions tight;
  tight.max_iterations = 3;
  const auto c = nelder_mead(bowl, Eigen::VectorXd::Zero(5), tight);
  CHECK_FALSE(c.converged);
  CHECK(c.iterations == 3);
}

TEST_CASE("disentangling simple states") {
  OptimizerConfig cfg;
  Rng rng(9);
  StateVector bell(2);
  bell.apply(testing::cnot_matrix() * testing::hadamard_on_first(), 1);
  const auto r = minimize_bond_entropy(bell, 1, cfg, rng);
  CHECK(r.applied);
  CHECK(r.after < 1e-6);
  CHECK(bond_entropy(bell, 1) < 1e-6);

  StateVector product(4);
  const auto p = minimize_bond_entropy(product, 2, cfg, rng);
  CHECK_FALSE(p.applied);
  CHECK(p.before - p.after == 0.0);
}

TEST_CASE("optimizer beats a dense random search") {
  OptimizerConfig cfg;
  Rng rng(10);
  StateVector s = StateVector::haar_random(4, rng);
  const BondCore core(s, 2);
  double search = bond_entropy(s, 2);
  for (int k = 0; k < 100000; ++k) search = std::min(search, core.entropy_after(sample_haar_u4(rng)));
  const auto r = minimize_bond_entropy(s, 2, cfg, rng);
  CHECK(r.after <= search + 1e-3);
  CHECK(r.after <= r.before);
}

TEST_CASE("haar game keeps its cached profile") {
  OptimizerConfig cfg;
  cfg.n_starts = 2;
  cfg.max_iterations = 100;
  HaarGame game(StateVector(6), cfg);
  Rng rng(11);
  for (int k = 0; k < 60; ++k) game.update(schedule_step(rng, game.bond_count(), 0.5), rng);
  const auto ref = entropy_profile(game.state());
  const auto prof = game.profile();
  for (std::size_t x = 0; x < ref.size(); ++x) CHECK(prof[x] == doctest::Approx(ref[x]).epsilon(1e-9));
}

TEST_CASE("haar disentangling experiment") {
  OptimizerConfig cfg;
  Rng rng(12);
  CHECK(haar_disentangled_threshold(10) == doctest::Approx(0.01 / std::numbers::ln2));
  const auto zero = haar_disentangle_experiment(6, 0, rng, cfg, 100);
  CHECK(zero.n_d == 0);
  CHECK_FALSE(zero.censored);
  const auto capped = haar_disentangle_experiment(8, 40, rng, cfg, 3);
  CHECK(capped.censored);
  CHECK(capped.n_d == 3);
}
