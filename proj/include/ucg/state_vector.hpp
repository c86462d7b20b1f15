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
#include <complex>
#include <cstddef>
#include <vector>

#include "ucg/rng.hpp"

namespace ucg {

using Complex = std::complex<double>;
using Matrix4c = Eigen::Matrix4cd;

/// Dense pure state of L <= 16 qubits. Qubit 1 is the most significant bit
/// of the amplitude index, so the cut after qubit x reshapes the amplitudes
/// into a row-major 2^x by 2^(L-x) matrix.
class StateVector {
 public:
  static constexpr std::size_t kMaxQubits = 16;

  /// |0...0>.
  explicit StateVector(std::size_t qubits);
  /// Normalized complex Gaussian vector (Haar-random pure state).
  static StateVector haar_random(std::size_t qubits, Rng& rng);
  /// Takes ownership of the amplitudes after normalizing them.
  static StateVector from_amplitudes(Eigen::VectorXcd amplitudes);

  std::size_t qubits() const noexcept { return n_; }
  const Eigen::VectorXcd& amplitudes() const noexcept { return psi_; }
  double norm() const { return psi_.norm(); }
  void renormalize();

  /// Applies u to qubits (bond, bond+1), local index 2 q_bond + q_{bond+1}.
  /// Throws ConfigError unless u is unitary within 1e-12.
  void apply(const Matrix4c& u, std::size_t bond);
  void apply_unchecked(const Matrix4c& u, std::size_t bond);

 private:
  std::size_t n_;
  Eigen::VectorXcd psi_;
};

/// max |U^dagger U - I|.
double unitarity_error(const Matrix4c& u);

/// Entropy in bits of an eigenvalue spectrum (trace-normalized), order
/// alpha (1 = von Neumann). Eigenvalues below 1e-14 are dropped.
double spectrum_entropy(const Eigen::VectorXd& eigenvalues, double alpha = 1.0);

/// Entropy of the cut {1..x} | {x+1..L} in bits.
double bond_entropy(const StateVector& state, std::size_t bond, double alpha = 1.0);
std::vector<double> entropy_profile(const StateVector& state, double alpha = 1.0);

/// Haar-random U(4): QR of a complex Ginibre matrix with the phases of R's
/// diagonal divided out.
Matrix4c sample_haar_u4(Rng& rng);

/// The state around one bond reduced to a core tensor T[s](a, b): `a` runs
/// over an orthonormal basis of the left support (qubits < x), `b` over the
/// right one (qubits > x+1), s = 2 q_x + q_{x+1}. Entropies of the cut at x
/// after any gate on (x, x+1) are exact functions of T.
class BondCore {
 public:
  BondCore(const StateVector& state, std::size_t bond);

  /// Entropy of the cut after applying u on the bond.
  double entropy_after(const Matrix4c& u, double alpha = 1.0) const;
  Eigen::Index left_rank() const noexcept { return t_[0].rows(); }
  Eigen::Index right_rank() const noexcept { return t_[0].cols(); }

 private:
  std::array<Eigen::MatrixXcd, 4> t_;
};

}  // namespace ucg
