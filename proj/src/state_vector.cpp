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

#include "ucg/state_vector.hpp"

#include <cmath>
#include <stdexcept>

#include "ucg/errors.hpp"

namespace ucg {
namespace {

using RowMajorMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void check_qubits(std::size_t n) {
  if (n < 1 || n > StateVector::kMaxQubits) {
    throw ConfigError("state vector supports 1.." + std::to_string(StateVector::kMaxQubits) +
                      " qubits");
  }
}

// Orthonormal basis (columns) of the range of the Hermitian PSD matrix g.
Eigen::MatrixXcd support_basis(const Eigen::MatrixXcd& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g);
  const Eigen::VectorXd& w = es.eigenvalues();
  const double cutoff = 1e-14 * std::max(1.0, w.maxCoeff());
  Eigen::Index first = 0;
  while (first < w.size() && w(first) <= cutoff) ++first;
  if (first == w.size()) first = w.size() - 1;
  return es.eigenvectors().rightCols(w.size() - first);
}

}  // namespace

StateVector::StateVector(std::size_t qubits) : n_(qubits) {
  check_qubits(qubits);
  psi_ = Eigen::VectorXcd::Zero(Eigen::Index{1} << qubits);
  psi_(0) = 1.0;
}

StateVector StateVector::haar_random(std::size_t qubits, Rng& rng) {
  check_qubits(qubits);
  Eigen::VectorXcd v(Eigen::Index{1} << qubits);
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(rng.normal(), rng.normal());
  return from_amplitudes(std::move(v));
}

StateVector StateVector::from_amplitudes(Eigen::VectorXcd amplitudes) {
  const auto size = static_cast<std::size_t>(amplitudes.size());
  std::size_t n = 0;
  while ((std::size_t{1} << n) < size) ++n;
  if ((std::size_t{1} << n) != size) throw ConfigError("amplitude count must be a power of two");
  check_qubits(n);
  const double norm = amplitudes.norm();
  if (!(norm > 0.0)) throw ConfigError("zero state vector");
  StateVector s(n);
  s.psi_ = std::move(amplitudes) / norm;
  return s;
}

void StateVector::renormalize() { psi_ /= psi_.norm(); }

double unitarity_error(const Matrix4c& u) {
  return (u.adjoint() * u - Matrix4c::Identity()).cwiseAbs().maxCoeff();
}

void StateVector::apply(const Matrix4c& u, std::size_t bond) {
  if (unitarity_error(u) > 1e-12) throw ConfigError("gate is not unitary within 1e-12");
  apply_unchecked(u, bond);
}

void StateVector::apply_unchecked(const Matrix4c& u, std::size_t bond) {
  if (bond < 1 || bond >= n_) throw std::out_of_range("bond outside the chain");
  const std::size_t hi = std::size_t{1} << (n_ - bond);      // qubit `bond`
  const std::size_t lo = std::size_t{1} << (n_ - bond - 1);  // qubit `bond + 1`
  const std::size_t dim = std::size_t{1} << n_;
  for (std::size_t base = 0; base < dim; ++base) {
    if (base & (hi | lo)) continue;
    const std::size_t idx[4] = {base, base | lo, base | hi, base | hi | lo};
    const Complex a0 = psi_(idx[0]), a1 = psi_(idx[1]), a2 = psi_(idx[2]), a3 = psi_(idx[3]);
    for (int r = 0; r < 4; ++r) {
      psi_(idx[r]) = u(r, 0) * a0 + u(r, 1) * a1 + u(r, 2) * a2 + u(r, 3) * a3;
    }
  }
  renormalize();
}

double spectrum_entropy(const Eigen::VectorXd& eigenvalues, double alpha) {
  double trace = 0.0;
  for (Eigen::Index k = 0; k < eigenvalues.size(); ++k) trace += std::max(0.0, eigenvalues(k));
  if (!(trace > 0.0)) return 0.0;
  double s = 0.0;
  if (alpha == 1.0) {
    for (Eigen::Index k = 0; k < eigenvalues.size(); ++k) {
      const double p = eigenvalues(k) / trace;
      if (p >= 1e-14) s -= p * std::log2(p);
    }
    return std::max(0.0, s);
  }
  for (Eigen::Index k = 0; k < eigenvalues.size(); ++k) {
    const double p = eigenvalues(k) / trace;
    if (p >= 1e-14) s += std::pow(p, alpha);
  }
  return std::max(0.0, std::log2(s) / (1.0 - alpha));
}

double bond_entropy(const StateVector& state, std::size_t bond, double alpha) {
  const std::size_t n = state.qubits();
  if (bond < 1 || bond >= n) throw std::out_of_range("bond outside the chain");
  const Eigen::Index rows = Eigen::Index{1} << bond;
  const Eigen::Index cols = Eigen::Index{1} << (n - bond);
  const Eigen::Map<const RowMajorMatrix> m(state.amplitudes().data(), rows, cols);
  Eigen::MatrixXcd gram = rows <= cols ? Eigen::MatrixXcd(m * m.adjoint())
                                       : Eigen::MatrixXcd(m.adjoint() * m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram, Eigen::EigenvaluesOnly);
  return spectrum_entropy(es.eigenvalues(), alpha);
}

std::vector<double> entropy_profile(const StateVector& state, double alpha) {
  std::vector<double> out;
  for (std::size_t x = 1; x < state.qubits(); ++x) out.push_back(bond_entropy(state, x, alpha));
  return out;
}

Matrix4c sample_haar_u4(Rng& rng) {
  Matrix4c g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = Complex(rng.normal(), rng.normal()) / std::sqrt(2.0);
  Eigen::HouseholderQR<Matrix4c> qr(g);
  Matrix4c q = qr.householderQ();
  const Matrix4c r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < 4; ++j) {
    const Complex d = r(j, j);
    q.col(j) *= d / std::abs(d);
  }
  return q;
}

BondCore::BondCore(const StateVector& state, std::size_t bond) {
  const std::size_t n = state.qubits();
  if (bond < 1 || bond >= n) throw std::out_of_range("bond outside the chain");
  const Eigen::Index left = Eigen::Index{1} << (bond - 1);
  const Eigen::Index right = Eigen::Index{1} << (n - bond - 1);
  // psi as (a) x (s, b) with s the 4-dim local index.
  const Eigen::Map<const RowMajorMatrix> m(state.amplitudes().data(), left, 4 * right);

  const Eigen::MatrixXcd pa = support_basis(m * m.adjoint());
  const RowMajorMatrix reduced = pa.adjoint() * m;  // r_a x (4 right)
  const Eigen::Index ra = reduced.rows();

  // (a, s) x (b) view of the reduced tensor for the right support.
  const Eigen::Map<const RowMajorMatrix> m2(reduced.data(), ra * 4, right);
  const Eigen::MatrixXcd pb = support_basis((m2.adjoint() * m2).eval());
  const Eigen::MatrixXcd core = m2 * pb;  // (ra * 4) x r_b, rows (a, s)
  const Eigen::Index rb = core.cols();
  for (int s = 0; s < 4; ++s) {
    t_[s].resize(ra, rb);
    for (Eigen::Index a = 0; a < ra; ++a) t_[s].row(a) = core.row(a * 4 + s);
  }
}

double BondCore::entropy_after(const Matrix4c& u, double alpha) const {
  std::array<Eigen::MatrixXcd, 4> tp;
  for (int s = 0; s < 4; ++s) {
    tp[s] = u(s, 0) * t_[0] + u(s, 1) * t_[1] + u(s, 2) * t_[2] + u(s, 3) * t_[3];
  }
  const Eigen::Index ra = t_[0].rows(), rb = t_[0].cols();
  Eigen::MatrixXcd gram;
  if (ra <= rb) {
    // rows (s1, a): G_{s1 s1'} = sum_{s2} T'_{s1 s2} T'^dagger_{s1' s2}
    gram.resize(2 * ra, 2 * ra);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j <= i; ++j) {
        Eigen::MatrixXcd block = tp[2 * i] * tp[2 * j].adjoint() + tp[2 * i + 1] * tp[2 * j + 1].adjoint();
        gram.block(i * ra, j * ra, ra, ra) = block;
        if (i != j) gram.block(j * ra, i * ra, ra, ra) = block.adjoint();
      }
  } else {
    // cols (s2, b): G_{s2 s2'} = sum_{s1} T'^dagger_{s1 s2} T'_{s1 s2'}
    gram.resize(2 * rb, 2 * rb);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j <= i; ++j) {
        Eigen::MatrixXcd block = tp[i].adjoint() * tp[j] + tp[2 + i].adjoint() * tp[2 + j];
        gram.block(i * rb, j * rb, rb, rb) = block;
        if (i != j) gram.block(j * rb, i * rb, rb, rb) = block.adjoint();
      }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram, Eigen::EigenvaluesOnly);
  return spectrum_entropy(es.eigenvalues(), alpha);
}

}  // namespace ucg
