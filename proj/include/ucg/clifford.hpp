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

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ucg/rng.hpp"

namespace ucg {

/// Signed Hermitian Pauli on two qubits. Bit layout of `bits`:
/// bit0 = x on qubit 1, bit1 = z on qubit 1, bit2 = x on qubit 2,
/// bit3 = z on qubit 2; x = z = 1 encodes Y. Sign is (-1)^sign.
struct Pauli2 {
  uint8_t bits = 0;
  bool sign = false;

  friend bool operator==(const Pauli2&, const Pauli2&) = default;
};

/// Parses "XZ", "-IY", "+ZZ" (qubit 1 first).
Pauli2 parse_pauli2(std::string_view text);
std::string to_string(const Pauli2& p);

/// Exponent e in {-1, 0, 1} with P(a) P(b) = i^e P(a ^ b) on one qubit,
/// a and b given as (x | z << 1).
int pauli_product_phase(uint8_t a, uint8_t b) noexcept;

/// Two-qubit Clifford gate stored as the images of X1, Z1, X2, Z2 under
/// conjugation, plus a 16-entry table for conjugating any local Pauli.
class CliffordGate2 {
 public:
  CliffordGate2();  // identity

  /// Throws ConfigError if the images do not preserve the commutation
  /// relations of X1, Z1, X2, Z2.
  static CliffordGate2 from_images(const std::array<Pauli2, 4>& images);

  /// Gate fixed by the images of an arbitrary symplectic basis
  /// (b0,b1 anticommute; b2,b3 anticommute; every other pair commutes).
  static CliffordGate2 from_basis_images(const std::array<Pauli2, 4>& basis,
                                         const std::array<Pauli2, 4>& images);

  static CliffordGate2 swap();
  static CliffordGate2 cnot();  // control qubit 1
  static CliffordGate2 cz();
  static CliffordGate2 hadamard1();

  const std::array<Pauli2, 4>& images() const noexcept { return images_; }

  /// U P U^dagger.
  Pauli2 conjugate(Pauli2 p) const noexcept {
    return {table_bits_[p.bits], static_cast<bool>(p.sign ^ table_sign_[p.bits])};
  }
  uint8_t image_bits(uint8_t v) const noexcept { return table_bits_[v]; }
  bool image_sign(uint8_t v) const noexcept { return table_sign_[v]; }

  /// Gate that applies *this first and `next` second.
  CliffordGate2 then(const CliffordGate2& next) const;
  CliffordGate2 inverse() const;

  /// Images of X1, Z1, X2, Z2 without signs, 4 bits each.
  uint16_t symplectic_key() const noexcept;

  friend bool operator==(const CliffordGate2& a, const CliffordGate2& b) noexcept {
    return a.images_ == b.images_;
  }

 private:
  explicit CliffordGate2(const std::array<Pauli2, 4>& images);

  std::array<Pauli2, 4> images_;
  std::array<uint8_t, 16> table_bits_{};
  std::array<uint8_t, 16> table_sign_{};
};

/// All 11520 two-qubit Cliffords (mod global phase). Entry 16 * s + m has the
/// s-th symplectic map (lexicographic in the image bits) and sign mask m.
const std::vector<CliffordGate2>& clifford_group();

/// The 720 sign-free representatives, entry s of the group at mask 0.
const std::vector<CliffordGate2>& symplectic_group();

/// Uniform draw from clifford_group().
const CliffordGate2& sample_random_clifford2(Rng& rng);

/// Disentangling gate U_d(A, C): A1 -> A1, C2 -> C2, B1 -> B1 C2,
/// D2 -> A1 D2 with B anticommuting with A and D with C. `a`, `c` are the
/// one-qubit Paulis as (x | z << 1), i.e. X=1, Z=2, Y=3.
CliffordGate2 make_disentangler(uint8_t a, uint8_t c);

/// {U_d(A,C)} for (A,C) in X<Y<Z lexicographic order, then SWAP, then
/// U_d(A,C) * SWAP in the same order (19 gates).
std::vector<CliffordGate2> build_disentangler_set();
const std::vector<CliffordGate2>& disentangler_set();

}  // namespace ucg
