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

#include "ucg/clifford.hpp"

#include <stdexcept>

#include "ucg/errors.hpp"

namespace ucg {
namespace {

constexpr uint8_t kX = 1, kZ = 2, kY = 3;

// Symplectic form of two 2-qubit Pauli bit patterns.
int symplectic_form(uint8_t u, uint8_t v) noexcept {
  int acc = 0;
  for (int q = 0; q < 2; ++q) {
    const int ux = (u >> (2 * q)) & 1, uz = (u >> (2 * q + 1)) & 1;
    const int vx = (v >> (2 * q)) & 1, vz = (v >> (2 * q + 1)) & 1;
    acc += ux * vz + uz * vx;
  }
  return acc & 1;
}

bool is_symplectic(const std::array<uint8_t, 4>& img) noexcept {
  return symplectic_form(img[0], img[1]) == 1 && symplectic_form(img[2], img[3]) == 1 &&
         symplectic_form(img[0], img[2]) == 0 && symplectic_form(img[0], img[3]) == 0 &&
         symplectic_form(img[1], img[2]) == 0 && symplectic_form(img[1], img[3]) == 0;
}

int two_qubit_phase(uint8_t a, uint8_t b) noexcept {
  return pauli_product_phase(a & 3, b & 3) + pauli_product_phase(a >> 2, b >> 2);
}

// i^phase P(bits), phase mod 4.
struct PhasedPauli {
  uint8_t bits = 0;
  int phase = 0;

  void multiply(const Pauli2& p) noexcept {
    phase = (phase + two_qubit_phase(bits, p.bits) + (p.sign ? 2 : 0)) & 3;
    bits ^= p.bits;
  }
};

std::vector<std::array<uint8_t, 4>> enumerate_symplectic() {
  std::vector<std::array<uint8_t, 4>> out;
  for (uint8_t a = 1; a < 16; ++a)
    for (uint8_t b = 1; b < 16; ++b)
      for (uint8_t c = 1; c < 16; ++c)
        for (uint8_t d = 1; d < 16; ++d) {
          const std::array<uint8_t, 4> img{a, b, c, d};
          if (is_symplectic(img)) out.push_back(img);
        }
  return out;
}

}  // namespace

int pauli_product_phase(uint8_t a, uint8_t b) noexcept {
  const int x2 = b & 1, z2 = (b >> 1) & 1;
  switch (a & 3) {
    case kX: return z2 * (2 * x2 - 1);
    case kZ: return x2 * (1 - 2 * z2);
    case kY: return z2 - x2;
    default: return 0;
  }
}

Pauli2 parse_pauli2(std::string_view text) {
  Pauli2 p;
  if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
    p.sign = text.front() == '-';
    text.remove_prefix(1);
  }
  if (text.size() != 2) throw ConfigError("two-qubit Pauli needs two letters");
  for (int q = 0; q < 2; ++q) {
    uint8_t code = 0;
    switch (text[q]) {
      case 'I': code = 0; break;
      case 'X': code = kX; break;
      case 'Y': code = kY; break;
      case 'Z': code = kZ; break;
      default: throw ConfigError("bad Pauli letter");
    }
    p.bits |= static_cast<uint8_t>(code << (2 * q));
  }
  return p;
}

std::string to_string(const Pauli2& p) {
  static constexpr char kLetters[4] = {'I', 'X', 'Z', 'Y'};
  std::string s = p.sign ? "-" : "+";
  s += kLetters[p.bits & 3];
  s += kLetters[(p.bits >> 2) & 3];
  return s;
}

CliffordGate2::CliffordGate2()
    : CliffordGate2(std::array<Pauli2, 4>{Pauli2{1, false}, Pauli2{2, false},
                                          Pauli2{4, false}, Pauli2{8, false}}) {}

CliffordGate2::CliffordGate2(const std::array<Pauli2, 4>& images) : images_(images) {
  for (uint8_t v = 0; v < 16; ++v) {
    // P(v) = i^{x1 z1 + x2 z2} X1^x1 Z1^z1 X2^x2 Z2^z2.
    PhasedPauli acc;
    acc.phase = ((v & 1) & ((v >> 1) & 1)) + (((v >> 2) & 1) & ((v >> 3) & 1));
    for (int k = 0; k < 4; ++k) {
      if (v & (1u << k)) acc.multiply(images_[k]);
    }
    // Hermitian image: the phase is real.
    table_bits_[v] = acc.bits;
    table_sign_[v] = static_cast<uint8_t>(acc.phase == 2);
  }
}

CliffordGate2 CliffordGate2::from_images(const std::array<Pauli2, 4>& images) {
  const std::array<uint8_t, 4> bits{images[0].bits, images[1].bits, images[2].bits,
                                    images[3].bits};
  if (!is_symplectic(bits)) throw ConfigError("Pauli images are not symplectic");
  return CliffordGate2(images);
}

CliffordGate2 CliffordGate2::from_basis_images(const std::array<Pauli2, 4>& basis,
                                               const std::array<Pauli2, 4>& images) {
  const std::array<uint8_t, 4> basis_bits{basis[0].bits, basis[1].bits, basis[2].bits,
                                          basis[3].bits};
  const std::array<uint8_t, 4> image_bits{images[0].bits, images[1].bits, images[2].bits,
                                          images[3].bits};
  if (!is_symplectic(basis_bits)) throw ConfigError("basis is not symplectic");
  if (!is_symplectic(image_bits)) throw ConfigError("basis images are not symplectic");

  std::array<Pauli2, 4> generator_images;
  for (int k = 0; k < 4; ++k) {
    const auto target = static_cast<uint8_t>(1u << k);
    bool found = false;
    for (unsigned mask = 1; mask < 16 && !found; ++mask) {
      PhasedPauli from, to;
      for (int j = 0; j < 4; ++j) {
        if (mask & (1u << j)) {
          from.multiply(basis[j]);
          to.multiply(images[j]);
        }
      }
      if (from.bits != target) continue;
      const int phase = (to.phase - from.phase) & 3;
      if (phase & 1) throw std::logic_error("non-Hermitian generator image");
      generator_images[k] = {to.bits, phase == 2};
      found = true;
    }
  }
  return from_images(generator_images);
}

CliffordGate2 CliffordGate2::swap() {
  return from_images({Pauli2{4, false}, Pauli2{8, false}, Pauli2{1, false}, Pauli2{2, false}});
}

CliffordGate2 CliffordGate2::cnot() {
  return from_images({Pauli2{5, false}, Pauli2{2, false}, Pauli2{4, false}, Pauli2{10, false}});
}

CliffordGate2 CliffordGate2::cz() {
  return from_images({Pauli2{9, false}, Pauli2{2, false}, Pauli2{6, false}, Pauli2{8, false}});
}

CliffordGate2 CliffordGate2::hadamard1() {
  return from_images({Pauli2{2, false}, Pauli2{1, false}, Pauli2{4, false}, Pauli2{8, false}});
}

CliffordGate2 CliffordGate2::then(const CliffordGate2& next) const {
  std::array<Pauli2, 4> out;
  for (int k = 0; k < 4; ++k) out[k] = next.conjugate(images_[k]);
  return CliffordGate2(out);
}

CliffordGate2 CliffordGate2::inverse() const {
  std::array<Pauli2, 4> out;
  for (int k = 0; k < 4; ++k) {
    const auto target = static_cast<uint8_t>(1u << k);
    for (uint8_t v = 1; v < 16; ++v) {
      if (table_bits_[v] == target) {
        out[k] = {v, static_cast<bool>(table_sign_[v])};
        break;
      }
    }
  }
  return CliffordGate2(out);
}

uint16_t CliffordGate2::symplectic_key() const noexcept {
  return static_cast<uint16_t>(images_[0].bits | (images_[1].bits << 4) |
                               (images_[2].bits << 8) | (images_[3].bits << 12));
}

const std::vector<CliffordGate2>& symplectic_group() {
  static const std::vector<CliffordGate2> group = [] {
    std::vector<CliffordGate2> out;
    for (const auto& img : enumerate_symplectic()) {
      out.push_back(CliffordGate2::from_images({Pauli2{img[0], false}, Pauli2{img[1], false},
                                                Pauli2{img[2], false}, Pauli2{img[3], false}}));
    }
    return out;
  }();
  return group;
}

const std::vector<CliffordGate2>& clifford_group() {
  static const std::vector<CliffordGate2> group = [] {
    std::vector<CliffordGate2> out;
    out.reserve(11520);
    for (const auto& rep : symplectic_group()) {
      const auto& img = rep.images();
      for (unsigned mask = 0; mask < 16; ++mask) {
        std::array<Pauli2, 4> signed_img;
        for (int k = 0; k < 4; ++k) signed_img[k] = {img[k].bits, static_cast<bool>((mask >> k) & 1)};
        out.push_back(CliffordGate2::from_images(signed_img));
      }
    }
    return out;
  }();
  return group;
}

const CliffordGate2& sample_random_clifford2(Rng& rng) {
  const auto& group = clifford_group();
  return group[rng.below(group.size())];
}

CliffordGate2 make_disentangler(uint8_t a, uint8_t c) {
  if (a < 1 || a > 3 || c < 1 || c > 3) throw ConfigError("disentangler needs non-identity Paulis");
  const uint8_t b = (a == kZ) ? kX : kZ;
  const uint8_t d = (c == kZ) ? kX : kZ;
  const std::array<Pauli2, 4> basis{Pauli2{a, false}, Pauli2{b, false},
                                    Pauli2{static_cast<uint8_t>(c << 2), false},
                                    Pauli2{static_cast<uint8_t>(d << 2), false}};
  const std::array<Pauli2, 4> images{Pauli2{a, false},
                                     Pauli2{static_cast<uint8_t>(b | (c << 2)), false},
                                     Pauli2{static_cast<uint8_t>(c << 2), false},
                                     Pauli2{static_cast<uint8_t>(a | (d << 2)), false}};
  return CliffordGate2::from_basis_images(basis, images);
}

std::vector<CliffordGate2> build_disentangler_set() {
  static constexpr uint8_t kOrder[3] = {kX, kY, kZ};
  std::vector<CliffordGate2> set;
  set.reserve(19);
  for (uint8_t a : kOrder)
    for (uint8_t c : kOrder) set.push_back(make_disentangler(a, c));
  const CliffordGate2 swap = CliffordGate2::swap();
  set.push_back(swap);
  for (std::size_t k = 0; k < 9; ++k) set.push_back(swap.then(set[k]));
  return set;
}

const std::vector<CliffordGate2>& disentangler_set() {
  static const std::vector<CliffordGate2> set = build_disentangler_set();
  return set;
}

}  // namespace ucg
