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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ucg/clifford.hpp"

namespace ucg {

/// L stabilizer generators of an L-qubit pure stabilizer state, stored as
/// bit-packed symplectic rows with sign bits. Qubits and bonds are 1-based in
/// the public interface; bond x sits between qubits x and x+1.
class StabilizerTableau {
 public:
  /// |0...0>: generators Z_1 .. Z_L.
  static StabilizerTableau product_state(std::size_t qubits);

  /// Generators from strings such as {"+XX", "-ZZ"}; one letter per qubit.
  /// Does not check validity; call valid().
  static StabilizerTableau from_strings(const std::vector<std::string>& rows);

  std::size_t qubits() const noexcept { return n_; }

  /// Pauli of row r on qubit q (1-based) as (x | z << 1).
  uint8_t pauli(std::size_t row, std::size_t qubit) const noexcept {
    const std::size_t q = qubit - 1;
    const uint64_t* r = row_ptr(row);
    const uint64_t bit = uint64_t{1} << (q & 63);
    return static_cast<uint8_t>(((r[q >> 6] & bit) ? 1 : 0) |
                                ((r[words_ + (q >> 6)] & bit) ? 2 : 0));
  }
  bool sign(std::size_t row) const noexcept { return signs_[row]; }
  std::string row_string(std::size_t row) const;

  /// Conjugates every generator by `gate` acting on qubits (bond, bond+1).
  void apply(const CliffordGate2& gate, std::size_t bond);

  /// Generators commute, are independent, and there are L of them.
  bool valid() const;

  /// row[target] <- row[target] * row[source] (phase exact; rows commute).
  void multiply_row(std::size_t target, std::size_t source);
  void swap_rows(std::size_t a, std::size_t b);

  /// Leftmost / rightmost qubit with non-identity content (1-based), 0 if
  /// the row is the identity.
  std::size_t left_endpoint(std::size_t row) const noexcept;
  std::size_t right_endpoint(std::size_t row) const noexcept;

  /// Rows as bit vectors (x words then z words), for GF(2) comparisons.
  std::span<const uint64_t> row_words(std::size_t row) const noexcept {
    return {row_ptr(row), 2 * words_};
  }
  std::size_t words_per_half() const noexcept { return words_; }

 private:
  explicit StabilizerTableau(std::size_t qubits);

  uint64_t* row_ptr(std::size_t r) noexcept { return data_.data() + r * 2 * words_; }
  const uint64_t* row_ptr(std::size_t r) const noexcept {
    return data_.data() + r * 2 * words_;
  }
  void set_pauli(std::size_t row, std::size_t qubit, uint8_t code) noexcept;

  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<uint64_t> data_;
  std::vector<uint8_t> signs_;
};

/// Rank of a list of equal-length bit vectors over GF(2).
std::size_t gf2_rank(std::vector<std::vector<uint64_t>> rows);

/// True when both generator sets span the same subgroup (ignoring signs).
bool same_row_span(const StabilizerTableau& a, const StabilizerTableau& b);

/// S_A = n_A - log2 |S_A| in bits, with |S_A| counted as 2^(L - rank of the
/// generators restricted to the complement of A). `region` holds 1-based qubits.
int entropy_rank(const StabilizerTableau& tableau, std::span<const std::size_t> region);

/// Entropy of the cut {1..x} | {x+1..L}.
int entropy_cut(const StabilizerTableau& tableau, std::size_t bond);

/// S_1 .. S_{L-1} by rank computations.
std::vector<int> entropy_profile_rank(const StabilizerTableau& tableau);

struct ClippedView {
  // Per qubit (index 0 is qubit 1).
  std::vector<int> rho_left;
  std::vector<int> rho_right;
  // Per generator: 1-based (left, right) endpoints.
  std::vector<std::pair<std::size_t, std::size_t>> spans;
};

struct ClippedResult {
  StabilizerTableau tableau;
  ClippedView view;
};

/// Brings the generators to the clipped gauge: a left-to-right elimination on
/// left endpoints, then a right-to-left sweep that removes duplicate right
/// endpoints using only rows whose left endpoint is not smaller.
ClippedResult clip_gauge(const StabilizerTableau& tableau);

/// Checks both clipped-gauge conditions on a tableau/view pair.
bool is_clipped(const StabilizerTableau& tableau, const ClippedView& view);

/// S_x = (number of spans with left <= x < right) / 2. Throws std::logic_error
/// on an odd count.
std::vector<int> entropy_profile_clipped(const ClippedView& view);

/// Local data needed to score any gate on one bond without touching the
/// tableau: after eliminating the generators on qubits 1..x-1, `left_rank`
/// rows remain independent there, and the rest restrict to (x, x+1) as the
/// span of `local_basis`.
struct BondAnalysis {
  std::size_t bond = 0;
  int left_rank = 0;
  std::array<uint8_t, 4> local_basis{};
  int local_dim = 0;

  /// S_x of the current state.
  int entropy() const noexcept;
  /// S_x after applying `gate` on this bond.
  int entropy_after(const CliffordGate2& gate) const noexcept;
};

BondAnalysis analyze_bond(const StabilizerTableau& tableau, std::size_t bond);

}  // namespace ucg
