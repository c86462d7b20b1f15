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

#include "ucg/tableau.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "ucg/errors.hpp"

namespace ucg {
namespace {

std::size_t words_for(std::size_t n) { return (n + 63) / 64; }

// Index of the highest set bit in a multiword vector, or -1.
long highest_bit(const std::vector<uint64_t>& v) {
  for (std::size_t w = v.size(); w-- > 0;) {
    if (v[w]) return static_cast<long>(w * 64 + 63 - std::countl_zero(v[w]));
  }
  return -1;
}

void xor_into(std::vector<uint64_t>& dst, const std::vector<uint64_t>& src) {
  for (std::size_t w = 0; w < dst.size(); ++w) dst[w] ^= src[w];
}

}  // namespace

StabilizerTableau::StabilizerTableau(std::size_t qubits)
    : n_(qubits), words_(words_for(qubits)), data_(qubits * 2 * words_, 0),
      signs_(qubits, 0) {
  if (qubits < 1) throw ConfigError("tableau needs at least one qubit");
}

StabilizerTableau StabilizerTableau::product_state(std::size_t qubits) {
  StabilizerTableau t(qubits);
  for (std::size_t q = 1; q <= qubits; ++q) t.set_pauli(q - 1, q, 2);
  return t;
}

StabilizerTableau StabilizerTableau::from_strings(const std::vector<std::string>& rows) {
  if (rows.empty()) throw ConfigError("tableau needs at least one row");
  const std::string_view first = rows.front();
  const std::size_t n = first.size() - ((first[0] == '+' || first[0] == '-') ? 1 : 0);
  if (rows.size() != n) throw ConfigError("tableau needs as many rows as qubits");
  StabilizerTableau t(n);
  for (std::size_t r = 0; r < n; ++r) {
    std::string_view s = rows[r];
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
      t.signs_[r] = s[0] == '-';
      s.remove_prefix(1);
    }
    if (s.size() != n) throw ConfigError("tableau row has the wrong length");
    for (std::size_t q = 0; q < n; ++q) {
      uint8_t code = 0;
      switch (s[q]) {
        case 'I': code = 0; break;
        case 'X': code = 1; break;
        case 'Z': code = 2; break;
        case 'Y': code = 3; break;
        default: throw ConfigError("bad Pauli letter in tableau row");
      }
      t.set_pauli(r, q + 1, code);
    }
  }
  return t;
}

void StabilizerTableau::set_pauli(std::size_t row, std::size_t qubit, uint8_t code) noexcept {
  const std::size_t q = qubit - 1;
  uint64_t* r = row_ptr(row);
  const uint64_t bit = uint64_t{1} << (q & 63);
  r[q >> 6] = (code & 1) ? (r[q >> 6] | bit) : (r[q >> 6] & ~bit);
  r[words_ + (q >> 6)] =
      (code & 2) ? (r[words_ + (q >> 6)] | bit) : (r[words_ + (q >> 6)] & ~bit);
}

std::string StabilizerTableau::row_string(std::size_t row) const {
  static constexpr char kLetters[4] = {'I', 'X', 'Z', 'Y'};
  std::string s = signs_[row] ? "-" : "+";
  for (std::size_t q = 1; q <= n_; ++q) s += kLetters[pauli(row, q)];
  return s;
}

void StabilizerTableau::apply(const CliffordGate2& gate, std::size_t bond) {
  if (bond < 1 || bond >= n_) throw std::out_of_range("bond outside the chain");
  const std::size_t q1 = bond, q2 = bond + 1;
  for (std::size_t r = 0; r < n_; ++r) {
    const uint8_t v = static_cast<uint8_t>(pauli(r, q1) | (pauli(r, q2) << 2));
    if (v == 0) continue;
    const uint8_t img = gate.image_bits(v);
    signs_[r] ^= static_cast<uint8_t>(gate.image_sign(v));
    set_pauli(r, q1, img & 3);
    set_pauli(r, q2, img >> 2);
  }
}

void StabilizerTableau::multiply_row(std::size_t target, std::size_t source) {
  uint64_t* t = row_ptr(target);
  const uint64_t* s = row_ptr(source);
  // Per-qubit phase of P(a) P(b): +i for XY, YZ, ZX and -i for XZ, YX, ZY.
  int plus = 0, minus = 0;
  for (std::size_t w = 0; w < words_; ++w) {
    const uint64_t x1 = t[w], z1 = t[words_ + w], x2 = s[w], z2 = s[words_ + w];
    const uint64_t a_x = x1 & ~z1, a_z = ~x1 & z1, a_y = x1 & z1;
    const uint64_t b_x = x2 & ~z2, b_z = ~x2 & z2, b_y = x2 & z2;
    plus += std::popcount((a_x & b_y) | (a_y & b_z) | (a_z & b_x));
    minus += std::popcount((a_x & b_z) | (a_y & b_x) | (a_z & b_y));
    t[w] = x1 ^ x2;
    t[words_ + w] = z1 ^ z2;
  }
  const int e = (2 * signs_[target] + 2 * signs_[source] + plus - minus) & 3;
  if (e & 1) throw std::logic_error("multiplied anticommuting generators");
  signs_[target] = static_cast<uint8_t>(e == 2);
}

void StabilizerTableau::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  std::swap_ranges(row_ptr(a), row_ptr(a) + 2 * words_, row_ptr(b));
  std::swap(signs_[a], signs_[b]);
}

std::size_t StabilizerTableau::left_endpoint(std::size_t row) const noexcept {
  const uint64_t* r = row_ptr(row);
  for (std::size_t w = 0; w < words_; ++w) {
    const uint64_t m = r[w] | r[words_ + w];
    if (m) return w * 64 + std::countr_zero(m) + 1;
  }
  return 0;
}

std::size_t StabilizerTableau::right_endpoint(std::size_t row) const noexcept {
  const uint64_t* r = row_ptr(row);
  for (std::size_t w = words_; w-- > 0;) {
    const uint64_t m = r[w] | r[words_ + w];
    if (m) return w * 64 + (63 - std::countl_zero(m)) + 1;
  }
  return 0;
}

bool StabilizerTableau::valid() const {
  for (std::size_t a = 0; a < n_; ++a) {
    const uint64_t* ra = row_ptr(a);
    for (std::size_t b = a + 1; b < n_; ++b) {
      const uint64_t* rb = row_ptr(b);
      int form = 0;
      for (std::size_t w = 0; w < words_; ++w) {
        form += std::popcount((ra[w] & rb[words_ + w]) ^ (ra[words_ + w] & rb[w]));
      }
      if (form & 1) return false;
    }
  }
  std::vector<std::vector<uint64_t>> rows;
  rows.reserve(n_);
  for (std::size_t r = 0; r < n_; ++r) {
    rows.emplace_back(row_ptr(r), row_ptr(r) + 2 * words_);
  }
  return gf2_rank(std::move(rows)) == n_;
}

std::size_t gf2_rank(std::vector<std::vector<uint64_t>> rows) {
  std::size_t rank = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const long pivot = highest_bit(rows[i]);
    if (pivot < 0) continue;
    ++rank;
    const uint64_t bit = uint64_t{1} << (pivot & 63);
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      if (rows[j][pivot >> 6] & bit) xor_into(rows[j], rows[i]);
    }
  }
  return rank;
}

bool same_row_span(const StabilizerTableau& a, const StabilizerTableau& b) {
  if (a.qubits() != b.qubits()) return false;
  std::vector<std::vector<uint64_t>> rows;
  for (std::size_t r = 0; r < a.qubits(); ++r) {
    const auto w = a.row_words(r);
    rows.emplace_back(w.begin(), w.end());
  }
  const std::size_t ra = gf2_rank(rows);
  for (std::size_t r = 0; r < b.qubits(); ++r) {
    const auto w = b.row_words(r);
    rows.emplace_back(w.begin(), w.end());
  }
  return gf2_rank(std::move(rows)) == ra && ra == a.qubits();
}

int entropy_rank(const StabilizerTableau& tableau, std::span<const std::size_t> region) {
  const std::size_t n = tableau.qubits(), words = tableau.words_per_half();
  std::vector<uint64_t> complement(words, 0);
  for (std::size_t q = 0; q < n; ++q) complement[q >> 6] |= uint64_t{1} << (q & 63);
  std::size_t n_a = 0;
  for (std::size_t q : region) {
    if (q < 1 || q > n) throw std::out_of_range("region qubit outside the chain");
    const uint64_t bit = uint64_t{1} << ((q - 1) & 63);
    if (complement[(q - 1) >> 6] & bit) ++n_a;
    complement[(q - 1) >> 6] &= ~bit;
  }
  std::vector<std::vector<uint64_t>> rows;
  rows.reserve(n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto w = tableau.row_words(r);
    std::vector<uint64_t> v(2 * words);
    for (std::size_t k = 0; k < words; ++k) {
      v[k] = w[k] & complement[k];
      v[words + k] = w[words + k] & complement[k];
    }
    rows.push_back(std::move(v));
  }
  // |S_A| = 2^(n - rank of restriction to the complement)
  const auto rank = static_cast<long>(gf2_rank(std::move(rows)));
  return static_cast<int>(static_cast<long>(n_a) - static_cast<long>(n) + rank);
}

int entropy_cut(const StabilizerTableau& tableau, std::size_t bond) {
  std::vector<std::size_t> region(bond);
  for (std::size_t q = 0; q < bond; ++q) region[q] = q + 1;
  return entropy_rank(tableau, region);
}

std::vector<int> entropy_profile_rank(const StabilizerTableau& tableau) {
  std::vector<int> out;
  for (std::size_t x = 1; x < tableau.qubits(); ++x) out.push_back(entropy_cut(tableau, x));
  return out;
}

ClippedResult clip_gauge(const StabilizerTableau& input) {
  StabilizerTableau t = input;
  const std::size_t n = t.qubits();

  // Left sweep: rows[k..] have no content left of q when q is reached.
  std::size_t k = 0;
  for (std::size_t q = 1; q <= n && k < n; ++q) {
    std::size_t p1 = n, p2 = n;
    for (std::size_t r = k; r < n; ++r) {
      if (t.pauli(r, q) == 0) continue;
      if (p1 == n) {
        t.swap_rows(k, r);
        p1 = k;
      } else if (p2 == n && t.pauli(r, q) != t.pauli(p1, q)) {
        t.swap_rows(k + 1, r);
        p2 = k + 1;
      }
    }
    if (p1 == n) continue;
    const std::size_t first_free = p2 == n ? k + 1 : k + 2;
    for (std::size_t r = first_free; r < n; ++r) {
      const uint8_t c = t.pauli(r, q);
      if (c == 0) continue;
      if (c == t.pauli(p1, q)) {
        t.multiply_row(r, p1);
      } else if (c == t.pauli(p2, q)) {
        t.multiply_row(r, p2);
      } else {
        t.multiply_row(r, p1);
        t.multiply_row(r, p2);
      }
    }
    k = first_free;
  }

  // Right sweep: only rows whose left endpoint is not smaller are added in.
  for (std::size_t q = n; q >= 1; --q) {
    std::vector<std::size_t> ending;
    for (std::size_t r = 0; r < n; ++r) {
      if (t.right_endpoint(r) == q) ending.push_back(r);
    }
    std::stable_sort(ending.begin(), ending.end(), [&](std::size_t a, std::size_t b) {
      return t.left_endpoint(a) > t.left_endpoint(b);
    });
    std::size_t p1 = n, p2 = n;
    for (std::size_t r : ending) {
      const uint8_t c = t.pauli(r, q);
      if (p1 == n) {
        p1 = r;
      } else if (c == t.pauli(p1, q)) {
        t.multiply_row(r, p1);
      } else if (p2 == n) {
        p2 = r;
      } else if (c == t.pauli(p2, q)) {
        t.multiply_row(r, p2);
      } else {
        t.multiply_row(r, p1);
        t.multiply_row(r, p2);
      }
    }
    if (q == 1) break;
  }

  ClippedView view;
  view.rho_left.assign(n, 0);
  view.rho_right.assign(n, 0);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t l = t.left_endpoint(r), rt = t.right_endpoint(r);
    if (l == 0) throw std::logic_error("identity generator in tableau");
    view.spans.emplace_back(l, rt);
    ++view.rho_left[l - 1];
    ++view.rho_right[rt - 1];
  }
  return {std::move(t), std::move(view)};
}

bool is_clipped(const StabilizerTableau& tableau, const ClippedView& view) {
  const std::size_t n = tableau.qubits();
  if (view.spans.size() != n) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (view.rho_left[i] + view.rho_right[i] != 2) return false;
  }
  for (std::size_t site = 1; site <= n; ++site) {
    std::vector<uint8_t> lefts, rights;
    for (std::size_t r = 0; r < n; ++r) {
      if (tableau.left_endpoint(r) == site) lefts.push_back(tableau.pauli(r, site));
      if (tableau.right_endpoint(r) == site) rights.push_back(tableau.pauli(r, site));
    }
    if (lefts.size() > 2 || rights.size() > 2) return false;
    if (lefts.size() == 2 && lefts[0] == lefts[1]) return false;
    if (rights.size() == 2 && rights[0] == rights[1]) return false;
  }
  return true;
}

std::vector<int> entropy_profile_clipped(const ClippedView& view) {
  const std::size_t n = view.rho_left.size();
  std::vector<int> out;
  for (std::size_t x = 1; x < n; ++x) {
    int crossings = 0;
    for (const auto& [l, r] : view.spans) crossings += (l <= x && x < r) ? 1 : 0;
    if (crossings & 1) throw std::logic_error("odd crossing count in clipped view");
    out.push_back(crossings / 2);
  }
  return out;
}

namespace {

int projected_rank(const std::array<uint8_t, 4>& vectors, int count) noexcept {
  uint8_t first = 0;
  for (int k = 0; k < count; ++k) {
    const uint8_t v = vectors[k] & 3;
    if (v == 0) continue;
    if (first == 0) {
      first = v;
    } else if (v != first) {
      return 2;
    }
  }
  return first ? 1 : 0;
}

}  // namespace

int BondAnalysis::entropy() const noexcept {
  return left_rank + projected_rank(local_basis, local_dim) - static_cast<int>(bond);
}

int BondAnalysis::entropy_after(const CliffordGate2& gate) const noexcept {
  std::array<uint8_t, 4> image{};
  for (int k = 0; k < local_dim; ++k) image[k] = gate.image_bits(local_basis[k]);
  return left_rank + projected_rank(image, local_dim) - static_cast<int>(bond);
}

BondAnalysis analyze_bond(const StabilizerTableau& tableau, std::size_t bond) {
  const std::size_t n = tableau.qubits();
  if (bond < 1 || bond >= n) throw std::out_of_range("bond outside the chain");
  const std::size_t words = tableau.words_per_half();
  const std::size_t left_qubits = bond - 1;

  std::vector<uint64_t> mask(words, 0);
  for (std::size_t q = 0; q < left_qubits; ++q) mask[q >> 6] |= uint64_t{1} << (q & 63);

  struct Row {
    std::vector<uint64_t> left;
    uint8_t local;
  };
  std::vector<Row> basis;
  std::vector<long> pivot_of(2 * words * 64, -1);

  BondAnalysis out;
  out.bond = bond;
  std::array<uint8_t, 4> local_pivots{};  // XOR basis of the local 4-bit space, by top bit
  for (std::size_t r = 0; r < n; ++r) {
    const auto w = tableau.row_words(r);
    Row row{std::vector<uint64_t>(2 * words),
            static_cast<uint8_t>(tableau.pauli(r, bond) | (tableau.pauli(r, bond + 1) << 2))};
    for (std::size_t k = 0; k < words; ++k) {
      row.left[k] = w[k] & mask[k];
      row.left[words + k] = w[words + k] & mask[k];
    }
    for (long top = highest_bit(row.left); top >= 0; top = highest_bit(row.left)) {
      const long b = pivot_of[top];
      if (b < 0) break;
      xor_into(row.left, basis[b].left);
      row.local ^= basis[b].local;
    }
    const long top = highest_bit(row.left);
    if (top >= 0) {
      pivot_of[top] = static_cast<long>(basis.size());
      basis.push_back(std::move(row));
      continue;
    }
    uint8_t v = row.local;
    for (int bit = 3; bit >= 0 && v; --bit) {
      if (!(v >> bit & 1)) continue;
      if (local_pivots[bit]) {
        v ^= local_pivots[bit];
      } else {
        local_pivots[bit] = v;
        v = 0;
      }
    }
  }
  out.left_rank = static_cast<int>(basis.size());
  for (uint8_t v : local_pivots) {
    if (v) out.local_basis[out.local_dim++] = v;
  }
  return out;
}

}  // namespace ucg
