// Copyright 2026 The stabcleanse Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stabcleanse {

/// A set of qubit positions, strictly increasing.
class Region {
   public:
    Region() = default;
    /// Throws std::invalid_argument unless `indices` is strictly increasing.
    explicit Region(std::vector<size_t> indices);

    /// Qubits [begin, end).
    static Region range(size_t begin, size_t end);
    static Region full(size_t n) {
        return range(0, n);
    }

    size_t size() const {
        return indices_.size();
    }
    bool empty() const {
        return indices_.empty();
    }
    size_t operator[](size_t k) const {
        return indices_[k];
    }
    const std::vector<size_t> &indices() const {
        return indices_;
    }
    auto begin() const {
        return indices_.begin();
    }
    auto end() const {
        return indices_.end();
    }

    bool contains(size_t q) const;
    /// Throws std::out_of_range if any index is >= n.
    void check_within(size_t n) const;
    /// Qubits of [0, n) not in this region.
    Region complement(size_t n) const;
    Region united(const Region &other) const;
    Region intersected(const Region &other) const;
    Region minus(const Region &other) const;

    bool operator==(const Region &) const = default;

    std::string str() const;

   private:
    std::vector<size_t> indices_;
};

/// An n-qubit Pauli operator i^phase * (sigma_0 (x) sigma_1 (x) ...).
///
/// Each qubit carries the Hermitian Pauli selected by its (x, z) bits:
/// (0,0)=I, (1,0)=X, (0,1)=Z, (1,1)=Y, where Y = i*X*Z. The bits are packed
/// 64 per word; bits past `num_qubits` are always zero.
class PauliString {
   public:
    PauliString() = default;
    explicit PauliString(size_t num_qubits);

    /// Parses "+XIZY", "-iZZ", "XX", "+iY", ... Throws std::invalid_argument.
    static PauliString from_str(std::string_view text);
    /// Single-qubit Pauli `kind` in {'I','X','Y','Z'} on qubit q.
    static PauliString single(size_t num_qubits, size_t q, char kind);

    size_t num_qubits() const {
        return num_qubits_;
    }
    size_t num_words() const {
        return xs_.size();
    }

    bool x(size_t q) const {
        return (xs_[q >> 6] >> (q & 63)) & 1;
    }
    bool z(size_t q) const {
        return (zs_[q >> 6] >> (q & 63)) & 1;
    }
    void set_x(size_t q, bool v);
    void set_z(size_t q, bool v);
    /// 'I', 'X', 'Y' or 'Z' on qubit q.
    char pauli_at(size_t q) const;
    void set_pauli_at(size_t q, char kind);

    /// Exponent of i, in [0, 4).
    uint8_t phase() const {
        return phase_;
    }
    void set_phase(uint8_t p) {
        phase_ = p & 3;
    }
    void add_phase(int delta) {
        phase_ = static_cast<uint8_t>((phase_ + delta) & 3);
    }
    bool is_hermitian() const {
        return (phase_ & 1) == 0;
    }

    std::span<uint64_t> x_words() {
        return xs_;
    }
    std::span<uint64_t> z_words() {
        return zs_;
    }
    std::span<const uint64_t> x_words() const {
        return xs_;
    }
    std::span<const uint64_t> z_words() const {
        return zs_;
    }

    /// True if all bits are zero (the operator is a phase times identity).
    bool has_identity_support() const;
    size_t weight() const;

    /// In-place right multiplication: *this = *this * rhs.
    PauliString &operator*=(const PauliString &rhs);

    bool operator==(const PauliString &) const = default;

    std::string str() const;

   private:
    size_t num_qubits_ = 0;
    uint8_t phase_ = 0;
    std::vector<uint64_t> xs_;
    std::vector<uint64_t> zs_;
};

/// Product a * b with exact power-of-i phase. Throws std::invalid_argument on size mismatch.
PauliString pauli_mul(const PauliString &a, const PauliString &b);
inline PauliString operator*(const PauliString &a, const PauliString &b) {
    return pauli_mul(a, b);
}

/// Whether a and b commute (symplectic inner product is zero).
bool commutes(const PauliString &a, const PauliString &b);

/// The restriction of p to `region` when p acts as identity everywhere else;
/// std::nullopt otherwise (the partial trace of p over the complement vanishes).
std::optional<PauliString> restrict_to(const PauliString &p, const Region &region);

/// Places `p` (defined on region.size() qubits) at the positions of `region` in an n-qubit string.
PauliString embed(const PauliString &p, const Region &region, size_t n);

// Conjugation by single Clifford gates, P -> G P G^dagger.
void conjugate_h(PauliString &p, size_t q);
void conjugate_s(PauliString &p, size_t q);
void conjugate_sdg(PauliString &p, size_t q);
void conjugate_cx(PauliString &p, size_t control, size_t target);
/// Moves the content of qubit j to qubit perm[j].
void conjugate_permutation(PauliString &p, std::span<const size_t> perm);

}  // namespace stabcleanse
