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

#include <cstdint>
#include <string>
#include <vector>

#include "stabcleanse/bit_matrix.hpp"
#include "stabcleanse/circuit.hpp"
#include "stabcleanse/pauli.hpp"
#include "stabcleanse/rng.hpp"

namespace stabcleanse {

/// A Clifford unitary U stored through its conjugation action: the images
/// U X_k U^dagger and U Z_k U^dagger of the single-qubit generators.
class CliffordTableau {
   public:
    CliffordTableau() = default;
    static CliffordTableau identity(size_t n);
    /// Builds a tableau from explicit images. Throws std::invalid_argument if the
    /// images do not satisfy the commutation relations of X_k, Z_k.
    static CliffordTableau from_images(std::vector<PauliString> x_images, std::vector<PauliString> z_images);
    /// As from_images, without the O(n^3) validation; for images already known to be valid.
    static CliffordTableau from_images_unchecked(std::vector<PauliString> x_images,
                                                 std::vector<PauliString> z_images);

    size_t num_qubits() const {
        return xs_.size();
    }
    const PauliString &x_image(size_t k) const {
        return xs_[k];
    }
    const PauliString &z_image(size_t k) const {
        return zs_[k];
    }

    /// U P U^dagger.
    PauliString operator()(const PauliString &p) const;

    /// Left-multiplies by a Clifford gate: U -> G U. Throws on T gates or bad indices.
    void apply_gate(const Gate &g);
    void apply_circuit(const Circuit &c);

    /// The symplectic part as a 2n x 2n bit matrix; row k is the image of X_k, row n+k
    /// the image of Z_k, with x bits in columns [0, n) and z bits in [n, 2n).
    BitMatrix symplectic_matrix() const;

    /// True if the images are Hermitian and obey the canonical commutation relations.
    bool satisfies_invariants() const;

    bool operator==(const CliffordTableau &) const = default;

    std::string str() const;

   private:
    std::vector<PauliString> xs_;
    std::vector<PauliString> zs_;
};

/// outer * inner as unitaries (apply `inner` first).
CliffordTableau compose(const CliffordTableau &outer, const CliffordTableau &inner);
CliffordTableau inverse(const CliffordTableau &u);
CliffordTableau tableau_of(const Circuit &c, size_t n);

/// Uniformly random n-qubit Clifford (modulo global phase).
CliffordTableau random_clifford(size_t n, Rng &rng);
CliffordTableau random_clifford(size_t n, uint64_t seed);

/// The qubit permutation T_pi: X_k -> X_{pi(k)}, Z_k -> Z_{pi(k)}.
CliffordTableau permutation_clifford(const std::vector<size_t> &pi);

/// Every n-qubit Clifford modulo global phase, each exactly once. Only n <= 2.
std::vector<CliffordTableau> enumerate_clifford_group(size_t n);

/// |C_n / U(1)| = 2^{n^2 + 2n} prod_{j=1..n} (4^j - 1).
uint64_t clifford_group_order(size_t n);

/// A {H, S, S_DAG, CX} circuit implementing `u` (up to global phase).
Circuit synthesize(const CliffordTableau &u);

/// Purity 2^log2 of a stabilizer (sub)state, carried exactly.
struct Dyadic {
    int64_t log2 = 0;
    double value() const;
    bool operator==(const Dyadic &) const = default;
    auto operator<=>(const Dyadic &) const = default;
};

/// rho = 2^{-n} sum_{g in <generators>} g for k <= n independent, commuting, Hermitian generators.
class StabilizerMixedState {
   public:
    StabilizerMixedState() = default;
    /// Throws std::invalid_argument unless the generators are Hermitian, pairwise
    /// commuting and independent (which also keeps -I out of the group).
    StabilizerMixedState(size_t n, std::vector<PauliString> generators);

    /// |0...0>, generated by Z_0 ... Z_{n-1}.
    static StabilizerMixedState zero_state(size_t n);
    static StabilizerMixedState maximally_mixed(size_t n);
    /// The state U|0...0>.
    static StabilizerMixedState from_clifford(const CliffordTableau &u);

    size_t num_qubits() const {
        return n_;
    }
    size_t num_generators() const {
        return generators_.size();
    }
    const std::vector<PauliString> &generators() const {
        return generators_;
    }
    bool is_pure() const {
        return generators_.size() == n_;
    }

    void apply_gate(const Gate &g);
    void apply_circuit(const Circuit &c);
    /// rho -> U rho U^dagger.
    StabilizerMixedState conjugated_by(const CliffordTableau &u) const;

    /// Reduced row echelon form over GF(2); columns ordered x_0..x_{n-1}, z_0..z_{n-1}.
    StabilizerMixedState canonical() const;

    /// Text format: header "STAB n=<n> k=<k>" then one generator per line.
    std::string str() const;
    static StabilizerMixedState parse(const std::string &text);

    bool operator==(const StabilizerMixedState &) const = default;

   private:
    size_t n_ = 0;
    std::vector<PauliString> generators_;
};

/// Reduced state on `keep` (re-indexed in `keep` order), signs retained. The
/// generators span the subgroup of <s> acting as identity off `keep`.
StabilizerMixedState stab_partial_trace(const StabilizerMixedState &s, const Region &keep);

/// Exact tr(rho_A^2) = 2^{k_A - |A|}.
Dyadic stab_marginal_purity(const StabilizerMixedState &s, const Region &region);

/// Counts GF(2) row operations done by stab_partial_trace (for cost reporting).
struct EliminationStats {
    uint64_t row_ops = 0;
    uint64_t word_ops = 0;
};
StabilizerMixedState stab_partial_trace(const StabilizerMixedState &s, const Region &keep, EliminationStats &stats);

}  // namespace stabcleanse
