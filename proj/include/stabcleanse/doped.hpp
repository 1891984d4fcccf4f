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

#include "stabcleanse/circuit.hpp"
#include "stabcleanse/pauli.hpp"
#include "stabcleanse/rng.hpp"
#include "stabcleanse/tableau.hpp"

namespace stabcleanse {

class DenseState;

/// E = first n - n_F qubits, F = the rest; Y is where the diagonalizer parks the
/// T gates. Localized (t <= n_F): Y = last t qubits of F. Delocalized: Y = F plus
/// the first t - n_F qubits of E.
struct Partition {
    Region E;
    Region F;
    Region Y;
};

/// n_F = round(f n). Throws std::invalid_argument for t > n or f outside [0, 1].
Partition make_partition(size_t n, size_t t, double f_fraction);

/// C_t = D^dag c_t D V, with c_t acting on qubits 0..t-1.
struct DopedParts {
    CliffordTableau V;
    CliffordTableau D;
    Circuit c_t;
    /// pi_Y[j] = Y[j] for j < t; the remaining qubits go to the complement of Y
    /// in increasing order.
    std::vector<size_t> pi_Y;
    Region Y;
};

struct DopedCircuit {
    size_t n = 0;
    size_t t = 0;
    double f_fraction = 0;
    uint64_t seed = 0;
    DopedParts parts;

    /// Flattened gate list synth(V), synth(D), c_t, synth(D)^-1. Synthesized on
    /// demand because it costs O(n^2) gates.
    Circuit gates() const;
};

struct DopedInstance {
    DopedCircuit circuit;
    Partition partition;
};

/// t layers of [uniform random t-qubit Clifford; T on qubit `layer`].
Circuit random_inner_circuit(size_t t, Rng &rng);

/// V, D and c_t come from independent streams 0, 1, 2 of `seed`.
DopedInstance build_doped_circuit(size_t n, size_t t, double f_fraction, uint64_t seed);

/// Rewrites an arbitrary {H, S, S^dag, CX, T, T^dag, Perm} circuit on n qubits
/// as D^dag c_t D V with t = its T count, so any circuit file can be cleansed.
/// Each T becomes a Pauli rotation pulled to the front of the Clifford part;
/// a symplectic basis adapted to those t Paulis gives D. Seed is recorded as 0.
DopedInstance decompose_circuit(const Circuit &c, size_t n, double f_fraction);

/// Same V, D and Y with a different t-qubit inner circuit.
DopedCircuit replace_inner(const DopedCircuit &c, Circuit c_t);

struct CleanseOutput {
    CliffordTableau W;                 // T_{pi_Y} D
    StabilizerMixedState phi_bar;      // tr_Y W V|0><0|V^dag W^dag, qubit k = Ybar[k]
    StabilizerMixedState rho;          // W^dag (phi_bar (x) I_Y / d_Y) W
};

CleanseOutput cleanse(const DopedCircuit &c);

/// psi_t = C_t|0...0> by dense simulation; n <= 14.
DenseState doped_state(const DopedCircuit &c);

/// M2 of the E marginal of W psi_t W^dag. Y is traced out by the cleansing map,
/// but the part of Y inside E still carries the non-Clifford action, so the
/// marginal is taken on all of E. n <= 14 and |E| <= 10.
double cleansed_se_E(const DopedCircuit &c, const Partition &p);

/// {n, t, f_fraction, nE, seed, Y, hashes{V, D, c_t}} with 64-bit FNV-1a hashes
/// of the tableau and circuit texts.
std::string sidecar_json(const DopedCircuit &c, const Partition &p);

uint64_t fnv1a(const std::string &text);

}  // namespace stabcleanse
