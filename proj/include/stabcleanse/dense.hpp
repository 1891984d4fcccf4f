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

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "stabcleanse/circuit.hpp"
#include "stabcleanse/pauli.hpp"
#include "stabcleanse/tableau.hpp"

namespace stabcleanse {

using Complex = std::complex<double>;

constexpr size_t kMaxStateQubits = 14;
constexpr size_t kMaxDensityQubits = 10;

/// State vector on n <= 14 qubits. Basis index bit q is the value of qubit q.
class DenseState {
   public:
    /// |0...0>.
    explicit DenseState(size_t n);
    /// Takes ownership of amplitudes; throws unless the size is a power of two
    /// within the cap and the norm is 1 within 1e-12.
    static DenseState from_amplitudes(std::vector<Complex> amplitudes);

    size_t num_qubits() const {
        return n_;
    }
    const std::vector<Complex> &amplitudes() const {
        return amps_;
    }

    void apply_gate(const Gate &g);
    void apply_circuit(const Circuit &c);
    /// Applies the Clifford unitary of `u` (up to global phase).
    void apply_clifford(const CliffordTableau &u);
    /// In-place P|psi> for a Pauli string (phase included).
    void apply_pauli(const PauliString &p);

    /// <this|other>.
    Complex inner(const DenseState &other) const;

   private:
    size_t n_;
    std::vector<Complex> amps_;
};

DenseState simulate(const Circuit &c, size_t n);

/// Density matrix on m <= 10 qubits, validated on construction.
class DensityMatrix {
   public:
    /// Throws std::invalid_argument unless Hermitian and unit trace within 1e-10.
    explicit DensityMatrix(Eigen::MatrixXcd matrix);
    static DensityMatrix from_state(const DenseState &s);
    static DensityMatrix maximally_mixed(size_t m);

    size_t num_qubits() const {
        return m_;
    }
    const Eigen::MatrixXcd &matrix() const {
        return rho_;
    }

   private:
    size_t m_;
    Eigen::MatrixXcd rho_;
};

/// tr over the complement of `region`; qubit k of the result is region[k].
DensityMatrix reduced_density(const DenseState &s, const Region &region);
DensityMatrix partial_trace(const DensityMatrix &rho, const Region &keep);

/// The group-average density matrix 2^-n prod_i (I + g_i) of a stabilizer state.
DensityMatrix density_of(const StabilizerMixedState &s);

/// tr(P rho).
Complex expectation(const DensityMatrix &rho, const PauliString &p);

double purity(const DensityMatrix &rho);

/// SP = sum over the 4^m Paulis of tr(P rho)^4 / d^2.
double stab_purity(const DensityMatrix &rho);

struct SEReport {
    double sp;
    double sp_normalized;
    double purity;
    double w;
    double m2;
    double m_lin;
};

/// Throws std::invalid_argument if the purity lies outside [2^-m, 1] (not a state).
SEReport se_report(const DensityMatrix &rho);

struct FourthMoment {
    double enumerated;
    double predicted;
};

/// Exact Clifford-group average of tr((Q_region (x) 1) (C psi C^dag)^{(x)4}) for
/// n <= 2, next to the value predicted by the alpha/beta decomposition.
FourthMoment fourth_moment_exact(const DenseState &psi, const Region &region);

}  // namespace stabcleanse
