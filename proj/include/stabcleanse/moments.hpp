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

#include <array>
#include <boost/rational.hpp>
#include <cstdint>
#include <vector>

#include "stabcleanse/pauli.hpp"

namespace stabcleanse {

class DenseState;

// ------------------------------------------------------------ closed forms

struct Prop1Averages {
    double avg_E;
    double avg_F;
};

/// Clifford-orbit averages of the linear SE on E (n_E qubits) and on F (the rest)
/// for an input with linear SE `m_lin`.
Prop1Averages prop1_exact(double m_lin, size_t n, size_t n_E);

/// (d_E + d_F) / (d_E d_F + 1), reduced.
boost::rational<int64_t> page_purity(int64_t d_E, int64_t d_F);

/// Coefficients of E_C[(C psi C^dag)^{(x)4}] = alpha Q Pi_sym + beta Pi_sym, where
/// `sp` is the stabilizer purity sum_P P_psi^2 (1/d for stabilizer states).
struct MomentCoefficients {
    double alpha;
    double beta;
    double d;
};
MomentCoefficients moment_coefficients(double sp, double d);

/// A permutation of four tensor copies; pi[k] is the image of copy k.
using Perm4 = std::array<int, 4>;
const std::vector<Perm4> &permutations_of_four();
int cycle_count(const Perm4 &pi);
/// tr(T_pi) on (C^d)^{(x)4}: d^{#cycles}.
double perm_trace(double d, const Perm4 &pi);
/// tr(Q T_pi) with Q = d^-2 sum_P P^{(x)4}.
double q_perm_trace(double d, const Perm4 &pi);

/// Orbit average of SP(psi_A) for an n-qubit pure input with stabilizer purity
/// `sp`, where A has n_A qubits.
double predicted_marginal_stab_purity(double sp, size_t n, size_t n_A);

// ------------------------------------------------------------ Monte Carlo

struct McEstimate {
    double mean = 0;
    double std_error = 0;
    size_t samples = 0;
    uint64_t seed = 0;
};

/// Mean and standard error (sample std / sqrt(N)) of `values`; needs N >= 2.
McEstimate summarize(const std::vector<double> &values, uint64_t seed);

/// Monte Carlo mean of M_lin((C psi C^dag)_region) over uniform Cliffords.
McEstimate mc_orbit_mlin(const DenseState &psi, const Region &region, size_t samples, uint64_t seed,
                         unsigned workers = 1);

/// Monte Carlo mean of Pur((C psi C^dag)_region).
McEstimate mc_orbit_purity(const DenseState &psi, const Region &region, size_t samples, uint64_t seed,
                           unsigned workers = 1);

/// Monte Carlo orbit statistics of the linear SE of the region marginal.
struct OrbitLinearSE {
    /// 1 - d_A E[SP] / E[Pur] with a delta-method standard error; this is the
    /// quantity the closed forms describe exactly.
    McEstimate ratio_of_averages;
    /// Plain mean of M_lin over the samples.
    McEstimate average_of_ratios;
};
OrbitLinearSE mc_orbit_linear_se(const DenseState &psi, const Region &region, size_t samples, uint64_t seed,
                                 unsigned workers = 1);

/// Exact orbit statistics by enumerating the whole Clifford group (n <= 2).
struct OrbitAverages {
    double mean_sp;               // E_C SP(psi_A)
    double mean_purity;           // E_C Pur(psi_A)
    double ratio_of_averages;     // 1 - d_A E[SP] / E[Pur]
    double average_of_ratios;     // E[1 - d_A SP / Pur]
};
OrbitAverages exhaustive_orbit(const DenseState &psi, const Region &region);

struct PurityFluctuation {
    double relative_error;  // std_C Pur / E_C Pur
    double bound;           // 2^{-n(1-2f)/2}
    McEstimate purity;
};

/// Relative spread of Pur(psi_F) over the Clifford orbit of |0...0> with
/// n_F = round(f n); exact per-sample purities from the tableau engine.
PurityFluctuation purity_fluctuation(size_t n, double f_fraction, size_t samples, uint64_t seed,
                                     unsigned workers = 1);

}  // namespace stabcleanse
