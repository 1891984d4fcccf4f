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

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stabcleanse/doped.hpp"
#include "stabcleanse/tableau.hpp"

namespace stabcleanse {

class DensityMatrix;

/// Bounds on Pur(psi_E) from the stabilizer proxy rho:
/// Pur(rho_X) <= Pur(psi_E) <= 4^t Pur(rho_X) for X in {E, F}.
struct BoundsReport {
    size_t n = 0;
    size_t t = 0;
    size_t n_E = 0;
    Dyadic lower_E;
    Dyadic lower_F;
    int64_t upper_factor_log2 = 0;  // log2 d_Y^2 = 2t
    std::optional<double> true_purity;
    double alpha_min = 0;  // -log2(upper) / n
    double alpha_max = 0;  // -log2(lower) / n

    Dyadic lower() const {
        return std::max(lower_E, lower_F);
    }
    /// min over X of 4^t Pur(rho_X).
    Dyadic upper() const {
        return Dyadic{upper_factor_log2 + std::min(lower_E.log2, lower_F.log2)};
    }
    /// {n, t, nE, lower_E: {k}, lower_F: {k}, upper_factor_log2, true_purity?, alpha_window}.
    std::string to_json() const;
};

/// Exact tableau bounds; the dense truth is filled in when n <= 14.
BoundsReport purity_bounds(const DopedCircuit &c, const Partition &p);

struct AlphaEstimate {
    double point;
    double window_min;
    double window_max;
};

/// Throws std::invalid_argument for n = 0 or a report without lower bounds.
AlphaEstimate estimate_alpha(const BoundsReport &report, size_t n);

struct SwapTestResult {
    double estimate = 0;          // 2 accepts / shots - 1, unclamped
    double estimate_clamped = 0;  // clamped to [0, 1]
    uint64_t shots = 0;
    uint64_t accept_count = 0;
    uint64_t seed = 0;
};

/// Simulated swap test: `shots` Bernoulli trials accepting with (1 + Pur) / 2.
SwapTestResult swap_test(const DensityMatrix &rho, uint64_t shots, uint64_t seed);
SwapTestResult swap_test_with_purity(double purity, uint64_t shots, uint64_t seed);

/// Shots for a swap-test standard error of eps * Pur: ceil((1 - Pur^2) / (eps Pur)^2), at least 1.
uint64_t shots_needed(double purity, double epsilon);

/// Smallest shot count on the grid round(2^{k/4}) whose RMS relative error over
/// `repetitions` runs is at most `epsilon`.
uint64_t measured_shots_to_epsilon(double purity, double epsilon, size_t repetitions, uint64_t seed);

struct ComparisonRow {
    std::string method;
    std::string cost_metric;
    double cost_value;
    double error;

    bool operator==(const ComparisonRow &) const = default;
};

/// Swap test (shots for relative error epsilon_target on Pur(psi_E)) against the
/// stabilizer proxy (GF(2) word operations of the two marginal purities, exact).
/// The swap-test row uses the dense purity when available, else the lower bound.
std::vector<ComparisonRow> resource_comparison(const DopedCircuit &c, const Partition &p,
                                               double epsilon_target = 0.1);

/// "method,cost_metric,cost_value,error" plus one row each, 17 significant digits.
std::string comparison_to_csv(const std::vector<ComparisonRow> &rows);
std::vector<ComparisonRow> comparison_from_csv(const std::string &csv);

struct LambdaReport {
    double lambda1;
    double lambda2;
    double expected1;  // d_Y / (d_Y^2 - 1) Pur(rho_F)
    double expected2;  // d_Y / (d_Y^2 - 1) Pur(rho_E)
    bool check1;
    bool check2;
};

/// Dense two-copy contraction of
///   Lambda_1 = tr(W^{(x)2} T_E W^dag{(x)2} Phi^{(x)2} T_Ybar) / (d_Y (d_Y^2 - 1)),
/// with Phi = Phi_Ybar (x) I_Y and Lambda_2 the same with T_F; checks against the
/// proxy purities to 1e-9. Requires n <= 8 and t >= 1.
LambdaReport lambda_diagnostic(const DopedCircuit &c, const Partition &p);

}  // namespace stabcleanse
