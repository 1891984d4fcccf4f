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

#include "stabcleanse/moments.hpp"

namespace stabcleanse {

/// A point of the (t density, F fraction) plane at fixed n.
struct PhasePoint {
    size_t n = 0;
    double t_density = 0;  // t / n
    double f_density = 0;  // n_F / n
};

struct HelperValues {
    double f_minus;
    double f_plus;
    double g_helper;
};

/// The three rational helpers of the g expression at x = 2^{nt}. Throws
/// std::domain_error for nt < 1.
HelperValues helper_fg(double nt);

/// Lower bound g(n, t, f) in bits on the averaged SE of E after cleansing; 0 in
/// the localized phase t/f <= 1. Evaluated in extended precision in log space,
/// switching to 100-digit arithmetic when n is too large for that range.
double g_value(const PhasePoint &p);

/// The same quantity evaluated term by term with 100-digit floats. Slow; used
/// as a reference for g_value.
double g_value_reference(const PhasePoint &p);

/// n (1 - 2f); throws std::invalid_argument unless 0 < f <= 1/2.
double g_infinity(size_t n, double f_density);

struct PhaseCurvePoint {
    double t_over_f;
    double g_bits;
    double g_ratio;
};

struct PhaseCurve {
    size_t n = 0;
    double f_density = 0;
    std::vector<PhaseCurvePoint> points;

    /// "t_over_f,g_bits,g_ratio" plus one row per point, 17 significant digits.
    std::string to_csv() const;
};

/// 0, 1/20, ..., 3.
std::vector<double> default_phase_grid();

/// Tabulates g and g / g_inf. Throws std::invalid_argument unless 0 < f < 1/2,
/// the grid is strictly increasing inside [0, 1/f] and each n f x is an integer
/// (within 1e-9).
PhaseCurve phase_curve(size_t n, double f_density, const std::vector<double> &grid);

/// Monte Carlo mean of the cleansed SE on E over independent doped circuits;
/// sample i uses seed derive_seed(seed, i). n <= 12 and n t, n f integral.
McEstimate mc_expected_se(const PhasePoint &p, size_t samples, uint64_t seed, unsigned workers = 1);

/// Shortest round-trip decimal form with 17 significant digits ("%.17g").
std::string format_real(double v);

}  // namespace stabcleanse
