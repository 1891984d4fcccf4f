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


#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "stabcleanse/phase.hpp"

using namespace stabcleanse;

namespace {

// Helpers straight from their rational form in 4^{nt} and 2^{nt}.
HelperValues helper_direct(int nt) {
    const long double x = std::ldexp(1.0L, nt), x2 = x * x;
    return {static_cast<double>((3 * x2 - 3 * x - 4) / (x2 - 1)),
            static_cast<double>((3 * x2 + 3 * x - 4) / (x2 - 1)), static_cast<double>((3 * x2 - 4) / (x2 - 1))};
}

struct Pinned {
    size_t n, t;
    double g;
};

// Independent 50-digit evaluations of the closed form at f = 1/3.
constexpr Pinned kPinned[] = {
    {9, 4, 1.2456987763809696},   {9, 5, 1.975275443512618},    {9, 6, 2.3068884539459373},
    {9, 7, 2.447675496966822},    {9, 8, 2.5091309350615708},   {9, 9, 2.5332941201245034},
    {30, 11, 1.9363273283942229}, {30, 15, 7.2883758663725642}, {30, 20, 8.9424184404667194},
    {30, 30, 9.9159268193941374}, {60, 21, 1.9965686407591635}, {60, 24, 7.8815985900307439},
    {60, 30, 13.990589141646155}, {60, 40, 17.8252650881485},   {60, 60, 19.98400875452441},
};

PhasePoint point(size_t n, size_t t, size_t n_F) {
    return {n, static_cast<double>(t) / static_cast<double>(n), static_cast<double>(n_F) / static_cast<double>(n)};
}

}  // namespace

TEST(Helper, MatchesRationalForm) {
    for (int nt = 1; nt <= 40; nt++) {
        auto a = helper_fg(nt);
        auto b = helper_direct(nt);
        EXPECT_NEAR(a.f_minus, b.f_minus, 1e-12) << nt;
        EXPECT_NEAR(a.f_plus, b.f_plus, 1e-12) << nt;
        EXPECT_NEAR(a.g_helper, b.g_helper, 1e-12) << nt;
    }
    // nt = 1: f- = 2/3, f+ = 14/3, g = 8/3.
    auto h = helper_fg(1);
    EXPECT_DOUBLE_EQ(h.f_minus, 2.0 / 3);
    EXPECT_DOUBLE_EQ(h.f_plus, 14.0 / 3);
    EXPECT_DOUBLE_EQ(h.g_helper, 8.0 / 3);
    EXPECT_THROW(helper_fg(0.5), std::domain_error);
}

TEST(Helper, TendsToThree) {
    auto h = helper_fg(200);
    EXPECT_DOUBLE_EQ(h.f_minus, 3);
    EXPECT_DOUBLE_EQ(h.f_plus, 3);
    EXPECT_DOUBLE_EQ(h.g_helper, 3);
}

TEST(GValue, MatchesPinnedHighPrecisionValues) {
    for (const auto &c : kPinned) {
        auto p = point(c.n, c.t, c.n / 3);
        EXPECT_NEAR(g_value(p), c.g, 1e-9 * c.g) << "n=" << c.n << " t=" << c.t;
        EXPECT_NEAR(g_value_reference(p), c.g, 1e-9 * c.g) << "n=" << c.n << " t=" << c.t;
    }
}

TEST(GValue, VanishesInLocalizedPhase) {
    for (size_t n : {6u, 9u, 30u, 300u}) {
        const size_t n_F = n / 3;
        for (size_t t = 0; t <= n_F; t++) {
            EXPECT_EQ(g_value(point(n, t, n_F)), 0.0);
        }
    }
}

TEST(GValue, JustPastTransitionIsAboutTwoBits) {
    for (size_t n : {60u, 120u, 300u}) {
        const size_t n_F = n / 3;
        EXPECT_NEAR(g_value(point(n, n_F + 1, n_F)), 2.0, 0.04) << n;
    }
}

TEST(GValue, ExtendedAndReferencePathsAgree) {
    for (size_t n : {12u, 24u, 90u, 400u, 1200u}) {
        for (size_t n_F : {n / 6, n / 4, n / 3}) {
            for (size_t t = n_F + 1; t <= n; t += std::max<size_t>(1, n / 9)) {
                auto p = point(n, t, n_F);
                EXPECT_NEAR(g_value(p), g_value_reference(p), 1e-6) << n << " " << t << " " << n_F;
            }
        }
    }
}

TEST(GValue, StaysBelowCapacity) {
    for (size_t n : {9u, 30u, 60u, 240u}) {
        for (size_t n_F = 1; 2 * n_F < n; n_F += std::max<size_t>(1, n / 12)) {
            for (size_t t = 0; t <= n; t++) {
                EXPECT_LE(g_value(point(n, t, n_F)), static_cast<double>(n - n_F) + 1e-9);
            }
        }
    }
}

TEST(GValue, NonDecreasingInT) {
    for (size_t n : {30u, 60u}) {
        double prev = 0;
        for (size_t t = 0; t <= n; t++) {
            double g = g_value(point(n, t, n / 3));
            EXPECT_GE(g, prev - 1e-9) << t;
            prev = g;
        }
    }
}

TEST(GInfinity, ExamplesAndDomain) {
    EXPECT_DOUBLE_EQ(g_infinity(60, 1.0 / 3), 20.0);
    EXPECT_DOUBLE_EQ(g_infinity(10, 0.5), 0.0);
    EXPECT_THROW(g_infinity(10, 0.0), std::invalid_argument);
    EXPECT_THROW(g_infinity(10, 0.6), std::invalid_argument);
}

TEST(PhaseCurve, DefaultGridShapeAndValues) {
    auto grid = default_phase_grid();
    ASSERT_EQ(grid.size(), 61u);
    EXPECT_DOUBLE_EQ(grid.front(), 0.0);
    EXPECT_DOUBLE_EQ(grid.back(), 3.0);

    auto curve = phase_curve(60, 1.0 / 3, grid);
    ASSERT_EQ(curve.points.size(), 61u);
    for (const auto &pt : curve.points) {
        if (pt.t_over_f <= 1 + 1e-12) {
            EXPECT_EQ(pt.g_bits, 0.0);
        }
        EXPECT_GE(pt.g_ratio, 0.0);
        EXPECT_LE(pt.g_ratio, 1.0 + 1e-12);
        EXPECT_NEAR(pt.g_ratio, pt.g_bits / 20.0, 1e-15);
    }
    EXPECT_NEAR(curve.points.back().g_bits, 19.98400875452441, 1e-9);
}

TEST(PhaseCurve, RejectsInvalidInput) {
    auto grid = default_phase_grid();
    EXPECT_THROW(phase_curve(60, 0.5, grid), std::invalid_argument);
    EXPECT_THROW(phase_curve(60, 0.0, grid), std::invalid_argument);
    EXPECT_THROW(phase_curve(60, 1.0 / 3, {0.0, 0.5, 0.25}), std::invalid_argument);
    EXPECT_THROW(phase_curve(60, 1.0 / 3, {0.0, 3.5}), std::invalid_argument);
    EXPECT_THROW(phase_curve(60, 1.0 / 3, {-0.05, 0.0}), std::invalid_argument);
    EXPECT_THROW(phase_curve(60, 1.0 / 3, {0.0, 0.03}), std::invalid_argument);
}

TEST(PhaseCurve, CsvLayout) {
    auto curve = phase_curve(60, 1.0 / 3, {0.0, 1.5, 3.0});
    std::istringstream in(curve.to_csv());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "t_over_f,g_bits,g_ratio");
    size_t rows = 0;
    while (std::getline(in, line)) {
        EXPECT_EQ(std::count(line.begin(), line.end(), ','), 2);
        rows++;
    }
    EXPECT_EQ(rows, 3u);
    EXPECT_EQ(format_real(0.1), "0.10000000000000001");
    EXPECT_EQ(std::stod(format_real(1.0 / 3)), 1.0 / 3);
}

TEST(McExpectedSE, ZeroInLocalizedPhase) {
    for (size_t t : {0u, 1u, 2u, 3u}) {
        auto est = mc_expected_se(point(9, t, 3), 20, 5);
        EXPECT_GE(est.mean, -1e-9);
        EXPECT_LE(est.mean, 1e-9);
    }
}

TEST(McExpectedSE, WorkerCountDoesNotChangeResult) {
    auto p = point(8, 5, 2);
    auto a = mc_expected_se(p, 12, 3, 1);
    auto b = mc_expected_se(p, 12, 3, 3);
    EXPECT_EQ(a.mean, b.mean);
    EXPECT_EQ(a.std_error, b.std_error);
    EXPECT_GT(a.mean, 0.0);
}

TEST(McExpectedSE, EnforcesCaps) {
    EXPECT_THROW(mc_expected_se(point(13, 5, 4), 4, 0), std::invalid_argument);
    EXPECT_THROW(mc_expected_se({9, 0.3, 1.0 / 3}, 4, 0), std::invalid_argument);
}
