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


#include "stabcleanse/phase.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "stabcleanse/doped.hpp"
#include "stabcleanse/parallel.hpp"
#include "stabcleanse/rng.hpp"

namespace stabcleanse {

using BigFloat = boost::multiprecision::cpp_bin_float_100;

HelperValues helper_fg(double nt) {
    if (!(nt >= 1)) {
        throw std::domain_error("helper_fg needs n t >= 1");
    }
    // With x = 2^{nt}: f- = 3 - (3x+1)/(x^2-1), f+ = 3 + (3x-1)/(x^2-1),
    // g = 3 - 1/(x^2-1). Written in u = 1/x so large nt stays finite.
    const double u = std::exp2(-nt);
    const double q = 1 - u * u;
    return {3 - (3 * u + u * u) / q, 3 + (3 * u - u * u) / q, 3 - u * u / q};
}

namespace {

// F- = f-^{nt}, F+ = f+^{nt}, G = g^{nt}, and F- - F+ computed without cancellation.
template <typename T>
struct HelperPowers {
    T Fm, Fp, Gg, Dmp;
};

// The averaged ratio d_E SP / Pur after cleansing, as a rational function of
// d = 2^n, x = 2^{nt}, D = 4^{n_E} and the helper powers.
template <typename T>
T averaged_ratio(const T &d, const T &x, const T &D, const T &nt, const HelperPowers<T> &h) {
    const T &Fm = h.Fm, &Fp = h.Fp, &Gg = h.Gg, &Dmp = h.Dmp;
    const T x2 = x * x, x3 = x2 * x, x4 = x2 * x2, x6 = x4 * x2;
    const T d2 = d * d, d3 = d2 * d, d4 = d2 * d2;
    const T pre = 1 / (3 * (d + 2) * (d + 4) * (d + D) * (x2 - 9));
    const T a = 2 * D * x4 *
                (x * (3 * x2 * Fm + x3 * Fm - 10 * x * Fm - 24 * Fm + (x - 4) * (x - 2) * (x + 3) * Fp - 144 * x +
                      18 * x3) -
                 2 * (x4 - 13 * x2 + 36) * Gg);
    const T b = d2 * x2 *
                (x4 * (D * (Fm + Fp + 18) - 2 * (Fm + Fp - 2 * Gg)) -
                 2 * x2 * (D * (5 * Fm + 5 * Fp + 24 * Gg + 72) - 10 * Fm - 10 * Fp + 26 * Gg + 228) +
                 3 * (D - 2) * x3 * Dmp - 24 * (D - 2) * x * Dmp + 144 * (D + 1) * Gg + 36 * x6);
    const T c = d4 * (x * (24 * Dmp + x * (-3 * x * Dmp - x2 * (Fm + Fp + 72) + 2 * (5 * Fm + 5 * Fp + 72) +
                                           6 * x4)) +
                      48 * (x2 - 3) * Gg);
    const T e = 3 * d3 * x2 *
                (24 * (Fm + Fp) + x * (-3 * x * Fm - x2 * Fm + 10 * Fm + (x - 5) * (x + 2) * Fp - 60 * x + 2 * x4 * x));
    // The prefactor of this block carries the number of T gates t = n t.
    const T f = 3 * d * x4 * nt *
                (-10 * Dmp * D * x + Dmp * D * x3 - 24 * D * (Fm + Fp) + 3 * x2 * (D * (Fm + Fp - 20) - 48) +
                 2 * (3 * D + 8) * x4);
    return pre * (a + b + c + e + f) / (2 * x6);
}

struct PointData {
    double nt;
    double n_E2;  // 2 n_E = 2 n (1 - f)
};

// False in the localized phase; otherwise fills `out`.
bool delocalized(const PhasePoint &p, PointData &out) {
    if (!(p.f_density > 0 && p.f_density < 1) || !(p.t_density >= 0 && p.t_density <= 1)) {
        throw std::invalid_argument("g needs 0 < f < 1 and 0 <= t <= 1");
    }
    if (p.t_density <= p.f_density * (1 + 1e-12)) {
        return false;
    }
    const auto n = static_cast<double>(p.n);
    out.nt = n * p.t_density;
    out.n_E2 = 2 * n * (1 - p.f_density);
    if (out.nt < 1) {
        throw std::domain_error("g needs n t >= 1");
    }
    return true;
}

double g_bits_reference(size_t n, const PointData &pd) {
    using boost::multiprecision::pow;
    const BigFloat nt = pd.nt;
    const BigFloat d = ldexp(BigFloat(1), static_cast<int>(n));
    const BigFloat x = pow(BigFloat(2), nt);
    const BigFloat D = pow(BigFloat(2), BigFloat(pd.n_E2));
    const BigFloat x2 = x * x;
    const BigFloat fm = (3 * x2 - 3 * x - 4) / (x2 - 1);
    const BigFloat fp = (3 * x2 + 3 * x - 4) / (x2 - 1);
    const BigFloat gg = (3 * x2 - 4) / (x2 - 1);
    HelperPowers<BigFloat> h{pow(fm, nt), pow(fp, nt), pow(gg, nt), 0};
    h.Dmp = h.Fm - h.Fp;
    const BigFloat r = averaged_ratio(d, x, D, nt, h);
    if (!(r > 0)) {
        throw std::domain_error("g expression left its domain");
    }
    return -static_cast<double>(log2(r));
}

// Extended precision covers every term up to roughly 2^{15 n}.
constexpr size_t kExtendedMaxQubits = 1000;

double g_bits_extended(size_t n, const PointData &pd) {
    using L = long double;
    const L nt = pd.nt;
    const L u = std::exp2(-nt);
    const L q = 3 * (1 - u * u);
    const L l3 = nt * std::log(L(3));
    const L lfm = nt * std::log1p(-(3 * u + u * u) / q);
    const L lfp = nt * std::log1p((3 * u - u * u) / q);
    const L lg = nt * std::log1p(-u * u / q);
    HelperPowers<L> h{std::exp(l3 + lfm), std::exp(l3 + lfp), std::exp(l3 + lg), 0};
    h.Dmp = h.Fp * std::expm1(lfm - lfp);
    const L d = std::ldexp(L(1), static_cast<int>(n));
    const L x = std::exp2(nt);
    const L D = std::exp2(L(pd.n_E2));
    const L r = averaged_ratio(d, x, D, nt, h);
    if (!(r > 0) || !std::isfinite(r)) {
        throw std::domain_error("g expression left its domain");
    }
    return -static_cast<double>(std::log2(r));
}

}  // namespace

double g_value(const PhasePoint &p) {
    PointData pd{};
    if (!delocalized(p, pd)) {
        return 0;
    }
    return p.n <= kExtendedMaxQubits ? g_bits_extended(p.n, pd) : g_bits_reference(p.n, pd);
}

double g_value_reference(const PhasePoint &p) {
    PointData pd{};
    if (!delocalized(p, pd)) {
        return 0;
    }
    return g_bits_reference(p.n, pd);
}

double g_infinity(size_t n, double f_density) {
    if (!(f_density > 0 && f_density <= 0.5)) {
        throw std::invalid_argument("g_infinity needs 0 < f <= 1/2");
    }
    return static_cast<double>(n) * (1 - 2 * f_density);
}

std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string PhaseCurve::to_csv() const {
    std::string out = "t_over_f,g_bits,g_ratio\n";
    for (const auto &pt : points) {
        out += format_real(pt.t_over_f) + "," + format_real(pt.g_bits) + "," + format_real(pt.g_ratio) + "\n";
    }
    return out;
}

std::vector<double> default_phase_grid() {
    std::vector<double> grid;
    for (int k = 0; k <= 60; k++) {
        grid.push_back(k / 20.0);
    }
    return grid;
}

namespace {

bool is_integral(double v) {
    return std::abs(v - std::round(v)) <= 1e-9;
}

}  // namespace

PhaseCurve phase_curve(size_t n, double f_density, const std::vector<double> &grid) {
    if (!(f_density > 0 && f_density < 0.5)) {
        throw std::invalid_argument("phase_curve needs 0 < f < 1/2");
    }
    const double nf = static_cast<double>(n) * f_density;
    for (size_t i = 0; i < grid.size(); i++) {
        const double x = grid[i];
        if (!(x >= 0) || x > 1 / f_density + 1e-12) {
            throw std::invalid_argument("grid point " + format_real(x) + " lies outside [0, 1/f]");
        }
        if (i > 0 && !(x > grid[i - 1])) {
            throw std::invalid_argument("grid must be strictly increasing");
        }
        if (!is_integral(nf * x)) {
            throw std::invalid_argument("grid point " + format_real(x) + " gives a non-integer T count");
        }
    }
    PhaseCurve curve;
    curve.n = n;
    curve.f_density = f_density;
    const double g_inf = g_infinity(n, f_density);
    for (double x : grid) {
        const double t_density = std::min(1.0, std::round(nf * x) / static_cast<double>(n));
        const double g = g_value({n, t_density, f_density});
        curve.points.push_back({x, g, g / g_inf});
    }
    return curve;
}

McEstimate mc_expected_se(const PhasePoint &p, size_t samples, uint64_t seed, unsigned workers) {
    if (p.n > 12) {
        throw std::invalid_argument("mc_expected_se is limited to n <= 12");
    }
    const auto n = static_cast<double>(p.n);
    if (!is_integral(n * p.t_density) || !is_integral(n * p.f_density)) {
        throw std::invalid_argument("n t and n f must be integers");
    }
    const auto t = static_cast<size_t>(std::llround(n * p.t_density));
    auto values = parallel_map(samples, workers, [&](size_t i) {
        auto inst = build_doped_circuit(p.n, t, p.f_density, derive_seed(seed, i));
        return cleansed_se_E(inst.circuit, inst.partition);
    });
    return summarize(values, seed);
}

}  // namespace stabcleanse
