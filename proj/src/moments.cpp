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

#include "stabcleanse/moments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stabcleanse/dense.hpp"
#include "stabcleanse/parallel.hpp"
#include "stabcleanse/rng.hpp"
#include "stabcleanse/tableau.hpp"

namespace stabcleanse {

Prop1Averages prop1_exact(double m_lin, size_t n, size_t n_E) {
    if (n_E < 1 || n_E > n) {
        throw std::invalid_argument("prop1_exact needs 1 <= n_E <= n");
    }
    const double d = std::ldexp(1.0, static_cast<int>(n));
    const double dE2 = std::ldexp(1.0, static_cast<int>(2 * n_E));
    const double denom = (d - 1) * (d + dE2);
    return {m_lin * (dE2 - 1) * d / denom, m_lin * (d * d - dE2) / denom};
}

boost::rational<int64_t> page_purity(int64_t d_E, int64_t d_F) {
    if (d_E < 1 || d_F < 1) {
        throw std::invalid_argument("page_purity needs positive dimensions");
    }
    return {d_E + d_F, d_E * d_F + 1};
}

MomentCoefficients moment_coefficients(double sp, double d) {
    const double a = (d + 1) * (d + 2) / 6;
    const double b = (d - 1) * (d + 1) * (d + 2) * (d + 4) / 24;
    const double beta = (1 - sp) / b;
    return {sp / a - beta, beta, d};
}

const std::vector<Perm4> &permutations_of_four() {
    static const std::vector<Perm4> all = [] {
        std::vector<Perm4> out;
        Perm4 p = {0, 1, 2, 3};
        do {
            out.push_back(p);
        } while (std::next_permutation(p.begin(), p.end()));
        return out;
    }();
    return all;
}

namespace {

// Cycle lengths of pi.
std::vector<int> cycle_lengths(const Perm4 &pi) {
    std::vector<int> lengths;
    std::array<bool, 4> seen{};
    for (int start = 0; start < 4; start++) {
        if (seen[start]) {
            continue;
        }
        int len = 0;
        for (int k = start; !seen[k]; k = pi[k]) {
            seen[k] = true;
            len++;
        }
        lengths.push_back(len);
    }
    return lengths;
}

}  // namespace

int cycle_count(const Perm4 &pi) {
    return static_cast<int>(cycle_lengths(pi).size());
}

double perm_trace(double d, const Perm4 &pi) {
    return std::pow(d, cycle_count(pi));
}

double q_perm_trace(double d, const Perm4 &pi) {
    // Each cycle contributes tr(P^len) = d * [len even or P = I]; summing over P
    // leaves d^2 choices when every cycle is even and only P = I otherwise.
    auto lengths = cycle_lengths(pi);
    bool all_even = std::all_of(lengths.begin(), lengths.end(), [](int l) { return l % 2 == 0; });
    int cycles = static_cast<int>(lengths.size());
    return std::pow(d, all_even ? cycles : cycles - 2);
}

double predicted_marginal_stab_purity(double sp, size_t n, size_t n_A) {
    if (n_A > n) {
        throw std::invalid_argument("region larger than system");
    }
    const double d = std::ldexp(1.0, static_cast<int>(n));
    const double dA = std::ldexp(1.0, static_cast<int>(n_A));
    const double dB = std::ldexp(1.0, static_cast<int>(n - n_A));
    auto c = moment_coefficients(sp, d);
    double q_part = 0, id_part = 0;
    for (const auto &pi : permutations_of_four()) {
        double qa = q_perm_trace(dA, pi);
        q_part += qa * q_perm_trace(dB, pi);
        id_part += qa * perm_trace(dB, pi);
    }
    return (c.alpha * q_part + c.beta * id_part) / 24;
}

McEstimate summarize(const std::vector<double> &values, uint64_t seed) {
    if (values.size() < 2) {
        throw std::invalid_argument("an estimate needs at least 2 samples");
    }
    double mean = 0;
    for (double v : values) {
        mean += v;
    }
    mean /= static_cast<double>(values.size());
    double ss = 0;
    for (double v : values) {
        ss += (v - mean) * (v - mean);
    }
    double var = ss / static_cast<double>(values.size() - 1);
    return {mean, std::sqrt(var / static_cast<double>(values.size())), values.size(), seed};
}

namespace {

constexpr size_t kMaxOrbitQubits = 10;
constexpr size_t kMaxOrbitRegion = 8;

void check_orbit_caps(const DenseState &psi, const Region &region) {
    if (psi.num_qubits() > kMaxOrbitQubits || region.size() > kMaxOrbitRegion) {
        throw std::invalid_argument("orbit estimators are limited to n <= 10 and |region| <= 8");
    }
    region.check_within(psi.num_qubits());
}

DensityMatrix random_orbit_marginal(const DenseState &psi, const Region &region, uint64_t seed, size_t index) {
    Rng rng = stream_rng(seed, index);
    DenseState rotated = psi;
    rotated.apply_clifford(random_clifford(psi.num_qubits(), rng));
    return reduced_density(rotated, region);
}

}  // namespace

McEstimate mc_orbit_mlin(const DenseState &psi, const Region &region, size_t samples, uint64_t seed,
                         unsigned workers) {
    check_orbit_caps(psi, region);
    auto values = parallel_map(samples, workers, [&](size_t i) {
        return se_report(random_orbit_marginal(psi, region, seed, i)).m_lin;
    });
    return summarize(values, seed);
}

McEstimate mc_orbit_purity(const DenseState &psi, const Region &region, size_t samples, uint64_t seed,
                           unsigned workers) {
    check_orbit_caps(psi, region);
    auto values = parallel_map(samples, workers, [&](size_t i) {
        return purity(random_orbit_marginal(psi, region, seed, i));
    });
    return summarize(values, seed);
}

OrbitLinearSE mc_orbit_linear_se(const DenseState &psi, const Region &region, size_t samples, uint64_t seed,
                                 unsigned workers) {
    check_orbit_caps(psi, region);
    if (samples < 2) {
        throw std::invalid_argument("an estimate needs at least 2 samples");
    }
    struct Sample {
        double sp = 0, pur = 0;
    };
    auto values = parallel_map(samples, workers, [&](size_t i) {
        auto rho = random_orbit_marginal(psi, region, seed, i);
        return Sample{stab_purity(rho), purity(rho)};
    });
    const double dA = std::ldexp(1.0, static_cast<int>(region.size()));
    const auto count = static_cast<double>(samples);
    double mean_sp = 0, mean_pur = 0;
    std::vector<double> ratios;
    for (const auto &v : values) {
        mean_sp += v.sp;
        mean_pur += v.pur;
        ratios.push_back(1 - dA * v.sp / v.pur);
    }
    mean_sp /= count;
    mean_pur /= count;
    const double r = mean_sp / mean_pur;
    double ss = 0;
    for (const auto &v : values) {
        const double resid = v.sp - r * v.pur;
        ss += resid * resid;
    }
    OrbitLinearSE out;
    out.ratio_of_averages = {1 - dA * r, dA * std::sqrt(ss / (count - 1) / count) / mean_pur, samples, seed};
    out.average_of_ratios = summarize(ratios, seed);
    return out;
}

OrbitAverages exhaustive_orbit(const DenseState &psi, const Region &region) {
    const size_t n = psi.num_qubits();
    region.check_within(n);
    const auto group = enumerate_clifford_group(n);
    const double dA = std::ldexp(1.0, static_cast<int>(region.size()));
    double sum_sp = 0, sum_pur = 0, sum_ratio = 0;
    for (const auto &c : group) {
        DenseState rotated = psi;
        rotated.apply_clifford(c);
        auto rho = reduced_density(rotated, region);
        double sp = stab_purity(rho), pur = purity(rho);
        sum_sp += sp;
        sum_pur += pur;
        sum_ratio += 1 - dA * sp / pur;
    }
    const auto count = static_cast<double>(group.size());
    OrbitAverages out{};
    out.mean_sp = sum_sp / count;
    out.mean_purity = sum_pur / count;
    out.ratio_of_averages = 1 - dA * out.mean_sp / out.mean_purity;
    out.average_of_ratios = sum_ratio / count;
    return out;
}

PurityFluctuation purity_fluctuation(size_t n, double f_fraction, size_t samples, uint64_t seed, unsigned workers) {
    if (!(f_fraction >= 0) || f_fraction >= 0.5) {
        throw std::invalid_argument("purity_fluctuation needs 0 <= f < 1/2");
    }
    const auto n_F = static_cast<size_t>(std::llround(f_fraction * static_cast<double>(n)));
    const Region F = Region::range(n - n_F, n);
    auto values = parallel_map(samples, workers, [&](size_t i) {
        Rng rng = stream_rng(seed, i);
        auto state = StabilizerMixedState::from_clifford(random_clifford(n, rng));
        return stab_marginal_purity(state, F).value();
    });
    PurityFluctuation out{};
    out.purity = summarize(values, seed);
    double ss = 0;
    for (double v : values) {
        ss += (v - out.purity.mean) * (v - out.purity.mean);
    }
    out.relative_error = std::sqrt(ss / static_cast<double>(values.size())) / out.purity.mean;
    out.bound = std::exp2(-static_cast<double>(n) * (1 - 2 * f_fraction) / 2);
    return out;
}

}  // namespace stabcleanse
