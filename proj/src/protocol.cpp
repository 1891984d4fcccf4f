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


#include "stabcleanse/protocol.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "stabcleanse/dense.hpp"
#include "stabcleanse/phase.hpp"
#include "stabcleanse/rng.hpp"

namespace stabcleanse {

std::string BoundsReport::to_json() const {
    nlohmann::ordered_json j;
    j["n"] = n;
    j["t"] = t;
    j["nE"] = n_E;
    j["lower_E"] = {{"k", lower_E.log2}};
    j["lower_F"] = {{"k", lower_F.log2}};
    j["upper_factor_log2"] = upper_factor_log2;
    if (true_purity) {
        j["true_purity"] = *true_purity;
    }
    j["alpha_window"] = {alpha_min, alpha_max};
    return j.dump(2) + "\n";
}

BoundsReport purity_bounds(const DopedCircuit &c, const Partition &p) {
    const auto proxy = cleanse(c);
    BoundsReport r;
    r.n = c.n;
    r.t = c.t;
    r.n_E = p.E.size();
    r.lower_E = stab_marginal_purity(proxy.rho, p.E);
    r.lower_F = stab_marginal_purity(proxy.rho, p.F);
    r.upper_factor_log2 = 2 * static_cast<int64_t>(c.t);
    if (c.n <= kMaxStateQubits) {
        const DenseState psi = doped_state(c);
        // Pur(psi_E) = Pur(psi_F) for a pure state; reduce on the smaller side.
        const Region &side = p.E.size() <= p.F.size() ? p.E : p.F;
        r.true_purity = purity(reduced_density(psi, side));
    }
    if (c.n > 0) {
        const auto n = static_cast<double>(c.n);
        r.alpha_min = -static_cast<double>(r.upper().log2) / n;
        r.alpha_max = -static_cast<double>(r.lower().log2) / n;
    }
    return r;
}

AlphaEstimate estimate_alpha(const BoundsReport &report, size_t n) {
    if (n == 0 || report.n != n) {
        throw std::invalid_argument("estimate_alpha needs the report's qubit count");
    }
    const auto nd = static_cast<double>(n);
    const double point = -static_cast<double>(report.lower().log2) / nd;
    return {point, -static_cast<double>(report.upper().log2) / nd, point};
}

SwapTestResult swap_test_with_purity(double purity, uint64_t shots, uint64_t seed) {
    if (shots == 0) {
        throw std::invalid_argument("swap test needs at least one shot");
    }
    if (!(purity >= 0 && purity <= 1 + 1e-9)) {
        throw std::invalid_argument("purity must lie in [0, 1]");
    }
    const double accept = (1 + purity) / 2;
    Rng rng = stream_rng(seed, 0);
    SwapTestResult r;
    r.shots = shots;
    r.seed = seed;
    for (uint64_t s = 0; s < shots; s++) {
        r.accept_count += uniform01(rng) < accept;
    }
    r.estimate = 2 * static_cast<double>(r.accept_count) / static_cast<double>(shots) - 1;
    r.estimate_clamped = std::clamp(r.estimate, 0.0, 1.0);
    return r;
}

SwapTestResult swap_test(const DensityMatrix &rho, uint64_t shots, uint64_t seed) {
    return swap_test_with_purity(purity(rho), shots, seed);
}

uint64_t shots_needed(double purity, double epsilon) {
    if (!(purity > 0 && purity <= 1 + 1e-9) || !(epsilon > 0)) {
        throw std::invalid_argument("shots_needed needs 0 < Pur <= 1 and epsilon > 0");
    }
    const double p = std::min(purity, 1.0);
    const double shots = std::ceil((1 - p * p) / (epsilon * epsilon * p * p));
    return std::max<uint64_t>(1, static_cast<uint64_t>(shots));
}

uint64_t measured_shots_to_epsilon(double purity, double epsilon, size_t repetitions, uint64_t seed) {
    if (repetitions == 0 || !(purity > 0) || !(epsilon > 0)) {
        throw std::invalid_argument("measured_shots_to_epsilon needs positive inputs");
    }
    uint64_t previous = 0;
    for (int k = 0; k < 160; k++) {
        const auto shots = static_cast<uint64_t>(std::llround(std::exp2(k / 4.0)));
        if (shots == previous) {
            continue;
        }
        previous = shots;
        double ss = 0;
        for (size_t r = 0; r < repetitions; r++) {
            const double e = swap_test_with_purity(purity, shots, derive_seed(seed, k * repetitions + r)).estimate;
            ss += (e - purity) * (e - purity);
        }
        if (std::sqrt(ss / static_cast<double>(repetitions)) <= epsilon * purity) {
            return shots;
        }
    }
    throw std::runtime_error("shot grid exhausted before reaching epsilon");
}

std::vector<ComparisonRow> resource_comparison(const DopedCircuit &c, const Partition &p, double epsilon_target) {
    const auto report = purity_bounds(c, p);
    const double pur = report.true_purity.value_or(report.lower().value());
    const auto proxy = cleanse(c);
    EliminationStats stats;
    stab_partial_trace(proxy.rho, p.E, stats);
    stab_partial_trace(proxy.rho, p.F, stats);
    return {
        {"swap-test", "shots", static_cast<double>(shots_needed(pur, epsilon_target)), epsilon_target},
        {"stabilizer-proxy", "word_ops", static_cast<double>(stats.word_ops), 0.0},
    };
}

std::string comparison_to_csv(const std::vector<ComparisonRow> &rows) {
    std::string out = "method,cost_metric,cost_value,error\n";
    for (const auto &r : rows) {
        out += r.method + "," + r.cost_metric + "," + format_real(r.cost_value) + "," + format_real(r.error) + "\n";
    }
    return out;
}

std::vector<ComparisonRow> comparison_from_csv(const std::string &csv) {
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line) || line != "method,cost_metric,cost_value,error") {
        throw std::invalid_argument("missing comparison header");
    }
    std::vector<ComparisonRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> cells;
        std::istringstream fields(line);
        for (std::string cell; std::getline(fields, cell, ',');) {
            cells.push_back(cell);
        }
        if (cells.size() != 4) {
            throw std::invalid_argument("comparison row needs 4 fields: " + line);
        }
        rows.push_back({cells[0], cells[1], std::strtod(cells[2].c_str(), nullptr),
                        std::strtod(cells[3].c_str(), nullptr)});
    }
    return rows;
}

namespace {

constexpr size_t kMaxLambdaQubits = 8;

// P|c> = phase (-1)^{|c & z|} |c ^ x> for the Hermitian Pauli p.
struct PauliAction {
    uint64_t x = 0;
    uint64_t z = 0;
    Complex phase = 1;
};

PauliAction action_of(const PauliString &p) {
    static const Complex powers[4] = {1, Complex(0, 1), -1, Complex(0, -1)};
    PauliAction a;
    int ys = 0;
    for (size_t q = 0; q < p.num_qubits(); q++) {
        a.x |= uint64_t{p.x(q)} << q;
        a.z |= uint64_t{p.z(q)} << q;
        ys += p.x(q) && p.z(q);
    }
    a.phase = powers[(p.phase() + ys) & 3];
    return a;
}

uint64_t scatter(uint64_t value, const Region &qubits) {
    uint64_t out = 0;
    for (size_t k = 0; k < qubits.size(); k++) {
        out |= ((value >> k) & 1) << qubits[k];
    }
    return out;
}

// Sum over Paulis P on `region` of tr_Ybar[(tr_Y(W P W^dag sigma))^2].
double lambda_sum(const Eigen::MatrixXcd &sigma, const CliffordTableau &W, const Region &region,
                  const Region &Y, const Region &ybar, size_t n) {
    const size_t dim = size_t{1} << n;
    const size_t dy = size_t{1} << Y.size();
    const size_t dbar = size_t{1} << ybar.size();
    const uint64_t count = uint64_t{1} << (2 * region.size());
    double total = 0;
    Eigen::MatrixXcd m(dim, dim);
    Eigen::MatrixXcd r(dbar, dbar);
    for (uint64_t code = 0; code < count; code++) {
        PauliString local(region.size());
        for (size_t k = 0; k < region.size(); k++) {
            local.set_x(k, (code >> (2 * k)) & 1);
            local.set_z(k, (code >> (2 * k + 1)) & 1);
        }
        const auto a = action_of(W(embed(local, region, n)));
        for (size_t c = 0; c < dim; c++) {
            const double sign = (std::popcount(c & a.z) & 1) ? -1.0 : 1.0;
            m.row(c ^ a.x) = (a.phase * sign) * sigma.row(c);
        }
        r.setZero();
        for (size_t i = 0; i < dbar; i++) {
            for (size_t j = 0; j < dbar; j++) {
                Complex acc = 0;
                for (size_t y = 0; y < dy; y++) {
                    const uint64_t yy = scatter(y, Y);
                    acc += m(scatter(i, ybar) | yy, scatter(j, ybar) | yy);
                }
                r(i, j) = acc;
            }
        }
        total += (r * r).trace().real();
    }
    return total;
}

}  // namespace

LambdaReport lambda_diagnostic(const DopedCircuit &c, const Partition &p) {
    if (c.n > kMaxLambdaQubits) {
        throw std::invalid_argument("lambda_diagnostic is limited to n <= 8");
    }
    if (c.t == 0) {
        throw std::invalid_argument("lambda_diagnostic needs t >= 1");
    }
    const size_t n = c.n;
    const auto proxy = cleanse(c);
    const Region &Y = c.parts.Y;
    const Region ybar = Y.complement(n);

    // sigma = Phi_Ybar (x) I_Y with Phi = W V |0>.
    DenseState phi(n);
    phi.apply_clifford(compose(proxy.W, c.parts.V));
    const auto phi_bar = partial_trace(DensityMatrix::from_state(phi), ybar).matrix();
    const size_t dim = size_t{1} << n;
    Eigen::MatrixXcd sigma = Eigen::MatrixXcd::Zero(dim, dim);
    const size_t dy = size_t{1} << Y.size();
    for (size_t i = 0; i < static_cast<size_t>(phi_bar.rows()); i++) {
        for (size_t j = 0; j < static_cast<size_t>(phi_bar.cols()); j++) {
            for (size_t y = 0; y < dy; y++) {
                const uint64_t yy = scatter(y, Y);
                sigma(scatter(i, ybar) | yy, scatter(j, ybar) | yy) = phi_bar(i, j);
            }
        }
    }

    const double d_Y = std::ldexp(1.0, static_cast<int>(Y.size()));
    const double norm = d_Y * (d_Y * d_Y - 1);
    const double d_E = std::ldexp(1.0, static_cast<int>(p.E.size()));
    const double d_F = std::ldexp(1.0, static_cast<int>(p.F.size()));
    LambdaReport out{};
    out.lambda1 = lambda_sum(sigma, proxy.W, p.E, Y, ybar, n) / (d_E * norm);
    out.lambda2 = lambda_sum(sigma, proxy.W, p.F, Y, ybar, n) / (d_F * norm);
    const double factor = d_Y / (d_Y * d_Y - 1);
    out.expected1 = factor * stab_marginal_purity(proxy.rho, p.F).value();
    out.expected2 = factor * stab_marginal_purity(proxy.rho, p.E).value();
    out.check1 = std::abs(out.lambda1 - out.expected1) <= 1e-9;
    out.check2 = std::abs(out.lambda2 - out.expected2) <= 1e-9;
    return out;
}

}  // namespace stabcleanse
