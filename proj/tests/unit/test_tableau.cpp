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

#include <boost/math/distributions/chi_squared.hpp>
#include <map>
#include <set>

#include "dense_oracle.hpp"
#include "stabcleanse/tableau.hpp"

using namespace stabcleanse;

namespace {

Circuit random_clifford_circuit(size_t n, size_t gates, Rng &rng) {
    Circuit c;
    for (size_t k = 0; k < gates; k++) {
        size_t a = uniform_below(rng, n);
        switch (uniform_below(rng, n > 1 ? 4 : 3)) {
            case 0:
                c.push_back(Gate::h(a));
                break;
            case 1:
                c.push_back(Gate::s(a));
                break;
            case 2:
                c.push_back(Gate::sdg(a));
                break;
            default: {
                size_t b = (a + 1 + uniform_below(rng, n - 1)) % n;
                c.push_back(Gate::cx(a, b));
            }
        }
    }
    return c;
}

double chi_square_p_value(const std::map<std::string, size_t> &counts, size_t classes, size_t samples) {
    double expected = static_cast<double>(samples) / static_cast<double>(classes);
    double stat = 0;
    for (const auto &[key, count] : counts) {
        stat += (count - expected) * (count - expected) / expected;
    }
    stat += expected * static_cast<double>(classes - counts.size());
    boost::math::chi_squared dist(static_cast<double>(classes - 1));
    return boost::math::cdf(boost::math::complement(dist, stat));
}

std::string symplectic_key(const CliffordTableau &t) {
    std::string key;
    for (size_t k = 0; k < t.num_qubits(); k++) {
        for (const auto *p : {&t.x_image(k), &t.z_image(k)}) {
            auto q = *p;
            q.set_phase(0);
            key += q.str();
        }
    }
    return key;
}

}  // namespace

TEST(tableau, hadamard_maps_zero_state_to_plus) {
    auto s = StabilizerMixedState::zero_state(1);
    s.apply_gate(Gate::h(0));
    EXPECT_EQ(s.generators()[0].str(), "+X");
}

TEST(tableau, bell_preparation) {
    auto s = StabilizerMixedState::zero_state(2);
    s.apply_gate(Gate::h(0));
    s.apply_gate(Gate::cx(0, 1));
    auto c = s.canonical();
    EXPECT_EQ(c.generators()[0].str(), "+XX");
    EXPECT_EQ(c.generators()[1].str(), "+ZZ");
    EXPECT_THROW(s.apply_gate(Gate::h(2)), std::out_of_range);
}

TEST(tableau, circuits_match_dense_conjugation) {
    Rng rng(21);
    for (int trial = 0; trial < 200; trial++) {
        size_t n = 1 + uniform_below(rng, 3);
        Circuit c = random_clifford_circuit(n, 10, rng);
        if (n > 1 && trial % 5 == 0) {
            std::vector<size_t> pi(n);
            for (size_t k = 0; k < n; k++) {
                pi[k] = (k + 1) % n;
            }
            c.push_back(Gate::perm(pi));
        }
        CliffordTableau t = tableau_of(c, n);
        ASSERT_TRUE(t.satisfies_invariants());
        oracle::Mat u = oracle::circuit_matrix(c, n);
        for (size_t k = 0; k < n; k++) {
            oracle::Mat x = u * oracle::pauli_matrix(PauliString::single(n, k, 'X')) * u.adjoint();
            oracle::Mat z = u * oracle::pauli_matrix(PauliString::single(n, k, 'Z')) * u.adjoint();
            EXPECT_LT((oracle::pauli_matrix(t.x_image(k)) - x).norm(), 1e-12);
            EXPECT_LT((oracle::pauli_matrix(t.z_image(k)) - z).norm(), 1e-12);
        }
        // Generators of C|0> stabilize the dense state.
        oracle::Vec psi = u * oracle::basis_zero(n);
        auto state = StabilizerMixedState::from_clifford(t);
        for (const auto &g : state.generators()) {
            EXPECT_LT((oracle::pauli_matrix(g) * psi - psi).norm(), 1e-12);
        }
    }
}

TEST(tableau, compose_and_inverse) {
    Rng rng(4);
    for (int trial = 0; trial < 100; trial++) {
        size_t n = 1 + uniform_below(rng, 12);
        auto a = random_clifford(n, rng), b = random_clifford(n, rng);
        auto ab = compose(a, b);
        EXPECT_TRUE(ab.satisfies_invariants());
        auto p = PauliString::from_str(std::string(n, 'Y'));
        EXPECT_EQ(ab(p), a(b(p)));
        EXPECT_EQ(compose(a, inverse(a)), CliffordTableau::identity(n));
        EXPECT_EQ(compose(inverse(a), a), CliffordTableau::identity(n));
        EXPECT_EQ(inverse(a)(a(p)), p);
    }
}

TEST(tableau, synthesis_reproduces_tableau) {
    Rng rng(8);
    for (int trial = 0; trial < 100; trial++) {
        size_t n = 1 + uniform_below(rng, 9);
        auto u = random_clifford(n, rng);
        Circuit c = synthesize(u);
        for (const auto &g : c) {
            EXPECT_TRUE(g.kind == GateKind::H || g.kind == GateKind::S || g.kind == GateKind::Sdg ||
                        g.kind == GateKind::CX);
        }
        EXPECT_EQ(tableau_of(c, n), u);
    }
}

TEST(tableau, random_clifford_determinism_and_invariants) {
    for (size_t n : {1, 2, 5, 33, 70}) {
        auto a = random_clifford(n, uint64_t{17});
        EXPECT_TRUE(a.satisfies_invariants());
        EXPECT_EQ(a, random_clifford(n, uint64_t{17}));
        EXPECT_NE(a, random_clifford(n, uint64_t{18}));
    }
    EXPECT_THROW(random_clifford(0, uint64_t{1}), std::invalid_argument);
}

TEST(tableau, random_clifford_uniform_one_qubit) {
    const size_t samples = 100000;
    Rng rng(2024);
    std::map<std::string, size_t> counts;
    for (size_t k = 0; k < samples; k++) {
        counts[random_clifford(1, rng).str()]++;
    }
    EXPECT_EQ(counts.size(), 24u);
    std::set<std::string> enumerated;
    for (const auto &c : enumerate_clifford_group(1)) {
        enumerated.insert(c.str());
    }
    for (const auto &[key, count] : counts) {
        EXPECT_TRUE(enumerated.count(key)) << key;
    }
    EXPECT_GT(chi_square_p_value(counts, 24, samples), 1e-3);
}

TEST(tableau, random_clifford_uniform_two_qubit_symplectic) {
    // 720 symplectic classes; signs are independent fair bits.
    const size_t samples = 100000;
    Rng rng(77);
    std::map<std::string, size_t> counts;
    for (size_t k = 0; k < samples; k++) {
        counts[symplectic_key(random_clifford(2, rng))]++;
    }
    EXPECT_EQ(counts.size(), 720u);
    EXPECT_GT(chi_square_p_value(counts, 720, samples), 1e-3);
}

TEST(tableau, permutation_clifford) {
    EXPECT_EQ(permutation_clifford({0, 1, 2}), CliffordTableau::identity(3));
    EXPECT_EQ(permutation_clifford({1, 0}), tableau_of({Gate::cx(0, 1), Gate::cx(1, 0), Gate::cx(0, 1)}, 2));
    std::vector<size_t> pi = {3, 0, 4, 1, 2};
    auto t = permutation_clifford(pi);
    auto z0 = PauliString::single(5, 0, 'Z');
    EXPECT_EQ(t(z0), PauliString::single(5, 3, 'Z'));
    EXPECT_THROW(permutation_clifford({0, 0}), std::invalid_argument);
}

TEST(tableau, group_order_and_enumeration) {
    // Order formula evaluated directly: 2^{n^2+2n} prod (4^j - 1).
    EXPECT_EQ(clifford_group_order(1), 8u * 3u);
    EXPECT_EQ(clifford_group_order(2), 256u * 3u * 15u);
    for (size_t n : {1, 2}) {
        auto all = enumerate_clifford_group(n);
        EXPECT_EQ(all.size(), clifford_group_order(n));
        std::set<std::string> distinct;
        for (const auto &c : all) {
            EXPECT_TRUE(c.satisfies_invariants());
            distinct.insert(c.str());
        }
        EXPECT_EQ(distinct.size(), all.size());
    }
    EXPECT_THROW(enumerate_clifford_group(3), std::invalid_argument);
}

TEST(tableau, one_design_average) {
    oracle::Mat avg = oracle::Mat::Zero(2, 2);
    auto all = enumerate_clifford_group(1);
    for (const auto &c : all) {
        avg += oracle::group_average(StabilizerMixedState::from_clifford(c).generators(), 1);
    }
    avg /= static_cast<double>(all.size());
    EXPECT_LT((avg - oracle::Mat::Identity(2, 2) / 2.0).norm(), 1e-15);
}

TEST(stabilizer_state, rejects_invalid_generators) {
    EXPECT_THROW(StabilizerMixedState(1, {PauliString::from_str("X"), PauliString::from_str("Z")}),
                 std::invalid_argument);
    EXPECT_THROW(StabilizerMixedState(2, {PauliString::from_str("ZZ"), PauliString::from_str("-ZZ")}),
                 std::invalid_argument);
    EXPECT_THROW(StabilizerMixedState(1, {PauliString::from_str("iZ")}), std::invalid_argument);
    EXPECT_THROW(StabilizerMixedState(2, {PauliString::from_str("Z")}), std::invalid_argument);
}

TEST(stabilizer_state, text_format_round_trip) {
    auto s = StabilizerMixedState::from_clifford(random_clifford(6, uint64_t{3}));
    auto text = s.str();
    EXPECT_EQ(text.rfind("STAB n=6 k=6\n", 0), 0u);
    EXPECT_EQ(StabilizerMixedState::parse(text), s);
    EXPECT_THROW(StabilizerMixedState::parse("STAB n=2 k=1\n+XYZ\n"), std::invalid_argument);
    EXPECT_THROW(StabilizerMixedState::parse("nonsense"), std::invalid_argument);
}

TEST(stabilizer_state, canonical_form_is_group_invariant) {
    Rng rng(13);
    for (int trial = 0; trial < 50; trial++) {
        size_t n = 1 + uniform_below(rng, 10);
        auto s = StabilizerMixedState::from_clifford(random_clifford(n, rng));
        // Multiply generators together randomly: same group, same canonical form.
        auto gens = s.generators();
        for (int k = 0; k < 20 && n > 1; k++) {
            size_t a = uniform_below(rng, n), b = uniform_below(rng, n);
            if (a != b) {
                gens[a] *= gens[b];
            }
        }
        EXPECT_EQ(StabilizerMixedState(n, gens).canonical(), s.canonical());
    }
}

TEST(stabilizer_state, partial_trace_examples) {
    auto bell = StabilizerMixedState::zero_state(2);
    bell.apply_circuit({Gate::h(0), Gate::cx(0, 1)});
    EXPECT_EQ(stab_partial_trace(bell, Region({0})).num_generators(), 0u);
    EXPECT_EQ(stab_marginal_purity(bell, Region({0})), Dyadic{-1});
    auto zz = stab_partial_trace(StabilizerMixedState::zero_state(2), Region({0}));
    ASSERT_EQ(zz.num_generators(), 1u);
    EXPECT_EQ(zz.generators()[0].str(), "+Z");

    auto ghz = StabilizerMixedState::zero_state(3);
    ghz.apply_circuit({Gate::h(0), Gate::cx(0, 1), Gate::cx(1, 2)});
    oracle::Mat rho = oracle::group_average(ghz.generators(), 3);
    oracle::Mat red = oracle::partial_trace(rho, 3, {0, 1});
    double dense = (red * red).trace().real();
    EXPECT_DOUBLE_EQ(stab_marginal_purity(ghz, Region({0, 1})).value(), dense);
    EXPECT_DOUBLE_EQ(dense, 0.5);
}

TEST(stabilizer_state, partial_trace_matches_dense) {
    Rng rng(99);
    for (int trial = 0; trial < 300; trial++) {
        size_t n = 1 + uniform_below(rng, 4);
        auto s = StabilizerMixedState::from_clifford(random_clifford(n, rng));
        // Occasionally start from a mixed state.
        if (n > 1 && random_bit(rng)) {
            s = stab_partial_trace(s, Region::range(0, n - 1));
            n -= 1;
        }
        std::vector<size_t> keep;
        for (size_t q = 0; q < n; q++) {
            if (random_bit(rng)) {
                keep.push_back(q);
            }
        }
        auto reduced = stab_partial_trace(s, Region(keep));
        oracle::Mat expect = oracle::partial_trace(oracle::group_average(s.generators(), n), n, keep);
        oracle::Mat got = oracle::group_average(reduced.generators(), keep.size());
        EXPECT_LT((expect - got).norm(), 1e-12);
        double dense_purity = (expect * expect).trace().real();
        EXPECT_DOUBLE_EQ(stab_marginal_purity(s, Region(keep)).value(), dense_purity);
    }
}

TEST(stabilizer_state, pure_state_marginals_agree) {
    Rng rng(1);
    for (int trial = 0; trial < 100; trial++) {
        size_t n = 2 + uniform_below(rng, 40);
        auto s = StabilizerMixedState::from_clifford(random_clifford(n, rng));
        size_t cut = 1 + uniform_below(rng, n - 1);
        EXPECT_EQ(stab_marginal_purity(s, Region::range(0, cut)), stab_marginal_purity(s, Region::range(cut, n)));
    }
}

TEST(stabilizer_state, product_states_have_unit_marginal_purity) {
    auto s = StabilizerMixedState::zero_state(5);
    s.apply_circuit({Gate::h(1), Gate::s(1), Gate::h(3)});
    EXPECT_EQ(stab_marginal_purity(s, Region({1, 2, 4})), Dyadic{0});
}
