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


#include "stabcleanse/doped.hpp"

#include <cmath>
#include <cstdio>
#include <optional>
#include <stdexcept>

#include "json.hpp"
#include "stabcleanse/dense.hpp"

namespace stabcleanse {

Partition make_partition(size_t n, size_t t, double f_fraction) {
    if (t > n) {
        throw std::invalid_argument("t = " + std::to_string(t) + " exceeds n = " + std::to_string(n));
    }
    if (!(f_fraction >= 0 && f_fraction <= 1)) {
        throw std::invalid_argument("f_fraction must lie in [0, 1]");
    }
    const auto n_F = static_cast<size_t>(std::llround(f_fraction * static_cast<double>(n)));
    Partition p;
    p.E = Region::range(0, n - n_F);
    p.F = Region::range(n - n_F, n);
    if (t <= n_F) {
        p.Y = Region::range(n - t, n);
    } else {
        p.Y = Region::range(0, t - n_F).united(p.F);
    }
    return p;
}

Circuit random_inner_circuit(size_t t, Rng &rng) {
    Circuit c;
    for (size_t layer = 0; layer < t; layer++) {
        auto layer_gates = synthesize(random_clifford(t, rng));
        c.insert(c.end(), layer_gates.begin(), layer_gates.end());
        c.push_back(Gate::t(layer));
    }
    if (t > 0) {
        auto last = synthesize(random_clifford(t, rng));
        c.insert(c.end(), last.begin(), last.end());
    }
    return c;
}

namespace {

std::vector<size_t> placement(const Region &Y, size_t n) {
    std::vector<size_t> pi(Y.indices());
    for (size_t q : Y.complement(n)) {
        pi.push_back(q);
    }
    return pi;
}

}  // namespace

DopedInstance build_doped_circuit(size_t n, size_t t, double f_fraction, uint64_t seed) {
    DopedInstance out;
    out.partition = make_partition(n, t, f_fraction);
    DopedCircuit &c = out.circuit;
    c.n = n;
    c.t = t;
    c.f_fraction = f_fraction;
    c.seed = seed;
    Rng v_rng = stream_rng(seed, 0), d_rng = stream_rng(seed, 1), c_rng = stream_rng(seed, 2);
    c.parts.V = random_clifford(n, v_rng);
    c.parts.D = random_clifford(n, d_rng);
    c.parts.c_t = random_inner_circuit(t, c_rng);
    c.parts.Y = out.partition.Y;
    c.parts.pi_Y = placement(c.parts.Y, n);
    return out;
}

namespace {

// Symplectic form: 1 when a and b anticommute.
bool omega(const PauliString &a, const PauliString &b) {
    return !commutes(a, b);
}

PauliString bits_only(PauliString p) {
    p.set_phase(0);
    return p;
}

struct SymplecticPair {
    PauliString a;
    PauliString b;
};

// v + <v,b>a + <v,a>b over every pair: the part of v orthogonal to their span.
PauliString reduce(PauliString v, const std::vector<SymplecticPair> &pairs) {
    for (const auto &pr : pairs) {
        const bool with_b = omega(v, pr.b), with_a = omega(v, pr.a);
        if (with_b) {
            v *= pr.a;
        }
        if (with_a) {
            v *= pr.b;
        }
    }
    return bits_only(std::move(v));
}

// Some single-qubit Pauli, reduced against `pairs`, that anticommutes with v.
PauliString partner_for(const PauliString &v, const std::vector<SymplecticPair> &pairs, size_t n) {
    for (size_t q = 0; q < n; q++) {
        for (char kind : {'X', 'Z'}) {
            auto w = reduce(PauliString::single(n, q, kind), pairs);
            if (omega(v, w)) {
                return w;
            }
        }
    }
    throw std::logic_error("no symplectic partner found");
}

// Pauli rotation exp(-i pi/8 q) for a Hermitian t-qubit Pauli q != +-I, up to phase.
Circuit rotation_gates(const PauliString &q) {
    const size_t t = q.num_qubits();
    Circuit basis;
    size_t pivot = t;
    for (size_t k = 0; k < t; k++) {
        const char kind = q.pauli_at(k);
        if (kind == 'I') {
            continue;
        }
        if (kind == 'Y') {
            basis.push_back(Gate::sdg(k));
        }
        if (kind != 'Z') {
            basis.push_back(Gate::h(k));
        }
        if (pivot == t) {
            pivot = k;
        } else {
            basis.push_back(Gate::cx(k, pivot));
        }
    }
    if (pivot == t) {
        throw std::logic_error("rotation about the identity");
    }
    const auto image = tableau_of(basis, t)(q);
    if (bits_only(image) != PauliString::single(t, pivot, 'Z')) {
        throw std::logic_error("rotation basis change failed");
    }
    Circuit out = basis;
    out.push_back(image.phase() == 0 ? Gate::t(pivot) : Gate::tdg(pivot));
    Circuit undo = inverse(basis);
    out.insert(out.end(), undo.begin(), undo.end());
    return out;
}

}  // namespace

DopedInstance decompose_circuit(const Circuit &c, size_t n, double f_fraction) {
    for (const auto &g : c) {
        g.validate(n);
    }
    // Prefix Clifford B and the rotation axes P_j = B^dag (+-Z_q) B.
    CliffordTableau prefix = CliffordTableau::identity(n);
    std::vector<PauliString> axes;
    for (const auto &g : c) {
        if (g.is_clifford()) {
            prefix.apply_gate(g);
            continue;
        }
        PauliString z = PauliString::single(n, g.targets[0], 'Z');
        if (g.kind == GateKind::Tdg) {
            z.set_phase(2);
        }
        axes.push_back(inverse(prefix)(z));
    }
    const size_t t = axes.size();
    if (t > n) {
        throw std::invalid_argument("T count " + std::to_string(t) + " exceeds the qubit count");
    }

    // Symplectic basis whose first pairs span every axis.
    std::vector<SymplecticPair> pairs;
    for (size_t j = 0; j < t; j++) {
        auto v = reduce(axes[j], pairs);
        if (v.has_identity_support()) {
            continue;
        }
        std::optional<PauliString> w;
        for (size_t k = j + 1; k < t && !w; k++) {
            auto cand = reduce(axes[k], pairs);
            if (omega(v, cand)) {
                w = cand;
            }
        }
        pairs.push_back({v, w ? *w : partner_for(v, pairs, n)});
    }
    for (size_t q = 0; q < n && pairs.size() < n; q++) {
        for (char kind : {'X', 'Z'}) {
            auto v = reduce(PauliString::single(n, q, kind), pairs);
            if (!v.has_identity_support()) {
                pairs.push_back({v, partner_for(v, pairs, n)});
            }
        }
    }
    std::vector<PauliString> xs, zs;
    for (const auto &pr : pairs) {
        xs.push_back(pr.a);
        zs.push_back(pr.b);
    }
    const auto K = inverse(CliffordTableau::from_images(std::move(xs), std::move(zs)));

    DopedInstance out;
    out.partition = make_partition(n, t, f_fraction);
    DopedCircuit &dc = out.circuit;
    dc.n = n;
    dc.t = t;
    dc.f_fraction = f_fraction;
    dc.seed = 0;
    const Region inner = Region::range(0, t);
    for (const auto &axis : axes) {
        auto q = restrict_to(K(axis), inner);
        if (!q) {
            throw std::logic_error("rotation axis escaped the inner region");
        }
        auto gates = rotation_gates(*q);
        dc.parts.c_t.insert(dc.parts.c_t.end(), gates.begin(), gates.end());
    }
    // U = B K^dag c K = D^dag c D V with V = B and D = K B^dag.
    dc.parts.V = prefix;
    dc.parts.D = compose(K, inverse(prefix));
    dc.parts.Y = out.partition.Y;
    dc.parts.pi_Y = placement(dc.parts.Y, n);
    return out;
}

DopedCircuit replace_inner(const DopedCircuit &c, Circuit c_t) {
    if (c_t.size() > 0 && min_qubits(c_t) > c.t) {
        throw std::invalid_argument("inner circuit acts outside the first t qubits");
    }
    DopedCircuit out = c;
    out.parts.c_t = std::move(c_t);
    return out;
}

Circuit DopedCircuit::gates() const {
    Circuit out = synthesize(parts.V);
    Circuit d = synthesize(parts.D);
    out.insert(out.end(), d.begin(), d.end());
    out.insert(out.end(), parts.c_t.begin(), parts.c_t.end());
    Circuit d_inv = inverse(d);
    out.insert(out.end(), d_inv.begin(), d_inv.end());
    return out;
}

CleanseOutput cleanse(const DopedCircuit &c) {
    const size_t n = c.n;
    CleanseOutput out;
    out.W = compose(permutation_clifford(c.parts.pi_Y), c.parts.D);
    const auto phi = StabilizerMixedState::from_clifford(compose(out.W, c.parts.V));
    const Region ybar = c.parts.Y.complement(n);
    out.phi_bar = stab_partial_trace(phi, ybar);
    std::vector<PauliString> embedded;
    embedded.reserve(out.phi_bar.num_generators());
    for (const auto &g : out.phi_bar.generators()) {
        embedded.push_back(embed(g, ybar, n));
    }
    out.rho = StabilizerMixedState(n, std::move(embedded)).conjugated_by(inverse(out.W));
    return out;
}

DenseState doped_state(const DopedCircuit &c) {
    if (c.n > kMaxStateQubits) {
        throw std::invalid_argument("dense simulation is limited to 14 qubits");
    }
    return simulate(c.gates(), c.n);
}

double cleansed_se_E(const DopedCircuit &c, const Partition &p) {
    if (c.n > kMaxStateQubits || p.E.size() > kMaxDensityQubits) {
        throw std::invalid_argument("cleansed_se_E is limited to n <= 14 and |E| <= 10");
    }
    if (c.t == 0) {
        return 0;
    }
    DenseState psi = doped_state(c);
    psi.apply_clifford(compose(permutation_clifford(c.parts.pi_Y), c.parts.D));
    return se_report(reduced_density(psi, p.E)).m2;
}

uint64_t fnv1a(const std::string &text) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

namespace {

std::string hex64(uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace

std::string sidecar_json(const DopedCircuit &c, const Partition &p) {
    nlohmann::ordered_json j;
    j["n"] = c.n;
    j["t"] = c.t;
    j["f_fraction"] = c.f_fraction;
    j["nE"] = p.E.size();
    j["seed"] = c.seed;
    j["Y"] = c.parts.Y.indices();
    j["hashes"] = {{"V", hex64(fnv1a(c.parts.V.str()))},
                   {"D", hex64(fnv1a(c.parts.D.str()))},
                   {"c_t", hex64(fnv1a(format_circuit(c.parts.c_t)))}};
    return j.dump(2) + "\n";
}

}  // namespace stabcleanse
