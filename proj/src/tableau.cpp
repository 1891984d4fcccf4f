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

#include "stabcleanse/tableau.hpp"

#include <cmath>
#include <cstdio>
#include <optional>
#include <stdexcept>

namespace stabcleanse {

namespace {

void conjugate_by_gate(PauliString &p, const Gate &g) {
    switch (g.kind) {
        case GateKind::H:
            conjugate_h(p, g.targets[0]);
            break;
        case GateKind::S:
            conjugate_s(p, g.targets[0]);
            break;
        case GateKind::Sdg:
            conjugate_sdg(p, g.targets[0]);
            break;
        case GateKind::CX:
            conjugate_cx(p, g.targets[0], g.targets[1]);
            break;
        case GateKind::Perm:
            conjugate_permutation(p, g.targets);
            break;
        case GateKind::T:
        case GateKind::Tdg:
            throw std::invalid_argument("T gates have no tableau representation");
    }
}

}  // namespace

// -------------------------------------------------------- CliffordTableau

CliffordTableau CliffordTableau::identity(size_t n) {
    CliffordTableau t;
    for (size_t k = 0; k < n; k++) {
        t.xs_.push_back(PauliString::single(n, k, 'X'));
        t.zs_.push_back(PauliString::single(n, k, 'Z'));
    }
    return t;
}

CliffordTableau CliffordTableau::from_images(std::vector<PauliString> x_images, std::vector<PauliString> z_images) {
    CliffordTableau t;
    t.xs_ = std::move(x_images);
    t.zs_ = std::move(z_images);
    if (!t.satisfies_invariants()) {
        throw std::invalid_argument("images do not define a Clifford tableau");
    }
    return t;
}

CliffordTableau CliffordTableau::from_images_unchecked(std::vector<PauliString> x_images,
                                                      std::vector<PauliString> z_images) {
    CliffordTableau t;
    t.xs_ = std::move(x_images);
    t.zs_ = std::move(z_images);
    return t;
}

PauliString CliffordTableau::operator()(const PauliString &p) const {
    size_t n = num_qubits();
    if (p.num_qubits() != n) {
        throw std::invalid_argument("Pauli size does not match tableau");
    }
    // p = i^{phase + #Y} prod_k X_k^{x_k} Z_k^{z_k}; map each factor to its image.
    PauliString result(n);
    int ys = 0;
    for (size_t k = 0; k < n; k++) {
        bool x = p.x(k), z = p.z(k);
        if (x) {
            result *= xs_[k];
        }
        if (z) {
            result *= zs_[k];
        }
        ys += x && z;
    }
    result.add_phase(p.phase() + ys);
    return result;
}

void CliffordTableau::apply_gate(const Gate &g) {
    g.validate(num_qubits());
    for (auto &p : xs_) {
        conjugate_by_gate(p, g);
    }
    for (auto &p : zs_) {
        conjugate_by_gate(p, g);
    }
}

void CliffordTableau::apply_circuit(const Circuit &c) {
    for (const auto &g : c) {
        apply_gate(g);
    }
}

BitMatrix CliffordTableau::symplectic_matrix() const {
    size_t n = num_qubits();
    BitMatrix m(2 * n, 2 * n);
    for (size_t r = 0; r < n; r++) {
        for (size_t c = 0; c < n; c++) {
            m.set(r, c, xs_[r].x(c));
            m.set(r, c + n, xs_[r].z(c));
            m.set(r + n, c, zs_[r].x(c));
            m.set(r + n, c + n, zs_[r].z(c));
        }
    }
    return m;
}

bool CliffordTableau::satisfies_invariants() const {
    size_t n = xs_.size();
    if (zs_.size() != n) {
        return false;
    }
    for (size_t a = 0; a < n; a++) {
        if (xs_[a].num_qubits() != n || zs_[a].num_qubits() != n) {
            return false;
        }
        if (!xs_[a].is_hermitian() || !zs_[a].is_hermitian()) {
            return false;
        }
    }
    for (size_t a = 0; a < n; a++) {
        for (size_t b = 0; b < n; b++) {
            if (commutes(xs_[a], zs_[b]) == (a == b)) {
                return false;
            }
            if (b > a && (!commutes(xs_[a], xs_[b]) || !commutes(zs_[a], zs_[b]))) {
                return false;
            }
        }
    }
    return true;
}

std::string CliffordTableau::str() const {
    std::string out;
    for (size_t k = 0; k < xs_.size(); k++) {
        out += "X" + std::to_string(k) + " -> " + xs_[k].str() + "\n";
        out += "Z" + std::to_string(k) + " -> " + zs_[k].str() + "\n";
    }
    return out;
}

CliffordTableau compose(const CliffordTableau &outer, const CliffordTableau &inner) {
    size_t n = inner.num_qubits();
    if (outer.num_qubits() != n) {
        throw std::invalid_argument("compose: size mismatch");
    }
    std::vector<PauliString> xs, zs;
    xs.reserve(n);
    zs.reserve(n);
    for (size_t k = 0; k < n; k++) {
        xs.push_back(outer(inner.x_image(k)));
        zs.push_back(outer(inner.z_image(k)));
    }
    return CliffordTableau::from_images_unchecked(std::move(xs), std::move(zs));
}

CliffordTableau inverse(const CliffordTableau &u) {
    // The symplectic inverse is Omega M^T Omega; signs are fixed afterwards by
    // requiring u(inverse image of X_k) = +X_k.
    size_t n = u.num_qubits();
    BitMatrix m = u.symplectic_matrix();
    auto flip = [n](size_t i) { return i < n ? i + n : i - n; };
    std::vector<PauliString> xs(n, PauliString(n)), zs(n, PauliString(n));
    for (size_t a = 0; a < 2 * n; a++) {
        PauliString &row = a < n ? xs[a] : zs[a - n];
        for (size_t b = 0; b < 2 * n; b++) {
            if (m.get(flip(b), flip(a))) {
                if (b < n) {
                    row.set_x(b, true);
                } else {
                    row.set_z(b - n, true);
                }
            }
        }
    }
    for (size_t k = 0; k < n; k++) {
        if (u(xs[k]).phase() == 2) {
            xs[k].set_phase(2);
        }
        if (u(zs[k]).phase() == 2) {
            zs[k].set_phase(2);
        }
    }
    return CliffordTableau::from_images_unchecked(std::move(xs), std::move(zs));
}

CliffordTableau tableau_of(const Circuit &c, size_t n) {
    CliffordTableau t = CliffordTableau::identity(n);
    t.apply_circuit(c);
    return t;
}

// ------------------------------------------------------ random sampling

namespace {

// Hadamard layer and permutation drawn from the quantum Mallows distribution
// (Bravyi & Maslov, "Hadamard-free circuits expose the structure of the
// Clifford group").
void sample_quantum_mallows(size_t n, Rng &rng, std::vector<bool> &hadamard, std::vector<size_t> &perm) {
    std::vector<size_t> remaining;
    for (size_t k = 0; k < n; k++) {
        remaining.push_back(k);
    }
    hadamard.clear();
    perm.clear();
    for (size_t i = 0; i < n; i++) {
        size_t m = remaining.size();
        double u = uniform01(rng);
        double eps = std::pow(4.0, -static_cast<double>(m));
        auto k = static_cast<size_t>(-std::ceil(std::log2(u + (1 - u) * eps)));
        if (k >= 2 * m) {
            k = 2 * m - 1;
        }
        hadamard.push_back(k < m);
        if (k >= m) {
            k = 2 * m - k - 1;
        }
        perm.push_back(remaining[k]);
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(k));
    }
}

BitMatrix from_quadrants(
    size_t n, const BitMatrix &ul, const BitMatrix &ur, const BitMatrix &ll, const BitMatrix &lr) {
    BitMatrix out(2 * n, 2 * n);
    for (size_t r = 0; r < n; r++) {
        for (size_t c = 0; c < n; c++) {
            out.set(r, c, ul.get(r, c));
            out.set(r, c + n, ur.get(r, c));
            out.set(r + n, c, ll.get(r, c));
            out.set(r + n, c + n, lr.get(r, c));
        }
    }
    return out;
}

}  // namespace

CliffordTableau random_clifford(size_t n, Rng &rng) {
    if (n == 0) {
        throw std::invalid_argument("random_clifford: n must be >= 1");
    }
    std::vector<bool> had;
    std::vector<size_t> perm;
    sample_quantum_mallows(n, rng, had, perm);

    BitMatrix gamma(n, n), gamma_m(n, n);
    BitMatrix delta = BitMatrix::identity(n), delta_m = BitMatrix::identity(n);
    for (size_t r = 0; r < n; r++) {
        for (size_t c = 0; c <= r; c++) {
            bool b = random_bit(rng);
            gamma.set(r, c, b);
            gamma.set(c, r, b);
        }
    }
    for (size_t r = 0; r < n; r++) {
        for (size_t c = 0; c <= r; c++) {
            bool b = random_bit(rng);
            bool allowed;
            if (c == r) {
                allowed = had[r];
            } else {
                allowed = (had[r] && had[c]) || (had[r] && !had[c] && perm[r] < perm[c]) ||
                          (!had[r] && had[c] && perm[r] > perm[c]);
            }
            gamma_m.set(r, c, b && allowed);
            gamma_m.set(c, r, b && allowed);
        }
    }
    for (size_t r = 0; r < n; r++) {
        for (size_t c = 0; c < r; c++) {
            delta.set(r, c, random_bit(rng));
        }
    }
    for (size_t r = 0; r < n; r++) {
        for (size_t c = 0; c < r; c++) {
            bool b = random_bit(rng);
            bool allowed = (!had[r] && had[c]) || (had[r] && had[c] && perm[r] > perm[c]) ||
                           (!had[r] && !had[c] && perm[r] < perm[c]);
            delta_m.set(r, c, b && allowed);
        }
    }

    BitMatrix zero(n, n);
    BitMatrix fused = from_quadrants(n, delta, zero, gamma * delta, delta.inverse_unit_lower().transposed());
    BitMatrix fused_m = from_quadrants(n, delta_m, zero, gamma_m * delta_m, delta_m.inverse_unit_lower().transposed());

    BitMatrix mid(2 * n, 2 * n);
    for (size_t r = 0; r < n; r++) {
        size_t src_top = had[r] ? perm[r] + n : perm[r];
        size_t src_bot = had[r] ? perm[r] : perm[r] + n;
        for (size_t c = 0; c < 2 * n; c++) {
            mid.set(r, c, fused.get(src_top, c));
            mid.set(r + n, c, fused.get(src_bot, c));
        }
    }
    BitMatrix sym = fused_m * mid;

    std::vector<PauliString> xs(n, PauliString(n)), zs(n, PauliString(n));
    for (size_t r = 0; r < n; r++) {
        for (size_t c = 0; c < n; c++) {
            xs[r].set_x(c, sym.get(r, c));
            xs[r].set_z(c, sym.get(r, c + n));
            zs[r].set_x(c, sym.get(r + n, c));
            zs[r].set_z(c, sym.get(r + n, c + n));
        }
    }
    for (size_t r = 0; r < n; r++) {
        xs[r].set_phase(random_bit(rng) ? 2 : 0);
        zs[r].set_phase(random_bit(rng) ? 2 : 0);
    }
    return CliffordTableau::from_images_unchecked(std::move(xs), std::move(zs));
}

CliffordTableau random_clifford(size_t n, uint64_t seed) {
    Rng rng(seed);
    return random_clifford(n, rng);
}

CliffordTableau permutation_clifford(const std::vector<size_t> &pi) {
    check_permutation(pi);
    size_t n = pi.size();
    std::vector<PauliString> xs, zs;
    for (size_t k = 0; k < n; k++) {
        xs.push_back(PauliString::single(n, pi[k], 'X'));
        zs.push_back(PauliString::single(n, pi[k], 'Z'));
    }
    return CliffordTableau::from_images_unchecked(std::move(xs), std::move(zs));
}

uint64_t clifford_group_order(size_t n) {
    uint64_t order = uint64_t{1} << (n * n + 2 * n);
    for (size_t j = 1; j <= n; j++) {
        order *= (uint64_t{1} << (2 * j)) - 1;
    }
    return order;
}

std::vector<CliffordTableau> enumerate_clifford_group(size_t n) {
    if (n == 0 || n > 2) {
        throw std::invalid_argument("enumerate_clifford_group supports n in {1, 2}");
    }
    // Candidate images: all non-identity Hermitian Paulis (bit patterns only).
    std::vector<PauliString> candidates;
    for (uint32_t bits = 1; bits < (1u << (2 * n)); bits++) {
        PauliString p(n);
        for (size_t q = 0; q < n; q++) {
            p.set_x(q, (bits >> q) & 1);
            p.set_z(q, (bits >> (q + n)) & 1);
        }
        candidates.push_back(p);
    }
    // Depth-first choice of images X_0, Z_0, X_1, Z_1, ... obeying the commutation relations.
    std::vector<std::vector<PauliString>> symplectic;
    std::vector<PauliString> chosen;
    auto consistent = [&](const PauliString &p, size_t slot) {
        size_t qubit = slot / 2;
        bool is_z = slot % 2;
        for (size_t prev = 0; prev < chosen.size(); prev++) {
            size_t pq = prev / 2;
            bool p_is_z = prev % 2;
            bool should_anticommute = pq == qubit && p_is_z != is_z;
            if (commutes(p, chosen[prev]) == should_anticommute) {
                return false;
            }
        }
        return true;
    };
    auto recurse = [&](auto &self, size_t slot) -> void {
        if (slot == 2 * n) {
            symplectic.push_back(chosen);
            return;
        }
        for (const auto &p : candidates) {
            if (consistent(p, slot)) {
                chosen.push_back(p);
                self(self, slot + 1);
                chosen.pop_back();
            }
        }
    };
    recurse(recurse, 0);

    std::vector<CliffordTableau> out;
    out.reserve(symplectic.size() << (2 * n));
    for (const auto &images : symplectic) {
        for (uint32_t signs = 0; signs < (1u << (2 * n)); signs++) {
            std::vector<PauliString> xs, zs;
            for (size_t q = 0; q < n; q++) {
                PauliString x = images[2 * q], z = images[2 * q + 1];
                x.set_phase(((signs >> (2 * q)) & 1) ? 2 : 0);
                z.set_phase(((signs >> (2 * q + 1)) & 1) ? 2 : 0);
                xs.push_back(x);
                zs.push_back(z);
            }
            out.push_back(CliffordTableau::from_images(std::move(xs), std::move(zs)));
        }
    }
    return out;
}

// ---------------------------------------------------------------- synthesis

Circuit synthesize(const CliffordTableau &u) {
    size_t n = u.num_qubits();
    CliffordTableau work = u;
    Circuit applied;
    auto apply = [&](const Gate &g) {
        work.apply_gate(g);
        applied.push_back(g);
    };
    // Reduces `row(work)` to a single X on qubit i using only gates that fix Z_i
    // (when `pivot_fixed`) or that may move the pivot into place.
    auto reduce_to_x = [&](auto row, size_t i, bool pivot_fixed) {
        if (!pivot_fixed) {
            size_t pivot = n;
            for (size_t j = i; j < n && pivot == n; j++) {
                if (row().x(j)) {
                    pivot = j;
                }
            }
            if (pivot == n) {
                for (size_t j = i; j < n && pivot == n; j++) {
                    if (row().z(j)) {
                        pivot = j;
                    }
                }
                if (pivot == n) {
                    throw std::logic_error("synthesize: tableau is not invertible");
                }
                apply(Gate::h(pivot));
            }
            if (pivot != i) {
                apply(Gate::cx(i, pivot));
                apply(Gate::cx(pivot, i));
                apply(Gate::cx(i, pivot));
            }
        }
        for (size_t k = i + 1; k < n; k++) {
            if (row().x(k)) {
                apply(Gate::cx(i, k));
            }
        }
        for (size_t k = i + 1; k < n; k++) {
            if (row().z(k)) {
                apply(Gate::h(k));
                apply(Gate::cx(i, k));
            }
        }
        if (row().z(i)) {
            apply(Gate::s(i));
        }
    };
    for (size_t i = 0; i < n; i++) {
        reduce_to_x([&]() -> const PauliString & { return work.x_image(i); }, i, false);
        apply(Gate::h(i));
        reduce_to_x([&]() -> const PauliString & { return work.z_image(i); }, i, true);
        apply(Gate::h(i));
    }
    for (size_t i = 0; i < n; i++) {
        if (work.x_image(i).phase() == 2) {
            apply(Gate::s(i));
            apply(Gate::s(i));
        }
        if (work.z_image(i).phase() == 2) {
            apply(Gate::h(i));
            apply(Gate::s(i));
            apply(Gate::s(i));
            apply(Gate::h(i));
        }
    }
    return inverse(applied);
}

// ---------------------------------------------------------- stabilizer states

double Dyadic::value() const {
    return std::ldexp(1.0, static_cast<int>(log2));
}

namespace {

// Forward elimination of `rows` over the listed columns; returns the rank. Rows
// [rank, size) end up zero on every listed column. Columns are (qubit, is_z).
size_t eliminate(std::vector<PauliString> &rows, const std::vector<std::pair<size_t, bool>> &columns, bool reduce_above,
                 EliminationStats *stats) {
    size_t rank = 0;
    for (const auto &[q, is_z] : columns) {
        if (rank == rows.size()) {
            break;
        }
        auto bit = [&](const PauliString &p) { return is_z ? p.z(q) : p.x(q); };
        size_t pivot = rank;
        while (pivot < rows.size() && !bit(rows[pivot])) {
            pivot++;
        }
        if (pivot == rows.size()) {
            continue;
        }
        std::swap(rows[rank], rows[pivot]);
        for (size_t r = reduce_above ? 0 : rank + 1; r < rows.size(); r++) {
            if (r != rank && bit(rows[r])) {
                rows[r] *= rows[rank];
                if (stats) {
                    stats->row_ops++;
                    stats->word_ops += 2 * rows[r].num_words();
                }
            }
        }
        rank++;
    }
    return rank;
}

std::vector<std::pair<size_t, bool>> columns_of(const Region &r) {
    std::vector<std::pair<size_t, bool>> cols;
    for (size_t q : r) {
        cols.emplace_back(q, false);
    }
    for (size_t q : r) {
        cols.emplace_back(q, true);
    }
    return cols;
}

}  // namespace

StabilizerMixedState::StabilizerMixedState(size_t n, std::vector<PauliString> generators)
    : n_(n), generators_(std::move(generators)) {
    if (generators_.size() > n_) {
        throw std::invalid_argument("more generators than qubits");
    }
    BitMatrix bits(generators_.size(), 2 * n_);
    for (size_t a = 0; a < generators_.size(); a++) {
        const auto &g = generators_[a];
        if (g.num_qubits() != n_) {
            throw std::invalid_argument("generator size mismatch");
        }
        if (!g.is_hermitian()) {
            throw std::invalid_argument("generator " + g.str() + " has an imaginary phase");
        }
        for (size_t b = 0; b < a; b++) {
            if (!commutes(g, generators_[b])) {
                throw std::invalid_argument("generators " + generators_[b].str() + " and " + g.str() + " anticommute");
            }
        }
        for (size_t q = 0; q < n_; q++) {
            bits.set(a, q, g.x(q));
            bits.set(a, q + n_, g.z(q));
        }
    }
    if (bits.rank() != generators_.size()) {
        throw std::invalid_argument("generators are not independent");
    }
}

StabilizerMixedState StabilizerMixedState::zero_state(size_t n) {
    std::vector<PauliString> gens;
    for (size_t k = 0; k < n; k++) {
        gens.push_back(PauliString::single(n, k, 'Z'));
    }
    return StabilizerMixedState(n, std::move(gens));
}

StabilizerMixedState StabilizerMixedState::maximally_mixed(size_t n) {
    return StabilizerMixedState(n, {});
}

StabilizerMixedState StabilizerMixedState::from_clifford(const CliffordTableau &u) {
    std::vector<PauliString> gens;
    for (size_t k = 0; k < u.num_qubits(); k++) {
        gens.push_back(u.z_image(k));
    }
    return StabilizerMixedState(u.num_qubits(), std::move(gens));
}

void StabilizerMixedState::apply_gate(const Gate &g) {
    g.validate(n_);
    for (auto &p : generators_) {
        conjugate_by_gate(p, g);
    }
}

void StabilizerMixedState::apply_circuit(const Circuit &c) {
    for (const auto &g : c) {
        apply_gate(g);
    }
}

StabilizerMixedState StabilizerMixedState::conjugated_by(const CliffordTableau &u) const {
    std::vector<PauliString> gens;
    gens.reserve(generators_.size());
    for (const auto &g : generators_) {
        gens.push_back(u(g));
    }
    StabilizerMixedState out;
    out.n_ = n_;
    out.generators_ = std::move(gens);
    return out;
}

StabilizerMixedState StabilizerMixedState::canonical() const {
    StabilizerMixedState out = *this;
    eliminate(out.generators_, columns_of(Region::full(n_)), true, nullptr);
    return out;
}

std::string StabilizerMixedState::str() const {
    std::string out = "STAB n=" + std::to_string(n_) + " k=" + std::to_string(generators_.size()) + "\n";
    for (const auto &g : generators_) {
        out += g.str() + "\n";
    }
    return out;
}

StabilizerMixedState StabilizerMixedState::parse(const std::string &text) {
    size_t pos = 0;
    auto next_line = [&]() -> std::optional<std::string> {
        while (pos < text.size()) {
            size_t end = text.find('\n', pos);
            if (end == std::string::npos) {
                end = text.size();
            }
            std::string line = text.substr(pos, end - pos);
            pos = end + 1;
            while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
                line.pop_back();
            }
            if (!line.empty()) {
                return line;
            }
        }
        return std::nullopt;
    };
    auto header = next_line();
    size_t n = 0, k = 0;
    if (!header || std::sscanf(header->c_str(), "STAB n=%zu k=%zu", &n, &k) != 2) {
        throw std::invalid_argument("missing 'STAB n=<n> k=<k>' header");
    }
    std::vector<PauliString> gens;
    for (size_t a = 0; a < k; a++) {
        auto line = next_line();
        if (!line) {
            throw std::invalid_argument("expected " + std::to_string(k) + " generators");
        }
        gens.push_back(PauliString::from_str(*line));
        if (gens.back().num_qubits() != n) {
            throw std::invalid_argument("generator length differs from n");
        }
    }
    return StabilizerMixedState(n, std::move(gens));
}

StabilizerMixedState stab_partial_trace(const StabilizerMixedState &s, const Region &keep, EliminationStats &stats) {
    size_t n = s.num_qubits();
    keep.check_within(n);
    std::vector<PauliString> rows = s.generators();
    size_t rank = eliminate(rows, columns_of(keep.complement(n)), false, &stats);
    std::vector<PauliString> kept;
    for (size_t r = rank; r < rows.size(); r++) {
        auto restricted = restrict_to(rows[r], keep);
        if (!restricted) {
            throw std::logic_error("stab_partial_trace: elimination left support outside the kept region");
        }
        kept.push_back(std::move(*restricted));
    }
    return StabilizerMixedState(keep.size(), std::move(kept)).canonical();
}

StabilizerMixedState stab_partial_trace(const StabilizerMixedState &s, const Region &keep) {
    EliminationStats stats;
    return stab_partial_trace(s, keep, stats);
}

Dyadic stab_marginal_purity(const StabilizerMixedState &s, const Region &region) {
    auto reduced = stab_partial_trace(s, region);
    return Dyadic{static_cast<int64_t>(reduced.num_generators()) - static_cast<int64_t>(region.size())};
}

}  // namespace stabcleanse
