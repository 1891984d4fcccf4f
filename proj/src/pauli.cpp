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

#include "stabcleanse/pauli.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace stabcleanse {

namespace {

size_t words_for(size_t n) {
    return (n + 63) / 64;
}

void require_same_size(const PauliString &a, const PauliString &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument(
            "Pauli size mismatch: " + std::to_string(a.num_qubits()) + " vs " + std::to_string(b.num_qubits()));
    }
}

}  // namespace

// ---------------------------------------------------------------- Region

Region::Region(std::vector<size_t> indices) : indices_(std::move(indices)) {
    for (size_t k = 1; k < indices_.size(); k++) {
        if (indices_[k] <= indices_[k - 1]) {
            throw std::invalid_argument("Region indices must be strictly increasing.");
        }
    }
}

Region Region::range(size_t begin, size_t end) {
    std::vector<size_t> v;
    for (size_t q = begin; q < end; q++) {
        v.push_back(q);
    }
    return Region(std::move(v));
}

bool Region::contains(size_t q) const {
    return std::binary_search(indices_.begin(), indices_.end(), q);
}

void Region::check_within(size_t n) const {
    if (!indices_.empty() && indices_.back() >= n) {
        throw std::out_of_range(
            "Region index " + std::to_string(indices_.back()) + " out of range for " + std::to_string(n) + " qubits.");
    }
}

Region Region::complement(size_t n) const {
    std::vector<size_t> v;
    for (size_t q = 0; q < n; q++) {
        if (!contains(q)) {
            v.push_back(q);
        }
    }
    return Region(std::move(v));
}

Region Region::united(const Region &other) const {
    std::vector<size_t> v;
    std::set_union(begin(), end(), other.begin(), other.end(), std::back_inserter(v));
    return Region(std::move(v));
}

Region Region::intersected(const Region &other) const {
    std::vector<size_t> v;
    std::set_intersection(begin(), end(), other.begin(), other.end(), std::back_inserter(v));
    return Region(std::move(v));
}

Region Region::minus(const Region &other) const {
    std::vector<size_t> v;
    std::set_difference(begin(), end(), other.begin(), other.end(), std::back_inserter(v));
    return Region(std::move(v));
}

std::string Region::str() const {
    std::string out = "{";
    for (size_t k = 0; k < indices_.size(); k++) {
        if (k) {
            out += ",";
        }
        out += std::to_string(indices_[k]);
    }
    return out + "}";
}

// ----------------------------------------------------------- PauliString

PauliString::PauliString(size_t num_qubits)
    : num_qubits_(num_qubits), xs_(words_for(num_qubits), 0), zs_(words_for(num_qubits), 0) {
}

PauliString PauliString::from_str(std::string_view text) {
    uint8_t phase = 0;
    size_t pos = 0;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        phase = text[pos] == '-' ? 2 : 0;
        pos++;
    }
    if (pos < text.size() && text[pos] == 'i') {
        phase += 1;
        pos++;
    }
    PauliString result(text.size() - pos);
    for (size_t q = 0; pos < text.size(); pos++, q++) {
        char c = text[pos];
        if (c == '_') {
            c = 'I';
        }
        if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
            throw std::invalid_argument("Bad Pauli character '" + std::string(1, c) + "' in \"" + std::string(text) + "\".");
        }
        result.set_pauli_at(q, c);
    }
    result.phase_ = phase & 3;
    return result;
}

PauliString PauliString::single(size_t num_qubits, size_t q, char kind) {
    if (q >= num_qubits) {
        throw std::out_of_range("qubit index out of range");
    }
    PauliString p(num_qubits);
    p.set_pauli_at(q, kind);
    return p;
}

void PauliString::set_x(size_t q, bool v) {
    uint64_t mask = uint64_t{1} << (q & 63);
    xs_[q >> 6] = v ? (xs_[q >> 6] | mask) : (xs_[q >> 6] & ~mask);
}

void PauliString::set_z(size_t q, bool v) {
    uint64_t mask = uint64_t{1} << (q & 63);
    zs_[q >> 6] = v ? (zs_[q >> 6] | mask) : (zs_[q >> 6] & ~mask);
}

char PauliString::pauli_at(size_t q) const {
    static constexpr char kNames[4] = {'I', 'X', 'Z', 'Y'};
    return kNames[x(q) | (z(q) << 1)];
}

void PauliString::set_pauli_at(size_t q, char kind) {
    set_x(q, kind == 'X' || kind == 'Y');
    set_z(q, kind == 'Z' || kind == 'Y');
}

bool PauliString::has_identity_support() const {
    for (size_t w = 0; w < xs_.size(); w++) {
        if (xs_[w] | zs_[w]) {
            return false;
        }
    }
    return true;
}

size_t PauliString::weight() const {
    size_t total = 0;
    for (size_t w = 0; w < xs_.size(); w++) {
        total += std::popcount(xs_[w] | zs_[w]);
    }
    return total;
}

PauliString &PauliString::operator*=(const PauliString &rhs) {
    require_same_size(*this, rhs);
    // Per qubit, sigma_a * sigma_b = i^g sigma_{a^b} with g = +1 for XY, YZ, ZX,
    // g = -1 for the reversed pairs and g = 0 when the factors commute.
    int64_t plus = 0;
    int64_t minus = 0;
    for (size_t w = 0; w < xs_.size(); w++) {
        uint64_t x1 = xs_[w], z1 = zs_[w];
        uint64_t x2 = rhs.xs_[w], z2 = rhs.zs_[w];
        uint64_t anti = (x1 & z2) ^ (z1 & x2);
        uint64_t pos = (x1 & ~z1 & x2 & z2) | (x1 & z1 & ~x2 & z2) | (~x1 & z1 & x2 & ~z2);
        plus += std::popcount(pos);
        minus += std::popcount(anti & ~pos);
        xs_[w] = x1 ^ x2;
        zs_[w] = z1 ^ z2;
    }
    phase_ = static_cast<uint8_t>((phase_ + rhs.phase_ + plus - minus) & 3);
    return *this;
}

std::string PauliString::str() const {
    static constexpr const char *kPrefix[4] = {"+", "+i", "-", "-i"};
    std::string out = kPrefix[phase_];
    for (size_t q = 0; q < num_qubits_; q++) {
        out += pauli_at(q);
    }
    return out;
}

PauliString pauli_mul(const PauliString &a, const PauliString &b) {
    PauliString result = a;
    result *= b;
    return result;
}

bool commutes(const PauliString &a, const PauliString &b) {
    require_same_size(a, b);
    uint64_t acc = 0;
    auto ax = a.x_words(), az = a.z_words(), bx = b.x_words(), bz = b.z_words();
    for (size_t w = 0; w < ax.size(); w++) {
        acc ^= (ax[w] & bz[w]) ^ (az[w] & bx[w]);
    }
    return (std::popcount(acc) & 1) == 0;
}

std::optional<PauliString> restrict_to(const PauliString &p, const Region &region) {
    region.check_within(p.num_qubits());
    PauliString result(region.size());
    size_t k = 0;
    for (size_t q = 0; q < p.num_qubits(); q++) {
        bool inside = k < region.size() && region[k] == q;
        if (inside) {
            result.set_x(k, p.x(q));
            result.set_z(k, p.z(q));
            k++;
        } else if (p.x(q) || p.z(q)) {
            return std::nullopt;
        }
    }
    result.set_phase(p.phase());
    return result;
}

PauliString embed(const PauliString &p, const Region &region, size_t n) {
    if (p.num_qubits() != region.size()) {
        throw std::invalid_argument("embed: Pauli size does not match region size");
    }
    region.check_within(n);
    PauliString result(n);
    for (size_t k = 0; k < region.size(); k++) {
        result.set_x(region[k], p.x(k));
        result.set_z(region[k], p.z(k));
    }
    result.set_phase(p.phase());
    return result;
}

void conjugate_h(PauliString &p, size_t q) {
    bool x = p.x(q), z = p.z(q);
    if (x && z) {
        p.add_phase(2);
    }
    p.set_x(q, z);
    p.set_z(q, x);
}

void conjugate_s(PauliString &p, size_t q) {
    bool x = p.x(q), z = p.z(q);
    if (x && z) {
        p.add_phase(2);
    }
    p.set_z(q, z ^ x);
}

void conjugate_sdg(PauliString &p, size_t q) {
    bool x = p.x(q), z = p.z(q);
    if (x && !z) {
        p.add_phase(2);
    }
    p.set_z(q, z ^ x);
}

void conjugate_cx(PauliString &p, size_t control, size_t target) {
    bool xc = p.x(control), zc = p.z(control), xt = p.x(target), zt = p.z(target);
    if (xc && zt && (xt == zc)) {
        p.add_phase(2);
    }
    p.set_x(target, xt ^ xc);
    p.set_z(control, zc ^ zt);
}

void conjugate_permutation(PauliString &p, std::span<const size_t> perm) {
    if (perm.size() != p.num_qubits()) {
        throw std::invalid_argument("permutation size mismatch");
    }
    PauliString moved(p.num_qubits());
    for (size_t j = 0; j < perm.size(); j++) {
        moved.set_x(perm[j], p.x(j));
        moved.set_z(perm[j], p.z(j));
    }
    moved.set_phase(p.phase());
    p = std::move(moved);
}

}  // namespace stabcleanse
