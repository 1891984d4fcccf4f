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

#include "stabcleanse/dense.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "stabcleanse/moments.hpp"

namespace stabcleanse {

namespace {

const Complex kI(0, 1);
const Complex kPowersOfI[4] = {1, kI, -1, -kI};

void check_state_size(size_t n) {
    if (n > kMaxStateQubits) {
        throw std::invalid_argument(
            "dense states are limited to " + std::to_string(kMaxStateQubits) + " qubits, got " + std::to_string(n));
    }
}

void check_density_size(size_t m) {
    if (m > kMaxDensityQubits) {
        throw std::invalid_argument("density matrices are limited to " + std::to_string(kMaxDensityQubits) +
                                    " qubits, got " + std::to_string(m));
    }
}

struct PauliMasks {
    uint64_t x = 0;
    uint64_t z = 0;
    Complex phase = 1;  // includes the i per Y
};

PauliMasks masks_of(const PauliString &p) {
    PauliMasks m;
    int ys = 0;
    for (size_t q = 0; q < p.num_qubits(); q++) {
        m.x |= uint64_t{p.x(q)} << q;
        m.z |= uint64_t{p.z(q)} << q;
        ys += p.x(q) && p.z(q);
    }
    m.phase = kPowersOfI[(p.phase() + ys) & 3];
    return m;
}

int parity_sign(uint64_t v) {
    return (std::popcount(v) & 1) ? -1 : 1;
}

// Scatters the low bits of `value` onto the positions in `qubits`.
uint64_t deposit(uint64_t value, const std::vector<size_t> &qubits) {
    uint64_t out = 0;
    for (size_t k = 0; k < qubits.size(); k++) {
        out |= ((value >> k) & 1) << qubits[k];
    }
    return out;
}

void walsh_hadamard(std::vector<Complex> &v) {
    for (size_t h = 1; h < v.size(); h <<= 1) {
        for (size_t i = 0; i < v.size(); i += h << 1) {
            for (size_t j = i; j < i + h; j++) {
                Complex a = v[j], b = v[j + h];
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
    }
}

}  // namespace

// ------------------------------------------------------------- DenseState

DenseState::DenseState(size_t n) : n_(n) {
    check_state_size(n);
    amps_.assign(size_t{1} << n, 0);
    amps_[0] = 1;
}

DenseState DenseState::from_amplitudes(std::vector<Complex> amplitudes) {
    size_t size = amplitudes.size();
    if (size == 0 || !std::has_single_bit(size)) {
        throw std::invalid_argument("amplitude count must be a power of two");
    }
    auto n = static_cast<size_t>(std::countr_zero(size));
    check_state_size(n);
    double norm = 0;
    for (const auto &a : amplitudes) {
        norm += std::norm(a);
    }
    if (std::abs(norm - 1) > 1e-12) {
        throw std::invalid_argument("state is not normalized");
    }
    DenseState s(n);
    s.amps_ = std::move(amplitudes);
    return s;
}

void DenseState::apply_gate(const Gate &g) {
    g.validate(n_);
    const size_t dim = amps_.size();
    auto phase_on = [&](size_t q, Complex factor) {
        const size_t bit = size_t{1} << q;
        for (size_t c = 0; c < dim; c++) {
            if (c & bit) {
                amps_[c] *= factor;
            }
        }
    };
    switch (g.kind) {
        case GateKind::H: {
            const size_t bit = size_t{1} << g.targets[0];
            const double r = M_SQRT1_2;
            for (size_t c = 0; c < dim; c++) {
                if (!(c & bit)) {
                    Complex a = amps_[c], b = amps_[c | bit];
                    amps_[c] = r * (a + b);
                    amps_[c | bit] = r * (a - b);
                }
            }
            break;
        }
        case GateKind::S:
            phase_on(g.targets[0], kI);
            break;
        case GateKind::Sdg:
            phase_on(g.targets[0], -kI);
            break;
        case GateKind::T:
            phase_on(g.targets[0], Complex(M_SQRT1_2, M_SQRT1_2));
            break;
        case GateKind::Tdg:
            phase_on(g.targets[0], Complex(M_SQRT1_2, -M_SQRT1_2));
            break;
        case GateKind::CX: {
            const size_t cbit = size_t{1} << g.targets[0], tbit = size_t{1} << g.targets[1];
            for (size_t c = 0; c < dim; c++) {
                if ((c & cbit) && !(c & tbit)) {
                    std::swap(amps_[c], amps_[c | tbit]);
                }
            }
            break;
        }
        case GateKind::Perm: {
            std::vector<Complex> out(dim);
            for (size_t c = 0; c < dim; c++) {
                out[deposit(c, g.targets)] = amps_[c];
            }
            amps_ = std::move(out);
            break;
        }
    }
}

void DenseState::apply_circuit(const Circuit &c) {
    for (const auto &g : c) {
        apply_gate(g);
    }
}

void DenseState::apply_clifford(const CliffordTableau &u) {
    if (u.num_qubits() != n_) {
        throw std::invalid_argument("tableau size does not match state");
    }
    apply_circuit(synthesize(u));
}

void DenseState::apply_pauli(const PauliString &p) {
    if (p.num_qubits() != n_) {
        throw std::invalid_argument("Pauli size does not match state");
    }
    PauliMasks m = masks_of(p);
    std::vector<Complex> out(amps_.size());
    for (size_t c = 0; c < amps_.size(); c++) {
        out[c ^ m.x] = amps_[c] * (m.phase * static_cast<double>(parity_sign(m.z & c)));
    }
    amps_ = std::move(out);
}

Complex DenseState::inner(const DenseState &other) const {
    if (other.n_ != n_) {
        throw std::invalid_argument("inner product of states with different sizes");
    }
    Complex total = 0;
    for (size_t c = 0; c < amps_.size(); c++) {
        total += std::conj(amps_[c]) * other.amps_[c];
    }
    return total;
}

DenseState simulate(const Circuit &c, size_t n) {
    DenseState s(n);
    s.apply_circuit(c);
    return s;
}

// ---------------------------------------------------------- DensityMatrix

DensityMatrix::DensityMatrix(Eigen::MatrixXcd matrix) : rho_(std::move(matrix)) {
    auto dim = static_cast<size_t>(rho_.rows());
    if (rho_.rows() != rho_.cols() || dim == 0 || !std::has_single_bit(dim)) {
        throw std::invalid_argument("density matrix must be square with power-of-two size");
    }
    m_ = static_cast<size_t>(std::countr_zero(dim));
    check_density_size(m_);
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
        throw std::invalid_argument("density matrix is not Hermitian");
    }
    if (std::abs(rho_.trace() - Complex(1)) > 1e-10) {
        throw std::invalid_argument("density matrix does not have unit trace");
    }
}

DensityMatrix DensityMatrix::from_state(const DenseState &s) {
    return reduced_density(s, Region::full(s.num_qubits()));
}

DensityMatrix DensityMatrix::maximally_mixed(size_t m) {
    check_density_size(m);
    auto d = Eigen::Index{1} << m;
    return DensityMatrix(Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(d));
}

DensityMatrix reduced_density(const DenseState &s, const Region &region) {
    const size_t n = s.num_qubits();
    region.check_within(n);
    check_density_size(region.size());
    const Region rest = region.complement(n);
    const Eigen::Index da = Eigen::Index{1} << region.size();
    const Eigen::Index db = Eigen::Index{1} << rest.size();
    Eigen::MatrixXcd psi(da, db);
    for (Eigen::Index a = 0; a < da; a++) {
        uint64_t abits = deposit(static_cast<uint64_t>(a), region.indices());
        for (Eigen::Index b = 0; b < db; b++) {
            psi(a, b) = s.amplitudes()[abits | deposit(static_cast<uint64_t>(b), rest.indices())];
        }
    }
    Eigen::MatrixXcd rho = psi * psi.adjoint();
    // Exact Hermiticity regardless of rounding in the product.
    rho = (rho + rho.adjoint()).eval() * 0.5;
    return DensityMatrix(std::move(rho));
}

DensityMatrix partial_trace(const DensityMatrix &rho, const Region &keep) {
    const size_t m = rho.num_qubits();
    keep.check_within(m);
    const Region rest = keep.complement(m);
    const Eigen::Index dk = Eigen::Index{1} << keep.size();
    const uint64_t dr = uint64_t{1} << rest.size();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dk, dk);
    std::vector<uint64_t> kbits(static_cast<size_t>(dk)), rbits(dr);
    for (Eigen::Index a = 0; a < dk; a++) {
        kbits[static_cast<size_t>(a)] = deposit(static_cast<uint64_t>(a), keep.indices());
    }
    for (uint64_t r = 0; r < dr; r++) {
        rbits[r] = deposit(r, rest.indices());
    }
    for (Eigen::Index a = 0; a < dk; a++) {
        for (Eigen::Index b = 0; b < dk; b++) {
            Complex total = 0;
            for (uint64_t r = 0; r < dr; r++) {
                total += rho.matrix()(static_cast<Eigen::Index>(kbits[static_cast<size_t>(a)] | rbits[r]),
                                      static_cast<Eigen::Index>(kbits[static_cast<size_t>(b)] | rbits[r]));
            }
            out(a, b) = total;
        }
    }
    return DensityMatrix(std::move(out));
}

DensityMatrix density_of(const StabilizerMixedState &s) {
    const size_t n = s.num_qubits();
    check_density_size(n);
    const auto d = Eigen::Index{1} << n;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(d);
    for (const auto &g : s.generators()) {
        PauliMasks m = masks_of(g);
        Eigen::MatrixXcd prod(d, d);
        for (Eigen::Index c = 0; c < d; c++) {
            auto uc = static_cast<uint64_t>(c);
            prod.row(static_cast<Eigen::Index>(uc ^ m.x)) = rho.row(c) * (m.phase * static_cast<double>(parity_sign(m.z & uc)));
        }
        rho += prod;
    }
    return DensityMatrix(std::move(rho));
}

Complex expectation(const DensityMatrix &rho, const PauliString &p) {
    if (p.num_qubits() != rho.num_qubits()) {
        throw std::invalid_argument("Pauli size does not match density matrix");
    }
    PauliMasks m = masks_of(p);
    const auto d = static_cast<uint64_t>(rho.matrix().rows());
    Complex total = 0;
    for (uint64_t b = 0; b < d; b++) {
        total += static_cast<double>(parity_sign(m.z & b)) *
                 rho.matrix()(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b ^ m.x));
    }
    return m.phase * total;
}

double purity(const DensityMatrix &rho) {
    return rho.matrix().cwiseAbs2().sum();
}

double stab_purity(const DensityMatrix &rho) {
    // For each X-part x, the vector v[b] = rho[b, b^x] transformed over b gives
    // tr(X^x Z^z rho) for every z at once (up to a unit phase).
    const auto d = static_cast<size_t>(rho.matrix().rows());
    std::vector<Complex> v(d);
    double total = 0;
    for (size_t x = 0; x < d; x++) {
        for (size_t b = 0; b < d; b++) {
            v[b] = rho.matrix()(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b ^ x));
        }
        walsh_hadamard(v);
        for (const auto &e : v) {
            double a2 = std::norm(e);
            total += a2 * a2;
        }
    }
    return total / (static_cast<double>(d) * static_cast<double>(d));
}

SEReport se_report(const DensityMatrix &rho) {
    const double d = std::ldexp(1.0, static_cast<int>(rho.num_qubits()));
    SEReport r{};
    r.purity = purity(rho);
    if (r.purity < 1 / d - 1e-9 || r.purity > 1 + 1e-9) {
        throw std::invalid_argument("purity outside [1/d, 1]: not a valid state");
    }
    r.sp = stab_purity(rho);
    r.sp_normalized = d * r.sp;
    r.w = d * r.sp / r.purity;
    r.m2 = -std::log2(r.w);
    r.m_lin = 1 - r.w;
    return r;
}

FourthMoment fourth_moment_exact(const DenseState &psi, const Region &region) {
    const size_t n = psi.num_qubits();
    if (n == 0 || n > 2) {
        throw std::invalid_argument("fourth_moment_exact needs n in {1, 2}");
    }
    region.check_within(n);
    const auto group = enumerate_clifford_group(n);
    double total = 0;
    for (const auto &c : group) {
        DenseState rotated = psi;
        rotated.apply_clifford(c);
        total += stab_purity(reduced_density(rotated, region));
    }
    FourthMoment out{};
    out.enumerated = total / static_cast<double>(group.size());
    const double sp = stab_purity(DensityMatrix::from_state(psi));
    out.predicted = predicted_marginal_stab_purity(sp, n, region.size());
    return out;
}

}  // namespace stabcleanse
