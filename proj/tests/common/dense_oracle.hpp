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

// Small, deliberately naive matrix helpers used as an independent reference in
// tests. Everything goes through explicit Kronecker products so that it shares
// no code with the library's simulators. Qubit 0 is the least significant bit.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "stabcleanse/circuit.hpp"
#include "stabcleanse/pauli.hpp"

namespace oracle {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat kron(const Mat &a, const Mat &b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

inline Mat single(char kind) {
    Mat m(2, 2);
    const cd i(0, 1);
    switch (kind) {
        case 'X':
            m << 0, 1, 1, 0;
            break;
        case 'Y':
            m << 0, -i, i, 0;
            break;
        case 'Z':
            m << 1, 0, 0, -1;
            break;
        default:
            m << 1, 0, 0, 1;
    }
    return m;
}

/// Places 2x2 operators ops[q] on qubit q.
inline Mat tensor(const std::vector<Mat> &ops) {
    Mat out = Mat::Identity(1, 1);
    for (size_t q = 0; q < ops.size(); q++) {
        out = kron(ops[q], out);
    }
    return out;
}

inline Mat pauli_matrix(const stabcleanse::PauliString &p) {
    std::vector<Mat> ops;
    for (size_t q = 0; q < p.num_qubits(); q++) {
        ops.push_back(single(p.pauli_at(q)));
    }
    static const cd powers[4] = {1, cd(0, 1), -1, cd(0, -1)};
    return powers[p.phase()] * tensor(ops);
}

inline Mat one_qubit_gate(char name) {
    Mat m(2, 2);
    const cd i(0, 1);
    const double r = 1 / std::sqrt(2.0);
    const cd w = std::polar(1.0, M_PI / 4);
    switch (name) {
        case 'H':
            m << r, r, r, -r;
            break;
        case 'S':
            m << 1, 0, 0, i;
            break;
        case 's':
            m << 1, 0, 0, -i;
            break;
        case 'T':
            m << 1, 0, 0, w;
            break;
        case 't':
            m << 1, 0, 0, std::conj(w);
            break;
    }
    return m;
}

/// Full 2^n x 2^n unitary of a gate, built from projector sums / basis maps.
inline Mat gate_matrix(const stabcleanse::Gate &g, size_t n) {
    using stabcleanse::GateKind;
    const Eigen::Index d = Eigen::Index{1} << n;
    auto on = [&](size_t q, const Mat &u) {
        std::vector<Mat> ops(n, Mat::Identity(2, 2));
        ops[q] = u;
        return tensor(ops);
    };
    switch (g.kind) {
        case GateKind::H:
            return on(g.targets[0], one_qubit_gate('H'));
        case GateKind::S:
            return on(g.targets[0], one_qubit_gate('S'));
        case GateKind::Sdg:
            return on(g.targets[0], one_qubit_gate('s'));
        case GateKind::T:
            return on(g.targets[0], one_qubit_gate('T'));
        case GateKind::Tdg:
            return on(g.targets[0], one_qubit_gate('t'));
        case GateKind::CX: {
            Mat p0(2, 2), p1(2, 2);
            p0 << 1, 0, 0, 0;
            p1 << 0, 0, 0, 1;
            std::vector<Mat> a(n, Mat::Identity(2, 2)), b(n, Mat::Identity(2, 2));
            a[g.targets[0]] = p0;
            b[g.targets[0]] = p1;
            b[g.targets[1]] = single('X');
            return tensor(a) + tensor(b);
        }
        case GateKind::Perm: {
            Mat m = Mat::Zero(d, d);
            for (Eigen::Index x = 0; x < d; x++) {
                Eigen::Index y = 0;
                for (size_t j = 0; j < n; j++) {
                    if ((x >> j) & 1) {
                        y |= Eigen::Index{1} << g.targets[j];
                    }
                }
                m(y, x) = 1;
            }
            return m;
        }
    }
    return Mat::Identity(d, d);
}

inline Mat circuit_matrix(const stabcleanse::Circuit &c, size_t n) {
    Mat u = Mat::Identity(Eigen::Index{1} << n, Eigen::Index{1} << n);
    for (const auto &g : c) {
        u = gate_matrix(g, n) * u;
    }
    return u;
}

/// tr over every qubit not in `keep`; result indexed in keep order.
inline Mat partial_trace(const Mat &rho, size_t n, const std::vector<size_t> &keep) {
    const size_t m = keep.size();
    const Eigen::Index dk = Eigen::Index{1} << m;
    Mat out = Mat::Zero(dk, dk);
    const Eigen::Index d = Eigen::Index{1} << n;
    auto sub = [&](Eigen::Index x) {
        Eigen::Index s = 0;
        for (size_t k = 0; k < m; k++) {
            s |= ((x >> keep[k]) & 1) << k;
        }
        return s;
    };
    Eigen::Index keep_mask = 0;
    for (size_t q : keep) {
        keep_mask |= Eigen::Index{1} << q;
    }
    for (Eigen::Index a = 0; a < d; a++) {
        for (Eigen::Index b = 0; b < d; b++) {
            if ((a & ~keep_mask) == (b & ~keep_mask)) {
                out(sub(a), sub(b)) += rho(a, b);
            }
        }
    }
    return out;
}

inline Vec basis_zero(size_t n) {
    Vec v = Vec::Zero(Eigen::Index{1} << n);
    v(0) = 1;
    return v;
}

/// Density matrix of a stabilizer group: 2^-n * sum over all group elements.
inline Mat group_average(const std::vector<stabcleanse::PauliString> &gens, size_t n) {
    const Eigen::Index d = Eigen::Index{1} << n;
    Mat rho = Mat::Zero(d, d);
    for (size_t mask = 0; mask < (size_t{1} << gens.size()); mask++) {
        Mat term = Mat::Identity(d, d);
        for (size_t k = 0; k < gens.size(); k++) {
            if ((mask >> k) & 1) {
                term = term * pauli_matrix(gens[k]);
            }
        }
        rho += term;
    }
    return rho / static_cast<double>(d);
}

}  // namespace oracle
