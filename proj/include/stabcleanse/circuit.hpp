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

#pragma once

#include <cstddef>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

namespace stabcleanse {

enum class GateKind { H, S, Sdg, CX, T, Tdg, Perm };

/// One gate. For Perm, `targets` holds the permutation: qubit j moves to targets[j].
struct Gate {
    GateKind kind;
    std::vector<size_t> targets;

    static Gate h(size_t q) {
        return {GateKind::H, {q}};
    }
    static Gate s(size_t q) {
        return {GateKind::S, {q}};
    }
    static Gate sdg(size_t q) {
        return {GateKind::Sdg, {q}};
    }
    static Gate cx(size_t c, size_t t) {
        return {GateKind::CX, {c, t}};
    }
    static Gate t(size_t q) {
        return {GateKind::T, {q}};
    }
    static Gate tdg(size_t q) {
        return {GateKind::Tdg, {q}};
    }
    static Gate perm(std::vector<size_t> pi) {
        return {GateKind::Perm, std::move(pi)};
    }

    bool is_clifford() const {
        return kind != GateKind::T && kind != GateKind::Tdg;
    }
    /// Throws std::out_of_range / std::invalid_argument if the gate is malformed for n qubits.
    void validate(size_t n) const;

    bool operator==(const Gate &) const = default;
};

using Circuit = std::vector<Gate>;

/// Thrown by parse_circuit; `line()` is 1-based.
class CircuitParseError : public std::runtime_error {
   public:
    CircuitParseError(size_t line, const std::string &msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {
    }
    size_t line() const {
        return line_;
    }

   private:
    size_t line_;
};

/// Parses the text format: one gate per line ("H 0", "CX 0 1", "T 3", "PERM 2 0 1",
/// also "S", "S_DAG", "T_DAG"); '#' starts a comment; blank lines are ignored.
Circuit parse_circuit(std::istream &in);
Circuit parse_circuit(const std::string &text);
std::string format_gate(const Gate &g);
std::string format_circuit(const Circuit &c);

/// Smallest qubit count that all gates fit in.
size_t min_qubits(const Circuit &c);
size_t count_t_gates(const Circuit &c);
bool is_clifford(const Circuit &c);

/// Gate list of the adjoint circuit.
Circuit inverse(const Circuit &c);

/// Relabels qubit q as map[q] in every gate (Perm gates are conjugated accordingly).
Circuit relabel(const Circuit &c, const std::vector<size_t> &map, size_t n);

/// Throws std::invalid_argument unless `pi` is a bijection on [0, pi.size()).
void check_permutation(const std::vector<size_t> &pi);

}  // namespace stabcleanse
