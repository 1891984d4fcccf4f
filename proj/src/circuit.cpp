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

#include "stabcleanse/circuit.hpp"

#include <algorithm>
#include <sstream>

namespace stabcleanse {

namespace {

size_t arity(GateKind k) {
    return k == GateKind::CX ? 2 : 1;
}

const char *gate_name(GateKind k) {
    switch (k) {
        case GateKind::H:
            return "H";
        case GateKind::S:
            return "S";
        case GateKind::Sdg:
            return "S_DAG";
        case GateKind::CX:
            return "CX";
        case GateKind::T:
            return "T";
        case GateKind::Tdg:
            return "T_DAG";
        case GateKind::Perm:
            return "PERM";
    }
    return "?";
}

bool lookup_gate(const std::string &name, GateKind &out) {
    static const std::pair<const char *, GateKind> kTable[] = {
        {"H", GateKind::H},      {"S", GateKind::S},        {"S_DAG", GateKind::Sdg}, {"SDG", GateKind::Sdg},
        {"CX", GateKind::CX},    {"CNOT", GateKind::CX},    {"T", GateKind::T},       {"T_DAG", GateKind::Tdg},
        {"TDG", GateKind::Tdg},  {"PERM", GateKind::Perm},
    };
    for (const auto &[key, kind] : kTable) {
        if (name == key) {
            out = kind;
            return true;
        }
    }
    return false;
}

}  // namespace

void check_permutation(const std::vector<size_t> &pi) {
    std::vector<bool> seen(pi.size(), false);
    for (size_t v : pi) {
        if (v >= pi.size() || seen[v]) {
            throw std::invalid_argument("not a permutation of [0, " + std::to_string(pi.size()) + ")");
        }
        seen[v] = true;
    }
}

void Gate::validate(size_t n) const {
    if (kind == GateKind::Perm) {
        if (targets.size() != n) {
            throw std::invalid_argument("PERM must list all " + std::to_string(n) + " qubits");
        }
        check_permutation(targets);
        return;
    }
    if (targets.size() != arity(kind)) {
        throw std::invalid_argument(std::string(gate_name(kind)) + " takes " + std::to_string(arity(kind)) + " qubit(s)");
    }
    for (size_t q : targets) {
        if (q >= n) {
            throw std::out_of_range("qubit " + std::to_string(q) + " out of range for " + std::to_string(n) + " qubits");
        }
    }
    if (kind == GateKind::CX && targets[0] == targets[1]) {
        throw std::invalid_argument("CX control equals target");
    }
}

Circuit parse_circuit(std::istream &in) {
    Circuit out;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.resize(hash);
        }
        std::istringstream words(line);
        std::string name;
        if (!(words >> name)) {
            continue;
        }
        std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::toupper(c); });
        GateKind kind;
        if (!lookup_gate(name, kind)) {
            throw CircuitParseError(line_no, "unknown gate '" + name + "'");
        }
        Gate g{kind, {}};
        std::string tok;
        while (words >> tok) {
            size_t used = 0;
            unsigned long long v = 0;
            try {
                v = std::stoull(tok, &used);
            } catch (const std::exception &) {
                used = 0;
            }
            if (used != tok.size() || tok[0] == '-') {
                throw CircuitParseError(line_no, "bad qubit index '" + tok + "'");
            }
            g.targets.push_back(static_cast<size_t>(v));
        }
        if (kind == GateKind::Perm) {
            try {
                check_permutation(g.targets);
            } catch (const std::invalid_argument &e) {
                throw CircuitParseError(line_no, e.what());
            }
        } else if (g.targets.size() != arity(kind)) {
            throw CircuitParseError(line_no, name + " expects " + std::to_string(arity(kind)) + " qubit(s)");
        } else if (kind == GateKind::CX && g.targets[0] == g.targets[1]) {
            throw CircuitParseError(line_no, "CX control equals target");
        }
        out.push_back(std::move(g));
    }
    return out;
}

Circuit parse_circuit(const std::string &text) {
    std::istringstream in(text);
    return parse_circuit(in);
}

std::string format_gate(const Gate &g) {
    std::string out = gate_name(g.kind);
    for (size_t q : g.targets) {
        out += ' ';
        out += std::to_string(q);
    }
    return out;
}

std::string format_circuit(const Circuit &c) {
    std::string out;
    for (const auto &g : c) {
        out += format_gate(g);
        out += '\n';
    }
    return out;
}

size_t min_qubits(const Circuit &c) {
    size_t n = 0;
    for (const auto &g : c) {
        if (g.kind == GateKind::Perm) {
            n = std::max(n, g.targets.size());
        } else {
            for (size_t q : g.targets) {
                n = std::max(n, q + 1);
            }
        }
    }
    return n;
}

size_t count_t_gates(const Circuit &c) {
    return std::count_if(c.begin(), c.end(), [](const Gate &g) { return !g.is_clifford(); });
}

bool is_clifford(const Circuit &c) {
    return count_t_gates(c) == 0;
}

Circuit inverse(const Circuit &c) {
    Circuit out;
    out.reserve(c.size());
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        Gate g = *it;
        switch (g.kind) {
            case GateKind::S:
                g.kind = GateKind::Sdg;
                break;
            case GateKind::Sdg:
                g.kind = GateKind::S;
                break;
            case GateKind::T:
                g.kind = GateKind::Tdg;
                break;
            case GateKind::Tdg:
                g.kind = GateKind::T;
                break;
            case GateKind::Perm: {
                std::vector<size_t> inv(g.targets.size());
                for (size_t j = 0; j < g.targets.size(); j++) {
                    inv[g.targets[j]] = j;
                }
                g.targets = std::move(inv);
                break;
            }
            default:
                break;
        }
        out.push_back(std::move(g));
    }
    return out;
}

Circuit relabel(const Circuit &c, const std::vector<size_t> &map, size_t n) {
    Circuit out;
    out.reserve(c.size());
    for (const auto &g : c) {
        Gate h = g;
        if (g.kind == GateKind::Perm) {
            // Qubit map[j] moves to map[pi(j)]; qubits outside the image of `map` stay put.
            std::vector<size_t> pi(n);
            for (size_t q = 0; q < n; q++) {
                pi[q] = q;
            }
            for (size_t j = 0; j < g.targets.size(); j++) {
                pi[map[j]] = map[g.targets[j]];
            }
            h.targets = std::move(pi);
        } else {
            for (auto &q : h.targets) {
                q = map.at(q);
            }
        }
        out.push_back(std::move(h));
    }
    return out;
}

}  // namespace stabcleanse
