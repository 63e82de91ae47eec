// Copyright 2026 The ftsp authors
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

#include "ftsp/circuit.hpp"

#include <sstream>
#include <stdexcept>

#include "ftsp/errors.hpp"

namespace ftsp {

PrepCircuit::PrepCircuit(std::size_t n, std::vector<InitBasis> init,
                         std::vector<Gate> gates)
    : n_(n), init_(std::move(init)), gates_(std::move(gates)) {
    if (init_.size() != n_) {
        throw std::invalid_argument("PrepCircuit: init size != n");
    }
    std::vector<std::size_t> busy_until(n_, 0);
    layer_of_gate_.reserve(gates_.size());
    for (const Gate& g : gates_) {
        if (g.control == g.target) {
            throw std::invalid_argument("PrepCircuit: control equals target");
        }
        if (g.control >= n_ || g.target >= n_) {
            throw std::invalid_argument("PrepCircuit: qubit index out of range");
        }
        std::size_t layer = std::max(busy_until[g.control], busy_until[g.target]);
        layer_of_gate_.push_back(layer);
        busy_until[g.control] = layer + 1;
        busy_until[g.target] = layer + 1;
        depth_ = std::max(depth_, layer + 1);
    }
}

std::size_t PrepCircuit::num_plus() const {
    std::size_t count = 0;
    for (InitBasis b : init_) {
        count += b == InitBasis::Plus;
    }
    return count;
}

std::vector<std::vector<Gate>> PrepCircuit::layers() const {
    std::vector<std::vector<Gate>> out(depth_);
    for (std::size_t i = 0; i < gates_.size(); ++i) {
        out[layer_of_gate_[i]].push_back(gates_[i]);
    }
    return out;
}

bool verify_prepares(const PrepCircuit& c, const CssCode& code) {
    if (c.n() != code.n) {
        throw std::invalid_argument("verify_prepares: qubit count mismatch");
    }
    std::size_t n = c.n();
    // product-state check matrices: one weight-1 row per qubit
    BitMatrix x0(0, n);
    BitMatrix z0(0, n);
    for (std::size_t q = 0; q < n; ++q) {
        if (c.init()[q] == InitBasis::Plus) {
            x0.append_row(BitVector::unit(n, q));
        } else {
            z0.append_row(BitVector::unit(n, q));
        }
    }
    for (const Gate& g : c.gates()) {
        x0.col_add_inplace(g.control, g.target);
        z0.col_add_inplace(g.target, g.control);
    }
    // the target Z group of |0>_L is generated by the Z checks and Z logicals
    BitMatrix z_target = vstack(code.h_z, code.logicals_z);
    return same_row_space(x0, code.h_x) && same_row_space(z0, z_target);
}

std::string serialize_circuit(const PrepCircuit& c) {
    std::ostringstream out;
    out << "QUBITS " << c.n() << "\n";
    for (std::size_t q = 0; q < c.n(); ++q) {
        out << "INIT " << q << " " << (c.init()[q] == InitBasis::Plus ? 'P' : 'Z')
            << "\n";
    }
    for (const Gate& g : c.gates()) {
        out << "CX " << g.control << " " << g.target << "\n";
    }
    return out.str();
}

PrepCircuit parse_circuit(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    bool have_n = false;
    std::size_t n = 0;
    std::vector<InitBasis> init;
    std::vector<bool> init_seen;
    std::vector<Gate> gates;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        std::istringstream ls(line);
        std::string op;
        if (!(ls >> op)) {
            continue;
        }
        if (op == "QUBITS") {
            long value = -1;
            if (!(ls >> value) || value < 0) {
                throw ParseError(lineno, "QUBITS expects a nonnegative count");
            }
            n = static_cast<std::size_t>(value);
            init.assign(n, InitBasis::Zero);
            init_seen.assign(n, false);
            have_n = true;
        } else if (op == "INIT") {
            if (!have_n) {
                throw ParseError(lineno, "INIT before QUBITS header");
            }
            long q = -1;
            std::string basis;
            if (!(ls >> q >> basis) || q < 0) {
                throw ParseError(lineno, "INIT expects 'INIT q Z|P'");
            }
            if (static_cast<std::size_t>(q) >= n) {
                throw ParseError(lineno, "INIT qubit index out of range");
            }
            if (basis == "Z") {
                init[static_cast<std::size_t>(q)] = InitBasis::Zero;
            } else if (basis == "P") {
                init[static_cast<std::size_t>(q)] = InitBasis::Plus;
            } else {
                throw ParseError(lineno, "INIT basis must be Z or P");
            }
            init_seen[static_cast<std::size_t>(q)] = true;
        } else if (op == "CX") {
            if (!have_n) {
                throw ParseError(lineno, "CX before QUBITS header");
            }
            long cq = -1, tq = -1;
            if (!(ls >> cq >> tq) || cq < 0 || tq < 0) {
                throw ParseError(lineno, "CX expects 'CX control target'");
            }
            if (static_cast<std::size_t>(cq) >= n || static_cast<std::size_t>(tq) >= n) {
                throw ParseError(lineno, "CX qubit index out of range");
            }
            if (cq == tq) {
                throw ParseError(lineno, "control equals target");
            }
            gates.push_back(Gate{static_cast<std::size_t>(cq),
                                 static_cast<std::size_t>(tq)});
        } else {
            throw ParseError(lineno, "unknown opcode '" + op + "'");
        }
        std::string extra;
        if (ls >> extra) {
            throw ParseError(lineno, "trailing token '" + extra + "'");
        }
    }
    if (!have_n) {
        throw ParseError(lineno == 0 ? 1 : lineno, "missing QUBITS header");
    }
    for (std::size_t q = 0; q < n; ++q) {
        if (!init_seen[q]) {
            throw ParseError(lineno, "missing INIT for qubit " + std::to_string(q));
        }
    }
    return PrepCircuit(n, std::move(init), std::move(gates));
}

}  // namespace ftsp
