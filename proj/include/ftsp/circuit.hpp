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

#pragma once

#include <string>
#include <vector>

#include "ftsp/code.hpp"

namespace ftsp {

enum class InitBasis : uint8_t { Zero, Plus };

struct Gate {
    std::size_t control;
    std::size_t target;
    bool operator==(const Gate&) const = default;
};

/// A unitary CNOT state-preparation circuit: per-qubit initialization bases
/// followed by an ordered CNOT list. Layers are always derived from the gate
/// list (greedy as-soon-as-possible scheduling), never stored independently.
class PrepCircuit {
  public:
    PrepCircuit() = default;
    PrepCircuit(std::size_t n, std::vector<InitBasis> init, std::vector<Gate> gates);

    std::size_t n() const { return n_; }
    const std::vector<InitBasis>& init() const { return init_; }
    const std::vector<Gate>& gates() const { return gates_; }
    std::size_t num_plus() const;

    /// ASAP layer index of each gate (0-based).
    const std::vector<std::size_t>& gate_layers() const { return layer_of_gate_; }
    /// Gates grouped by layer, preserving relative order.
    std::vector<std::vector<Gate>> layers() const;
    std::size_t depth() const { return depth_; }

    bool operator==(const PrepCircuit&) const = default;

  private:
    std::size_t n_ = 0;
    std::vector<InitBasis> init_;
    std::vector<Gate> gates_;
    std::vector<std::size_t> layer_of_gate_;
    std::size_t depth_ = 0;
};

/// True iff running the circuit on the product state fixed by its init bases
/// produces exactly the code's logical all-zero state: the final X row space
/// must equal rowspace(h_x) and the final Z row space must equal
/// rowspace(h_z) + rowspace(logicals_z).
bool verify_prepares(const PrepCircuit& c, const CssCode& code);

/// Circuit text format: "QUBITS n", one "INIT q Z|P" per qubit, then "CX c t"
/// lines in temporal order; '#' starts a comment.
std::string serialize_circuit(const PrepCircuit& c);
PrepCircuit parse_circuit(const std::string& text);

}  // namespace ftsp
