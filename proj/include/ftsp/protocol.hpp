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

#include <array>

#include "ftsp/circuit.hpp"

namespace ftsp {

/// One transversal CNOT round between two of the four n-qubit blocks
/// (qubit i of the control block onto qubit i of the target block).
struct TransversalRound {
    int control_block;
    int target_block;
};

struct BlockMeasurement {
    int block;
    Basis basis;
};

/// The four-block non-deterministic preparation gadget: blocks 1..4 each run
/// their own preparation circuit in parallel; verification layer A applies
/// transversal rounds 1->2 and 3->4, layer B applies 3->1; blocks 2, 4 are
/// measured in Z and block 3 in X; block 1 is the surviving output.
class ProtocolSchedule {
  public:
    ProtocolSchedule(CssCode code, std::array<PrepCircuit, 4> blocks);

    const CssCode& code() const { return code_; }
    const PrepCircuit& block(int i) const { return blocks_[i]; }
    const std::array<PrepCircuit, 4>& blocks() const { return blocks_; }

    /// Rounds grouped into the two verification layers.
    const std::vector<std::vector<TransversalRound>>& verification_layers() const {
        return verification_layers_;
    }
    const std::vector<BlockMeasurement>& measurements() const {
        return measurements_;
    }

    std::size_t max_prep_depth() const;
    /// CNOT layers only: max prep depth + 2 transversal layers.
    std::size_t cnot_depth() const { return max_prep_depth() + 2; }
    /// CNOT layers plus the final measurement layer.
    std::size_t depth_with_measurement() const { return cnot_depth() + 1; }
    std::size_t total_cnots() const;

  private:
    CssCode code_;
    std::array<PrepCircuit, 4> blocks_;
    std::vector<std::vector<TransversalRound>> verification_layers_;
    std::vector<BlockMeasurement> measurements_;
};

/// Assembles the schedule; every circuit must prepare the code's logical zero
/// state (checked; rejected with ValidationError otherwise).
ProtocolSchedule build_protocol(const PrepCircuit& c1, const PrepCircuit& c2,
                                const PrepCircuit& c3, const PrepCircuit& c4,
                                const CssCode& code);

/// Post-selection predicate on the three measured blocks: all stabilizer
/// parities and all logical parities computable from each record must be
/// trivial. Measurement records are flip patterns relative to the noiseless
/// reference outcome.
bool acceptance(const CssCode& code, const BitVector& m2, const BitVector& m3,
                const BitVector& m4);

/// Protocol text format: the circuit format per block introduced by
/// "BLOCK i", then "TCX a b" rounds and "MEAS block Z|X" lines; blocks 1..4.
std::string serialize_protocol(const ProtocolSchedule& schedule);
ProtocolSchedule parse_protocol(const std::string& text, const CssCode& code);

}  // namespace ftsp
