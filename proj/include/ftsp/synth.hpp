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
#include <optional>

#include "ftsp/ftcheck.hpp"

namespace ftsp {

struct SynthConfig {
    uint64_t seed = 0;
    std::size_t max_backtracks = 500;   // per attempt, before a restart
    std::size_t max_restarts = 20;
    double perturbation_prob = 0.05;    // chance of starting from the
                                        // second-best cost tier
    bool forbid_ref_last_layer = false;
    bool forbid_ref_substructures = true;
    bool start_from_rref = true;        // row-reduce the working matrix for
                                        // the final quadruple stage
};

SynthConfig synth_config_from_json(const std::string& json_text);
std::string synth_config_to_json(const SynthConfig& cfg);

struct SynthStats {
    std::size_t backtracks = 0;
    std::size_t restarts = 0;
    std::size_t max_gates_reached = 0;
};

struct SynthOutcome {
    std::optional<PrepCircuit> circuit;
    SynthStats stats;
    bool ok() const { return circuit.has_value(); }
};

/// Number of nonzero entries of `h` after adding column gate.control into
/// column gate.target; the greedy objective (lower is better).
std::size_t cost(const BitMatrix& h, const Gate& gate);

/// Greedy column-elimination synthesis of a |0>_L preparation circuit. Ties
/// are broken by seeded RNG; if no candidate strictly shrinks the matrix the
/// remaining reduction falls back to plain Gaussian elimination. The result
/// always satisfies verify_prepares.
PrepCircuit greedy_synth(const CssCode& code, const SynthConfig& cfg);

/// Optional inputs for the guided search beyond the fault-set references.
struct GuidedRefs {
    const FaultSet* ref_x = nullptr;
    const FaultSet* ref_z = nullptr;
    /// Circuits the structural heuristics read (last-layer overlap and
    /// propagation substructure tables); only meaningful with ref_x.
    std::vector<const PrepCircuit*> structural_refs;
    /// Pre-seeded errors counted as part of the constructed circuit's Z fault
    /// set (bookkeeping for the union condition across quadruple stages).
    const FaultSet* seed_z = nullptr;
};

/// Fault-set guided synthesis: builds the circuit in reverse, extending its
/// fault sets one propagated pair error per CNOT, accepting a candidate only
/// if the incrementally-updated sets stay t-distinct to every active
/// reference. Backtracks when no candidate qualifies; restarts (reseeding
/// with seed xor restart-index) when the backtrack limit is hit.
SynthOutcome guided_synth(const CssCode& code, const FaultSet* ref_x,
                          const FaultSet* ref_z, std::size_t t,
                          const SynthConfig& cfg);

SynthOutcome guided_synth_ex(const CssCode& code, const GuidedRefs& refs,
                             std::size_t t, const SynthConfig& cfg);

struct QuadrupleOutcome {
    std::optional<std::array<PrepCircuit, 4>> circuits;
    int failed_stage = 0;   // 1..4 when synthesis failed, 5 if verification did
    std::array<SynthStats, 4> stats{};
    bool ok() const { return circuits.has_value(); }
};

/// The four-stage pipeline: C1 greedy; C2 guided against EX(C1); C3 guided
/// against EZ(C1) u EZ(C2); C4 guided against EX(C3) and the same Z union,
/// with C4's own Z set seeded by EZ(C3) so the union condition sees the
/// cross terms. Stage 4 starts from the row-reduced matrix when configured.
/// The returned quadruple passes verify_quadruple.
QuadrupleOutcome synth_quadruple(const CssCode& code, const SynthConfig& cfg);

}  // namespace ftsp
