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

#include <random>

#include "ftsp/protocol.hpp"

namespace ftsp {

/// Circuit-level depolarizing noise parameterized by the physical rate p:
/// two-qubit gates draw one of the 15 nonidentity Pauli pairs with total
/// probability p; initializations and measurements flip with probability
/// 2p/3; idle qubits depolarize at strength p/100 per CNOT layer.
struct NoiseModel {
    double p = 0.0;

    double two_qubit_total() const { return p; }
    double prep_meas_flip() const { return 2.0 * p / 3.0; }
    double idle_total() const { return p / 100.0; }
};

/// Outcome of one protocol shot. Measurement records are flip patterns
/// relative to the noiseless reference; residuals are block 1's Pauli frame.
struct ShotRecord {
    uint64_t m2 = 0;
    uint64_t m3 = 0;
    uint64_t m4 = 0;
    uint64_t residual_x = 0;
    uint64_t residual_z = 0;
    bool accepted = false;
};

/// Syndrome-indexed table of minimum-weight corrections. `basis` names the
/// error type corrected (X errors decode against the Z checks and vice
/// versa).
class LutDecoder {
  public:
    static LutDecoder build(const CssCode& code, Basis basis);

    Basis basis() const { return basis_; }
    std::size_t syndrome_bits() const { return syndrome_bits_; }

    /// Correction support for a packed syndrome, or nullopt for a heralded
    /// failure (syndrome unreachable within the build cap).
    std::optional<uint64_t> decode(uint64_t syndrome) const;

  private:
    Basis basis_ = Basis::X;
    std::size_t syndrome_bits_ = 0;
    std::vector<uint64_t> table_;   // sentinel = no entry
};

struct SimResult {
    std::size_t shots = 0;
    std::size_t accepted = 0;
    std::size_t logical_failures = 0;
    double acceptance_rate = 0.0;
    double acceptance_ci_lo = 0.0;
    double acceptance_ci_hi = 0.0;
    double logical_error_rate = 0.0;
    double logical_ci_lo = 0.0;
    double logical_ci_hi = 0.0;
    uint64_t seed = 0;
};

/// Wilson 95% interval for `hits` successes out of `n`.
void wilson_interval(std::size_t hits, std::size_t n, double& lo, double& hi);

/// Samples one shot of the four-block protocol under the noise model.
ShotRecord run_shot(const ProtocolSchedule& schedule, const NoiseModel& noise,
                    std::mt19937_64& rng);

/// Logical-X failure estimator: per accepted shot, block 1's residual X frame
/// is decoded from its noiselessly computed Z-check syndrome and corrected;
/// failure means the corrected residual flips a logical Z parity.
SimResult estimate_x_logical(const ProtocolSchedule& schedule,
                             const NoiseModel& noise, std::size_t shots,
                             uint64_t seed, std::size_t threads = 1);

/// Logical-Z failure estimator via the error-correction gadget: an ideally
/// prepared |+>_L block receives single-qubit depolarizing noise of strength
/// p, a noisy transversal CNOT copies its Z errors onto the surviving block,
/// which is measured (noisily) in the X basis; the decoded correction is
/// applied back to the |+>_L block and failure means its residual flips a
/// logical X parity.
SimResult estimate_z_logical(const ProtocolSchedule& schedule,
                             const NoiseModel& noise, std::size_t shots,
                             uint64_t seed, std::size_t threads = 1);

/// Deterministic fault placement for the exhaustive verifier and for witness
/// replay.
struct FaultLocation {
    enum class Kind : uint8_t {
        Init,              // block, qubit
        PrepGate,          // block, index = gate position
        TransversalGate,   // index = round (0: 1->2, 1: 3->4, 2: 3->1), qubit
        Idle,              // index = protocol layer, qubit = global qubit
        Measurement,       // block in {1,2,3}, qubit
        PrepBoundary,      // block, index = gate boundary, qubit (replay only)
    };
    Kind kind;
    int block = 0;
    std::size_t index = 0;
    std::size_t qubit = 0;

    uint64_t key() const;
    bool operator==(const FaultLocation&) const = default;
};

/// Single-qubit faults use pauli codes 1=X, 2=Z, 3=Y. Two-qubit faults pack
/// (x_ctrl, z_ctrl, x_tgt, z_tgt) into bits 0..3, values 1..15.
struct InjectedFault {
    FaultLocation location;
    uint8_t pauli;
};

/// Runs the protocol with exactly the listed faults and no sampling.
ShotRecord inject_faults(const ProtocolSchedule& schedule,
                         const std::vector<InjectedFault>& faults);

/// Structural enumeration of every physical fault location (init, gate, idle
/// and measurement); boundary locations are excluded (replay only).
std::vector<FaultLocation> enumerate_fault_locations(const ProtocolSchedule& schedule);

struct InjectCounterexample {
    std::vector<InjectedFault> faults;
    bool x_exceeds = false;
    bool z_exceeds = false;
};

struct InjectReport {
    std::size_t max_faults = 0;
    std::size_t elementary_faults = 0;
    std::size_t combinations = 0;
    std::vector<InjectCounterexample> counterexamples;
};

/// Exhaustively enumerates all fault combinations of size <= t over the
/// elementary faults (every Pauli choice at every location) and reports each
/// accepted combination whose block 1 residual exceeds weight t modulo
/// stabilizers in either basis. Throws when the combination count exceeds
/// `budget`.
InjectReport inject_scan(const ProtocolSchedule& schedule, std::size_t t,
                         std::size_t budget = 50'000'000,
                         std::size_t threads = 1);

}  // namespace ftsp
