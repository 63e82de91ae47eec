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

#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ftsp/circuit.hpp"
#include "ftsp/code.hpp"

namespace ftsp {

/// A single-type Pauli error, stored as its support.
struct PauliError {
    Basis basis;
    BitVector support;
    bool operator==(const PauliError&) const = default;
};

/// The set of errors reachable by propagating one single-qubit fault of one
/// type through a circuit suffix. Deduplication is by exact support equality,
/// not modulo stabilizers. Insertion order is deterministic.
class FaultSet {
  public:
    FaultSet() = default;
    FaultSet(Basis basis, std::size_t n) : basis_(basis), n_(n) {}

    Basis basis() const { return basis_; }
    std::size_t n() const { return n_; }
    std::size_t size() const { return errors_.size(); }
    const std::vector<BitVector>& errors() const { return errors_; }

    /// Originating (gate boundary, seed qubit) of each stored error; the
    /// boundary is the number of gates preceding the fault.
    const std::vector<std::pair<std::size_t, std::size_t>>& origins() const {
        return origins_;
    }

    bool contains(const BitVector& support) const {
        return index_.count(support) > 0;
    }
    /// Returns true if the support was new.
    bool insert(const BitVector& support, std::size_t after_gate, std::size_t qubit);

    /// Union of two same-basis fault sets (provenance kept from whichever set
    /// saw each support first).
    static FaultSet merge(const FaultSet& a, const FaultSet& b);

  private:
    Basis basis_ = Basis::X;
    std::size_t n_ = 0;
    std::vector<BitVector> errors_;
    std::vector<std::pair<std::size_t, std::size_t>> origins_;
    std::unordered_set<BitVector, BitVectorHash> index_;
};

/// Conjugates a single-qubit Pauli through the circuit suffix that follows
/// gate boundary `after_gate` (0 = before the first gate, m = after the last).
PauliError propagate(const PrepCircuit& c, Basis basis, std::size_t seed_qubit,
                     std::size_t after_gate);

/// All propagated single-fault errors of one type: every (seed qubit, gate
/// boundary) pair, deduplicated; always contains the n single-qubit errors.
FaultSet fault_set(const PrepCircuit& c, Basis basis);

/// Reduced-representative machinery for one stabilizer row space, with a
/// precomputed syndrome->minimum-coset-weight table up to `weight_cap`.
/// Supports codes up to 64 qubits; reps are packed into a single word.
class CosetTables {
  public:
    CosetTables(const BitMatrix& stabilizer_rows, std::size_t n,
                std::size_t weight_cap);

    std::size_t n() const { return n_; }
    std::size_t cap() const { return cap_; }

    uint64_t reduce_unit(std::size_t q) const { return reduced_unit_[q]; }
    uint64_t reduce(uint64_t support) const;

    /// Minimum weight over the coset identified by `rep`, or nullopt when it
    /// exceeds the table cap.
    std::optional<std::size_t> coset_weight(uint64_t rep) const;

    bool weight_leq_rep(uint64_t rep, std::size_t t) const;
    bool weight_leq(uint64_t support, std::size_t t) const;

  private:
    std::size_t n_;
    std::size_t cap_;
    std::vector<uint64_t> reduced_unit_;
    std::unordered_map<uint64_t, uint8_t> min_weight_;
};

/// True iff some vector of weight <= t lies in the same stabilizer coset as
/// e.support (minimal weight modulo stabilizers is <= t). Throws when t
/// exceeds `t_cap`.
bool weight_leq(const PauliError& e, std::size_t t, const CssCode& code,
                std::size_t t_cap = 4);

/// Stabilizer equivalence: e1.support xor e2.support lies in the row space of
/// the same-basis check matrix.
bool equivalent(const PauliError& e1, const PauliError& e2, const CssCode& code);

}  // namespace ftsp
