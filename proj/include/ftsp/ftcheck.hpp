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
#include <vector>

#include "ftsp/faults.hpp"

namespace ftsp {

/// Certificate that two fault sets are not t-distinct: the subset products
/// are stabilizer-equivalent, yet their minimal weight modulo stabilizers
/// exceeds |subset_1| + |subset_2|.
struct DistinctnessWitness {
    std::vector<PauliError> subset_1;
    std::vector<PauliError> subset_2;
    std::size_t combined_weight_bound = 0;   // |subset_1| + |subset_2|
    /// Originating (gate boundary, qubit) of each subset element, aligned
    /// with subset_1/subset_2; usable for deterministic fault replay.
    std::vector<std::pair<std::size_t, std::size_t>> origin_1;
    std::vector<std::pair<std::size_t, std::size_t>> origin_2;
};

/// Searches all subset pairs F1 of e1, F2 of e2 with |F1| + |F2| <= t, in
/// order of increasing combined size. Weight throughout is minimal weight
/// modulo the same-basis stabilizer group. Returns the first violation, or
/// nullopt when the sets are t-distinct. Throws when t exceeds `t_cap`.
std::optional<DistinctnessWitness> find_distinctness_violation(
    const FaultSet& e1, const FaultSet& e2, std::size_t t, const CssCode& code,
    std::size_t t_cap = 3);

inline bool is_t_distinct(const FaultSet& e1, const FaultSet& e2, std::size_t t,
                          const CssCode& code, std::size_t t_cap = 3) {
    return !find_distinctness_violation(e1, e2, t, code, t_cap).has_value();
}

/// A combination of <= floor((d-1)/2) fault-set elements whose product has
/// minimal weight exceeding the combination size.
struct StrictFtWitness {
    Basis basis;
    std::vector<PauliError> errors;
    std::vector<std::pair<std::size_t, std::size_t>> origins;
};

std::optional<StrictFtWitness> find_strict_ft_violation(const PrepCircuit& c,
                                                        const CssCode& code,
                                                        Basis basis,
                                                        std::size_t t_cap = 3);

inline bool is_strictly_ft(const PrepCircuit& c, const CssCode& code, Basis basis,
                           std::size_t t_cap = 3) {
    return !find_strict_ft_violation(c, code, basis, t_cap).has_value();
}

struct ConditionWitness {
    int condition;   // 1..3, numbering of the pairwise distinctness conditions
    DistinctnessWitness witness;
};

struct QuadrupleReport {
    std::array<bool, 4> prepares{false, false, false, false};
    std::size_t t = 0;
    std::vector<ConditionWitness> witnesses;

    bool all_prepare() const {
        return prepares[0] && prepares[1] && prepares[2] && prepares[3];
    }
    bool ok() const { return all_prepare() && witnesses.empty(); }
};

/// Evaluates the three protocol distinctness conditions at t = floor((d-1)/2):
///   1) X fault sets of circuits 1 and 2,
///   2) X fault sets of circuits 3 and 4,
///   3) the union of Z fault sets of circuits 1,2 against that of 3,4.
/// Circuits that fail verify_prepares short-circuit the distinctness checks.
QuadrupleReport verify_quadruple(const PrepCircuit& c1, const PrepCircuit& c2,
                                 const PrepCircuit& c3, const PrepCircuit& c4,
                                 const CssCode& code, std::size_t t_cap = 3);

/// Assuming `existing` is already t-distinct to `ref`, decides whether
/// existing + {new_error} still is; only subset pairs involving the new error
/// are enumerated.
bool incremental_distinct(const FaultSet& existing, const PauliError& new_error,
                          const FaultSet& ref, std::size_t t, const CssCode& code,
                          std::size_t t_cap = 3);

}  // namespace ftsp
