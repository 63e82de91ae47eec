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
#include <string>
#include <vector>

#include "ftsp/bitmat.hpp"

namespace ftsp {

enum class Basis : uint8_t { X, Z };

inline char basis_char(Basis b) { return b == Basis::X ? 'X' : 'Z'; }
inline Basis opposite(Basis b) { return b == Basis::X ? Basis::Z : Basis::X; }

/// An [[n, k, d]] CSS code. Check-matrix rows are a basis of each stabilizer
/// group; logical operators are canonical representatives with
/// logicals_x * logicals_z^T == I_k.
struct CssCode {
    std::size_t n = 0;
    std::size_t k = 0;
    std::optional<std::size_t> d;   // set when known (registry) or computed
    BitMatrix h_x;                  // m_X x n
    BitMatrix h_z;                  // m_Z x n
    BitMatrix logicals_x;           // k x n
    BitMatrix logicals_z;           // k x n

    std::size_t m_x() const { return h_x.rows(); }
    std::size_t m_z() const { return h_z.rows(); }

    const BitMatrix& checks(Basis b) const { return b == Basis::X ? h_x : h_z; }
    const BitMatrix& logicals(Basis b) const {
        return b == Basis::X ? logicals_x : logicals_z;
    }

    /// Builds a CssCode from raw check matrices. Throws ValidationError naming
    /// the offending row pair if the CSS condition h_x * h_z^T == 0 fails.
    /// Linearly dependent rows are dropped (recorded in `warnings` if given).
    /// Codes wider than 64 qubits are rejected.
    static CssCode validate(const BitMatrix& h_x, const BitMatrix& h_z,
                            std::vector<std::string>* warnings = nullptr);
};

/// Minimum weight over ker(opposite checks) \ rowspace(same-basis checks),
/// found by increasing-weight enumeration of candidate supports. Returns
/// nullopt when n exceeds `n_cap` (callers may then rely on registry d).
std::optional<std::size_t> distance(const CssCode& code, Basis basis,
                                    std::size_t n_cap = 40);

struct RegistryEntry {
    std::string name;
    std::string description;
    std::size_t n;
    std::size_t k;
    std::size_t d;
    /// Qubit permutation that preserves both stabilizer groups (present for
    /// the hexagonal-lattice codes; verified at construction).
    std::optional<std::vector<std::size_t>> automorphism;
};

/// Names of all built-in codes.
std::vector<RegistryEntry> registry_list();

/// Returns the named built-in code, validated, with d set.
/// Throws ValidationError whose message lists available names if unknown.
CssCode registry_lookup(const std::string& name);

/// Check-matrix text format: a line "HX", rows of space-separated 0/1, a line
/// "HZ", more rows. '#' starts a comment. Returns the matrices unvalidated.
std::pair<BitMatrix, BitMatrix> parse_check_file(const std::string& text);

std::string serialize_check_file(const BitMatrix& h_x, const BitMatrix& h_z);

}  // namespace ftsp
