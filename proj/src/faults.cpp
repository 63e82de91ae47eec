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

#include "ftsp/faults.hpp"

#include <stdexcept>

#include "ftsp/errors.hpp"

namespace ftsp {

bool FaultSet::insert(const BitVector& support, std::size_t after_gate,
                      std::size_t qubit) {
    if (!index_.insert(support).second) {
        return false;
    }
    errors_.push_back(support);
    origins_.emplace_back(after_gate, qubit);
    return true;
}

FaultSet FaultSet::merge(const FaultSet& a, const FaultSet& b) {
    if (a.basis_ != b.basis_ || a.n_ != b.n_) {
        throw std::invalid_argument("FaultSet::merge: incompatible sets");
    }
    FaultSet out(a.basis_, a.n_);
    for (std::size_t i = 0; i < a.errors_.size(); ++i) {
        out.insert(a.errors_[i], a.origins_[i].first, a.origins_[i].second);
    }
    for (std::size_t i = 0; i < b.errors_.size(); ++i) {
        out.insert(b.errors_[i], b.origins_[i].first, b.origins_[i].second);
    }
    return out;
}

PauliError propagate(const PrepCircuit& c, Basis basis, std::size_t seed_qubit,
                     std::size_t after_gate) {
    if (seed_qubit >= c.n() || after_gate > c.gates().size()) {
        throw std::out_of_range("propagate: index out of range");
    }
    BitVector support(c.n());
    support.set(seed_qubit, true);
    for (std::size_t g = after_gate; g < c.gates().size(); ++g) {
        const Gate& gate = c.gates()[g];
        if (basis == Basis::X) {
            if (support.get(gate.control)) {
                support.flip(gate.target);
            }
        } else {
            if (support.get(gate.target)) {
                support.flip(gate.control);
            }
        }
    }
    return PauliError{basis, std::move(support)};
}

FaultSet fault_set(const PrepCircuit& c, Basis basis) {
    std::size_t n = c.n();
    std::size_t m = c.gates().size();
    FaultSet out(basis, n);
    // rows[i] = propagation of a basis fault on qubit i from the current
    // boundary to the end; walk boundaries from m down to 0
    std::vector<BitVector> rows;
    rows.reserve(n);
    for (std::size_t q = 0; q < n; ++q) {
        rows.push_back(BitVector::unit(n, q));
        out.insert(rows.back(), m, q);
    }
    for (std::size_t g = m; g-- > 0;) {
        const Gate& gate = c.gates()[g];
        if (basis == Basis::X) {
            rows[gate.control] ^= rows[gate.target];
            out.insert(rows[gate.control], g, gate.control);
        } else {
            rows[gate.target] ^= rows[gate.control];
            out.insert(rows[gate.target], g, gate.target);
        }
    }
    return out;
}

CosetTables::CosetTables(const BitMatrix& stabilizer_rows, std::size_t n,
                         std::size_t weight_cap)
    : n_(n), cap_(weight_cap) {
    if (n > 64) {
        throw std::invalid_argument("CosetTables: supports up to 64 qubits");
    }
    RowBasis basis(n);
    for (std::size_t r = 0; r < stabilizer_rows.rows(); ++r) {
        basis.insert(stabilizer_rows.row(r));
    }
    reduced_unit_.resize(n);
    for (std::size_t q = 0; q < n; ++q) {
        reduced_unit_[q] = basis.reduce(BitVector::unit(n, q)).word(0);
    }
    min_weight_.reserve(1u << 16);
    min_weight_[0] = 0;
    // increasing-weight enumeration of supports; first hit per rep is minimal
    std::vector<std::size_t> idx;
    for (std::size_t w = 1; w <= cap_ && w <= n; ++w) {
        idx.assign(w, 0);
        std::vector<uint64_t> acc(w + 1, 0);
        std::size_t depth = 0;
        idx[0] = 0;
        while (true) {
            if (idx[depth] + (w - depth) > n) {
                if (depth == 0) {
                    break;
                }
                --depth;
                ++idx[depth];
                continue;
            }
            acc[depth + 1] = acc[depth] ^ reduced_unit_[idx[depth]];
            if (depth + 1 == w) {
                min_weight_.emplace(acc[w], static_cast<uint8_t>(w));
                ++idx[depth];
            } else {
                ++depth;
                idx[depth] = idx[depth - 1] + 1;
            }
        }
    }
}

uint64_t CosetTables::reduce(uint64_t support) const {
    uint64_t rep = 0;
    while (support != 0) {
        std::size_t q = static_cast<std::size_t>(__builtin_ctzll(support));
        support &= support - 1;
        rep ^= reduced_unit_[q];
    }
    return rep;
}

std::optional<std::size_t> CosetTables::coset_weight(uint64_t rep) const {
    auto it = min_weight_.find(rep);
    if (it == min_weight_.end()) {
        return std::nullopt;
    }
    return it->second;
}

bool CosetTables::weight_leq_rep(uint64_t rep, std::size_t t) const {
    if (t > cap_) {
        throw ValidationError("weight query exceeds table cap");
    }
    auto it = min_weight_.find(rep);
    return it != min_weight_.end() && it->second <= t;
}

bool CosetTables::weight_leq(uint64_t support, std::size_t t) const {
    return weight_leq_rep(reduce(support), t);
}

bool weight_leq(const PauliError& e, std::size_t t, const CssCode& code,
                std::size_t t_cap) {
    if (t > t_cap) {
        throw ValidationError("weight_leq: t exceeds configured cap");
    }
    if (e.support.size() != code.n) {
        throw std::invalid_argument("weight_leq: support length mismatch");
    }
    CosetTables tables(code.checks(e.basis), code.n, t);
    return tables.weight_leq(e.support.word(0), t);
}

bool equivalent(const PauliError& e1, const PauliError& e2, const CssCode& code) {
    if (e1.basis != e2.basis) {
        throw std::invalid_argument("equivalent: basis mismatch");
    }
    if (e1.support.size() != e2.support.size() || e1.support.size() != code.n) {
        throw std::invalid_argument("equivalent: length mismatch");
    }
    return in_row_space(code.checks(e1.basis), e1.support ^ e2.support);
}

}  // namespace ftsp
