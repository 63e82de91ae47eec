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

#include "ftsp/ftcheck.hpp"

#include <unordered_map>

#include "ftsp/errors.hpp"

namespace ftsp {

namespace {

std::vector<uint64_t> reps_of(const FaultSet& set, const CosetTables& tables) {
    std::vector<uint64_t> reps;
    reps.reserve(set.size());
    for (const BitVector& e : set.errors()) {
        reps.push_back(tables.reduce(e.word(0)));
    }
    return reps;
}

/// rep -> smallest element index
std::unordered_map<uint64_t, std::size_t> single_index(
    const std::vector<uint64_t>& reps) {
    std::unordered_map<uint64_t, std::size_t> out;
    out.reserve(reps.size() * 2);
    for (std::size_t i = 0; i < reps.size(); ++i) {
        out.emplace(reps[i], i);
    }
    return out;
}

/// rep of pair product -> smallest (i, j) pair, i < j
std::unordered_map<uint64_t, std::pair<std::size_t, std::size_t>> pair_index(
    const std::vector<uint64_t>& reps) {
    std::unordered_map<uint64_t, std::pair<std::size_t, std::size_t>> out;
    out.reserve(reps.size() * reps.size() / 2 + 1);
    for (std::size_t i = 0; i < reps.size(); ++i) {
        for (std::size_t j = i + 1; j < reps.size(); ++j) {
            out.emplace(reps[i] ^ reps[j], std::make_pair(i, j));
        }
    }
    return out;
}

PauliError element(const FaultSet& set, std::size_t i) {
    return PauliError{set.basis(), set.errors()[i]};
}

DistinctnessWitness make_witness(const FaultSet& e1,
                                 const std::vector<std::size_t>& f1,
                                 const FaultSet& e2,
                                 const std::vector<std::size_t>& f2) {
    DistinctnessWitness w;
    for (std::size_t i : f1) {
        w.subset_1.push_back(element(e1, i));
        w.origin_1.push_back(e1.origins()[i]);
    }
    for (std::size_t j : f2) {
        w.subset_2.push_back(element(e2, j));
        w.origin_2.push_back(e2.origins()[j]);
    }
    w.combined_weight_bound = f1.size() + f2.size();
    return w;
}

}  // namespace

std::optional<DistinctnessWitness> find_distinctness_violation(
    const FaultSet& e1, const FaultSet& e2, std::size_t t, const CssCode& code,
    std::size_t t_cap) {
    if (t > t_cap) {
        throw ValidationError("distinctness check: t exceeds configured cap");
    }
    if (t < 1 || e1.basis() != e2.basis()) {
        throw std::invalid_argument("find_distinctness_violation: bad arguments");
    }
    if (t < 2 || e1.size() == 0 || e2.size() == 0) {
        return std::nullopt;   // a violating pair needs one element per side
    }
    CosetTables tables(code.checks(e1.basis()), code.n, t);
    std::vector<uint64_t> reps1 = reps_of(e1, tables);
    std::vector<uint64_t> reps2 = reps_of(e2, tables);
    auto singles2 = single_index(reps2);

    auto heavy = [&](uint64_t rep, std::size_t s) {
        auto w = tables.coset_weight(rep);
        return !w.has_value() || *w > s;   // absent => weight beyond cap >= t >= s
    };

    // s = 2: pairs (1,1)
    for (std::size_t i = 0; i < reps1.size(); ++i) {
        if (!heavy(reps1[i], 2)) {
            continue;
        }
        auto it = singles2.find(reps1[i]);
        if (it != singles2.end()) {
            return make_witness(e1, {i}, e2, {it->second});
        }
    }
    if (t < 3) {
        return std::nullopt;
    }
    // s = 3: (1,2) then (2,1)
    auto singles1 = single_index(reps1);
    for (std::size_t j1 = 0; j1 < reps2.size(); ++j1) {
        for (std::size_t j2 = j1 + 1; j2 < reps2.size(); ++j2) {
            uint64_t prod = reps2[j1] ^ reps2[j2];
            if (!heavy(prod, 3)) {
                continue;
            }
            auto it = singles1.find(prod);
            if (it != singles1.end()) {
                return make_witness(e1, {it->second}, e2, {j1, j2});
            }
        }
    }
    for (std::size_t i1 = 0; i1 < reps1.size(); ++i1) {
        for (std::size_t i2 = i1 + 1; i2 < reps1.size(); ++i2) {
            uint64_t prod = reps1[i1] ^ reps1[i2];
            if (!heavy(prod, 3)) {
                continue;
            }
            auto it = singles2.find(prod);
            if (it != singles2.end()) {
                return make_witness(e1, {i1, i2}, e2, {it->second});
            }
        }
    }
    return std::nullopt;
}

std::optional<StrictFtWitness> find_strict_ft_violation(const PrepCircuit& c,
                                                        const CssCode& code,
                                                        Basis basis,
                                                        std::size_t t_cap) {
    if (!code.d.has_value()) {
        throw ValidationError("strict FT check requires a known code distance");
    }
    std::size_t t_max = (*code.d - 1) / 2;
    if (t_max > t_cap) {
        throw ValidationError("strict FT check: t exceeds configured cap");
    }
    FaultSet set = fault_set(c, basis);
    CosetTables tables(code.checks(basis), code.n, t_max);
    std::vector<uint64_t> reps = reps_of(set, tables);

    auto heavy = [&](uint64_t rep, std::size_t s) {
        auto w = tables.coset_weight(rep);
        return !w.has_value() || *w > s;
    };
    auto witness = [&](const std::vector<std::size_t>& idx) {
        StrictFtWitness w;
        w.basis = basis;
        for (std::size_t i : idx) {
            w.errors.push_back(element(set, i));
            w.origins.push_back(set.origins()[i]);
        }
        return w;
    };

    for (std::size_t i = 0; i < reps.size() && t_max >= 1; ++i) {
        if (heavy(reps[i], 1)) {
            return witness({i});
        }
    }
    for (std::size_t i = 0; i < reps.size() && t_max >= 2; ++i) {
        for (std::size_t j = i + 1; j < reps.size(); ++j) {
            if (heavy(reps[i] ^ reps[j], 2)) {
                return witness({i, j});
            }
        }
    }
    for (std::size_t i = 0; i < reps.size() && t_max >= 3; ++i) {
        for (std::size_t j = i + 1; j < reps.size(); ++j) {
            uint64_t pij = reps[i] ^ reps[j];
            for (std::size_t l = j + 1; l < reps.size(); ++l) {
                if (heavy(pij ^ reps[l], 3)) {
                    return witness({i, j, l});
                }
            }
        }
    }
    return std::nullopt;
}

QuadrupleReport verify_quadruple(const PrepCircuit& c1, const PrepCircuit& c2,
                                 const PrepCircuit& c3, const PrepCircuit& c4,
                                 const CssCode& code, std::size_t t_cap) {
    if (!code.d.has_value()) {
        throw ValidationError("verify_quadruple requires a known code distance");
    }
    QuadrupleReport report;
    report.t = (*code.d - 1) / 2;
    const PrepCircuit* circuits[4] = {&c1, &c2, &c3, &c4};
    for (int i = 0; i < 4; ++i) {
        report.prepares[i] = verify_prepares(*circuits[i], code);
    }
    if (!report.all_prepare()) {
        return report;
    }
    FaultSet ex1 = fault_set(c1, Basis::X);
    FaultSet ex2 = fault_set(c2, Basis::X);
    FaultSet ex3 = fault_set(c3, Basis::X);
    FaultSet ex4 = fault_set(c4, Basis::X);
    FaultSet ez12 = FaultSet::merge(fault_set(c1, Basis::Z), fault_set(c2, Basis::Z));
    FaultSet ez34 = FaultSet::merge(fault_set(c3, Basis::Z), fault_set(c4, Basis::Z));

    if (auto w = find_distinctness_violation(ex1, ex2, report.t, code, t_cap)) {
        report.witnesses.push_back({1, std::move(*w)});
    }
    if (auto w = find_distinctness_violation(ex3, ex4, report.t, code, t_cap)) {
        report.witnesses.push_back({2, std::move(*w)});
    }
    if (auto w = find_distinctness_violation(ez12, ez34, report.t, code, t_cap)) {
        report.witnesses.push_back({3, std::move(*w)});
    }
    return report;
}

bool incremental_distinct(const FaultSet& existing, const PauliError& new_error,
                          const FaultSet& ref, std::size_t t, const CssCode& code,
                          std::size_t t_cap) {
    if (t > t_cap) {
        throw ValidationError("incremental check: t exceeds configured cap");
    }
    if (existing.basis() != new_error.basis || ref.basis() != new_error.basis) {
        throw std::invalid_argument("incremental_distinct: basis mismatch");
    }
    if (existing.contains(new_error.support)) {
        return true;   // no new subsets
    }
    if (t < 2 || ref.size() == 0) {
        return true;
    }
    CosetTables tables(code.checks(new_error.basis), code.n, t);
    uint64_t new_rep = tables.reduce(new_error.support.word(0));
    std::vector<uint64_t> ref_reps = reps_of(ref, tables);
    auto heavy = [&](uint64_t rep, std::size_t s) {
        auto w = tables.coset_weight(rep);
        return !w.has_value() || *w > s;
    };
    // ({new}, {r})
    if (heavy(new_rep, 2)) {
        for (uint64_t r : ref_reps) {
            if (r == new_rep) {
                return false;
            }
        }
    }
    if (t < 3) {
        return true;
    }
    // ({new}, {r1, r2})
    for (std::size_t j1 = 0; j1 < ref_reps.size(); ++j1) {
        for (std::size_t j2 = j1 + 1; j2 < ref_reps.size(); ++j2) {
            uint64_t prod = ref_reps[j1] ^ ref_reps[j2];
            if (prod == new_rep && heavy(prod, 3)) {
                return false;
            }
        }
    }
    // ({new, e}, {r})
    std::unordered_map<uint64_t, std::size_t> ref_singles = single_index(ref_reps);
    for (const BitVector& e : existing.errors()) {
        uint64_t prod = new_rep ^ tables.reduce(e.word(0));
        if (heavy(prod, 3) && ref_singles.count(prod) > 0) {
            return false;
        }
    }
    return true;
}

}  // namespace ftsp
