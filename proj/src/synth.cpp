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

#include "ftsp/synth.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "ftsp/errors.hpp"

namespace ftsp {

namespace {

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

uint64_t stage_seed(uint64_t seed, uint64_t stage) {
    return splitmix64(seed ^ splitmix64(stage));
}

uint64_t gate_key(std::size_t control, std::size_t target) {
    return control * 64 + target;
}

struct Candidate {
    std::size_t cost;
    uint64_t tie;
    std::size_t control;
    std::size_t target;
};

/// One per-basis reference for the incremental distinctness filter.
struct RefIndex {
    bool active = false;
    std::unordered_set<uint64_t> singles;
    std::unordered_set<uint64_t> pairs;   // products of two reps; t >= 3 only
};

class Engine {
  public:
    Engine(const CssCode& code, const GuidedRefs& refs, std::size_t t,
           const SynthConfig& cfg)
        : code_(code), refs_(refs), t_(t), cfg_(cfg), n_(code.n) {
        guided_ = refs.ref_x != nullptr || refs.ref_z != nullptr;
        if (guided_) {
            tables_x_.emplace(code.h_x, n_, t_);
            tables_z_.emplace(code.h_z, n_, t_);
            if (refs.ref_x != nullptr) {
                build_ref_index(*refs.ref_x, *tables_x_, ref_x_);
            }
            if (refs.ref_z != nullptr) {
                build_ref_index(*refs.ref_z, *tables_z_, ref_z_);
            }
            build_structural_tables();
        }
        base_cols_ = matrix_columns(cfg.start_from_rref && guided_
                                        ? rref(code.h_x).matrix
                                        : code.h_x);
        max_gates_ = n_ * code.h_x.rows() + 64;
    }

    SynthOutcome run() {
        SynthOutcome out;
        for (std::size_t restart = 0; restart <= cfg_.max_restarts; ++restart) {
            if (restart > 0) {
                out.stats.restarts += 1;
            }
            reset(cfg_.seed ^ restart);
            if (attempt(out.stats)) {
                out.circuit = finish();
                return out;
            }
        }
        return out;
    }

  private:
    // --- setup ---------------------------------------------------------

    std::vector<uint64_t> matrix_columns(const BitMatrix& h) const {
        std::vector<uint64_t> cols(n_, 0);
        for (std::size_t r = 0; r < h.rows(); ++r) {
            for (std::size_t c = 0; c < n_; ++c) {
                if (h.get(r, c)) {
                    cols[c] |= uint64_t{1} << r;
                }
            }
        }
        return cols;
    }

    void build_ref_index(const FaultSet& ref, const CosetTables& tables,
                         RefIndex& idx) {
        idx.active = true;
        std::vector<uint64_t> reps;
        reps.reserve(ref.size());
        for (const BitVector& e : ref.errors()) {
            reps.push_back(tables.reduce(e.word(0)));
        }
        idx.singles.insert(reps.begin(), reps.end());
        if (t_ >= 3) {
            for (std::size_t i = 0; i < reps.size(); ++i) {
                for (std::size_t j = i + 1; j < reps.size(); ++j) {
                    idx.pairs.insert(reps[i] ^ reps[j]);
                }
            }
        }
    }

    void build_structural_tables() {
        if (!cfg_.forbid_ref_last_layer && !cfg_.forbid_ref_substructures) {
            return;
        }
        CosetTables weight2(code_.h_x, n_, 2);
        for (const PrepCircuit* ref : refs_.structural_refs) {
            if (ref == nullptr || ref->depth() == 0) {
                continue;
            }
            std::size_t last = ref->depth() - 1;
            const auto& layers = ref->gate_layers();
            for (std::size_t g = 0; g < ref->gates().size(); ++g) {
                if (layers[g] == last) {
                    ref_last_layer_.insert(gate_key(ref->gates()[g].control,
                                                    ref->gates()[g].target));
                }
            }
            if (last == 0) {
                continue;
            }
            // CX(i,j) in the second-to-last layer feeding CX(j,k) in the last
            // layer propagates X_i to the triple X_i X_j X_k; record the pair
            // when that triple is irreducible below weight 3.
            for (std::size_t g1 = 0; g1 < ref->gates().size(); ++g1) {
                if (layers[g1] != last - 1) {
                    continue;
                }
                for (std::size_t g2 = 0; g2 < ref->gates().size(); ++g2) {
                    if (layers[g2] != last) {
                        continue;
                    }
                    const Gate& a = ref->gates()[g1];
                    const Gate& b = ref->gates()[g2];
                    if (a.target != b.control) {
                        continue;
                    }
                    uint64_t triple = (uint64_t{1} << a.control) |
                                      (uint64_t{1} << a.target) |
                                      (uint64_t{1} << b.target);
                    if (!weight2.weight_leq(triple, 2)) {
                        forbidden_follow_[gate_key(a.control, a.target)].insert(
                            gate_key(b.control, b.target));
                    }
                }
            }
        }
    }

    // --- per-attempt state ----------------------------------------------

    struct Placed {
        Gate gate;
        bool new_x;
        bool new_z;
    };

    struct TrackedSet {
        std::vector<uint64_t> supports;
        std::vector<uint64_t> reps;
        std::unordered_set<uint64_t> index;

        bool contains(uint64_t s) const { return index.count(s) > 0; }
        void push(uint64_t s, uint64_t rep) {
            supports.push_back(s);
            reps.push_back(rep);
            index.insert(s);
        }
        void pop() {
            index.erase(supports.back());
            supports.pop_back();
            reps.pop_back();
        }
    };

    void reset(uint64_t seed) {
        rng_.seed(seed);
        cols_ = base_cols_;
        nnz_ = 0;
        for (uint64_t c : cols_) {
            nnz_ += static_cast<std::size_t>(std::popcount(c));
        }
        xrow_.assign(n_, 0);
        zrow_.assign(n_, 0);
        ex_ = TrackedSet{};
        ez_ = TrackedSet{};
        for (std::size_t q = 0; q < n_; ++q) {
            xrow_[q] = uint64_t{1} << q;
            zrow_[q] = uint64_t{1} << q;
            if (guided_) {
                ex_.push(xrow_[q], tables_x_->reduce(xrow_[q]));
                ez_.push(zrow_[q], tables_z_->reduce(zrow_[q]));
            }
        }
        if (guided_ && refs_.seed_z != nullptr) {
            for (const BitVector& e : refs_.seed_z->errors()) {
                uint64_t s = e.word(0);
                if (!ez_.contains(s)) {
                    ez_.push(s, tables_z_->reduce(s));
                }
            }
        }
        seed_z_size_ = ez_.supports.size();
        stack_.clear();
        blocked_.assign(1, {});
        touch_count_.assign(n_, 0);
        qubit_stack_.assign(n_, {});
        backtracks_ = 0;
    }

    double unit_real() { return (rng_() >> 11) * (1.0 / 9007199254740992.0); }

    // --- candidate handling ----------------------------------------------

    /// Candidates that strictly shrink the working matrix, best cost first.
    /// Lateral and cost-increasing moves are excluded; when none of these
    /// passes the filters the checked plain-elimination tail takes over, so
    /// completeness is kept without unbounded wandering.
    std::vector<Candidate> ordered_candidates() {
        std::vector<Candidate> cands;
        cands.reserve(n_ * n_);
        for (std::size_t i = 0; i < n_; ++i) {
            if (cols_[i] == 0) {
                continue;
            }
            for (std::size_t j = 0; j < n_; ++j) {
                if (j == i) {
                    continue;
                }
                std::size_t wj = static_cast<std::size_t>(std::popcount(cols_[j]));
                std::size_t wx =
                    static_cast<std::size_t>(std::popcount(cols_[i] ^ cols_[j]));
                if (wx >= wj) {
                    continue;
                }
                cands.push_back(Candidate{nnz_ - wj + wx, rng_(), i, j});
            }
        }
        std::sort(cands.begin(), cands.end(), [](const Candidate& a,
                                                 const Candidate& b) {
            if (a.cost != b.cost) {
                return a.cost < b.cost;
            }
            if (a.tie != b.tie) {
                return a.tie < b.tie;
            }
            return std::make_pair(a.control, a.target) <
                   std::make_pair(b.control, b.target);
        });
        if (guided_ && cfg_.perturbation_prob > 0 &&
            unit_real() < cfg_.perturbation_prob && !cands.empty()) {
            // move the best cost tier behind the second-best
            std::size_t c1 = cands.front().cost;
            std::size_t end1 = 0;
            while (end1 < cands.size() && cands[end1].cost == c1) {
                ++end1;
            }
            if (end1 < cands.size()) {
                std::size_t c2 = cands[end1].cost;
                std::size_t end2 = end1;
                while (end2 < cands.size() && cands[end2].cost == c2) {
                    ++end2;
                }
                std::rotate(cands.begin(), cands.begin() + end1,
                            cands.begin() + end2);
            }
        }
        return cands;
    }

    bool structurally_forbidden(std::size_t control, std::size_t target) const {
        if (cfg_.forbid_ref_last_layer && !ref_last_layer_.empty()) {
            // the candidate lands in the final circuit layer while nothing
            // placed so far touches its qubits
            if (touch_count_[control] == 0 && touch_count_[target] == 0 &&
                ref_last_layer_.count(gate_key(control, target)) > 0) {
                return true;
            }
        }
        if (cfg_.forbid_ref_substructures && !forbidden_follow_.empty()) {
            // next-in-time gate on the candidate's target
            if (!qubit_stack_[target].empty()) {
                const Gate& nxt = stack_[qubit_stack_[target].back()].gate;
                if (nxt.control == target) {
                    auto it = forbidden_follow_.find(gate_key(control, target));
                    if (it != forbidden_follow_.end() &&
                        it->second.count(gate_key(nxt.control, nxt.target)) > 0) {
                        return true;
                    }
                }
            }
        }
        return false;
    }

    bool passes_incremental(uint64_t new_rep, const TrackedSet& set,
                            const RefIndex& ref, const CosetTables& tables) const {
        auto heavy = [&](uint64_t rep, std::size_t s) {
            auto w = tables.coset_weight(rep);
            return !w.has_value() || *w > s;
        };
        if (t_ >= 2 && heavy(new_rep, 2) && ref.singles.count(new_rep) > 0) {
            return false;
        }
        if (t_ >= 3) {
            if (heavy(new_rep, 3) && ref.pairs.count(new_rep) > 0) {
                return false;
            }
            for (uint64_t r : set.reps) {
                uint64_t prod = new_rep ^ r;
                if (heavy(prod, 3) && ref.singles.count(prod) > 0) {
                    return false;
                }
            }
        }
        return true;
    }

    bool acceptable(std::size_t control, std::size_t target, bool& adds_x,
                    bool& adds_z) {
        uint64_t new_x = xrow_[control] ^ xrow_[target];
        uint64_t new_z = zrow_[control] ^ zrow_[target];
        adds_x = !guided_ ? false : !ex_.contains(new_x);
        adds_z = !guided_ ? false : !ez_.contains(new_z);
        if (!guided_) {
            return true;
        }
        if (adds_x && ref_x_.active &&
            !passes_incremental(tables_x_->reduce(new_x), ex_, ref_x_, *tables_x_)) {
            return false;
        }
        if (adds_z && ref_z_.active &&
            !passes_incremental(tables_z_->reduce(new_z), ez_, ref_z_, *tables_z_)) {
            return false;
        }
        return true;
    }

    void place(std::size_t control, std::size_t target, bool adds_x, bool adds_z) {
        cols_[target] ^= cols_[control];
        nnz_ = recount_or_adjust(target);
        xrow_[control] ^= xrow_[target];
        zrow_[target] ^= zrow_[control];
        if (guided_) {
            if (adds_x) {
                ex_.push(xrow_[control], tables_x_->reduce(xrow_[control]));
            }
            if (adds_z) {
                ez_.push(zrow_[target], tables_z_->reduce(zrow_[target]));
            }
        }
        stack_.push_back(Placed{Gate{control, target}, adds_x, adds_z});
        touch_count_[control] += 1;
        touch_count_[target] += 1;
        qubit_stack_[control].push_back(stack_.size() - 1);
        qubit_stack_[target].push_back(stack_.size() - 1);
        blocked_.resize(stack_.size() + 1);
        blocked_.back().clear();
    }

    void unplace() {
        Placed p = stack_.back();
        stack_.pop_back();
        qubit_stack_[p.gate.control].pop_back();
        qubit_stack_[p.gate.target].pop_back();
        touch_count_[p.gate.control] -= 1;
        touch_count_[p.gate.target] -= 1;
        if (guided_) {
            if (p.new_x) {
                ex_.pop();
            }
            if (p.new_z) {
                ez_.pop();
            }
        }
        zrow_[p.gate.target] ^= zrow_[p.gate.control];
        xrow_[p.gate.control] ^= xrow_[p.gate.target];
        cols_[p.gate.target] ^= cols_[p.gate.control];
        nnz_ = recount_or_adjust(p.gate.target);
        blocked_.resize(stack_.size() + 1);
    }

    std::size_t recount_or_adjust(std::size_t) {
        std::size_t total = 0;
        for (uint64_t c : cols_) {
            total += static_cast<std::size_t>(std::popcount(c));
        }
        return total;
    }

    std::size_t target_nnz() const { return code_.h_x.rows(); }

    // Completes the reduction with plain Gaussian elimination on the column
    // space; every forced op still runs through the filters. On a filtered-out
    // op the partial tail is reverted and the caller backtracks instead.
    bool plain_tail() {
        std::size_t placed_here = 0;
        std::size_t m = code_.h_x.rows();
        for (std::size_t r = 0; r < m; ++r) {
            std::size_t pivot = n_;
            for (std::size_t c = 0; c < n_; ++c) {
                if ((cols_[c] >> r) & 1) {
                    pivot = c;
                    break;
                }
            }
            if (pivot == n_) {
                continue;
            }
            for (std::size_t c = 0; c < n_; ++c) {
                if (c != pivot && ((cols_[c] >> r) & 1)) {
                    bool ok = !blocked_[stack_.size()].count(gate_key(pivot, c)) &&
                              !structurally_forbidden(pivot, c);
                    bool ax = false, az = false;
                    if (ok) {
                        ok = acceptable(pivot, c, ax, az);
                    }
                    if (!ok) {
                        while (placed_here-- > 0) {
                            unplace();
                        }
                        return false;
                    }
                    place(pivot, c, ax, az);
                    ++placed_here;
                }
            }
        }
        return nnz_ == target_nnz();
    }

    bool attempt(SynthStats& stats) {
        while (nnz_ > target_nnz()) {
            if (stack_.size() >= max_gates_) {
                return false;
            }
            std::vector<Candidate> cands = ordered_candidates();
            if (!guided_) {
                if (cands.empty()) {
                    return plain_tail();   // cannot fail without references
                }
                const Candidate& best = cands.front();
                bool ax = false, az = false;
                acceptable(best.control, best.target, ax, az);
                place(best.control, best.target, ax, az);
                continue;
            }
            bool placed = false;
            const auto& blocked_here = blocked_[stack_.size()];
            for (const Candidate& cand : cands) {
                if (blocked_here.count(gate_key(cand.control, cand.target)) > 0) {
                    continue;
                }
                if (structurally_forbidden(cand.control, cand.target)) {
                    continue;
                }
                bool ax = false, az = false;
                if (!acceptable(cand.control, cand.target, ax, az)) {
                    continue;
                }
                place(cand.control, cand.target, ax, az);
                placed = true;
                break;
            }
            if (placed) {
                continue;
            }
            if (plain_tail()) {
                return true;
            }
            if (stack_.empty()) {
                return false;   // nothing to undo; restart
            }
            Gate last = stack_.back().gate;
            unplace();
            blocked_[stack_.size()].insert(gate_key(last.control, last.target));
            stats.backtracks += 1;
            if (++backtracks_ > cfg_.max_backtracks) {
                return false;
            }
        }
        return true;
    }

    PrepCircuit finish() {
        std::vector<InitBasis> init(n_, InitBasis::Zero);
        for (std::size_t q = 0; q < n_; ++q) {
            if (cols_[q] != 0) {
                init[q] = InitBasis::Plus;
            }
        }
        std::vector<Gate> gates;
        gates.reserve(stack_.size());
        for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) {
            gates.push_back(it->gate);
        }
        PrepCircuit circuit(n_, std::move(init), std::move(gates));
        if (!verify_prepares(circuit, code_)) {
            throw std::logic_error("synth produced a non-preparing circuit");
        }
        return circuit;
    }

    const CssCode& code_;
    GuidedRefs refs_;
    std::size_t t_;
    SynthConfig cfg_;
    std::size_t n_;
    bool guided_ = false;
    std::size_t max_gates_ = 0;

    std::optional<CosetTables> tables_x_;
    std::optional<CosetTables> tables_z_;
    RefIndex ref_x_;
    RefIndex ref_z_;
    std::unordered_set<uint64_t> ref_last_layer_;
    std::unordered_map<uint64_t, std::unordered_set<uint64_t>> forbidden_follow_;

    std::vector<uint64_t> base_cols_;
    std::vector<uint64_t> cols_;
    std::size_t nnz_ = 0;
    std::mt19937_64 rng_;
    std::vector<uint64_t> xrow_, zrow_;
    TrackedSet ex_, ez_;
    std::size_t seed_z_size_ = 0;
    std::vector<Placed> stack_;
    std::vector<std::unordered_set<uint64_t>> blocked_;
    std::vector<std::size_t> touch_count_;
    std::vector<std::vector<std::size_t>> qubit_stack_;
    std::size_t backtracks_ = 0;
};

}  // namespace

std::size_t cost(const BitMatrix& h, const Gate& gate) {
    return col_add(h, gate.control, gate.target).count_ones();
}

PrepCircuit greedy_synth(const CssCode& code, const SynthConfig& cfg) {
    GuidedRefs refs;
    SynthConfig plain = cfg;
    plain.start_from_rref = false;
    SynthOutcome out = Engine(code, refs, 1, plain).run();
    if (!out.ok()) {
        throw std::logic_error("greedy synthesis cannot fail");
    }
    return std::move(*out.circuit);
}

SynthOutcome guided_synth(const CssCode& code, const FaultSet* ref_x,
                          const FaultSet* ref_z, std::size_t t,
                          const SynthConfig& cfg) {
    GuidedRefs refs;
    refs.ref_x = ref_x;
    refs.ref_z = ref_z;
    return guided_synth_ex(code, refs, t, cfg);
}

SynthOutcome guided_synth_ex(const CssCode& code, const GuidedRefs& refs,
                             std::size_t t, const SynthConfig& cfg) {
    if (t > 3) {
        throw ValidationError("guided synthesis: t exceeds configured cap");
    }
    if (refs.ref_x == nullptr && refs.ref_z == nullptr) {
        SynthOutcome out;
        out.circuit = greedy_synth(code, cfg);
        return out;
    }
    return Engine(code, refs, std::max<std::size_t>(t, 1), cfg).run();
}

QuadrupleOutcome synth_quadruple(const CssCode& code, const SynthConfig& cfg) {
    if (!code.d.has_value()) {
        throw ValidationError("synth_quadruple requires a known code distance");
    }
    std::size_t t = (*code.d - 1) / 2;
    QuadrupleOutcome out;

    SynthConfig stage_cfg = cfg;
    stage_cfg.seed = stage_seed(cfg.seed, 1);
    stage_cfg.start_from_rref = false;
    PrepCircuit c1 = greedy_synth(code, stage_cfg);

    FaultSet ex1 = fault_set(c1, Basis::X);
    GuidedRefs refs2;
    refs2.ref_x = &ex1;
    refs2.structural_refs = {&c1};
    stage_cfg.seed = stage_seed(cfg.seed, 2);
    SynthOutcome s2 = guided_synth_ex(code, refs2, t, stage_cfg);
    out.stats[1] = s2.stats;
    if (!s2.ok()) {
        out.failed_stage = 2;
        return out;
    }
    PrepCircuit c2 = std::move(*s2.circuit);

    FaultSet ez12 =
        FaultSet::merge(fault_set(c1, Basis::Z), fault_set(c2, Basis::Z));
    GuidedRefs refs3;
    refs3.ref_z = &ez12;
    stage_cfg.seed = stage_seed(cfg.seed, 3);
    SynthOutcome s3 = guided_synth_ex(code, refs3, t, stage_cfg);
    out.stats[2] = s3.stats;
    if (!s3.ok()) {
        out.failed_stage = 3;
        return out;
    }
    PrepCircuit c3 = std::move(*s3.circuit);

    FaultSet ex3 = fault_set(c3, Basis::X);
    FaultSet ez3 = fault_set(c3, Basis::Z);
    GuidedRefs refs4;
    refs4.ref_x = &ex3;
    refs4.ref_z = &ez12;
    refs4.seed_z = &ez3;
    refs4.structural_refs = {&c3};
    SynthConfig cfg4 = cfg;
    cfg4.seed = stage_seed(cfg.seed, 4);
    SynthOutcome s4 = guided_synth_ex(code, refs4, t, cfg4);
    out.stats[3] = s4.stats;
    if (!s4.ok()) {
        out.failed_stage = 4;
        return out;
    }
    PrepCircuit c4 = std::move(*s4.circuit);

    QuadrupleReport report = verify_quadruple(c1, c2, c3, c4, code);
    if (!report.ok()) {
        out.failed_stage = 5;
        return out;
    }
    out.circuits = {std::move(c1), std::move(c2), std::move(c3), std::move(c4)};
    return out;
}

SynthConfig synth_config_from_json(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    SynthConfig cfg;
    cfg.seed = j.value("seed", cfg.seed);
    cfg.max_backtracks = j.value("max_backtracks", cfg.max_backtracks);
    cfg.max_restarts = j.value("max_restarts", cfg.max_restarts);
    cfg.perturbation_prob = j.value("perturbation_prob", cfg.perturbation_prob);
    cfg.forbid_ref_last_layer =
        j.value("forbid_ref_last_layer", cfg.forbid_ref_last_layer);
    cfg.forbid_ref_substructures =
        j.value("forbid_ref_substructures", cfg.forbid_ref_substructures);
    cfg.start_from_rref = j.value("start_from_rref", cfg.start_from_rref);
    return cfg;
}

std::string synth_config_to_json(const SynthConfig& cfg) {
    nlohmann::json j;
    j["seed"] = cfg.seed;
    j["max_backtracks"] = cfg.max_backtracks;
    j["max_restarts"] = cfg.max_restarts;
    j["perturbation_prob"] = cfg.perturbation_prob;
    j["forbid_ref_last_layer"] = cfg.forbid_ref_last_layer;
    j["forbid_ref_substructures"] = cfg.forbid_ref_substructures;
    j["start_from_rref"] = cfg.start_from_rref;
    return j.dump(2);
}

}  // namespace ftsp
