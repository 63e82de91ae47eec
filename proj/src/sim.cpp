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

#include "ftsp/sim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <thread>
#include <unordered_map>

#include "ftsp/errors.hpp"
#include "ftsp/faults.hpp"

namespace ftsp {

namespace {

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

uint64_t prob_threshold(double p) {
    if (p <= 0.0) {
        return 0;
    }
    if (p >= 1.0) {
        return ~uint64_t{0};
    }
    long double scaled = static_cast<long double>(p) * 18446744073709551616.0L;
    return static_cast<uint64_t>(scaled);
}

std::vector<uint64_t> row_masks(const BitMatrix& m) {
    std::vector<uint64_t> out;
    out.reserve(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out.push_back(m.row(r).word(0));
    }
    return out;
}

uint64_t parity_bits(const std::vector<uint64_t>& rows, uint64_t value) {
    uint64_t bits = 0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        bits |= static_cast<uint64_t>(std::popcount(rows[r] & value) & 1) << r;
    }
    return bits;
}

struct CompiledGate {
    int block;
    std::size_t index;   // gate position within the block
    std::size_t control;
    std::size_t target;
};

struct CompiledLayer {
    std::vector<CompiledGate> prep_gates;
    std::vector<std::pair<int, int>> rounds;          // transversal (cb, tb)
    std::vector<std::pair<int, std::size_t>> idles;   // (block, qubit)
    bool is_measurement = false;
};

struct Compiled {
    std::size_t n = 0;
    std::array<std::vector<bool>, 4> plus_init;
    std::array<std::size_t, 4> gate_count{};
    std::vector<CompiledLayer> layers;
    std::vector<uint64_t> hz, hx, lz, lx;   // parity masks
};

Compiled compile(const ProtocolSchedule& s) {
    Compiled c;
    c.n = s.code().n;
    std::size_t dmax = s.max_prep_depth();
    for (int b = 0; b < 4; ++b) {
        const PrepCircuit& blk = s.block(b);
        c.plus_init[b].resize(c.n);
        for (std::size_t q = 0; q < c.n; ++q) {
            c.plus_init[b][q] = blk.init()[q] == InitBasis::Plus;
        }
        c.gate_count[b] = blk.gates().size();
    }
    for (std::size_t layer = 0; layer < dmax; ++layer) {
        CompiledLayer cl;
        std::array<uint64_t, 4> busy{};
        for (int b = 0; b < 4; ++b) {
            const PrepCircuit& blk = s.block(b);
            for (std::size_t g = 0; g < blk.gates().size(); ++g) {
                if (blk.gate_layers()[g] == layer) {
                    const Gate& gate = blk.gates()[g];
                    cl.prep_gates.push_back({b, g, gate.control, gate.target});
                    busy[b] |= uint64_t{1} << gate.control;
                    busy[b] |= uint64_t{1} << gate.target;
                }
            }
        }
        for (int b = 0; b < 4; ++b) {
            for (std::size_t q = 0; q < c.n; ++q) {
                if (!((busy[b] >> q) & 1)) {
                    cl.idles.emplace_back(b, q);
                }
            }
        }
        c.layers.push_back(std::move(cl));
    }
    {
        CompiledLayer a;
        a.rounds = {{0, 1}, {2, 3}};
        c.layers.push_back(std::move(a));
        CompiledLayer b;
        b.rounds = {{2, 0}};
        for (int blk : {1, 3}) {
            for (std::size_t q = 0; q < c.n; ++q) {
                b.idles.emplace_back(blk, q);
            }
        }
        c.layers.push_back(std::move(b));
        CompiledLayer m;
        m.is_measurement = true;
        for (std::size_t q = 0; q < c.n; ++q) {
            m.idles.emplace_back(0, q);
        }
        c.layers.push_back(std::move(m));
    }
    c.hz = row_masks(s.code().h_z);
    c.hx = row_masks(s.code().h_x);
    c.lz = row_masks(s.code().logicals_z);
    c.lx = row_masks(s.code().logicals_x);
    return c;
}

struct Frames {
    std::array<uint64_t, 4> fx{};
    std::array<uint64_t, 4> fz{};
};

void apply_1q(Frames& f, int block, std::size_t q, uint8_t code) {
    if (code & 1) {
        f.fx[block] ^= uint64_t{1} << q;
    }
    if (code & 2) {
        f.fz[block] ^= uint64_t{1} << q;
    }
}

void apply_2q(Frames& f, int cb, std::size_t cq, int tb, std::size_t tq,
              uint8_t code) {
    if (code & 1) {
        f.fx[cb] ^= uint64_t{1} << cq;
    }
    if (code & 2) {
        f.fz[cb] ^= uint64_t{1} << cq;
    }
    if (code & 4) {
        f.fx[tb] ^= uint64_t{1} << tq;
    }
    if (code & 8) {
        f.fz[tb] ^= uint64_t{1} << tq;
    }
}

/// Sampling policy for Monte Carlo shots.
struct SampledNoise {
    uint64_t t2 = 0;
    uint64_t tflip = 0;
    uint64_t tidle = 0;
    std::mt19937_64* rng = nullptr;

    explicit SampledNoise(const NoiseModel& m, std::mt19937_64& r)
        : t2(prob_threshold(m.two_qubit_total())),
          tflip(prob_threshold(m.prep_meas_flip())),
          tidle(prob_threshold(m.idle_total())), rng(&r) {}

    bool init_flip(int, std::size_t) { return (*rng)() < tflip; }
    bool meas_flip(int, std::size_t) { return (*rng)() < tflip; }
    uint8_t prep_gate_pauli(int, std::size_t) { return two_qubit(); }
    uint8_t transversal_pauli(std::size_t, std::size_t) { return two_qubit(); }
    uint8_t idle_pauli(std::size_t, int, std::size_t) {
        if ((*rng)() < tidle) {
            return static_cast<uint8_t>(1 + (*rng)() % 3);
        }
        return 0;
    }
    void boundary(Frames&, int, std::size_t, std::size_t) {}

    uint8_t two_qubit() {
        if ((*rng)() < t2) {
            return static_cast<uint8_t>(1 + (*rng)() % 15);
        }
        return 0;
    }
};

/// Deterministic injection policy.
struct InjectedNoise {
    const std::unordered_map<uint64_t, uint8_t>* faults;
    std::size_t n;

    bool init_flip(int b, std::size_t q) const {
        return faults->count(
                   FaultLocation{FaultLocation::Kind::Init, b, 0, q}.key()) > 0;
    }
    bool meas_flip(int b, std::size_t q) const {
        return faults->count(
                   FaultLocation{FaultLocation::Kind::Measurement, b, 0, q}
                       .key()) > 0;
    }
    uint8_t prep_gate_pauli(int b, std::size_t g) const {
        auto it = faults->find(
            FaultLocation{FaultLocation::Kind::PrepGate, b, g, 0}.key());
        return it == faults->end() ? 0 : it->second;
    }
    uint8_t transversal_pauli(std::size_t round, std::size_t q) const {
        auto it = faults->find(
            FaultLocation{FaultLocation::Kind::TransversalGate, 0, round, q}
                .key());
        return it == faults->end() ? 0 : it->second;
    }
    uint8_t idle_pauli(std::size_t layer, int b, std::size_t q) const {
        auto it = faults->find(FaultLocation{FaultLocation::Kind::Idle, b, layer,
                                             q}
                                   .key());
        return it == faults->end() ? 0 : it->second;
    }
    void boundary(Frames& f, int b, std::size_t j, std::size_t) const {
        for (std::size_t q = 0; q < n; ++q) {
            auto it = faults->find(
                FaultLocation{FaultLocation::Kind::PrepBoundary, b, j, q}.key());
            if (it != faults->end()) {
                apply_1q(f, b, q, it->second);
            }
        }
    }
};

template <class Noise>
ShotRecord walk_shot(const Compiled& c, Noise& noise) {
    Frames f;
    for (int b = 0; b < 4; ++b) {
        for (std::size_t q = 0; q < c.n; ++q) {
            if (noise.init_flip(b, q)) {
                if (c.plus_init[b][q]) {
                    f.fz[b] ^= uint64_t{1} << q;
                } else {
                    f.fx[b] ^= uint64_t{1} << q;
                }
            }
        }
    }
    for (int b = 0; b < 4; ++b) {
        noise.boundary(f, b, 0, c.n);
    }
    std::size_t round_index = 0;
    std::array<std::size_t, 4> gates_done{};
    for (std::size_t layer = 0; layer < c.layers.size(); ++layer) {
        const CompiledLayer& cl = c.layers[layer];
        for (const CompiledGate& g : cl.prep_gates) {
            uint64_t cbit = (f.fx[g.block] >> g.control) & 1;
            f.fx[g.block] ^= cbit << g.target;
            uint64_t tbit = (f.fz[g.block] >> g.target) & 1;
            f.fz[g.block] ^= tbit << g.control;
            uint8_t pauli = noise.prep_gate_pauli(g.block, g.index);
            if (pauli != 0) {
                apply_2q(f, g.block, g.control, g.block, g.target, pauli);
            }
            gates_done[g.block] += 1;
            noise.boundary(f, g.block, gates_done[g.block], c.n);
        }
        for (const auto& [cb, tb] : cl.rounds) {
            f.fx[tb] ^= f.fx[cb];
            f.fz[cb] ^= f.fz[tb];
            for (std::size_t q = 0; q < c.n; ++q) {
                uint8_t pauli = noise.transversal_pauli(round_index, q);
                if (pauli != 0) {
                    apply_2q(f, cb, q, tb, q, pauli);
                }
            }
            ++round_index;
        }
        ShotRecord rec;
        if (cl.is_measurement) {
            rec.m2 = f.fx[1];
            rec.m3 = f.fz[2];
            rec.m4 = f.fx[3];
            for (std::size_t q = 0; q < c.n; ++q) {
                if (noise.meas_flip(1, q)) {
                    rec.m2 ^= uint64_t{1} << q;
                }
            }
            for (std::size_t q = 0; q < c.n; ++q) {
                if (noise.meas_flip(2, q)) {
                    rec.m3 ^= uint64_t{1} << q;
                }
            }
            for (std::size_t q = 0; q < c.n; ++q) {
                if (noise.meas_flip(3, q)) {
                    rec.m4 ^= uint64_t{1} << q;
                }
            }
            for (const auto& [b, q] : cl.idles) {
                uint8_t pauli = noise.idle_pauli(layer, b, q);
                if (pauli != 0) {
                    apply_1q(f, b, q, pauli);
                }
            }
            rec.residual_x = f.fx[0];
            rec.residual_z = f.fz[0];
            rec.accepted = parity_bits(c.hz, rec.m2) == 0 &&
                           parity_bits(c.lz, rec.m2) == 0 &&
                           parity_bits(c.hx, rec.m3) == 0 &&
                           parity_bits(c.lx, rec.m3) == 0 &&
                           parity_bits(c.hz, rec.m4) == 0 &&
                           parity_bits(c.lz, rec.m4) == 0;
            return rec;
        }
        for (const auto& [b, q] : cl.idles) {
            uint8_t pauli = noise.idle_pauli(layer, b, q);
            if (pauli != 0) {
                apply_1q(f, b, q, pauli);
            }
        }
    }
    throw std::logic_error("protocol walk ended without a measurement layer");
}

struct GadgetOutcome {
    bool failure = false;
};

/// Steane-type Z-error estimation gadget appended to an accepted shot.
GadgetOutcome run_z_gadget(const Compiled& c, const LutDecoder& lut,
                           const NoiseModel& noise, const ShotRecord& rec,
                           std::mt19937_64& rng) {
    uint64_t tdepol = prob_threshold(noise.p);
    uint64_t t2 = prob_threshold(noise.two_qubit_total());
    uint64_t tflip = prob_threshold(noise.prep_meas_flip());
    uint64_t gz = 0;
    for (std::size_t q = 0; q < c.n; ++q) {
        if (rng() < tdepol) {
            uint8_t pauli = static_cast<uint8_t>(1 + rng() % 3);
            if (pauli & 2) {
                gz ^= uint64_t{1} << q;
            }
        }
    }
    // transversal CNOT, surviving block as control: Z errors copy onto it
    uint64_t fz0 = rec.residual_z ^ gz;
    for (std::size_t q = 0; q < c.n; ++q) {
        if (rng() < t2) {
            uint8_t pauli = static_cast<uint8_t>(1 + rng() % 15);
            if (pauli & 2) {
                fz0 ^= uint64_t{1} << q;
            }
            if (pauli & 8) {
                gz ^= uint64_t{1} << q;
            }
        }
    }
    uint64_t record = fz0;
    for (std::size_t q = 0; q < c.n; ++q) {
        if (rng() < tflip) {
            record ^= uint64_t{1} << q;
        }
    }
    uint64_t syndrome = parity_bits(c.hx, record);
    std::optional<uint64_t> correction = lut.decode(syndrome);
    if (!correction.has_value()) {
        return {true};
    }
    uint64_t residual = gz ^ *correction;
    return {parity_bits(c.lx, residual) != 0};
}

SimResult finalize(std::size_t shots, std::size_t accepted,
                   std::size_t failures, uint64_t seed) {
    SimResult r;
    r.shots = shots;
    r.accepted = accepted;
    r.logical_failures = failures;
    r.seed = seed;
    r.acceptance_rate = shots == 0 ? 0.0 : double(accepted) / double(shots);
    wilson_interval(accepted, shots, r.acceptance_ci_lo, r.acceptance_ci_hi);
    r.logical_error_rate = accepted == 0 ? 0.0 : double(failures) / double(accepted);
    wilson_interval(failures, accepted, r.logical_ci_lo, r.logical_ci_hi);
    return r;
}

template <class PerAccepted>
SimResult run_estimator(const ProtocolSchedule& schedule, const NoiseModel& noise,
                        std::size_t shots, uint64_t seed, std::size_t threads,
                        PerAccepted per_accepted) {
    Compiled compiled = compile(schedule);
    threads = std::max<std::size_t>(1, threads);
    std::vector<std::size_t> accepted(threads, 0), failures(threads, 0);
    auto worker = [&](std::size_t w, std::size_t count) {
        std::mt19937_64 rng(splitmix64(seed ^ splitmix64(w + 1)));
        SampledNoise sampler(noise, rng);
        for (std::size_t i = 0; i < count; ++i) {
            ShotRecord rec = walk_shot(compiled, sampler);
            if (!rec.accepted) {
                continue;
            }
            accepted[w] += 1;
            if (per_accepted(compiled, rec, rng)) {
                failures[w] += 1;
            }
        }
    };
    std::vector<std::size_t> counts(threads, shots / threads);
    for (std::size_t w = 0; w < shots % threads; ++w) {
        counts[w] += 1;
    }
    if (threads == 1) {
        worker(0, counts[0]);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < threads; ++w) {
            pool.emplace_back(worker, w, counts[w]);
        }
        for (std::thread& th : pool) {
            th.join();
        }
    }
    std::size_t total_acc = 0, total_fail = 0;
    for (std::size_t w = 0; w < threads; ++w) {
        total_acc += accepted[w];
        total_fail += failures[w];
    }
    return finalize(shots, total_acc, total_fail, seed);
}

}  // namespace

LutDecoder LutDecoder::build(const CssCode& code, Basis basis) {
    if (code.n > 40) {
        throw ValidationError("LutDecoder: supports up to 40 qubits");
    }
    std::size_t d = code.d.has_value() ? *code.d : 0;
    if (d == 0) {
        auto computed = distance(code, basis);
        if (!computed.has_value()) {
            throw ValidationError("LutDecoder: code distance unknown");
        }
        d = *computed;
    }
    if (d > 7) {
        throw ValidationError("LutDecoder: supports distance up to 7");
    }
    const BitMatrix& checks = code.checks(opposite(basis));
    std::size_t m = checks.rows();
    if (m > 26) {
        throw ValidationError("LutDecoder: too many checks for a dense table");
    }
    LutDecoder lut;
    lut.basis_ = basis;
    lut.syndrome_bits_ = m;
    lut.table_.assign(std::size_t{1} << m, ~uint64_t{0});
    std::vector<uint64_t> col(code.n, 0);
    for (std::size_t q = 0; q < code.n; ++q) {
        for (std::size_t r = 0; r < m; ++r) {
            if (checks.get(r, q)) {
                col[q] |= uint64_t{1} << r;
            }
        }
    }
    std::size_t covered = 0;
    std::size_t total = lut.table_.size();
    std::size_t n = code.n;
    for (std::size_t w = 0; w <= d && covered < total; ++w) {
        if (w == 0) {
            lut.table_[0] = 0;
            ++covered;
            continue;
        }
        std::vector<std::size_t> idx(w);
        std::vector<uint64_t> synd(w + 1, 0);
        std::vector<uint64_t> supp(w + 1, 0);
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
            synd[depth + 1] = synd[depth] ^ col[idx[depth]];
            supp[depth + 1] = supp[depth] | (uint64_t{1} << idx[depth]);
            if (depth + 1 == w) {
                uint64_t s = synd[w];
                if (lut.table_[s] == ~uint64_t{0}) {
                    lut.table_[s] = supp[w];
                    ++covered;
                    if (covered == total) {
                        break;
                    }
                }
                ++idx[depth];
            } else {
                ++depth;
                idx[depth] = idx[depth - 1] + 1;
            }
        }
    }
    return lut;
}

std::optional<uint64_t> LutDecoder::decode(uint64_t syndrome) const {
    if (syndrome >= table_.size()) {
        throw std::out_of_range("LutDecoder::decode: syndrome out of range");
    }
    uint64_t entry = table_[syndrome];
    if (entry == ~uint64_t{0}) {
        return std::nullopt;
    }
    return entry;
}

void wilson_interval(std::size_t hits, std::size_t n, double& lo, double& hi) {
    if (n == 0) {
        lo = 0.0;
        hi = 1.0;
        return;
    }
    const double z = 1.959963984540054;
    double phat = double(hits) / double(n);
    double z2 = z * z;
    double denom = 1.0 + z2 / double(n);
    double center = (phat + z2 / (2.0 * double(n))) / denom;
    double half = z *
                  std::sqrt(phat * (1.0 - phat) / double(n) +
                            z2 / (4.0 * double(n) * double(n))) /
                  denom;
    lo = std::max(0.0, center - half);
    hi = std::min(1.0, center + half);
}

ShotRecord run_shot(const ProtocolSchedule& schedule, const NoiseModel& noise,
                    std::mt19937_64& rng) {
    Compiled compiled = compile(schedule);
    SampledNoise sampler(noise, rng);
    return walk_shot(compiled, sampler);
}

SimResult estimate_x_logical(const ProtocolSchedule& schedule,
                             const NoiseModel& noise, std::size_t shots,
                             uint64_t seed, std::size_t threads) {
    LutDecoder lut = LutDecoder::build(schedule.code(), Basis::X);
    return run_estimator(
        schedule, noise, shots, seed, threads,
        [&lut](const Compiled& c, const ShotRecord& rec, std::mt19937_64&) {
            uint64_t syndrome = parity_bits(c.hz, rec.residual_x);
            std::optional<uint64_t> correction = lut.decode(syndrome);
            if (!correction.has_value()) {
                return true;
            }
            uint64_t residual = rec.residual_x ^ *correction;
            return parity_bits(c.lz, residual) != 0;
        });
}

SimResult estimate_z_logical(const ProtocolSchedule& schedule,
                             const NoiseModel& noise, std::size_t shots,
                             uint64_t seed, std::size_t threads) {
    LutDecoder lut = LutDecoder::build(schedule.code(), Basis::Z);
    return run_estimator(schedule, noise, shots, seed, threads,
                         [&lut, &noise](const Compiled& c, const ShotRecord& rec,
                                        std::mt19937_64& rng) {
                             return run_z_gadget(c, lut, noise, rec, rng).failure;
                         });
}

uint64_t FaultLocation::key() const {
    return (uint64_t(static_cast<uint8_t>(kind)) << 40) |
           (uint64_t(static_cast<uint8_t>(block)) << 36) |
           (uint64_t(index & 0xFFFFFFF) << 8) | uint64_t(qubit & 0xFF);
}

ShotRecord inject_faults(const ProtocolSchedule& schedule,
                         const std::vector<InjectedFault>& faults) {
    Compiled compiled = compile(schedule);
    std::size_t dmax = schedule.max_prep_depth();
    std::unordered_map<uint64_t, uint8_t> map;
    for (const InjectedFault& f : faults) {
        const FaultLocation& loc = f.location;
        bool ok = true;
        switch (loc.kind) {
            case FaultLocation::Kind::Init:
                ok = loc.block >= 0 && loc.block < 4 && loc.qubit < compiled.n;
                break;
            case FaultLocation::Kind::PrepGate:
                ok = loc.block >= 0 && loc.block < 4 &&
                     loc.index < compiled.gate_count[loc.block] && f.pauli >= 1 &&
                     f.pauli <= 15;
                break;
            case FaultLocation::Kind::TransversalGate:
                ok = loc.index < 3 && loc.qubit < compiled.n && f.pauli >= 1 &&
                     f.pauli <= 15;
                break;
            case FaultLocation::Kind::Idle:
                ok = loc.index < dmax + 3 && loc.block >= 0 && loc.block < 4 &&
                     loc.qubit < compiled.n && f.pauli >= 1 && f.pauli <= 3;
                break;
            case FaultLocation::Kind::Measurement:
                ok = loc.block >= 1 && loc.block < 4 && loc.qubit < compiled.n;
                break;
            case FaultLocation::Kind::PrepBoundary:
                ok = loc.block >= 0 && loc.block < 4 &&
                     loc.index <= compiled.gate_count[loc.block] &&
                     loc.qubit < compiled.n && f.pauli >= 1 && f.pauli <= 3;
                break;
        }
        if (!ok) {
            throw std::invalid_argument("inject_faults: invalid fault location");
        }
        uint8_t& slot = map[loc.key()];
        slot = static_cast<uint8_t>(slot ^ f.pauli);
    }
    InjectedNoise noise{&map, compiled.n};
    return walk_shot(compiled, noise);
}

std::vector<FaultLocation> enumerate_fault_locations(
    const ProtocolSchedule& schedule) {
    Compiled compiled = compile(schedule);
    std::vector<FaultLocation> out;
    for (int b = 0; b < 4; ++b) {
        for (std::size_t q = 0; q < compiled.n; ++q) {
            out.push_back({FaultLocation::Kind::Init, b, 0, q});
        }
    }
    for (int b = 0; b < 4; ++b) {
        for (std::size_t g = 0; g < compiled.gate_count[b]; ++g) {
            out.push_back({FaultLocation::Kind::PrepGate, b, g, 0});
        }
    }
    for (std::size_t round = 0; round < 3; ++round) {
        for (std::size_t q = 0; q < compiled.n; ++q) {
            out.push_back({FaultLocation::Kind::TransversalGate, 0, round, q});
        }
    }
    for (std::size_t layer = 0; layer < compiled.layers.size(); ++layer) {
        for (const auto& [b, q] : compiled.layers[layer].idles) {
            out.push_back({FaultLocation::Kind::Idle, b, layer, q});
        }
    }
    for (int b = 1; b < 4; ++b) {
        for (std::size_t q = 0; q < compiled.n; ++q) {
            out.push_back({FaultLocation::Kind::Measurement, b, 0, q});
        }
    }
    return out;
}

InjectReport inject_scan(const ProtocolSchedule& schedule, std::size_t t,
                         std::size_t budget, std::size_t threads) {
    (void)threads;   // the signature-bucketed scan is cheap enough serially
    if (t > 2) {
        throw ValidationError("inject_scan: exhaustive search supports t <= 2");
    }
    InjectReport report;
    report.max_faults = t;
    if (t == 0) {
        return report;
    }
    const CssCode& code = schedule.code();
    Compiled compiled = compile(schedule);
    std::size_t parity_count =
        2 * (compiled.hz.size() + compiled.lz.size()) + compiled.hx.size() +
        compiled.lx.size();
    if (parity_count > 64) {
        throw ValidationError("inject_scan: too many parity bits to pack");
    }

    // expand locations into elementary faults (one per Pauli choice)
    std::vector<InjectedFault> elementary;
    for (const FaultLocation& loc : enumerate_fault_locations(schedule)) {
        switch (loc.kind) {
            case FaultLocation::Kind::Init:
            case FaultLocation::Kind::Measurement:
                elementary.push_back({loc, 1});
                break;
            case FaultLocation::Kind::Idle:
                for (uint8_t p = 1; p <= 3; ++p) {
                    elementary.push_back({loc, p});
                }
                break;
            case FaultLocation::Kind::PrepGate:
            case FaultLocation::Kind::TransversalGate:
                for (uint8_t p = 1; p <= 15; ++p) {
                    elementary.push_back({loc, p});
                }
                break;
            case FaultLocation::Kind::PrepBoundary:
                break;
        }
    }
    report.elementary_faults = elementary.size();
    std::size_t combos = elementary.size();
    if (t >= 2) {
        combos += elementary.size() * (elementary.size() - 1) / 2;
    }
    report.combinations = combos;
    if (combos > budget) {
        throw ValidationError("inject_scan: combination count " +
                              std::to_string(combos) + " exceeds budget " +
                              std::to_string(budget));
    }

    struct Outcome {
        uint64_t sig;
        uint64_t rx;
        uint64_t rz;
    };
    auto signature = [&](const ShotRecord& rec) {
        uint64_t sig = 0;
        std::size_t shift = 0;
        auto push = [&](const std::vector<uint64_t>& rows, uint64_t value) {
            sig |= parity_bits(rows, value) << shift;
            shift += rows.size();
        };
        push(compiled.hz, rec.m2);
        push(compiled.lz, rec.m2);
        push(compiled.hx, rec.m3);
        push(compiled.lx, rec.m3);
        push(compiled.hz, rec.m4);
        push(compiled.lz, rec.m4);
        return sig;
    };
    std::vector<Outcome> outcomes;
    outcomes.reserve(elementary.size());
    for (const InjectedFault& f : elementary) {
        ShotRecord rec = inject_faults(schedule, {f});
        outcomes.push_back({signature(rec), rec.residual_x, rec.residual_z});
    }

    CosetTables tx(code.h_x, code.n, t);
    CosetTables tz(code.h_z, code.n, t);
    auto exceeds = [&](uint64_t rx, uint64_t rz, bool& ex, bool& ez) {
        ex = !tx.weight_leq(rx, t);
        ez = !tz.weight_leq(rz, t);
        return ex || ez;
    };

    for (std::size_t i = 0; i < elementary.size(); ++i) {
        if (outcomes[i].sig != 0) {
            continue;
        }
        bool ex = false, ez = false;
        if (exceeds(outcomes[i].rx, outcomes[i].rz, ex, ez)) {
            report.counterexamples.push_back({{elementary[i]}, ex, ez});
        }
    }
    if (t >= 2) {
        // only equal-signature pairs can be accepted (records are linear)
        std::vector<std::size_t> order(elementary.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
            order[i] = i;
        }
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return outcomes[a].sig != outcomes[b].sig ? outcomes[a].sig < outcomes[b].sig
                                                      : a < b;
        });
        std::size_t start = 0;
        while (start < order.size()) {
            std::size_t end = start;
            while (end < order.size() &&
                   outcomes[order[end]].sig == outcomes[order[start]].sig) {
                ++end;
            }
            for (std::size_t a = start; a < end; ++a) {
                for (std::size_t b = a + 1; b < end; ++b) {
                    std::size_t i = std::min(order[a], order[b]);
                    std::size_t j = std::max(order[a], order[b]);
                    if (elementary[i].location == elementary[j].location) {
                        continue;   // one physical location carries one fault
                    }
                    bool ex = false, ez = false;
                    if (exceeds(outcomes[i].rx ^ outcomes[j].rx,
                                outcomes[i].rz ^ outcomes[j].rz, ex, ez)) {
                        report.counterexamples.push_back(
                            {{elementary[i], elementary[j]}, ex, ez});
                    }
                }
            }
            start = end;
        }
    }
    return report;
}

}  // namespace ftsp
