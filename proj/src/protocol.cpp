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

#include "ftsp/protocol.hpp"

#include <sstream>

#include "ftsp/errors.hpp"

namespace ftsp {

ProtocolSchedule::ProtocolSchedule(CssCode code, std::array<PrepCircuit, 4> blocks)
    : code_(std::move(code)), blocks_(std::move(blocks)) {
    for (const PrepCircuit& b : blocks_) {
        if (b.n() != code_.n) {
            throw ValidationError("protocol blocks must match the code size");
        }
    }
    verification_layers_ = {{{1, 2}, {3, 4}}, {{3, 1}}};
    measurements_ = {{2, Basis::Z}, {3, Basis::X}, {4, Basis::Z}};
}

std::size_t ProtocolSchedule::max_prep_depth() const {
    std::size_t depth = 0;
    for (const PrepCircuit& b : blocks_) {
        depth = std::max(depth, b.depth());
    }
    return depth;
}

std::size_t ProtocolSchedule::total_cnots() const {
    std::size_t count = 0;
    for (const PrepCircuit& b : blocks_) {
        count += b.gates().size();
    }
    return count;
}

ProtocolSchedule build_protocol(const PrepCircuit& c1, const PrepCircuit& c2,
                                const PrepCircuit& c3, const PrepCircuit& c4,
                                const CssCode& code) {
    const PrepCircuit* circuits[4] = {&c1, &c2, &c3, &c4};
    for (int i = 0; i < 4; ++i) {
        if (circuits[i]->n() != code.n) {
            throw ValidationError("protocol block " + std::to_string(i + 1) +
                                  " has mismatched qubit count");
        }
        if (!verify_prepares(*circuits[i], code)) {
            throw ValidationError("protocol block " + std::to_string(i + 1) +
                                  " does not prepare the logical zero state");
        }
    }
    return ProtocolSchedule(code, {c1, c2, c3, c4});
}

bool acceptance(const CssCode& code, const BitVector& m2, const BitVector& m3,
                const BitVector& m4) {
    if (m2.size() != code.n || m3.size() != code.n || m4.size() != code.n) {
        throw std::invalid_argument("acceptance: record length mismatch");
    }
    auto trivial = [](const BitMatrix& rows, const BitVector& m) {
        for (std::size_t r = 0; r < rows.rows(); ++r) {
            if (rows.row(r).dot(m)) {
                return false;
            }
        }
        return true;
    };
    return trivial(code.h_z, m2) && trivial(code.logicals_z, m2) &&
           trivial(code.h_x, m3) && trivial(code.logicals_x, m3) &&
           trivial(code.h_z, m4) && trivial(code.logicals_z, m4);
}

std::string serialize_protocol(const ProtocolSchedule& schedule) {
    std::ostringstream out;
    for (int b = 0; b < 4; ++b) {
        out << "BLOCK " << (b + 1) << "\n";
        out << serialize_circuit(schedule.block(b));
    }
    for (const auto& layer : schedule.verification_layers()) {
        for (const TransversalRound& round : layer) {
            out << "TCX " << round.control_block << " " << round.target_block
                << "\n";
        }
    }
    for (const BlockMeasurement& m : schedule.measurements()) {
        out << "MEAS " << m.block << " " << basis_char(m.basis) << "\n";
    }
    return out.str();
}

ProtocolSchedule parse_protocol(const std::string& text, const CssCode& code) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    std::array<std::string, 4> block_text;
    int current = -1;
    std::vector<TransversalRound> rounds;
    std::vector<BlockMeasurement> meas;
    while (std::getline(in, line)) {
        ++lineno;
        std::string stripped = line.substr(0, line.find('#'));
        std::istringstream ls(stripped);
        std::string op;
        if (!(ls >> op)) {
            continue;
        }
        if (op == "BLOCK") {
            int b = 0;
            if (!(ls >> b) || b < 1 || b > 4) {
                throw ParseError(lineno, "BLOCK expects an index in 1..4");
            }
            current = b - 1;
        } else if (op == "TCX") {
            int a = 0, b = 0;
            if (!(ls >> a >> b) || a < 1 || a > 4 || b < 1 || b > 4 || a == b) {
                throw ParseError(lineno, "TCX expects two distinct blocks in 1..4");
            }
            rounds.push_back({a, b});
        } else if (op == "MEAS") {
            int b = 0;
            std::string basis;
            if (!(ls >> b >> basis) || b < 1 || b > 4 || (basis != "Z" && basis != "X")) {
                throw ParseError(lineno, "MEAS expects 'MEAS block Z|X'");
            }
            meas.push_back({b, basis == "Z" ? Basis::Z : Basis::X});
        } else {
            if (current < 0) {
                throw ParseError(lineno, "circuit line before BLOCK header");
            }
            block_text[static_cast<std::size_t>(current)] += line + "\n";
        }
    }
    std::array<PrepCircuit, 4> blocks;
    for (int b = 0; b < 4; ++b) {
        if (block_text[static_cast<std::size_t>(b)].empty()) {
            throw ParseError(lineno == 0 ? 1 : lineno,
                             "missing BLOCK " + std::to_string(b + 1));
        }
        blocks[static_cast<std::size_t>(b)] =
            parse_circuit(block_text[static_cast<std::size_t>(b)]);
    }
    // the fixed schedule is part of the format; reject deviations
    std::vector<TransversalRound> expect_rounds = {{1, 2}, {3, 4}, {3, 1}};
    if (rounds.size() != expect_rounds.size()) {
        throw ParseError(lineno, "expected exactly three TCX rounds");
    }
    for (std::size_t i = 0; i < rounds.size(); ++i) {
        if (rounds[i].control_block != expect_rounds[i].control_block ||
            rounds[i].target_block != expect_rounds[i].target_block) {
            throw ParseError(lineno, "unexpected TCX round order");
        }
    }
    return build_protocol(blocks[0], blocks[1], blocks[2], blocks[3], code);
}

}  // namespace ftsp
