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

#include "ftsp/code.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <functional>
#include <sstream>

#include "ftsp/errors.hpp"

namespace ftsp {

namespace {

bool lex_less(const BitVector& a, const BitVector& b) {
    for (std::size_t w = 0; w < a.num_words(); ++w) {
        uint64_t diff = a.word(w) ^ b.word(w);
        if (diff != 0) {
            std::size_t bit = static_cast<std::size_t>(std::countr_zero(diff));
            return !a.get(w * 64 + bit);
        }
    }
    return false;
}

BitMatrix drop_dependent_rows(const BitMatrix& m, const char* label,
                              std::vector<std::string>* warnings) {
    RowBasis basis(m.cols());
    BitMatrix out(0, m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (basis.insert(m.row(r))) {
            out.append_row(m.row(r));
        } else if (warnings != nullptr) {
            warnings->push_back(std::string(label) + " row " + std::to_string(r) +
                                " is linearly dependent; dropped");
        }
    }
    return out;
}

/// Basis of ker(m): all v with m * v^T == 0.
std::vector<BitVector> kernel_basis(const BitMatrix& m, std::size_t n) {
    RrefResult red = rref(m);
    std::vector<std::size_t> pivot_col;
    std::vector<bool> is_pivot(n, false);
    for (std::size_t r = 0; r < red.rank; ++r) {
        std::size_t c = 0;
        while (!red.matrix.get(r, c)) {
            ++c;
        }
        pivot_col.push_back(c);
        is_pivot[c] = true;
    }
    std::vector<BitVector> out;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) {
            continue;
        }
        BitVector v(n);
        v.set(f, true);
        for (std::size_t r = 0; r < red.rank; ++r) {
            if (red.matrix.get(r, f)) {
                v.set(pivot_col[r], true);
            }
        }
        out.push_back(std::move(v));
    }
    return out;
}

/// Deterministic choice of k logical representatives for one basis:
/// candidates live in ker(h_opposite) \ rowspace(h_same); each coset is
/// represented by its lexicographically smallest element, and cosets are
/// consumed in lexicographic order.
BitMatrix pick_logicals(const BitMatrix& h_same, const BitMatrix& h_opposite,
                        std::size_t n, std::size_t k) {
    BitMatrix out(0, n);
    if (k == 0) {
        return out;
    }
    RowBasis stab(h_same);
    std::vector<BitVector> ker = kernel_basis(h_opposite, n);
    std::vector<BitVector> quotient;
    {
        RowBasis probe(h_same);
        for (const BitVector& v : ker) {
            if (probe.insert(v)) {
                quotient.push_back(v);
            }
        }
    }
    if (quotient.size() != k) {
        throw ValidationError("internal: quotient dimension mismatch");
    }
    if (k <= 12) {
        // canonical reps of all nontrivial cosets, lexicographically ordered
        std::vector<BitVector> reps;
        for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
            BitVector v(n);
            for (std::size_t b = 0; b < k; ++b) {
                if ((mask >> b) & 1) {
                    v ^= quotient[b];
                }
            }
            reps.push_back(stab.reduce(std::move(v)));
        }
        std::sort(reps.begin(), reps.end(), lex_less);
        RowBasis taken(h_same);
        for (const BitVector& v : reps) {
            if (out.rows() == k) {
                break;
            }
            if (taken.insert(v)) {
                out.append_row(v);
            }
        }
    } else {
        for (const BitVector& v : quotient) {
            out.append_row(stab.reduce(v));
        }
    }
    return out;
}

BitMatrix invert_gf2(BitMatrix g) {
    std::size_t k = g.rows();
    BitMatrix inv = BitMatrix::identity(k);
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t pivot = c;
        while (pivot < k && !g.get(pivot, c)) {
            ++pivot;
        }
        if (pivot == k) {
            throw ValidationError("internal: symplectic pairing is degenerate");
        }
        if (pivot != c) {
            for (std::size_t cc = 0; cc < k; ++cc) {
                bool a = g.get(c, cc), b = g.get(pivot, cc);
                g.set(c, cc, b);
                g.set(pivot, cc, a);
                a = inv.get(c, cc);
                b = inv.get(pivot, cc);
                inv.set(c, cc, b);
                inv.set(pivot, cc, a);
            }
        }
        for (std::size_t r = 0; r < k; ++r) {
            if (r != c && g.get(r, c)) {
                g.row_add_inplace(c, r);
                inv.row_add_inplace(c, r);
            }
        }
    }
    return inv;
}

}  // namespace

CssCode CssCode::validate(const BitMatrix& h_x_in, const BitMatrix& h_z_in,
                          std::vector<std::string>* warnings) {
    std::size_t n = std::max(h_x_in.cols(), h_z_in.cols());
    if (h_x_in.rows() > 0 && h_z_in.rows() > 0 && h_x_in.cols() != h_z_in.cols()) {
        throw ValidationError("check matrices have different column counts");
    }
    if (n == 0) {
        throw ValidationError("code has no qubits");
    }
    if (n > 64) {
        throw ValidationError("codes wider than 64 qubits are not supported");
    }
    for (std::size_t i = 0; i < h_x_in.rows(); ++i) {
        BitVector xi = h_x_in.row(i);
        for (std::size_t j = 0; j < h_z_in.rows(); ++j) {
            if (xi.dot(h_z_in.row(j))) {
                throw ValidationError("CSS condition violated: X row " +
                                      std::to_string(i) + " anticommutes with Z row " +
                                      std::to_string(j));
            }
        }
    }
    CssCode code;
    code.n = n;
    code.h_x = h_x_in.rows() > 0 ? drop_dependent_rows(h_x_in, "HX", warnings)
                                 : BitMatrix(0, n);
    code.h_z = h_z_in.rows() > 0 ? drop_dependent_rows(h_z_in, "HZ", warnings)
                                 : BitMatrix(0, n);
    std::size_t rx = code.h_x.rows();
    std::size_t rz = code.h_z.rows();
    if (rx + rz > n) {
        throw ValidationError("check ranks exceed qubit count");
    }
    code.k = n - rx - rz;
    code.logicals_x = pick_logicals(code.h_x, code.h_z, n, code.k);
    code.logicals_z = pick_logicals(code.h_z, code.h_x, n, code.k);
    if (code.k > 0) {
        BitMatrix pairing = mat_mul_t(code.logicals_x, code.logicals_z);
        BitMatrix adjust = invert_gf2(pairing);   // logicals_z <- (G^-1)^T Lz
        BitMatrix new_lz(code.k, n);
        for (std::size_t j = 0; j < code.k; ++j) {
            BitVector row(n);
            for (std::size_t m = 0; m < code.k; ++m) {
                if (adjust.get(m, j)) {   // (G^-1)^T[j][m] == G^-1[m][j]
                    row ^= code.logicals_z.row(m);
                }
            }
            new_lz.set_row(j, row);
        }
        code.logicals_z = new_lz;
    }
    return code;
}

std::optional<std::size_t> distance(const CssCode& code, Basis basis,
                                    std::size_t n_cap) {
    if (code.n > n_cap || code.n > 64) {
        return std::nullopt;
    }
    if (code.k == 0) {
        return std::nullopt;
    }
    const BitMatrix& h_same = code.checks(basis);
    const BitMatrix& h_opp = code.checks(opposite(basis));
    std::size_t n = code.n;
    RowBasis stab(h_same);
    // syndrome column per qubit, packed into one word
    std::vector<uint64_t> col(n, 0);
    for (std::size_t q = 0; q < n; ++q) {
        for (std::size_t r = 0; r < h_opp.rows(); ++r) {
            if (h_opp.get(r, q)) {
                col[q] |= uint64_t{1} << r;
            }
        }
    }
    std::vector<std::size_t> chosen;
    bool found = false;
    auto try_support = [&]() {
        BitVector v(n);
        for (std::size_t q : chosen) {
            v.set(q, true);
        }
        if (!stab.contains(v)) {
            found = true;
        }
    };
    for (std::size_t w = 1; w <= n && !found; ++w) {
        chosen.assign(w, 0);
        // depth-first combination enumeration with running syndrome
        std::function<void(std::size_t, std::size_t, uint64_t)> recurse =
            [&](std::size_t depth, std::size_t start, uint64_t synd) {
                if (found) {
                    return;
                }
                if (depth == w) {
                    if (synd == 0) {
                        try_support();
                    }
                    return;
                }
                for (std::size_t q = start; q + (w - depth) <= n; ++q) {
                    chosen[depth] = q;
                    recurse(depth + 1, q + 1, synd ^ col[q]);
                    if (found) {
                        return;
                    }
                }
            };
        recurse(0, 0, 0);
        if (found) {
            return w;
        }
    }
    return std::nullopt;
}

namespace {

struct RawEntry {
    const char* name;
    const char* description;
    std::size_t d;
    std::vector<std::string> hx;
    std::vector<std::string> hz;   // empty => self-dual (hz = hx)
    std::optional<std::vector<std::size_t>> automorphism;
};

const std::vector<RawEntry>& raw_registry() {
    static const std::vector<RawEntry> entries = {
        {"steane",
         "[[7,1,3]] Steane code (Hamming checks)",
         3,
         {"1010101", "0110011", "0001111"},
         {},
         std::nullopt},
        {"cc_4_8_8_17",
         "[[17,1,5]] square-octagon color code (one weight-8 plaquette)",
         5,
         {"11111111000000000", "11000000110000000", "00110000001100000",
          "01100000101000000", "10000001010010000", "00001100000001100",
          "00000110000001010", "00000000000001111"},
         {},
         std::nullopt},
        {"cc_6_6_6_19",
         "[[19,1,5]] hexagonal color code",
         5,
         {"0000011001001000000", "0000000000000001111", "1100011000000000000",
          "0000000001101101100", "0110001101100000000", "0000000000000110110",
          "0000000110110110000", "0011000110000000000", "0001100010010000000"},
         {},
         std::vector<std::size_t>{4, 11, 14, 17, 18, 3, 8, 13, 16, 7, 10, 15, 2,
                                  9, 12, 1, 6, 5, 0}},
        {"surface_25",
         "[[25,1,5]] rotated surface code",
         5,
         {"0110000000000000000000000", "0001100000000000000000000",
          "1100011000000000000000000", "0011000110000000000000000",
          "0000001100011000000000000", "0000000011000110000000000",
          "0000000000110001100000000", "0000000000001100011000000",
          "0000000000000000110001100", "0000000000000000001100011",
          "0000000000000000000011000", "0000000000000000000000110"},
         {"1000010000000000000000000", "0110001100000000000000000",
          "0001100011000000000000000", "0000011000110000000000000",
          "0000000110001100000000000", "0000000001000010000000000",
          "0000000000100001000000000", "0000000000011000110000000",
          "0000000000000110001100000", "0000000000000001100011000",
          "0000000000000000011000110", "0000000000000000000100001"},
         std::nullopt},
        {"cc_6_6_6_37",
         "[[37,1,7]] hexagonal color code",
         7,
         {"0000000110000100001000000000000000000",
          "0000000000000000000000011001001000000",
          "0000000000000000000000000000000001111",
          "1100000110000000000000000000000000000",
          "0000000000000110001100011000000000000",
          "0000000000000000000000000001101101100",
          "0110000011000110000000000000000000000",
          "0000000000000000000110001101100000000",
          "0000000000000000000000000000000110110",
          "0000000001100011000110000000000000000",
          "0000000000000000000000000110110110000",
          "0011000001100000000000000000000000000",
          "0000000000000001100011000110000000000",
          "0001100000110001100000000000000000000",
          "0000000000000000000001100010010000000",
          "0000000000011000110001100000000000000",
          "0000110000011000000000000000000000000",
          "0000011000001000010000000000000000000"},
         {},
         std::vector<std::size_t>{6,  17, 22, 29, 32, 35, 36, 5,  12, 21, 26, 31,
                                  34, 11, 16, 25, 28, 33, 4,  15, 20, 27, 30, 3,
                                  10, 19, 24, 9,  14, 23, 2,  13, 18, 1,  8,  7,
                                  0}},
    };
    return entries;
}

}  // namespace

std::vector<RegistryEntry> registry_list() {
    std::vector<RegistryEntry> out;
    for (const RawEntry& e : raw_registry()) {
        RegistryEntry item;
        item.name = e.name;
        item.description = e.description;
        item.n = e.hx.front().size();
        BitMatrix hx = BitMatrix::from_rows(e.hx);
        BitMatrix hz = e.hz.empty() ? hx : BitMatrix::from_rows(e.hz);
        item.k = item.n - hx.rows() - hz.rows();
        item.d = e.d;
        item.automorphism = e.automorphism;
        out.push_back(std::move(item));
    }
    return out;
}

CssCode registry_lookup(const std::string& name) {
    for (const RawEntry& e : raw_registry()) {
        if (name == e.name) {
            BitMatrix hx = BitMatrix::from_rows(e.hx);
            BitMatrix hz = e.hz.empty() ? hx : BitMatrix::from_rows(e.hz);
            CssCode code = CssCode::validate(hx, hz);
            code.d = e.d;
            return code;
        }
    }
    std::string names;
    for (const RawEntry& e : raw_registry()) {
        if (!names.empty()) {
            names += ", ";
        }
        names += e.name;
    }
    throw ValidationError("unknown code '" + name + "'; available: " + names);
}

std::pair<BitMatrix, BitMatrix> parse_check_file(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    int section = -1;   // 0 = HX, 1 = HZ
    std::vector<std::string> rows[2];
    std::size_t width[2] = {0, 0};
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        std::string compact;
        for (char c : line) {
            if (c == '0' || c == '1') {
                compact += c;
            } else if (c != ' ' && c != '\t' && c != '\r' &&
                       !(std::isalpha(static_cast<unsigned char>(c)))) {
                throw ParseError(lineno, std::string("unexpected character '") + c + "'");
            }
        }
        std::string trimmed;
        for (char c : line) {
            if (c != ' ' && c != '\t' && c != '\r') {
                trimmed += c;
            }
        }
        if (trimmed.empty()) {
            continue;
        }
        if (trimmed == "HX") {
            section = 0;
            continue;
        }
        if (trimmed == "HZ") {
            section = 1;
            continue;
        }
        if (trimmed != compact) {
            throw ParseError(lineno, "unexpected token '" + trimmed + "'");
        }
        if (section == -1) {
            throw ParseError(lineno, "matrix row before HX/HZ section header");
        }
        if (!rows[section].empty() && compact.size() != width[section]) {
            throw ParseError(lineno, "ragged row: expected " +
                                         std::to_string(width[section]) +
                                         " entries, got " +
                                         std::to_string(compact.size()));
        }
        width[section] = compact.size();
        rows[section].push_back(compact);
    }
    if (section == -1) {
        throw ParseError(lineno == 0 ? 1 : lineno, "missing HX/HZ section header");
    }
    std::size_t n = std::max(width[0], width[1]);
    BitMatrix hx = rows[0].empty() ? BitMatrix(0, n) : BitMatrix::from_rows(rows[0]);
    BitMatrix hz = rows[1].empty() ? BitMatrix(0, n) : BitMatrix::from_rows(rows[1]);
    return {hx, hz};
}

std::string serialize_check_file(const BitMatrix& h_x, const BitMatrix& h_z) {
    std::string out = "HX\n";
    for (std::size_t r = 0; r < h_x.rows(); ++r) {
        const BitVector row = h_x.row(r);
        for (std::size_t c = 0; c < row.size(); ++c) {
            out += row.get(c) ? '1' : '0';
            out += c + 1 == row.size() ? '\n' : ' ';
        }
    }
    out += "HZ\n";
    for (std::size_t r = 0; r < h_z.rows(); ++r) {
        const BitVector row = h_z.row(r);
        for (std::size_t c = 0; c < row.size(); ++c) {
            out += row.get(c) ? '1' : '0';
            out += c + 1 == row.size() ? '\n' : ' ';
        }
    }
    return out;
}

}  // namespace ftsp
