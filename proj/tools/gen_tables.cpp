/*
 * Copyright 2026 The nrsim authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Regenerates the checked-in data tables under data/. The outputs are
// deterministic, so a rerun must reproduce the committed files exactly.
//
//   gen_tables <data-dir>
//
// Produces:
//   ldpc/bg1.txt, ldpc/bg2.txt  quasi-cyclic base graphs (row col shift)
//   ldpc/lifting_sizes.txt      supported lifting sizes
//   polar/reliability_1024.txt  synthetic-channel order, most reliable first
//   csirs/patterns.txt          per-port RE patterns and cover signs

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

namespace {

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct Edge {
    int row, col, shift;
};

// Base graph with the layout the encoder expects:
//  - rows 0..3 form the high-rate core; the parity part of the core is
//    directly solvable (see the shifts below),
//  - every extension row r >= 4 has a degree-one parity column kb+r,
//    and otherwise touches only columns < kb+4,
//  - information columns 0 and 1 (punctured before transmission) get
//    high degree so the decoder can recover them.
std::vector<Edge> make_base_graph(int rows, int kb, uint64_t seed) {
    std::vector<Edge> edges;
    std::set<std::pair<int, int>> used;
    auto shift_for = [&](int r, int c) {
        return static_cast<int>(splitmix64(seed ^ (static_cast<uint64_t>(r) * 131u + c)) % 384u);
    };
    auto add = [&](int r, int c, int s) {
        if (used.insert({r, c}).second) {
            edges.push_back({r, c, s});
        }
    };

    // core rows: punctured columns everywhere plus a dense random spread
    for (int r = 0; r < 4; ++r) {
        add(r, 0, shift_for(r, 0));
        add(r, 1, shift_for(r, 1));
        const int extra = (kb * 3) / 4;
        int picked = 0;
        uint64_t state = seed ^ (0x1000u + static_cast<uint64_t>(r));
        while (picked < extra) {
            state = splitmix64(state);
            const int c = 2 + static_cast<int>(state % static_cast<uint64_t>(kb - 2));
            if (used.insert({r, c}).second) {
                edges.push_back({r, c, shift_for(r, c)});
                ++picked;
            }
        }
    }
    // solvable parity core
    add(0, kb, 1);
    add(0, kb + 1, 0);
    add(1, kb, 0);
    add(1, kb + 1, 0);
    add(1, kb + 2, 0);
    add(2, kb + 2, 0);
    add(2, kb + 3, 0);
    add(3, kb, 0);
    add(3, kb + 3, 0);

    // extension rows
    for (int r = 4; r < rows; ++r) {
        add(r, r % 2, shift_for(r, r % 2));  // keep punctured columns well connected
        const int extra = (r < rows / 2) ? 3 : 2;
        int picked = 0;
        uint64_t state = seed ^ (0x2000u + static_cast<uint64_t>(r));
        while (picked < extra) {
            state = splitmix64(state);
            const int c = 2 + static_cast<int>(state % static_cast<uint64_t>(kb + 2));
            if (used.insert({r, c}).second) {
                edges.push_back({r, c, shift_for(r, c)});
                ++picked;
            }
        }
        add(r, kb + r, 0);
    }

    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    return edges;
}

std::ofstream open_or_die(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        std::cerr << "cannot open for writing: " << path << "\n";
        std::exit(3);
    }
    return out;
}

void write_base_graph(const std::string& path, int id, int rows, int cols, int kb,
                      uint64_t seed) {
    std::ofstream out = open_or_die(path);
    out << "# quasi-cyclic LDPC base graph " << id << "\n";
    out << "# dimensions: " << rows << " x " << cols << ", information columns: " << kb << "\n";
    out << "# format: one edge per line as  row  col  shift\n";
    out << "# shifts are reduced modulo the lifting size at expansion time\n";
    for (const auto& e : make_base_graph(rows, kb, seed)) {
        out << e.row << " " << e.col << " " << e.shift << "\n";
    }
}

void write_lifting_sizes(const std::string& path) {
    // Z = a * 2^j for a in {2,3,5,7,9,11,13,15}, up to 384
    std::vector<int> sizes;
    for (int a : {2, 3, 5, 7, 9, 11, 13, 15}) {
        for (int z = a; z <= 384; z *= 2) {
            sizes.push_back(z);
        }
    }
    std::sort(sizes.begin(), sizes.end());
    std::ofstream out = open_or_die(path);
    out << "# supported lifting sizes (a * 2^j, a in {2,3,5,7,9,11,13,15}, max 384)\n";
    for (int z : sizes) {
        out << z << "\n";
    }
}

// Reliability of synthetic channel i: beta expansion of the bit indices,
// beta = 2^(1/4). Larger weight = more reliable.
void write_polar_reliability(const std::string& path) {
    const double beta = std::pow(2.0, 0.25);
    std::vector<std::pair<double, int>> w(1024);
    for (int i = 0; i < 1024; ++i) {
        double acc = 0.0;
        for (int k = 0; k < 10; ++k) {
            if ((i >> k) & 1) {
                acc += std::pow(beta, k);
            }
        }
        w[static_cast<size_t>(i)] = {acc, i};
    }
    std::sort(w.begin(), w.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    std::ofstream out = open_or_die(path);
    out << "# polar synthetic-channel order for size 1024, most reliable first\n";
    out << "# weight of index i: sum of 2^(k/4) over set bits k of i\n";
    for (const auto& [weight, idx] : w) {
        out << idx << "\n";
    }
}

// CSI-RS patterns: columns are
//   num_ports  num_symbols  port  subcarrier  symbol_offset  sign
// CDM groups are adjacent subcarrier pairs; covers are Walsh codes in
// frequency (length 2) and time (length 2 or 4).
void write_csirs_patterns(const std::string& path) {
    std::ofstream out = open_or_die(path);
    out << "# CSI-RS RE patterns per RB\n";
    out << "# num_ports num_symbols port subcarrier symbol sign\n";
    auto emit = [&](int ports, int symbols, int port, int sc, int sym, int sign) {
        out << ports << " " << symbols << " " << port << " " << sc << " " << sym << " " << sign
            << "\n";
    };
    // 1 port, 1 symbol: single RE
    emit(1, 1, 0, 0, 0, 1);
    // 2 ports, 1 symbol: one fd-CDM2 group
    for (int p = 0; p < 2; ++p) {
        for (int k = 0; k < 2; ++k) {
            emit(2, 1, p, k, 0, (p == 1 && k == 1) ? -1 : 1);
        }
    }
    // 4 ports, 1 symbol: two fd-CDM2 groups at subcarriers {0,1} and {6,7}
    for (int p = 0; p < 4; ++p) {
        const int g = p / 2;
        const int q = p % 2;
        for (int k = 0; k < 2; ++k) {
            emit(4, 1, p, 6 * g + k, 0, (q == 1 && k == 1) ? -1 : 1);
        }
    }
    // 8 ports, 2 symbols: two groups, fd2 x td2 covers
    for (int p = 0; p < 8; ++p) {
        const int g = p / 4;
        const int fd = p & 1;
        const int td = (p >> 1) & 1;
        for (int sym = 0; sym < 2; ++sym) {
            for (int k = 0; k < 2; ++k) {
                const int sign = ((fd && k) ? -1 : 1) * ((td && sym) ? -1 : 1);
                emit(8, 2, p, 6 * g + k, sym, sign);
            }
        }
    }
    // 32 ports, 4 symbols: four groups at subcarriers {0,1},{2,3},{4,5},{6,7},
    // fd2 x td4 covers
    const int walsh4[4][4] = {
        {1, 1, 1, 1}, {1, -1, 1, -1}, {1, 1, -1, -1}, {1, -1, -1, 1}};
    for (int p = 0; p < 32; ++p) {
        const int g = p / 8;
        const int fd = p & 1;
        const int td = (p >> 1) & 3;
        for (int sym = 0; sym < 4; ++sym) {
            for (int k = 0; k < 2; ++k) {
                const int sign = ((fd && k) ? -1 : 1) * walsh4[td][sym];
                emit(32, 4, p, 2 * g + k, sym, sign);
            }
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: gen_tables <data-dir>\n";
        return 2;
    }
    const std::string dir = argv[1];
    write_base_graph(dir + "/ldpc/bg1.txt", 1, 46, 68, 22, 0x5eed00000001ULL);
    write_base_graph(dir + "/ldpc/bg2.txt", 2, 42, 52, 10, 0x5eed00000002ULL);
    write_lifting_sizes(dir + "/ldpc/lifting_sizes.txt");
    write_polar_reliability(dir + "/polar/reliability_1024.txt");
    write_csirs_patterns(dir + "/csirs/patterns.txt");
    std::cout << "tables written under " << dir << "\n";
    return 0;
}
