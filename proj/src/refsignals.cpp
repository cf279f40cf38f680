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

#include "nrsim/refsignals.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "nrsim/sequences.hpp"
#include "nrsim/tables.hpp"

namespace nrsim {

Cvec gold_qpsk(uint32_t c_init, size_t length) {
    const BitVec c = gold_sequence(c_init, 2 * length);
    Cvec r(length);
    const double s = 1.0 / std::sqrt(2.0);
    for (size_t m = 0; m < length; ++m) {
        r[m] = Complex(s * bpsk(c[2 * m]), s * bpsk(c[2 * m + 1]));
    }
    return r;
}

namespace {

uint32_t rs_cinit(uint32_t scrambling_id, int symbol) {
    // one generator shared by all reference signals, keyed per symbol
    return ((scrambling_id << 7) ^ (static_cast<uint32_t>(symbol) << 1) ^ 1u) & 0x7fffffffu;
}

void validate_dmrs(const DmrsConfig& cfg) {
    if (cfg.num_front_symbols < 1 || cfg.num_front_symbols > 2) {
        throw std::domain_error("dmrs: num_front_symbols must be 1 or 2");
    }
    if (cfg.additional_positions < 0 || cfg.additional_positions > 3) {
        throw std::domain_error("dmrs: additional_positions must be 0..3");
    }
    if (cfg.comb < 1 || cfg.comb > 3) {
        throw std::domain_error("dmrs: comb selects 1..3 CDM groups");
    }
    const int ports_per_group = cfg.num_front_symbols == 2 ? 4 : 2;
    if (cfg.num_ports < 1 || cfg.num_ports > cfg.comb * ports_per_group || cfg.num_ports > 12) {
        throw std::domain_error("dmrs: port count unsupported by the configured pattern");
    }
}

}  // namespace

std::vector<int> dmrs_symbol_indices(const DmrsConfig& cfg, const Allocation& alloc) {
    validate_dmrs(cfg);
    const int front = cfg.num_front_symbols;
    const int extra_groups = cfg.additional_positions;
    if (alloc.num_symbols < front * (1 + extra_groups)) {
        throw std::domain_error("dmrs: additional positions do not fit the allocation");
    }
    std::vector<int> symbols;
    for (int l = 0; l < front; ++l) {
        symbols.push_back(alloc.start_symbol + l);
    }
    // additional instances evenly spaced over the remaining duration
    for (int k = 1; k <= extra_groups; ++k) {
        const int offset = (alloc.num_symbols - front) * k / (extra_groups + 1) + front - 1;
        for (int l = 0; l < front; ++l) {
            const int sym = alloc.start_symbol + std::min(offset + l, alloc.num_symbols - 1);
            if (std::find(symbols.begin(), symbols.end(), sym) == symbols.end()) {
                symbols.push_back(sym);
            }
        }
    }
    std::sort(symbols.begin(), symbols.end());
    return symbols;
}

PortRes dmrs_map(const DmrsConfig& cfg, const Allocation& alloc, uint32_t scrambling_id) {
    const std::vector<int> symbols = dmrs_symbol_indices(cfg, alloc);
    const int ports_per_group = cfg.num_front_symbols == 2 ? 4 : 2;

    PortRes out;
    out.per_port.resize(static_cast<size_t>(cfg.num_ports));
    for (int p = 0; p < cfg.num_ports; ++p) {
        const int group = p / ports_per_group;
        const int within = p % ports_per_group;
        const int fd = within & 1;
        const int td = within >> 1;

        int sym_counter = 0;
        for (int sym : symbols) {
            const int rel = sym_counter++;  // position within the DMRS symbol sequence
            Cvec base;
            if (cfg.sequence_mode == DmrsSequenceMode::GOLD_QPSK) {
                base = gold_qpsk(rs_cinit(scrambling_id, sym),
                                 static_cast<size_t>(alloc.num_rb) * 4);
            } else {
                base = low_papr_sequence(static_cast<int>(scrambling_id % 30),
                                         std::max(12, alloc.num_rb * 12));
            }
            size_t seq_idx = 0;
            for (int rb = 0; rb < alloc.num_rb; ++rb) {
                for (int pair = 0; pair < 2; ++pair) {      // two pairs per RB per group
                    for (int k = 0; k < 2; ++k) {           // adjacent pair
                        const int sc = alloc.first_subcarrier() + rb * kSubcarriersPerRb +
                                       pair * 6 + 2 * group + k;
                        const double fd_sign = (fd && k) ? -1.0 : 1.0;
                        const double td_sign = (td && (rel & 1)) ? -1.0 : 1.0;
                        const Complex value = base[seq_idx] * fd_sign * td_sign;
                        out.per_port[static_cast<size_t>(p)].push_back(
                            {{sc, sym}, value});
                        ++seq_idx;
                    }
                }
            }
        }
    }
    return out;
}

std::vector<ReValue> ptrs_map(const PtrsConfig& cfg, const DmrsConfig& dmrs_cfg,
                              const Allocation& alloc, uint32_t scrambling_id) {
    if (cfg.freq_density_krb != 2 && cfg.freq_density_krb != 4) {
        throw std::domain_error("ptrs: freq_density_krb must be 2 or 4");
    }
    if (cfg.time_density != 1 && cfg.time_density != 2 && cfg.time_density != 4) {
        throw std::domain_error("ptrs: time_density must be 1, 2 or 4");
    }
    const int ports_per_group = dmrs_cfg.num_front_symbols == 2 ? 4 : 2;
    if (cfg.assoc_dmrs_port < 0 || cfg.assoc_dmrs_port >= dmrs_cfg.num_ports) {
        throw std::domain_error("ptrs: associated DMRS port not configured");
    }
    const int group = cfg.assoc_dmrs_port / ports_per_group;

    const std::vector<int> dmrs_syms = dmrs_symbol_indices(dmrs_cfg, alloc);
    std::vector<ReValue> out;
    int counter = 0;
    for (int l = 0; l < alloc.num_symbols; ++l) {
        const int sym = alloc.start_symbol + l;
        if (std::find(dmrs_syms.begin(), dmrs_syms.end(), sym) != dmrs_syms.end()) {
            continue;  // PTRS never collides with DMRS symbols
        }
        if (counter++ % cfg.time_density != 0) {
            continue;
        }
        const Cvec seq = gold_qpsk(rs_cinit(scrambling_id, sym),
                                   static_cast<size_t>(alloc.num_rb));
        for (int rb = 0; rb < alloc.num_rb; rb += cfg.freq_density_krb) {
            const int sc = alloc.first_subcarrier() + rb * kSubcarriersPerRb + 2 * group;
            out.push_back({{sc, sym}, seq[static_cast<size_t>(rb)]});
        }
    }
    return out;
}

namespace {

struct CsirsPatternEntry {
    int port;
    int subcarrier;
    int symbol;
    int sign;
};

struct CsirsPattern {
    int num_symbols;
    std::vector<CsirsPatternEntry> entries;
};

const CsirsPattern& csirs_pattern(int num_ports) {
    static const std::map<int, CsirsPattern> patterns = [] {
        std::map<int, CsirsPattern> out;
        const auto rows = load_int_table(data_dir() + "/csirs/patterns.txt");
        for (const auto& r : rows) {
            if (r.size() != 6) {
                throw std::runtime_error("csirs pattern table: expected 6 columns");
            }
            auto& pat = out[static_cast<int>(r[0])];
            pat.num_symbols = static_cast<int>(r[1]);
            pat.entries.push_back({static_cast<int>(r[2]), static_cast<int>(r[3]),
                                   static_cast<int>(r[4]), static_cast<int>(r[5])});
        }
        return out;
    }();
    const auto it = patterns.find(num_ports);
    if (it == patterns.end()) {
        throw std::domain_error("csirs: no pattern for " + std::to_string(num_ports) + " ports");
    }
    return it->second;
}

}  // namespace

CsirsMap csirs_map(const CsirsConfig& cfg) {
    if (cfg.num_ports < 1 || cfg.num_ports > 32) {
        throw std::domain_error("csirs: ports must be 1..32");
    }
    const CsirsPattern& pat = csirs_pattern(cfg.num_ports);
    if (pat.num_symbols != cfg.num_symbols) {
        throw std::domain_error("csirs: pattern for " + std::to_string(cfg.num_ports) +
                                " ports spans " + std::to_string(pat.num_symbols) + " symbols");
    }
    if (cfg.start_symbol < 0 || cfg.start_symbol + cfg.num_symbols > kSymbolsPerSlot) {
        throw std::domain_error("csirs: symbols exceed the slot");
    }

    CsirsMap out;
    out.ports.per_port.resize(static_cast<size_t>(cfg.num_ports));
    std::set<std::pair<int, int>> seen;
    const Cvec seq = gold_qpsk(rs_cinit(cfg.scrambling_id, cfg.start_symbol),
                               static_cast<size_t>(cfg.num_rb) * kSubcarriersPerRb *
                                   static_cast<size_t>(cfg.num_symbols));
    for (int rb = 0; rb < cfg.num_rb; ++rb) {
        for (const auto& e : pat.entries) {
            const int sc = (cfg.start_rb + rb) * kSubcarriersPerRb + e.subcarrier;
            const int sym = cfg.start_symbol + e.symbol;
            if (seen.insert({sc, sym}).second) {
                out.positions.push_back({sc, sym});
            }
            if (!cfg.zero_power) {
                const size_t idx = static_cast<size_t>(rb) * kSubcarriersPerRb + e.subcarrier;
                const Complex v = seq[idx % seq.size()] * static_cast<double>(e.sign);
                out.ports.per_port[static_cast<size_t>(e.port)].push_back({{sc, sym}, v});
            }
        }
    }
    return out;
}

ReservedPattern csirs_reserved_pattern(const CsirsConfig& cfg) {
    CsirsConfig zp = cfg;
    zp.zero_power = true;
    ReservedPattern pattern;
    pattern.granularity = ReservedGranularity::RE;
    pattern.re_mask = csirs_map(zp).positions;
    return pattern;
}

std::vector<std::vector<ReValue>> csirs_tracking_map(const CsirsConfig& cfg, int burst_symbols,
                                                     int num_slots) {
    if (burst_symbols != 2 && burst_symbols != 4) {
        throw std::domain_error("csirs tracking: burst must be 2 or 4 symbols");
    }
    if (num_slots != 1 && num_slots != 2) {
        throw std::domain_error("csirs tracking: burst spreads over 1 or 2 slots");
    }
    if (burst_symbols % num_slots != 0) {
        throw std::domain_error("csirs tracking: symbols must divide evenly across slots");
    }
    const int per_slot = burst_symbols / num_slots;

    std::vector<std::vector<ReValue>> out(static_cast<size_t>(num_slots));
    for (int s = 0; s < num_slots; ++s) {
        for (int l = 0; l < per_slot; ++l) {
            CsirsConfig one = cfg;
            one.num_ports = 1;  // tracking always uses a single port
            one.num_symbols = 1;
            one.start_symbol = cfg.start_symbol + l;
            one.zero_power = false;
            const CsirsMap m = csirs_map(one);
            out[static_cast<size_t>(s)].insert(out[static_cast<size_t>(s)].end(),
                                               m.ports.per_port[0].begin(),
                                               m.ports.per_port[0].end());
        }
    }
    return out;
}

PortRes srs_map(const SrsConfig& cfg) {
    if (cfg.num_symbols != 1 && cfg.num_symbols != 2 && cfg.num_symbols != 4) {
        throw std::domain_error("srs: num_symbols must be 1, 2 or 4");
    }
    // all SRS symbols must lie within the last 6 symbols of the slot
    if (cfg.start_symbol < kSymbolsPerSlot - 6 ||
        cfg.start_symbol + cfg.num_symbols > kSymbolsPerSlot) {
        throw std::domain_error("srs: symbols must lie within the last 6 of the slot");
    }
    if (cfg.num_ports < 1 || cfg.num_ports > 2) {
        throw std::domain_error("srs: 1 or 2 ports supported on the comb");
    }

    const int comb = 2;
    const int re_per_symbol = cfg.num_rb * kSubcarriersPerRb / comb;
    PortRes out;
    out.per_port.resize(static_cast<size_t>(cfg.num_ports));
    for (int p = 0; p < cfg.num_ports; ++p) {
        const Cvec base = low_papr_sequence(cfg.sequence_group,
                                            std::max(12, re_per_symbol - re_per_symbol % 12));
        for (int l = 0; l < cfg.num_symbols; ++l) {
            const int sym = cfg.start_symbol + l;
            // hopping alternates the RB offset between consecutive symbols
            const int rb0 = cfg.start_rb + (cfg.hopping ? (l % 2) * cfg.num_rb : 0);
            for (int i = 0; i < re_per_symbol; ++i) {
                const int sc = rb0 * kSubcarriersPerRb + i * comb + (p % comb);
                const double alpha =
                    2.0 * kPi * cfg.cyclic_shift * i / static_cast<double>(re_per_symbol);
                const Complex v =
                    base[static_cast<size_t>(i) % base.size()] * Complex(std::cos(alpha), std::sin(alpha));
                out.per_port[static_cast<size_t>(p)].push_back({{sc, sym}, v});
            }
        }
    }
    return out;
}

}  // namespace nrsim
