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

#include "nrsim/control.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nrsim/crc.hpp"
#include "nrsim/fft.hpp"
#include "nrsim/modulation.hpp"
#include "nrsim/polar.hpp"
#include "nrsim/refsignals.hpp"
#include "nrsim/sequences.hpp"
#include "nrsim/small_block.hpp"

namespace nrsim {

namespace {

constexpr int kDmrsSubcarriers[kDmrsRePerReg] = {1, 5, 9};
constexpr int kDataSubcarriers[kDataRePerReg] = {0, 2, 3, 4, 6, 7, 8, 10, 11};

void validate_coreset(const Coreset& c) {
    if (c.rb_set.empty()) {
        throw std::domain_error("coreset: empty RB set");
    }
    if (c.num_symbols < 1 || c.num_symbols > 3) {
        throw std::domain_error("coreset: must span 1..3 symbols");
    }
    if (c.num_regs() % kRegsPerCce != 0) {
        throw std::domain_error("coreset: REG count must be a multiple of 6");
    }
    if (c.mapping == CceMapping::INTERLEAVED) {
        if (c.bundle_size != 2 && c.bundle_size != 3 && c.bundle_size != 6) {
            throw std::domain_error("coreset: bundle size must be 2, 3 or 6");
        }
        if (kRegsPerCce % c.bundle_size != 0 || c.num_regs() % c.bundle_size != 0) {
            throw std::domain_error("coreset: bundle size must divide the REG count");
        }
        const int bundles = c.num_regs() / c.bundle_size;
        if (c.interleaver_rows < 1 || bundles % c.interleaver_rows != 0) {
            throw std::domain_error("coreset: interleaver rows must divide the bundle count");
        }
    }
}

// physical REG j: time-first numbering over the sorted RB set
Reg reg_at(const Coreset& c, int j) {
    std::vector<int> rbs = c.rb_set;
    std::sort(rbs.begin(), rbs.end());
    return {rbs[static_cast<size_t>(j / c.num_symbols)], c.start_symbol + j % c.num_symbols};
}

int interleave_bundle(const Coreset& c, int x) {
    if (c.mapping == CceMapping::NON_INTERLEAVED) {
        return x;
    }
    const int bundles = c.num_regs() / c.bundle_size;
    const int rows = c.interleaver_rows;
    const int cols = bundles / rows;
    const int r = x % rows;
    const int col = x / rows;
    return (r * cols + col + c.shift) % bundles;
}

}  // namespace

std::vector<Reg> cce_to_regs(const Coreset& coreset, int cce_index) {
    validate_coreset(coreset);
    if (cce_index < 0 || cce_index >= coreset.num_cces()) {
        throw std::domain_error("cce_to_regs: CCE index out of range");
    }
    const int bundles_per_cce = kRegsPerCce / coreset.bundle_size;
    std::vector<Reg> regs;
    for (int b = 0; b < bundles_per_cce; ++b) {
        const int logical = cce_index * bundles_per_cce + b;
        const int physical = interleave_bundle(coreset, logical);
        for (int k = 0; k < coreset.bundle_size; ++k) {
            regs.push_back(reg_at(coreset, physical * coreset.bundle_size + k));
        }
    }
    return regs;
}

int candidate_start_cce(const Coreset& coreset, const PdcchCandidate& cand) {
    const int level = cand.aggregation_level;
    if (level != 1 && level != 2 && level != 4 && level != 8 && level != 16) {
        throw std::domain_error("pdcch: aggregation level must be 1, 2, 4, 8 or 16");
    }
    const int n_cce = coreset.num_cces();
    if (level > n_cce) {
        throw std::domain_error("pdcch: aggregation level exceeds the CORESET capacity");
    }
    const uint64_t h = splitmix64(static_cast<uint64_t>(cand.rnti) * 0x9e3779b9ULL +
                                  static_cast<uint64_t>(level) * 0x85ebca6bULL +
                                  static_cast<uint64_t>(cand.candidate_index));
    const int slots = n_cce / level;
    return level * static_cast<int>(h % static_cast<uint64_t>(slots));
}

namespace {

uint32_t pdcch_dmrs_cinit(uint32_t scrambling_id, int symbol) {
    return ((scrambling_id << 5) ^ (static_cast<uint32_t>(symbol) + 1u)) | 1u;
}

// per-REG DMRS values, a deterministic function of (scrambling id, rb,
// symbol) so transmitter and blind receiver agree without coordination
Cvec reg_dmrs(const Coreset& c, const Reg& reg) {
    const Cvec seq = gold_qpsk(pdcch_dmrs_cinit(c.dmrs_scrambling_id, reg.symbol),
                               static_cast<size_t>(reg.rb + 1) * kDmrsRePerReg);
    return Cvec(seq.end() - kDmrsRePerReg, seq.end());
}

std::vector<Reg> candidate_regs(const Coreset& coreset, const PdcchCandidate& cand) {
    const int start = candidate_start_cce(coreset, cand);
    std::vector<Reg> regs;
    for (int c = 0; c < cand.aggregation_level; ++c) {
        const auto cce = cce_to_regs(coreset, start + c);
        regs.insert(regs.end(), cce.begin(), cce.end());
    }
    return regs;
}

PolarSpec pdcch_polar_spec(int payload_bits, int e_bits) {
    PolarSpec spec;
    spec.payload_len = payload_bits;
    spec.crc_len = 16;
    int n = 32;
    while (2 * n <= e_bits && n < 512) {
        n *= 2;
    }
    spec.coded_len = n;
    if (payload_bits + spec.crc_len > n) {
        throw std::domain_error("pdcch: payload too large for the aggregation level");
    }
    return spec;
}

}  // namespace

PdcchTx assemble_pdcch(const BitVec& dci_bits, const PdcchCandidate& cand,
                       const Coreset& coreset) {
    validate_coreset(coreset);
    const std::vector<Reg> regs = candidate_regs(coreset, cand);
    const int e_bits = static_cast<int>(regs.size()) * kDataRePerReg * 2;

    const PolarSpec spec = pdcch_polar_spec(static_cast<int>(dci_bits.size()), e_bits);
    const BitVec coded = polar_encode(dci_bits, spec, cand.rnti);
    const BitVec tx = polar_rate_match(coded, static_cast<size_t>(e_bits));
    const Cvec symbols = modulate(tx, Modulation::QPSK);

    PdcchTx out;
    size_t s = 0;
    for (const Reg& reg : regs) {
        const Cvec dmrs = reg_dmrs(coreset, reg);
        for (int k = 0; k < kDmrsRePerReg; ++k) {
            out.dmrs_res.push_back(
                {{reg.rb * kSubcarriersPerRb + kDmrsSubcarriers[k], reg.symbol},
                 dmrs[static_cast<size_t>(k)]});
        }
        for (int k = 0; k < kDataRePerReg; ++k) {
            out.data_res.push_back(
                {{reg.rb * kSubcarriersPerRb + kDataSubcarriers[k], reg.symbol}, symbols[s++]});
        }
    }
    return out;
}

std::vector<DecodedDci> blind_search(const ResourceGrid& grid, const Coreset& coreset,
                                     const SearchSpace& space, uint16_t rnti,
                                     double noise_var) {
    validate_coreset(coreset);
    std::vector<DecodedDci> found;
    for (const auto& [level, count] : space.candidates_per_level) {
        for (int idx = 0; idx < count; ++idx) {
            PdcchCandidate cand{level, idx, rnti};
            if (level > coreset.num_cces()) {
                continue;
            }
            const std::vector<Reg> regs = candidate_regs(coreset, cand);

            Cvec eq;
            eq.reserve(regs.size() * kDataRePerReg);
            for (const Reg& reg : regs) {
                const Cvec dmrs = reg_dmrs(coreset, reg);
                Complex h(0, 0);
                for (int k = 0; k < kDmrsRePerReg; ++k) {
                    const Complex y =
                        grid.at(0, reg.rb * kSubcarriersPerRb + kDmrsSubcarriers[k], reg.symbol);
                    h += y * std::conj(dmrs[static_cast<size_t>(k)]);
                }
                h /= static_cast<double>(kDmrsRePerReg);
                for (int k = 0; k < kDataRePerReg; ++k) {
                    const Complex y =
                        grid.at(0, reg.rb * kSubcarriersPerRb + kDataSubcarriers[k], reg.symbol);
                    eq.push_back(std::norm(h) > 1e-12 ? y / h : Complex(0, 0));
                }
            }
            const std::vector<double> llrs = soft_demod(eq, Modulation::QPSK, noise_var);
            const PolarSpec spec = pdcch_polar_spec(space.dci_payload_bits,
                                                    static_cast<int>(llrs.size()));
            const auto folded = polar_rate_recover(llrs, spec.coded_len);
            const auto dec = polar_decode(folded, spec, rnti);
            if (dec.ok) {
                found.push_back({level, idx, dec.payload});
            }
        }
    }
    std::sort(found.begin(), found.end(), [](const DecodedDci& a, const DecodedDci& b) {
        return a.aggregation_level != b.aggregation_level
                   ? a.aggregation_level < b.aggregation_level
                   : a.candidate_index < b.candidate_index;
    });
    return found;
}

namespace {

void validate_sets(const PucchResourceSets& sets) {
    if (sets.sets.empty() || sets.sets.size() > 4 ||
        sets.max_uci_bits.size() != sets.sets.size()) {
        throw std::domain_error("pucch: 1..4 resource sets with matching size limits required");
    }
    for (size_t i = 0; i < sets.sets.size(); ++i) {
        const size_t cap = i == 0 ? 32 : 8;
        if (sets.sets[i].empty() || sets.sets[i].size() > cap) {
            throw std::domain_error("pucch: set " + std::to_string(i) +
                                    " must hold 1.." + std::to_string(cap) + " resources");
        }
    }
}

}  // namespace

const PucchResource& select_pucch_resource(int uci_bits, const PucchResourceSets& sets,
                                           int dci_field, int cce_offset) {
    validate_sets(sets);
    if (uci_bits < 1) {
        throw std::domain_error("pucch: uci_bits must be positive");
    }
    if (dci_field < 0 || dci_field > 7) {
        throw std::domain_error("pucch: dci_field is a 3-bit value");
    }
    size_t set_idx = sets.sets.size();
    if (uci_bits <= 2) {
        set_idx = 0;
    } else {
        for (size_t i = 1; i < sets.sets.size(); ++i) {
            if (uci_bits <= sets.max_uci_bits[i]) {
                set_idx = i;
                break;
            }
        }
    }
    if (set_idx >= sets.sets.size()) {
        throw std::domain_error("pucch: no resource set covers " + std::to_string(uci_bits) +
                                " UCI bits");
    }
    const auto& set = sets.sets[set_idx];
    size_t r;
    if (set.size() <= 8) {
        r = std::min(static_cast<size_t>(dci_field), set.size() - 1);
    } else {
        // implicit expansion for the large first set
        const size_t step = (set.size() + 7) / 8;
        r = std::min(static_cast<size_t>(dci_field) * step + static_cast<size_t>(cce_offset),
                     set.size() - 1);
    }
    return set[r];
}

std::vector<int> pucch_dmrs_symbols(const PucchResource& res) {
    std::vector<int> out;
    if (res.format == 1) {
        for (int l = 0; l < res.num_symbols; l += 2) {
            out.push_back(res.start_symbol + l);  // DMRS on even relative symbols
        }
    } else if (res.format == 3 || res.format == 4) {
        out.push_back(res.start_symbol + res.num_symbols / 4);
        out.push_back(res.start_symbol + (3 * res.num_symbols) / 4);
    }
    return out;
}

namespace {

void validate_pucch(const PucchResource& res, int uci_bits) {
    if (res.format < 0 || res.format > 4) {
        throw std::domain_error("pucch: format must be 0..4");
    }
    const bool short_format = res.format == 0 || res.format == 2;
    if (short_format && (res.num_symbols < 1 || res.num_symbols > 2)) {
        throw std::domain_error("pucch: formats 0 and 2 use 1 or 2 symbols");
    }
    if (!short_format && (res.num_symbols < 4 || res.num_symbols > 14)) {
        throw std::domain_error("pucch: formats 1, 3 and 4 use 4 to 14 symbols");
    }
    if ((res.format == 0 || res.format == 1) && uci_bits > 2) {
        throw std::domain_error("pucch: formats 0 and 1 carry at most 2 UCI bits");
    }
    if (res.format >= 2 && uci_bits <= 2) {
        throw std::domain_error("pucch: formats 2, 3 and 4 carry more than 2 UCI bits");
    }
    if ((res.format == 0 || res.format == 1 || res.format == 4) && res.num_rb != 1) {
        throw std::domain_error("pucch: formats 0, 1 and 4 occupy a single RB");
    }
    if (res.format == 4 && res.occ_len != 2 && res.occ_len != 4) {
        throw std::domain_error("pucch: format 4 spreading factor is 2 or 4");
    }
}

// coded UCI bits for formats 2..4: the small block code up to 11 bits,
// CRC-aided polar above
BitVec coded_uci(const BitVec& uci, int e_bits, double max_rate) {
    const int k = static_cast<int>(uci.size());
    const int crc = k > kSmallBlockMaxPayload ? 11 : 0;
    if (static_cast<double>(k + crc) > max_rate * e_bits) {
        throw std::domain_error("pucch: UCI payload exceeds the format capacity");
    }
    if (k <= kSmallBlockMaxPayload) {
        return small_block_rate_match(small_block_encode(uci), static_cast<size_t>(e_bits));
    }
    PolarSpec spec;
    spec.payload_len = k;
    spec.crc_len = 11;
    int n = 32;
    while (2 * n <= e_bits && n < 1024) {
        n *= 2;
    }
    while (k + spec.crc_len > n) {
        n *= 2;  // capacity check above keeps this within reach
    }
    spec.coded_len = n;
    if (e_bits < n) {
        throw std::domain_error("pucch: too few REs for the polar-coded payload");
    }
    return polar_rate_match(polar_encode(uci, spec), static_cast<size_t>(e_bits));
}

Complex phase_ramp(int shift, int n, int len) {
    const double a = 2.0 * kPi * shift * n / static_cast<double>(len);
    return {std::cos(a), std::sin(a)};
}

}  // namespace

std::vector<ReValue> build_pucch(const PucchResource& res, const BitVec& uci_bits) {
    validate_pucch(res, static_cast<int>(uci_bits.size()));
    std::vector<ReValue> out;
    const int sc0 = res.start_rb * kSubcarriersPerRb;

    if (res.format == 0) {
        // sequence selection: the UCI picks an extra cyclic shift
        int cs_uci = 0;
        if (uci_bits.size() == 1) {
            cs_uci = uci_bits[0] ? 6 : 0;
        } else {
            static constexpr int kMap[4] = {0, 3, 9, 6};  // 00, 01, 10, 11
            cs_uci = kMap[(uci_bits[0] << 1) | uci_bits[1]];
        }
        const Cvec base = low_papr_sequence(res.sequence_group, kSubcarriersPerRb);
        const int cs = (res.cyclic_shift + cs_uci) % kSubcarriersPerRb;
        for (int l = 0; l < res.num_symbols; ++l) {
            for (int n = 0; n < kSubcarriersPerRb; ++n) {
                out.push_back({{sc0 + n, res.start_symbol + l},
                               base[static_cast<size_t>(n)] *
                                   phase_ramp(cs, n, kSubcarriersPerRb)});
            }
        }
        return out;
    }

    if (res.format == 1) {
        const Cvec base = low_papr_sequence(res.sequence_group, kSubcarriersPerRb);
        const Cvec d = modulate(uci_bits, uci_bits.size() == 1 ? Modulation::BPSK
                                                               : Modulation::QPSK);
        const std::vector<int> dmrs = pucch_dmrs_symbols(res);
        const int n_uci = res.num_symbols - static_cast<int>(dmrs.size());
        int uci_k = 0, dmrs_k = 0;
        for (int l = 0; l < res.num_symbols; ++l) {
            const int sym = res.start_symbol + l;
            const bool is_dmrs =
                std::find(dmrs.begin(), dmrs.end(), sym) != dmrs.end();
            // orthogonal covers are DFT codes over the symbol class
            Complex w;
            Complex value_scale;
            if (is_dmrs) {
                w = phase_ramp(res.occ_index, dmrs_k++, static_cast<int>(dmrs.size()));
                value_scale = w;
            } else {
                w = phase_ramp(res.occ_index, uci_k++, n_uci);
                value_scale = d[0] * w;
            }
            for (int n = 0; n < kSubcarriersPerRb; ++n) {
                out.push_back({{sc0 + n, sym},
                               base[static_cast<size_t>(n)] *
                                   phase_ramp(res.cyclic_shift, n, kSubcarriersPerRb) *
                                   value_scale});
            }
        }
        return out;
    }

    if (res.format == 2) {
        // DMRS every third subcarrier (1, 4, 7, 10 per RB), data elsewhere
        std::vector<int> data_sc, dmrs_sc;
        for (int n = 0; n < res.num_rb * kSubcarriersPerRb; ++n) {
            if (n % 3 == 1) {
                dmrs_sc.push_back(n);
            } else {
                data_sc.push_back(n);
            }
        }
        const int e_bits = 2 * static_cast<int>(data_sc.size()) * res.num_symbols;
        const BitVec bits = coded_uci(uci_bits, e_bits, res.max_code_rate);
        const Cvec syms = modulate(bits, Modulation::QPSK);
        size_t s = 0;
        for (int l = 0; l < res.num_symbols; ++l) {
            const int sym = res.start_symbol + l;
            const Cvec dmrs = gold_qpsk(0x155u ^ (static_cast<uint32_t>(sym) << 8),
                                        dmrs_sc.size());
            for (size_t k = 0; k < dmrs_sc.size(); ++k) {
                out.push_back({{sc0 + dmrs_sc[k], sym}, dmrs[k]});
            }
            for (int k : data_sc) {
                out.push_back({{sc0 + k, sym}, syms[s++]});
            }
        }
        return out;
    }

    // formats 3 and 4: coded, DFT-precoded, DMRS symbols time-multiplexed
    const std::vector<int> dmrs = pucch_dmrs_symbols(res);
    const int n_uci = res.num_symbols - static_cast<int>(dmrs.size());
    const int m = res.num_rb * kSubcarriersPerRb;
    const int data_per_symbol = res.format == 4 ? m / res.occ_len : m;
    const int e_bits = 2 * data_per_symbol * n_uci;
    const BitVec bits = coded_uci(uci_bits, e_bits, res.max_code_rate);
    const Cvec syms = modulate(bits, Modulation::QPSK);
    const Cvec base = low_papr_sequence(res.sequence_group, m);

    size_t s = 0;
    for (int l = 0; l < res.num_symbols; ++l) {
        const int sym = res.start_symbol + l;
        const bool is_dmrs = std::find(dmrs.begin(), dmrs.end(), sym) != dmrs.end();
        Cvec freq;
        if (is_dmrs) {
            freq.resize(static_cast<size_t>(m));
            for (int n = 0; n < m; ++n) {
                freq[static_cast<size_t>(n)] =
                    base[static_cast<size_t>(n)] * phase_ramp(res.cyclic_shift, n, m);
            }
        } else {
            Cvec block(static_cast<size_t>(m));
            if (res.format == 4) {
                // pre-DFT block spreading with a DFT cover over the chunks
                const int chunk = m / res.occ_len;
                for (int n = 0; n < m; ++n) {
                    block[static_cast<size_t>(n)] =
                        syms[s + static_cast<size_t>(n % chunk)] *
                        phase_ramp(res.occ_index, n / chunk, res.occ_len);
                }
                s += static_cast<size_t>(chunk);
            } else {
                for (int n = 0; n < m; ++n) {
                    block[static_cast<size_t>(n)] = syms[s++];
                }
            }
            freq = transform_precode(block, m);
        }
        for (int n = 0; n < m; ++n) {
            out.push_back({{sc0 + n, sym}, freq[static_cast<size_t>(n)]});
        }
    }
    return out;
}

}  // namespace nrsim
