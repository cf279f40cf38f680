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

#ifndef NRSIM_CONTROL_HPP
#define NRSIM_CONTROL_HPP

#include <cstdint>
#include <vector>

#include "nrsim/resource_grid.hpp"
#include "nrsim/util.hpp"

namespace nrsim {

inline constexpr int kRegsPerCce = 6;
inline constexpr int kDmrsRePerReg = 3;   // subcarriers 1, 5, 9 of the REG
inline constexpr int kDataRePerReg = 12 - kDmrsRePerReg;

enum class CceMapping { INTERLEAVED, NON_INTERLEAVED };

/// Control resource set: a set of RBs (not necessarily contiguous) over
/// 1..3 consecutive symbols. REGs are numbered time-first within the
/// sorted RB set; interleaving permutes REG bundles block-wise.
struct Coreset {
    std::vector<int> rb_set;
    int start_symbol = 0;
    int num_symbols = 1;
    CceMapping mapping = CceMapping::NON_INTERLEAVED;
    int bundle_size = 6;       // 2, 3 or 6 REGs per bundle
    int interleaver_rows = 2;  // 2, 3 or 6
    int shift = 0;
    uint32_t dmrs_scrambling_id = 0;

    int num_regs() const { return static_cast<int>(rb_set.size()) * num_symbols; }
    int num_cces() const { return num_regs() / kRegsPerCce; }
};

struct Reg {
    int rb = 0;      // carrier RB index
    int symbol = 0;  // absolute symbol index
};

/// The 6 REGs carrying one CCE. Non-interleaved mapping is consecutive;
/// interleaved applies a block interleaver over REG bundles. The union
/// over all CCEs is a bijection onto the CORESET's REGs.
std::vector<Reg> cce_to_regs(const Coreset& coreset, int cce_index);

struct PdcchCandidate {
    int aggregation_level = 1;  // 1, 2, 4, 8 or 16
    int candidate_index = 0;
    uint16_t rnti = 0;
};

/// Deterministic candidate placement: the starting CCE is a documented
/// hash of (rnti, level, candidate index) scaled to the level grid.
int candidate_start_cce(const Coreset& coreset, const PdcchCandidate& cand);

struct PdcchTx {
    std::vector<ReValue> data_res;
    std::vector<ReValue> dmrs_res;
};

/// DCI payload -> CRC16 masked by rnti -> polar -> QPSK, mapped over the
/// candidate's REGs (9 data REs each) with per-REG DMRS.
PdcchTx assemble_pdcch(const BitVec& dci_bits, const PdcchCandidate& cand,
                       const Coreset& coreset);

struct SearchSpace {
    // (aggregation level, number of candidates) pairs
    std::vector<std::pair<int, int>> candidates_per_level;
    int dci_payload_bits = 40;
};

struct DecodedDci {
    int aggregation_level = 0;
    int candidate_index = 0;
    BitVec payload;
};

/// Blind decoding over every candidate: per-REG DMRS channel estimate,
/// QPSK demodulation, polar list decoding, acceptance on the rnti-masked
/// CRC. Results are ordered by (level, candidate index).
std::vector<DecodedDci> blind_search(const ResourceGrid& grid, const Coreset& coreset,
                                     const SearchSpace& space, uint16_t rnti,
                                     double noise_var = 1e-3);

/// ---- PUCCH ----

struct PucchResource {
    int format = 0;  // 0..4
    int start_symbol = 0;
    int num_symbols = 1;
    int start_rb = 0;
    int num_rb = 1;
    int cyclic_shift = 0;   // formats 0, 1
    int occ_index = 0;      // formats 1, 4
    int occ_len = 2;        // format 4: 2 or 4
    int sequence_group = 0;
    double max_code_rate = 0.8;  // formats 2..4 capacity limit
};

struct PucchResourceSets {
    std::vector<std::vector<PucchResource>> sets;  // up to 4; set 0 <= 32, others <= 8
    std::vector<int> max_uci_bits;                 // per set; set 0 is fixed at 2
};

/// Set selection by UCI size (set 0 only for <= 2 bits), then the 3-bit
/// DCI field indexes the resource. Set 0 larger than 8 uses the implicit
/// expansion rule: dci_field * ceil(size/8) + cce_offset, clipped.
const PucchResource& select_pucch_resource(int uci_bits, const PucchResourceSets& sets,
                                           int dci_field, int cce_offset = 0);

/// UCI onto the configured format:
///  F0 sequence selection by cyclic shift, F1 spread BPSK/QPSK with time
///  OCC and alternating DMRS, F2 coded QPSK with frequency-multiplexed
///  DMRS, F3/F4 coded and DFT-precoded with time-multiplexed DMRS (F4
///  adds pre-DFT block spreading).
std::vector<ReValue> build_pucch(const PucchResource& res, const BitVec& uci_bits);

/// DMRS symbol positions of a long PUCCH (formats 1, 3, 4).
std::vector<int> pucch_dmrs_symbols(const PucchResource& res);

}  // namespace nrsim

#endif  // NRSIM_CONTROL_HPP
