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

#ifndef NRSIM_REFSIGNALS_HPP
#define NRSIM_REFSIGNALS_HPP

#include <vector>

#include "nrsim/resource_grid.hpp"
#include "nrsim/util.hpp"

namespace nrsim {

/// Time/frequency allocation of a shared channel inside one slot.
struct Allocation {
    int start_symbol = 0;
    int num_symbols = 14;
    int start_rb = 0;
    int num_rb = 1;

    int first_subcarrier() const { return start_rb * kSubcarriersPerRb; }
    int num_subcarriers() const { return num_rb * kSubcarriersPerRb; }
};

enum class DmrsSequenceMode { GOLD_QPSK, ZC_LOW_PAPR };

/// One parameterized DMRS pattern: CDM groups of adjacent subcarrier
/// pairs (period 6, up to 3 groups), frequency and time cover codes of
/// length 2. Ports per group: 2 with one front symbol, 4 with two.
struct DmrsConfig {
    int num_front_symbols = 1;    // 1 or 2
    int additional_positions = 0; // 0..3
    int comb = 3;                 // active CDM groups, 1..3
    int num_ports = 1;            // up to 12
    DmrsSequenceMode sequence_mode = DmrsSequenceMode::GOLD_QPSK;
};

/// DMRS-bearing symbol indices: front-loaded block plus evenly spaced
/// additional positions. Throws when the allocation is too short.
std::vector<int> dmrs_symbol_indices(const DmrsConfig& cfg, const Allocation& alloc);

struct PortRes {
    std::vector<std::vector<ReValue>> per_port;
};

/// DMRS REs and values for every configured port.
PortRes dmrs_map(const DmrsConfig& cfg, const Allocation& alloc, uint32_t scrambling_id);

struct PtrsConfig {
    int freq_density_krb = 2;  // a PTRS subcarrier every K-th RB (2 or 4)
    int time_density = 1;      // every L-th symbol (1, 2 or 4)
    int assoc_dmrs_port = 0;
};

/// Phase-tracking REs: one subcarrier per covered RB (at least one RB is
/// always covered), present on every L-th allocation symbol, skipping
/// DMRS symbols; values reuse the associated DMRS port's sequence.
std::vector<ReValue> ptrs_map(const PtrsConfig& cfg, const DmrsConfig& dmrs_cfg,
                              const Allocation& alloc, uint32_t scrambling_id);

enum class CsirsPeriodicity { PERIODIC, SEMI_PERSISTENT, APERIODIC };

struct CsirsConfig {
    int num_ports = 1;  // pattern table: 1, 2, 4, 8 or 32
    int num_symbols = 1;
    int start_symbol = 0;
    int start_rb = 0;
    int num_rb = 1;
    CsirsPeriodicity periodicity = CsirsPeriodicity::PERIODIC;
    bool zero_power = false;
    uint32_t scrambling_id = 0;
};

struct CsirsMap {
    PortRes ports;                  // empty values when zero_power
    std::vector<ReCoord> positions; // union over ports
};

/// Port-to-RE mapping from the pattern table. Zero-power resources yield
/// positions only.
CsirsMap csirs_map(const CsirsConfig& cfg);

/// RE-granularity reservation equivalent of a zero-power resource.
ReservedPattern csirs_reserved_pattern(const CsirsConfig& cfg);

/// Tracking use: single port, bursts of 2 or 4 symbols spread over one or
/// two slots; returns per-slot RE lists.
std::vector<std::vector<ReValue>> csirs_tracking_map(const CsirsConfig& cfg, int burst_symbols,
                                                     int num_slots);

struct SrsConfig {
    int num_symbols = 1;  // 1, 2 or 4 consecutive symbols
    int start_symbol = 13;
    int num_ports = 1;
    bool hopping = false;
    int start_rb = 0;
    int num_rb = 4;
    int sequence_group = 0;
    int cyclic_shift = 0;
};

/// Sounding REs on a comb of 2, cyclic shifts applied as phase ramps;
/// all symbols must lie within the last 6 of the slot.
PortRes srs_map(const SrsConfig& cfg);

/// Gold-seeded QPSK value stream shared by the reference-signal
/// generators: r(m) = ((1-2c(2m)) + j(1-2c(2m+1))) / sqrt(2).
Cvec gold_qpsk(uint32_t c_init, size_t length);

}  // namespace nrsim

#endif  // NRSIM_REFSIGNALS_HPP
