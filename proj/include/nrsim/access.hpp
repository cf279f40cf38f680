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

#ifndef NRSIM_ACCESS_HPP
#define NRSIM_ACCESS_HPP

#include <optional>
#include <string>
#include <vector>

#include "nrsim/resource_grid.hpp"
#include "nrsim/sequences.hpp"
#include "nrsim/util.hpp"

namespace nrsim {

inline constexpr int kSsbSymbols = 4;
inline constexpr int kSsbSubcarriers = 240;
inline constexpr int kPssFirstSubcarrier = 56;  // center 127 of the 240
inline constexpr int kPbchDefaultPayloadBits = 32;

/// Synchronization-signal/PBCH block: PSS on symbol 0, SSS on symbol 2,
/// polar-coded PBCH with its DMRS on symbols 1, 3 and the SSS flanks.
struct SsBlock {
    ResourceGrid grid{1, kSsbSubcarriers, kSsbSymbols};
    CellId pci;
    int ssb_index = 0;
    BitVec pbch_payload;
};

/// Assembles the 4 x 240 block. The payload is opaque; its size is free
/// but must match what the receiver expects (default 32 bits).
SsBlock build_ssb(const CellId& pci, const BitVec& pbch_payload, int ssb_index);

/// Extracts and polar-decodes the PBCH region of a received 4 x 240 RE
/// block (values laid out as ResourceGrid::port_values).
struct PbchDecodeResult {
    bool crc_ok = false;
    BitVec payload;
};
PbchDecodeResult decode_pbch(const Cvec& ssb_values, const CellId& pci, int ssb_index,
                             int payload_bits = kPbchDefaultPayloadBits);

/// Identifies the transmitted beam by correlating the received PBCH DMRS
/// against the candidate index sequences (0 .. max_index).
int identify_ssb_index(const Cvec& ssb_values, const CellId& pci, int max_index = 7);

struct SsbConfig {
    int scs_khz = 15;  // 15, 30 (FR1) or 120, 240 (FR2)
    double burst_periodicity_ms = 20.0;
    int num_ssb = 1;  // up to 8 below 6 GHz, up to 64 in FR2
    int frequency_offset_rb = 0;
};

struct BurstPosition {
    int slot = 0;
    int start_symbol = 0;
};

/// Candidate SSB positions inside the 5 ms half-frame window, following
/// the per-numerology case pattern keyed by the subcarrier spacing.
std::vector<BurstPosition> burst_positions(const SsbConfig& cfg);

struct CellSearchConfig {
    int scs_khz = 15;
    int fft_size = 256;          // sample rate = fft_size * scs
    double threshold = 21.0;     // peak metric gate, pure-noise calibrated
    int max_integer_cfo = 0;     // +- hypotheses in units of scs
    std::vector<double> raster_offsets_hz = {0.0};  // candidate SSB centers
};

struct CellSearchResult {
    CellId pci;
    long timing_offset_samples = 0;  // first sample of the SSB (CP included)
    double cfo_hz = 0.0;
    double metric = 0.0;
};

/// PSS matched filtering over time and integer-CFO hypotheses, SSS
/// identification over the 336 nid1 candidates at the detected location.
/// Returns the best threshold-passing hypothesis, or nothing.
std::optional<CellSearchResult> cell_search(const Cvec& iq, const CellSearchConfig& cfg);

/// Demodulates the 4 SSB symbols at a known timing/CFO and returns the
/// 240 x 4 RE values (for PBCH decoding or diagnostics).
Cvec extract_ssb_values(const Cvec& iq, long timing_offset_samples, double cfo_hz,
                        const CellSearchConfig& cfg);

struct PrachFormat {
    std::string name;
    int seq_len = 839;     // 839 long, 139 short
    double scs_hz = 1250;  // 0 = 15 kHz * 2^mu chosen at runtime
    int symbol_ref = 24576;
    int cp_ref = 3168;
    int repetitions = 1;
};

const std::vector<PrachFormat>& prach_formats();
const PrachFormat& prach_format(const std::string& name);

struct PrachConfig {
    PrachFormat format;
    int mu = 0;  // numerology for short formats
    int root_u = 1;
    int cyclic_shift = 0;
    int fft_size = 0;  // 0: 1024 for long, 256 for short
};

int prach_fft_size(const PrachConfig& cfg);
double prach_scs_hz(const PrachConfig& cfg);
int prach_cp_samples(const PrachConfig& cfg);
double prach_sample_rate(const PrachConfig& cfg);

/// Frequency-domain Zadoff-Chu mapped to the preamble subcarriers and
/// OFDM-modulated: one CP followed by `repetitions` identical symbols, so
/// each symbol's tail cyclically prefixes the next.
Cvec generate_prach(const PrachConfig& cfg);

struct PrachZoneConfig {
    int ncs = 13;             // cyclic-shift zone size in sequence samples
    double threshold = 20.0;  // PDP peak-to-mean gate, pure-noise calibrated
};

struct PrachDetection {
    int preamble_index = 0;
    int timing_advance_samples = 0;
    double metric = 0.0;
};

/// Frequency-domain correlation against the root sequence; per-zone PDP
/// peaks above threshold yield (preamble index, timing advance).
std::vector<PrachDetection> detect_prach(const Cvec& iq, const PrachConfig& cfg,
                                         const PrachZoneConfig& zone);

}  // namespace nrsim

#endif  // NRSIM_ACCESS_HPP
