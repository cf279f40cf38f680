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

#ifndef NRSIM_SIMULATE_HPP
#define NRSIM_SIMULATE_HPP

#include <string>
#include <vector>

#include "nrsim/access.hpp"
#include "nrsim/channel.hpp"
#include "nrsim/ldpc.hpp"
#include "nrsim/modulation.hpp"
#include "nrsim/numerology.hpp"
#include "nrsim/ofdm.hpp"
#include "nrsim/refsignals.hpp"
#include "nrsim/simio.hpp"

namespace nrsim {

enum class Scenario { PDSCH, PUSCH, CELL_SEARCH, PRACH };

Scenario scenario_from_string(const std::string& name);
std::string scenario_name(Scenario s);

struct ShlinkConfig {
    Modulation modulation = Modulation::QPSK;
    double code_rate = 1.0 / 3.0;
};

/// One scenario run: shared-channel link, cell search, or PRACH, swept
/// over the SNR list with `trials` Monte-Carlo trials per point.
struct SimConfig {
    Scenario scenario = Scenario::PDSCH;
    uint64_t seed = 1;
    long trials = 100;
    int threads = 1;
    std::vector<double> snr_db = {std::numeric_limits<double>::infinity()};

    // shared-channel scenarios
    int mu = 0;
    int num_rb = 24;
    int fft_size = 0;  // 0 = auto
    Allocation alloc{0, 14, 0, 24};
    ShlinkConfig mcs;
    int num_layers = 1;
    int num_codewords = 1;
    bool transform_precoding = false;
    int rv = 0;
    DmrsConfig dmrs;
    bool ptrs_enabled = false;
    PtrsConfig ptrs;
    ReservedPattern reserved;
    double cfo_hz = 0.0;
    double phase_noise_var = 0.0;  // Wiener process, rad^2 per sample
    bool mmse_equalizer = false;   // regularize the per-RE equalizer by the noise variance

    // cell search scenario
    SsbConfig ssb;
    CellSearchConfig search;
    int search_max_delay = 512;
    int pbch_payload_bits = kPbchDefaultPayloadBits;

    // prach scenario
    std::string prach_format_name = "0";
    int prach_root = 129;
    PrachZoneConfig prach_zone;
    int prach_max_delay = 0;  // 0 = half zone span
};

SimConfig parse_sim_config(const ConfigMap& cfg);

SimResult run_scenario(const SimConfig& cfg);

/// ---- building blocks shared with the tests and the CLI ----

/// Frequency-first (subcarrier fastest within each symbol) enumeration of
/// the shared-channel data REs: allocation minus DMRS symbols, PTRS REs,
/// and the reserved pattern.
std::vector<ReCoord> shared_channel_data_res(const Allocation& alloc,
                                             const std::vector<int>& dmrs_symbols,
                                             const std::vector<ReCoord>& ptrs_res,
                                             const ReservedPattern& reserved);

struct LinkTxResult {
    std::vector<Cvec> port_samples;
    std::vector<BitVec> payloads;      // one per codeword
    std::vector<int> e_per_codeword;   // coded bits per codeword
    OfdmConfig ofdm;
    double mean_tx_power = 0.0;
};

/// Transmit side of the PDSCH/PUSCH chain for one trial.
LinkTxResult shared_link_transmit(const SimConfig& cfg, std::mt19937_64& rng);

/// Receive side; returns true when every codeword's transport CRC passes.
bool shared_link_receive(const SimConfig& cfg, const LinkTxResult& tx,
                         const std::vector<Cvec>& rx_ports, double noise_var);

/// Full single-trial loopback through channel_apply at one SNR.
bool shared_link_trial(const SimConfig& cfg, double snr_db, uint64_t trial_index);

/// Capture generator for the cell-search scenario: the configured number
/// of SSBs (distinct ssb_index, shared payload) mapped at their burst
/// positions, OFDM modulated. `forced_pci` >= 0 overrides the randomly
/// drawn identity.
struct SsbCapture {
    Cvec samples;
    long ssb_start_sample = 0;            // first burst position
    std::vector<long> ssb_start_samples;  // one entry per transmitted SSB
    CellId pci;
    BitVec pbch_payload;
    double sample_rate_hz = 0.0;
};
SsbCapture make_ssb_capture(const SimConfig& cfg, std::mt19937_64& rng, int forced_pci = -1);

}  // namespace nrsim

#endif  // NRSIM_SIMULATE_HPP
