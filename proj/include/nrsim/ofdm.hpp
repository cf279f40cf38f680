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

#ifndef NRSIM_OFDM_HPP
#define NRSIM_OFDM_HPP

#include <vector>

#include "nrsim/numerology.hpp"
#include "nrsim/resource_grid.hpp"
#include "nrsim/util.hpp"

namespace nrsim {

/// CP-OFDM sampling parameters. sample_rate = fft_size * scs; the CP list
/// carries one entry per OFDM symbol of the waveform, with the longer
/// first-symbol CP at each half-subframe boundary.
struct OfdmConfig {
    int fft_size = 0;
    double sample_rate_hz = 0.0;
    std::vector<int> cp_samples;

    size_t samples_per_slot() const;
};

/// Builds the config for `num_symbols` symbols starting at
/// `start_symbol_in_subframe`. fft_size 0 selects the smallest power of
/// two >= 1.2 * num_subcarriers. CP lengths scale as 144 * fft/2048 with
/// 16 * 2^mu * fft/2048 extra on the first symbol of each half-subframe;
/// combinations that do not give whole samples are rejected.
OfdmConfig make_ofdm_config(const Numerology& numerology, int num_subcarriers, int num_symbols,
                            int fft_size = 0, int start_symbol_in_subframe = 0);

/// Per-symbol zero-padded unitary inverse transform with CP prepended.
/// Subcarrier i maps to bin (i - S/2) mod fft_size.
Cvec ofdm_modulate(const ResourceGrid& grid, int port, const OfdmConfig& cfg);

/// CP removal, forward transform, active-subcarrier extraction. Output
/// layout matches ResourceGrid::port_values: subcarrier + symbol * S.
Cvec ofdm_demodulate(const Cvec& samples, const OfdmConfig& cfg, int num_subcarriers,
                     int num_symbols);

/// Single-symbol IFFT without CP (building block for PRACH and the PSS
/// correlator reference).
Cvec ofdm_symbol_time(const Cvec& subcarrier_values, int fft_size, int first_subcarrier_bin);

}  // namespace nrsim

#endif  // NRSIM_OFDM_HPP
