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

#ifndef NRSIM_CHANNEL_HPP
#define NRSIM_CHANNEL_HPP

#include <cstdint>
#include <limits>

#include "nrsim/util.hpp"

namespace nrsim {

/// AWGN + carrier frequency offset + integer sample delay, plus an
/// optional Wiener phase-noise process (per-sample phase increments of
/// variance phase_noise_var). snr_db of +infinity disables the noise,
/// making the channel an identity (up to delay, CFO and phase noise).
struct ChannelConfig {
    double snr_db = std::numeric_limits<double>::infinity();
    double cfo_hz = 0.0;
    int delay_samples = 0;
    double phase_noise_var = 0.0;  // rad^2 per sample
    uint64_t seed = 0;
};

/// Applies delay (zero padding at the front), multiplies by
/// exp(j 2 pi cfo t) and the phase-noise walk, then adds complex Gaussian
/// noise scaled to snr_db relative to the mean input signal power.
/// Deterministic given the seed.
Cvec channel_apply(const Cvec& samples, const ChannelConfig& cfg, double sample_rate_hz);

/// Noise variance implied by an SNR relative to unit signal power
/// (0 for infinite SNR).
double noise_var_for_snr(double snr_db, double signal_power = 1.0);

}  // namespace nrsim

#endif  // NRSIM_CHANNEL_HPP
