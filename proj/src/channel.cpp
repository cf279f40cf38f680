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

#include "nrsim/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace nrsim {

double noise_var_for_snr(double snr_db, double signal_power) {
    if (std::isinf(snr_db) && snr_db > 0) {
        return 0.0;
    }
    return signal_power / std::pow(10.0, snr_db / 10.0);
}

Cvec channel_apply(const Cvec& samples, const ChannelConfig& cfg, double sample_rate_hz) {
    if (cfg.delay_samples < 0) {
        throw std::domain_error("channel_apply: delay must be non-negative");
    }
    Cvec out(static_cast<size_t>(cfg.delay_samples) + samples.size(), Complex(0, 0));
    for (size_t i = 0; i < samples.size(); ++i) {
        out[static_cast<size_t>(cfg.delay_samples) + i] = samples[i];
    }
    if (cfg.cfo_hz != 0.0) {
        const double w = 2.0 * kPi * cfg.cfo_hz / sample_rate_hz;
        for (size_t n = 0; n < out.size(); ++n) {
            const double ang = w * static_cast<double>(n);
            out[n] *= Complex(std::cos(ang), std::sin(ang));
        }
    }
    if (cfg.phase_noise_var > 0.0) {
        std::mt19937_64 rng = make_rng(cfg.seed, 0x9fa5e, out.size());
        std::normal_distribution<double> step(0.0, std::sqrt(cfg.phase_noise_var));
        double phase = 0.0;
        for (auto& v : out) {
            phase += step(rng);
            v *= Complex(std::cos(phase), std::sin(phase));
        }
    }
    const double nv = noise_var_for_snr(cfg.snr_db, mean_power(samples));
    if (nv > 0.0) {
        std::mt19937_64 rng = make_rng(cfg.seed, 0xc4a77, out.size());
        std::normal_distribution<double> gauss(0.0, std::sqrt(nv / 2.0));
        for (auto& v : out) {
            v += Complex(gauss(rng), gauss(rng));
        }
    }
    return out;
}

}  // namespace nrsim
