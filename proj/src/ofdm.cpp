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

#include "nrsim/ofdm.hpp"

#include <cmath>
#include <stdexcept>

#include "nrsim/fft.hpp"

namespace nrsim {

size_t OfdmConfig::samples_per_slot() const {
    size_t n = 0;
    const size_t count = std::min(cp_samples.size(), static_cast<size_t>(kSymbolsPerSlot));
    for (size_t l = 0; l < count; ++l) {
        n += static_cast<size_t>(cp_samples[l]) + static_cast<size_t>(fft_size);
    }
    return n;
}

OfdmConfig make_ofdm_config(const Numerology& numerology, int num_subcarriers, int num_symbols,
                            int fft_size, int start_symbol_in_subframe) {
    if (num_subcarriers <= 0 || num_symbols <= 0) {
        throw std::domain_error("make_ofdm_config: dimensions must be positive");
    }
    if (fft_size == 0) {
        fft_size = static_cast<int>(
            fft::next_pow2(static_cast<size_t>(std::ceil(1.2 * num_subcarriers))));
    }
    if (!fft::is_pow2(static_cast<size_t>(fft_size)) || fft_size < num_subcarriers) {
        throw std::domain_error("make_ofdm_config: fft_size must be a power of two >= subcarriers");
    }
    const long normal_num = 144L * fft_size;
    const long extra_num = 16L * (1L << numerology.mu) * fft_size;
    if (normal_num % 2048 != 0 || extra_num % 2048 != 0) {
        throw std::domain_error("make_ofdm_config: fft_size too small for whole-sample CP");
    }
    const int cp_normal = static_cast<int>(normal_num / 2048);
    const int cp_extra = static_cast<int>(extra_num / 2048);
    const int symbols_per_half_subframe = 7 * (1 << numerology.mu);
    const int symbols_per_subframe = kSymbolsPerSlot * numerology.slots_per_subframe;

    OfdmConfig cfg;
    cfg.fft_size = fft_size;
    cfg.sample_rate_hz = static_cast<double>(fft_size) * numerology.scs_khz * 1000.0;
    cfg.cp_samples.resize(static_cast<size_t>(num_symbols));
    for (int l = 0; l < num_symbols; ++l) {
        const int in_subframe = (start_symbol_in_subframe + l) % symbols_per_subframe;
        const bool long_cp = (in_subframe % symbols_per_half_subframe) == 0;
        cfg.cp_samples[static_cast<size_t>(l)] = cp_normal + (long_cp ? cp_extra : 0);
    }
    return cfg;
}

Cvec ofdm_symbol_time(const Cvec& subcarrier_values, int fft_size, int first_subcarrier_bin) {
    Cvec bins(static_cast<size_t>(fft_size), Complex(0, 0));
    for (size_t i = 0; i < subcarrier_values.size(); ++i) {
        const int bin = (first_subcarrier_bin + static_cast<int>(i) + 16 * fft_size) % fft_size;
        bins[static_cast<size_t>(bin)] = subcarrier_values[i];
    }
    fft::transform_pow2(bins, true);
    const double scale = 1.0 / std::sqrt(static_cast<double>(fft_size));
    for (auto& v : bins) {
        v *= scale;
    }
    return bins;
}

Cvec ofdm_modulate(const ResourceGrid& grid, int port, const OfdmConfig& cfg) {
    const int s = grid.num_subcarriers();
    if (s > cfg.fft_size) {
        throw std::domain_error("ofdm_modulate: grid wider than fft_size");
    }
    if (cfg.cp_samples.size() != static_cast<size_t>(grid.num_symbols())) {
        throw std::domain_error("ofdm_modulate: CP list does not match symbol count");
    }
    const Cvec& vals = grid.port_values(port);

    size_t total = 0;
    for (int cp : cfg.cp_samples) {
        total += static_cast<size_t>(cp) + static_cast<size_t>(cfg.fft_size);
    }
    Cvec out;
    out.reserve(total);

    Cvec sym(static_cast<size_t>(s));
    for (int l = 0; l < grid.num_symbols(); ++l) {
        for (int i = 0; i < s; ++i) {
            sym[static_cast<size_t>(i)] =
                vals[static_cast<size_t>(i) + static_cast<size_t>(l) * s];
        }
        const Cvec t = ofdm_symbol_time(sym, cfg.fft_size, -s / 2);
        const int cp = cfg.cp_samples[static_cast<size_t>(l)];
        out.insert(out.end(), t.end() - cp, t.end());
        out.insert(out.end(), t.begin(), t.end());
    }
    return out;
}

Cvec ofdm_demodulate(const Cvec& samples, const OfdmConfig& cfg, int num_subcarriers,
                     int num_symbols) {
    if (cfg.cp_samples.size() < static_cast<size_t>(num_symbols)) {
        throw std::domain_error("ofdm_demodulate: CP list shorter than symbol count");
    }
    if (num_subcarriers > cfg.fft_size) {
        throw std::domain_error("ofdm_demodulate: more subcarriers than fft_size");
    }
    Cvec grid(static_cast<size_t>(num_subcarriers) * static_cast<size_t>(num_symbols));
    const double scale = 1.0 / std::sqrt(static_cast<double>(cfg.fft_size));
    size_t pos = 0;
    for (int l = 0; l < num_symbols; ++l) {
        pos += static_cast<size_t>(cfg.cp_samples[static_cast<size_t>(l)]);
        if (pos + static_cast<size_t>(cfg.fft_size) > samples.size()) {
            throw std::domain_error("ofdm_demodulate: sample buffer too short");
        }
        Cvec bins(samples.begin() + static_cast<long>(pos),
                  samples.begin() + static_cast<long>(pos) + cfg.fft_size);
        fft::transform_pow2(bins, false);
        for (int i = 0; i < num_subcarriers; ++i) {
            const int bin =
                (i - num_subcarriers / 2 + 16 * cfg.fft_size) % cfg.fft_size;
            grid[static_cast<size_t>(i) + static_cast<size_t>(l) * num_subcarriers] =
                bins[static_cast<size_t>(bin)] * scale;
        }
        pos += static_cast<size_t>(cfg.fft_size);
    }
    return grid;
}

}  // namespace nrsim
