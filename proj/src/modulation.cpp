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

#include "nrsim/modulation.hpp"

#include <cmath>
#include <stdexcept>

#include "nrsim/fft.hpp"
#include "nrsim/util.hpp"

namespace nrsim {

int bits_per_symbol(Modulation m) {
    switch (m) {
        case Modulation::BPSK:
            return 1;
        case Modulation::QPSK:
            return 2;
        case Modulation::QAM16:
            return 4;
        case Modulation::QAM64:
            return 6;
        case Modulation::QAM256:
            return 8;
    }
    throw std::domain_error("bits_per_symbol: unknown modulation");
}

Modulation modulation_from_string(const std::string& name) {
    const std::string n = to_lower(name);
    if (n == "bpsk") return Modulation::BPSK;
    if (n == "qpsk") return Modulation::QPSK;
    if (n == "16qam" || n == "qam16") return Modulation::QAM16;
    if (n == "64qam" || n == "qam64") return Modulation::QAM64;
    if (n == "256qam" || n == "qam256") return Modulation::QAM256;
    throw std::domain_error("unknown modulation: " + name);
}

std::string modulation_name(Modulation m) {
    switch (m) {
        case Modulation::BPSK: return "bpsk";
        case Modulation::QPSK: return "qpsk";
        case Modulation::QAM16: return "16qam";
        case Modulation::QAM64: return "64qam";
        case Modulation::QAM256: return "256qam";
    }
    return "?";
}

namespace {

inline double pm(uint8_t b) { return 1.0 - 2.0 * b; }

}  // namespace

// 3GPP TS 38.211 section 5.1 mapping formulas (binary reflected Gray
// mapping per axis, unit average energy).
Complex modulation_point(Modulation m, unsigned label) {
    auto bit = [label](int i) { return static_cast<uint8_t>((label >> i) & 1u); };
    switch (m) {
        case Modulation::BPSK: {
            const double v = pm(bit(0)) / std::sqrt(2.0);
            return {v, v};
        }
        case Modulation::QPSK:
            return {pm(bit(0)) / std::sqrt(2.0), pm(bit(1)) / std::sqrt(2.0)};
        case Modulation::QAM16:
            return {pm(bit(0)) * (2.0 - pm(bit(2))) / std::sqrt(10.0),
                    pm(bit(1)) * (2.0 - pm(bit(3))) / std::sqrt(10.0)};
        case Modulation::QAM64:
            return {pm(bit(0)) * (4.0 - pm(bit(2)) * (2.0 - pm(bit(4)))) / std::sqrt(42.0),
                    pm(bit(1)) * (4.0 - pm(bit(3)) * (2.0 - pm(bit(5)))) / std::sqrt(42.0)};
        case Modulation::QAM256:
            return {pm(bit(0)) * (8.0 - pm(bit(2)) * (4.0 - pm(bit(4)) * (2.0 - pm(bit(6))))) /
                        std::sqrt(170.0),
                    pm(bit(1)) * (8.0 - pm(bit(3)) * (4.0 - pm(bit(5)) * (2.0 - pm(bit(7))))) /
                        std::sqrt(170.0)};
    }
    throw std::domain_error("modulation_point: unknown modulation");
}

Cvec modulate(const BitVec& bits, Modulation m) {
    const int q = bits_per_symbol(m);
    if (bits.size() % static_cast<size_t>(q) != 0) {
        throw std::domain_error("modulate: bit count not divisible by bits per symbol");
    }
    Cvec out(bits.size() / static_cast<size_t>(q));
    for (size_t s = 0; s < out.size(); ++s) {
        unsigned label = 0;
        for (int i = 0; i < q; ++i) {
            label |= static_cast<unsigned>(bits[s * static_cast<size_t>(q) + static_cast<size_t>(i)] & 1u)
                     << i;
        }
        out[s] = modulation_point(m, label);
    }
    return out;
}

std::vector<double> soft_demod(const Cvec& symbols, Modulation m, double noise_var) {
    if (noise_var <= 0.0) {
        throw std::domain_error("soft_demod: noise_var must be positive");
    }
    const int q = bits_per_symbol(m);
    const unsigned count = 1u << q;
    // constellation cache per call; cheap relative to the distance scan
    Cvec points(count);
    for (unsigned l = 0; l < count; ++l) {
        points[l] = modulation_point(m, l);
    }
    std::vector<double> llrs(symbols.size() * static_cast<size_t>(q));
    for (size_t s = 0; s < symbols.size(); ++s) {
        for (int i = 0; i < q; ++i) {
            double d0 = 1e300, d1 = 1e300;
            for (unsigned l = 0; l < count; ++l) {
                const double d = std::norm(symbols[s] - points[l]);
                if ((l >> i) & 1u) {
                    d1 = std::min(d1, d);
                } else {
                    d0 = std::min(d0, d);
                }
            }
            llrs[s * static_cast<size_t>(q) + static_cast<size_t>(i)] = (d1 - d0) / noise_var;
        }
    }
    return llrs;
}

std::vector<int> layers_per_codeword(const LayerMapSpec& spec) {
    if (spec.num_codewords < 1 || spec.num_codewords > 2) {
        throw std::domain_error("layer map: 1 or 2 codewords supported");
    }
    if (spec.uplink) {
        if (spec.num_codewords != 1 || spec.num_layers < 1 || spec.num_layers > 4) {
            throw std::domain_error("layer map: uplink is single codeword, at most 4 layers");
        }
        return {spec.num_layers};
    }
    if (spec.num_codewords == 1) {
        if (spec.num_layers < 1 || spec.num_layers > 4) {
            throw std::domain_error("layer map: one codeword carries at most 4 layers");
        }
        return {spec.num_layers};
    }
    if (spec.num_layers < 5 || spec.num_layers > 8) {
        throw std::domain_error("layer map: two codewords require 5..8 layers");
    }
    return {spec.num_layers / 2, spec.num_layers - spec.num_layers / 2};
}

std::vector<Cvec> layer_map(const std::vector<Cvec>& codewords, const LayerMapSpec& spec) {
    const std::vector<int> split = layers_per_codeword(spec);
    if (codewords.size() != split.size()) {
        throw std::domain_error("layer_map: codeword count mismatch");
    }
    std::vector<Cvec> layers;
    for (size_t cw = 0; cw < codewords.size(); ++cw) {
        const int nl = split[cw];
        if (codewords[cw].size() % static_cast<size_t>(nl) != 0) {
            throw std::domain_error("layer_map: symbol count not divisible by layer count");
        }
        const size_t per = codewords[cw].size() / static_cast<size_t>(nl);
        for (int l = 0; l < nl; ++l) {
            Cvec lay(per);
            for (size_t k = 0; k < per; ++k) {
                lay[k] = codewords[cw][k * static_cast<size_t>(nl) + static_cast<size_t>(l)];
            }
            layers.push_back(std::move(lay));
        }
    }
    return layers;
}

std::vector<Cvec> layer_demap(const std::vector<Cvec>& layers, const LayerMapSpec& spec,
                              const std::vector<size_t>& codeword_lengths) {
    const std::vector<int> split = layers_per_codeword(spec);
    if (codeword_lengths.size() != split.size()) {
        throw std::domain_error("layer_demap: codeword count mismatch");
    }
    std::vector<Cvec> codewords;
    size_t layer0 = 0;
    for (size_t cw = 0; cw < split.size(); ++cw) {
        const int nl = split[cw];
        Cvec out(codeword_lengths[cw]);
        for (size_t k = 0; k < out.size(); ++k) {
            out[k] = layers[layer0 + k % static_cast<size_t>(nl)][k / static_cast<size_t>(nl)];
        }
        codewords.push_back(std::move(out));
        layer0 += static_cast<size_t>(nl);
    }
    return codewords;
}

Cvec transform_precode(const Cvec& symbols, int m) {
    if (m < 1 || symbols.size() % static_cast<size_t>(m) != 0) {
        throw std::domain_error("transform_precode: length must be a multiple of m");
    }
    Cvec out(symbols.size());
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    for (size_t b = 0; b < symbols.size(); b += static_cast<size_t>(m)) {
        Cvec block(symbols.begin() + static_cast<long>(b),
                   symbols.begin() + static_cast<long>(b) + m);
        Cvec spread = fft::dft(block, false);
        for (int k = 0; k < m; ++k) {
            out[b + static_cast<size_t>(k)] = spread[static_cast<size_t>(k)] * scale;
        }
    }
    return out;
}

Cvec transform_deprecode(const Cvec& symbols, int m) {
    if (m < 1 || symbols.size() % static_cast<size_t>(m) != 0) {
        throw std::domain_error("transform_deprecode: length must be a multiple of m");
    }
    Cvec out(symbols.size());
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    for (size_t b = 0; b < symbols.size(); b += static_cast<size_t>(m)) {
        Cvec block(symbols.begin() + static_cast<long>(b),
                   symbols.begin() + static_cast<long>(b) + m);
        Cvec despread = fft::dft(block, true);
        for (int k = 0; k < m; ++k) {
            out[b + static_cast<size_t>(k)] = despread[static_cast<size_t>(k)] * scale;
        }
    }
    return out;
}

}  // namespace nrsim
