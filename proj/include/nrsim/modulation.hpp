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

#ifndef NRSIM_MODULATION_HPP
#define NRSIM_MODULATION_HPP

#include <string>
#include <vector>

#include "nrsim/util.hpp"

namespace nrsim {

enum class Modulation { BPSK, QPSK, QAM16, QAM64, QAM256 };

int bits_per_symbol(Modulation m);
Modulation modulation_from_string(const std::string& name);
std::string modulation_name(Modulation m);

/// Unit-average-energy constellation point for one label of
/// bits_per_symbol bits (binary reflected Gray mapping per axis).
Complex modulation_point(Modulation m, unsigned label);

/// Gray-mapped modulation; bit count must divide evenly into symbols.
Cvec modulate(const BitVec& bits, Modulation m);

/// Max-log LLRs, positive favors bit 0. noise_var must be positive.
std::vector<double> soft_demod(const Cvec& symbols, Modulation m, double noise_var);

struct LayerMapSpec {
    int num_codewords = 1;  // 1 or 2
    int num_layers = 1;     // 1..8
    bool uplink = false;    // UL: single codeword, at most 4 layers
};

/// Layers carried by each codeword: a single codeword takes all layers;
/// two codewords split with the first taking the floor.
std::vector<int> layers_per_codeword(const LayerMapSpec& spec);

/// Round-robin distribution of codeword symbols across their layers.
std::vector<Cvec> layer_map(const std::vector<Cvec>& codewords, const LayerMapSpec& spec);

/// Exact inverse of layer_map.
std::vector<Cvec> layer_demap(const std::vector<Cvec>& layers, const LayerMapSpec& spec,
                              const std::vector<size_t>& codeword_lengths);

/// Unitary m-point DFT applied per block of m symbols (DFT-S-OFDM
/// spreading). Input length must be a multiple of m.
Cvec transform_precode(const Cvec& symbols, int m);

/// Inverse of transform_precode.
Cvec transform_deprecode(const Cvec& symbols, int m);

}  // namespace nrsim

#endif  // NRSIM_MODULATION_HPP
