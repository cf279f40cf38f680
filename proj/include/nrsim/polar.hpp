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

#ifndef NRSIM_POLAR_HPP
#define NRSIM_POLAR_HPP

#include <cstdint>

#include "nrsim/util.hpp"

namespace nrsim {

/// CRC-assisted polar coding parameters. coded_len is the transform size
/// (a power of two, at most 1024); rate matching to other lengths is by
/// cyclic repetition on top of it.
struct PolarSpec {
    int payload_len = 0;
    int coded_len = 0;
    int crc_len = 16;   // 6, 11, 16 or 24
    int list_size = 8;  // SCL decoder width
};

/// Most-reliable-first synthetic channel order for size 1024, loaded from
/// the checked-in reliability table; nested for smaller sizes.
const std::vector<int>& polar_reliability_order();

/// Info-bit positions (ascending) for a (N=coded_len, K=payload+crc) code.
std::vector<int> polar_info_positions(const PolarSpec& spec);

/// The N x N polar transform x = u F^(x) applied in place.
void polar_transform(BitVec& u);

/// CRC attachment, reliability mapping and transform. `crc_mask` is XORed
/// onto the trailing CRC bits (RNTI-style masking).
BitVec polar_encode(const BitVec& payload, const PolarSpec& spec, uint32_t crc_mask = 0);

/// Cyclic repetition of the N coded bits to e >= N transmitted bits.
BitVec polar_rate_match(const BitVec& coded, size_t e);

/// Folds repeated soft bits back onto the N transform positions.
std::vector<double> polar_rate_recover(const std::vector<double>& llrs, int coded_len);

struct PolarDecodeResult {
    bool ok = false;  // some list path passed the CRC
    BitVec payload;   // best CRC-passing payload (or best-metric payload when !ok)
};

/// Successive-cancellation list decoding; returns the best CRC-passing
/// path. Input length must be coded_len.
PolarDecodeResult polar_decode(const std::vector<double>& llrs, const PolarSpec& spec,
                               uint32_t crc_mask = 0);

}  // namespace nrsim

#endif  // NRSIM_POLAR_HPP
