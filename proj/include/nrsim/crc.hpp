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

#ifndef NRSIM_CRC_HPP
#define NRSIM_CRC_HPP

#include <cstdint>

#include "nrsim/util.hpp"

namespace nrsim {

/// Generator polynomials: 24-bit pair for transport/code blocks, shorter
/// variants for control payloads.
enum class CrcPoly { CRC24A, CRC24B, CRC16, CRC11, CRC6 };

int crc_length(CrcPoly poly);

/// MSB-first bitwise remainder with a zero-initialized register.
BitVec crc_compute(const BitVec& bits, CrcPoly poly);

/// Returns payload with the CRC field appended. `mask` is XORed onto the
/// trailing mask bits of the CRC (RNTI-style scrambling of the check
/// field); pass 0 for a plain CRC.
BitVec crc_attach(const BitVec& bits, CrcPoly poly, uint32_t mask = 0);

/// Verifies a payload+CRC vector produced by crc_attach with the same mask.
bool crc_check(const BitVec& bits_with_crc, CrcPoly poly, uint32_t mask = 0);

}  // namespace nrsim

#endif  // NRSIM_CRC_HPP
