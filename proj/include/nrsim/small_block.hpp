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

#ifndef NRSIM_SMALL_BLOCK_HPP
#define NRSIM_SMALL_BLOCK_HPP

#include "nrsim/util.hpp"

namespace nrsim {

inline constexpr int kSmallBlockLength = 32;
inline constexpr int kSmallBlockMaxPayload = 11;

/// Reed-Muller style (32, K) encoding for short control payloads,
/// K in 1..11. The basis spans the first-order code plus five
/// second-order rows, giving design distance 16 for K <= 6 and 8 above.
BitVec small_block_encode(const BitVec& uci_bits);

/// Maximum-likelihood decode by exhaustive correlation over the 2^K
/// codewords. LLR convention: positive favors bit 0. Input length may be
/// any positive multiple or truncation handled by cyclic accumulation onto
/// the 32 base positions.
BitVec small_block_decode(const std::vector<double>& llrs, int payload_len);

/// Repetition-based rate matching of the 32 coded bits to e bits.
BitVec small_block_rate_match(const BitVec& coded, size_t e);

}  // namespace nrsim

#endif  // NRSIM_SMALL_BLOCK_HPP
