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

#include "nrsim/small_block.hpp"

#include <stdexcept>

namespace nrsim {

namespace {

// Row k evaluated at codeword position j (j in 0..31). Rows 0..5 are the
// first-order Reed-Muller basis (constant + address bits), rows 6..10 are
// second-order monomials.
uint8_t basis(int k, int j) {
    const int b0 = j & 1, b1 = (j >> 1) & 1, b2 = (j >> 2) & 1, b3 = (j >> 3) & 1,
              b4 = (j >> 4) & 1;
    switch (k) {
        case 0: return 1;
        case 1: return static_cast<uint8_t>(b0);
        case 2: return static_cast<uint8_t>(b1);
        case 3: return static_cast<uint8_t>(b2);
        case 4: return static_cast<uint8_t>(b3);
        case 5: return static_cast<uint8_t>(b4);
        case 6: return static_cast<uint8_t>(b0 & b1);
        case 7: return static_cast<uint8_t>(b0 & b2);
        case 8: return static_cast<uint8_t>(b1 & b2);
        case 9: return static_cast<uint8_t>(b0 & b3);
        case 10: return static_cast<uint8_t>(b1 & b3);
        default: throw std::domain_error("small_block: basis row out of range");
    }
}

BitVec encode_word(uint32_t word, int k_bits) {
    BitVec c(kSmallBlockLength, 0);
    for (int j = 0; j < kSmallBlockLength; ++j) {
        uint8_t acc = 0;
        for (int k = 0; k < k_bits; ++k) {
            if ((word >> k) & 1u) {
                acc ^= basis(k, j);
            }
        }
        c[static_cast<size_t>(j)] = acc;
    }
    return c;
}

}  // namespace

BitVec small_block_encode(const BitVec& uci_bits) {
    const int k = static_cast<int>(uci_bits.size());
    if (k < 1 || k > kSmallBlockMaxPayload) {
        throw std::domain_error("small_block_encode: payload must be 1..11 bits");
    }
    uint32_t word = 0;
    for (int i = 0; i < k; ++i) {
        word |= static_cast<uint32_t>(uci_bits[static_cast<size_t>(i)] & 1u) << i;
    }
    return encode_word(word, k);
}

BitVec small_block_rate_match(const BitVec& coded, size_t e) {
    BitVec out(e);
    for (size_t i = 0; i < e; ++i) {
        out[i] = coded[i % coded.size()];
    }
    return out;
}

BitVec small_block_decode(const std::vector<double>& llrs, int payload_len) {
    if (payload_len < 1 || payload_len > kSmallBlockMaxPayload) {
        throw std::domain_error("small_block_decode: payload must be 1..11 bits");
    }
    if (llrs.empty()) {
        throw std::domain_error("small_block_decode: empty input");
    }
    // fold repeated transmissions back onto the 32 base positions
    std::vector<double> folded(kSmallBlockLength, 0.0);
    for (size_t i = 0; i < llrs.size(); ++i) {
        folded[i % kSmallBlockLength] += llrs[i];
    }

    double best = -1e300;
    uint32_t best_word = 0;
    const uint32_t count = 1u << payload_len;
    for (uint32_t w = 0; w < count; ++w) {
        const BitVec c = encode_word(w, payload_len);
        double score = 0.0;
        for (int j = 0; j < kSmallBlockLength; ++j) {
            score += c[static_cast<size_t>(j)] ? -folded[static_cast<size_t>(j)]
                                               : folded[static_cast<size_t>(j)];
        }
        if (score > best) {
            best = score;
            best_word = w;
        }
    }
    BitVec out(static_cast<size_t>(payload_len));
    for (int i = 0; i < payload_len; ++i) {
        out[static_cast<size_t>(i)] = static_cast<uint8_t>((best_word >> i) & 1u);
    }
    return out;
}

}  // namespace nrsim
