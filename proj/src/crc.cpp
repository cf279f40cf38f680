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

#include "nrsim/crc.hpp"

#include <stdexcept>

namespace nrsim {

namespace {

struct PolySpec {
    int len;
    uint32_t poly;  // without the leading x^len term
};

// 3GPP TS 38.212 section 5.1 generator polynomials
PolySpec poly_spec(CrcPoly p) {
    switch (p) {
        case CrcPoly::CRC24A:
            return {24, 0x864CFB};
        case CrcPoly::CRC24B:
            return {24, 0x800063};
        case CrcPoly::CRC16:
            return {16, 0x1021};
        case CrcPoly::CRC11:
            return {11, 0x621};
        case CrcPoly::CRC6:
            return {6, 0x21};
    }
    throw std::domain_error("crc: unknown polynomial id");
}

}  // namespace

int crc_length(CrcPoly poly) {
    return poly_spec(poly).len;
}

BitVec crc_compute(const BitVec& bits, CrcPoly poly) {
    if (bits.empty()) {
        throw std::domain_error("crc: empty input");
    }
    const PolySpec spec = poly_spec(poly);
    const uint32_t top = 1u << (spec.len - 1);
    const uint32_t keep = (spec.len == 32) ? 0xffffffffu : ((1u << spec.len) - 1u);

    uint32_t reg = 0;
    for (uint8_t b : bits) {
        const uint32_t in = static_cast<uint32_t>(b & 1u);
        const uint32_t fb = ((reg >> (spec.len - 1)) ^ in) & 1u;
        reg = ((reg << 1) & keep);
        if (fb) {
            reg ^= spec.poly;
        }
    }
    (void)top;
    BitVec out(static_cast<size_t>(spec.len));
    for (int i = 0; i < spec.len; ++i) {
        out[static_cast<size_t>(i)] = static_cast<uint8_t>((reg >> (spec.len - 1 - i)) & 1u);
    }
    return out;
}

BitVec crc_attach(const BitVec& bits, CrcPoly poly, uint32_t mask) {
    BitVec crc = crc_compute(bits, poly);
    const int len = static_cast<int>(crc.size());
    const int mask_bits = len < 16 ? len : 16;
    for (int i = 0; i < mask_bits; ++i) {
        // mask applies to the trailing bits, MSB of the mask first
        crc[static_cast<size_t>(len - mask_bits + i)] ^=
            static_cast<uint8_t>((mask >> (mask_bits - 1 - i)) & 1u);
    }
    BitVec out = bits;
    out.insert(out.end(), crc.begin(), crc.end());
    return out;
}

bool crc_check(const BitVec& bits_with_crc, CrcPoly poly, uint32_t mask) {
    const size_t len = static_cast<size_t>(crc_length(poly));
    if (bits_with_crc.size() <= len) {
        return false;
    }
    BitVec payload(bits_with_crc.begin(), bits_with_crc.end() - static_cast<long>(len));
    BitVec expected = crc_attach(payload, poly, mask);
    return expected == bits_with_crc;
}

}  // namespace nrsim
