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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "nrsim/crc.hpp"
#include "nrsim/ldpc.hpp"
#include "nrsim/polar.hpp"
#include "nrsim/small_block.hpp"

using namespace nrsim;

namespace {

// independent oracle: schoolbook polynomial long division means appending
// `len` zeros and XOR-ing the full generator wherever the leading bit is 1
BitVec crc_division_oracle(const BitVec& payload, uint64_t gen_with_top, int len) {
    BitVec work = payload;
    work.resize(payload.size() + static_cast<size_t>(len), 0);
    for (size_t i = 0; i < payload.size(); ++i) {
        if (work[i]) {
            for (int b = 0; b <= len; ++b) {
                work[i + static_cast<size_t>(b)] ^=
                    static_cast<uint8_t>((gen_with_top >> (len - b)) & 1u);
            }
        }
    }
    return BitVec(work.end() - len, work.end());
}

std::vector<double> bits_to_llrs(const BitVec& bits, double mag = 8.0) {
    std::vector<double> llrs(bits.size());
    for (size_t i = 0; i < bits.size(); ++i) {
        llrs[i] = bits[i] ? -mag : mag;
    }
    return llrs;
}

}  // namespace

TEST_CASE("crc matches the long-division oracle") {
    const std::map<CrcPoly, std::pair<uint64_t, int>> polys = {
        {CrcPoly::CRC24A, {(1ULL << 24) | 0x864CFB, 24}},
        {CrcPoly::CRC24B, {(1ULL << 24) | 0x800063, 24}},
        {CrcPoly::CRC16, {(1ULL << 16) | 0x1021, 16}},
        {CrcPoly::CRC11, {(1ULL << 11) | 0x621, 11}},
        {CrcPoly::CRC6, {(1ULL << 6) | 0x21, 6}},
    };
    auto rng = make_rng(101);
    for (const auto& [poly, gen] : polys) {
        CHECK(crc_length(poly) == gen.second);
        for (int trial = 0; trial < 50; ++trial) {
            const BitVec payload = random_bits(rng, 8 + rng() % 120);
            CHECK(crc_compute(payload, poly) ==
                  crc_division_oracle(payload, gen.first, gen.second));
        }
    }
}

TEST_CASE("crc round trip and single-bit detection") {
    auto rng = make_rng(102);
    int detected = 0;
    const int trials = 1000;
    for (int t = 0; t < trials; ++t) {
        const BitVec payload = random_bits(rng, 16 + rng() % 200);
        BitVec coded = crc_attach(payload, CrcPoly::CRC24A);
        CHECK(crc_check(coded, CrcPoly::CRC24A));
        coded[rng() % coded.size()] ^= 1;
        detected += crc_check(coded, CrcPoly::CRC24A) ? 0 : 1;
    }
    CHECK(detected == trials);
}

TEST_CASE("crc of an all-zero payload is all zero") {
    const BitVec zeros(64, 0);
    for (CrcPoly p : {CrcPoly::CRC24A, CrcPoly::CRC24B, CrcPoly::CRC16, CrcPoly::CRC11,
                      CrcPoly::CRC6}) {
        for (uint8_t b : crc_compute(zeros, p)) {
            CHECK(b == 0);
        }
    }
}

TEST_CASE("crc detects all single and double bit errors exhaustively") {
    auto rng = make_rng(103);
    const BitVec payload = random_bits(rng, 24);
    for (CrcPoly p : {CrcPoly::CRC16, CrcPoly::CRC24A}) {
        const BitVec coded = crc_attach(payload, p);
        const size_t n = coded.size();
        for (size_t i = 0; i < n; ++i) {
            BitVec e1 = coded;
            e1[i] ^= 1;
            CHECK_FALSE(crc_check(e1, p));
            for (size_t j = i + 1; j < n; ++j) {
                BitVec e2 = e1;
                e2[j] ^= 1;
                CHECK_FALSE(crc_check(e2, p));
            }
        }
    }
}

TEST_CASE("crc mask behaves like an rnti scramble") {
    auto rng = make_rng(104);
    const BitVec payload = random_bits(rng, 40);
    const BitVec coded = crc_attach(payload, CrcPoly::CRC16, 0xBEEF);
    CHECK(crc_check(coded, CrcPoly::CRC16, 0xBEEF));
    CHECK_FALSE(crc_check(coded, CrcPoly::CRC16, 0xBEEC));
    CHECK_FALSE(crc_check(coded, CrcPoly::CRC16));
    CHECK_THROWS_AS(crc_compute({}, CrcPoly::CRC16), std::domain_error);
}

TEST_CASE("small block: exhaustive noiseless round trip") {
    for (int k = 1; k <= kSmallBlockMaxPayload; ++k) {
        for (uint32_t w = 0; w < (1u << k); ++w) {
            BitVec payload(static_cast<size_t>(k));
            for (int i = 0; i < k; ++i) {
                payload[static_cast<size_t>(i)] = static_cast<uint8_t>((w >> i) & 1u);
            }
            const BitVec coded = small_block_encode(payload);
            REQUIRE(coded.size() == 32);
            if (w == 0) {
                for (uint8_t b : coded) {
                    CHECK(b == 0);
                }
            }
            CHECK(small_block_decode(bits_to_llrs(coded), k) == payload);
        }
    }
    CHECK_THROWS_AS(small_block_encode(BitVec(12, 0)), std::domain_error);
    CHECK_THROWS_AS(small_block_encode(BitVec{}), std::domain_error);
}

TEST_CASE("small block: codebook minimum distance") {
    for (int k = 1; k <= kSmallBlockMaxPayload; ++k) {
        int min_weight = 32;
        for (uint32_t w = 1; w < (1u << k); ++w) {
            BitVec payload(static_cast<size_t>(k));
            for (int i = 0; i < k; ++i) {
                payload[static_cast<size_t>(i)] = static_cast<uint8_t>((w >> i) & 1u);
            }
            int weight = 0;
            for (uint8_t b : small_block_encode(payload)) {
                weight += b;
            }
            min_weight = std::min(min_weight, weight);
        }
        const int design_distance = k <= 6 ? 16 : 8;
        CHECK(min_weight >= design_distance);
    }
}

TEST_CASE("small block: repetition rate matching folds back") {
    auto rng = make_rng(105);
    const BitVec payload = random_bits(rng, 7);
    const BitVec coded = small_block_encode(payload);
    const BitVec repeated = small_block_rate_match(coded, 100);
    CHECK(small_block_decode(bits_to_llrs(repeated), 7) == payload);
}

TEST_CASE("polar: round trips and linearity") {
    PolarSpec spec;
    spec.payload_len = 40;
    spec.coded_len = 128;
    spec.crc_len = 16;
    spec.list_size = 8;

    // all-zero payload gives the all-zero codeword
    const BitVec zeros(40, 0);
    for (uint8_t b : polar_encode(zeros, spec)) {
        CHECK(b == 0);
    }

    auto rng = make_rng(106);
    for (int t = 0; t < 200; ++t) {
        const BitVec payload = random_bits(rng, 40);
        const BitVec coded = polar_encode(payload, spec);
        const auto dec = polar_decode(bits_to_llrs(coded), spec);
        CHECK(dec.ok);
        CHECK(dec.payload == payload);
    }

    // XOR additivity of the transform chain (CRC is linear: zero-seeded)
    const BitVec a = random_bits(rng, 40);
    const BitVec b = random_bits(rng, 40);
    BitVec ab(40);
    for (int i = 0; i < 40; ++i) {
        ab[static_cast<size_t>(i)] = a[static_cast<size_t>(i)] ^ b[static_cast<size_t>(i)];
    }
    const BitVec ca = polar_encode(a, spec);
    const BitVec cb = polar_encode(b, spec);
    const BitVec cab = polar_encode(ab, spec);
    for (size_t i = 0; i < cab.size(); ++i) {
        CHECK(static_cast<int>(ca[i] ^ cb[i]) == static_cast<int>(cab[i]));
    }
}

TEST_CASE("polar: rate matching by repetition") {
    PolarSpec spec;
    spec.payload_len = 30;
    spec.coded_len = 64;
    auto rng = make_rng(107);
    const BitVec payload = random_bits(rng, 30);
    const BitVec coded = polar_encode(payload, spec);
    const BitVec tx = polar_rate_match(coded, 150);
    for (size_t i = 0; i < tx.size(); ++i) {
        CHECK(tx[i] == coded[i % 64]);
    }
    const auto folded = polar_rate_recover(bits_to_llrs(tx), 64);
    const auto dec = polar_decode(folded, spec);
    CHECK(dec.ok);
    CHECK(dec.payload == payload);
    CHECK_THROWS_AS(polar_rate_match(coded, 63), std::domain_error);
}

TEST_CASE("polar: crc mask gates acceptance") {
    PolarSpec spec;
    spec.payload_len = 40;
    spec.coded_len = 128;
    auto rng = make_rng(108);
    const BitVec payload = random_bits(rng, 40);
    const BitVec coded = polar_encode(payload, spec, 0x1234);
    CHECK(polar_decode(bits_to_llrs(coded), spec, 0x1234).ok);
    CHECK_FALSE(polar_decode(bits_to_llrs(coded), spec, 0x4321).ok);
}

TEST_CASE("polar: noise rarely passes the crc") {
    PolarSpec spec;
    spec.payload_len = 40;
    spec.coded_len = 128;
    auto rng = make_rng(109);
    std::normal_distribution<double> g(0.0, 1.0);
    int passes = 0;
    for (int t = 0; t < 300; ++t) {
        std::vector<double> llrs(128);
        for (auto& v : llrs) {
            v = 2.0 * g(rng);
        }
        passes += polar_decode(llrs, spec).ok ? 1 : 0;
    }
    CHECK(passes <= 2);  // expected ~ 300 * 8 * 2^-16 = 0.04

    CHECK_THROWS_AS(polar_encode(BitVec(120, 0),
                                 PolarSpec{120, 128, 16, 8}),
                    std::domain_error);
}

TEST_CASE("base graph selection rule") {
    CHECK(select_base_graph(100, 0.2) == BaseGraphId::BG2);
    CHECK(select_base_graph(8448, 0.8) == BaseGraphId::BG1);
    CHECK(select_base_graph(292, 0.5) == BaseGraphId::BG2);
    // 293 bits at rate 0.5 still satisfies (size <= 3824 and rate <= 0.67)
    CHECK(select_base_graph(293, 0.5) == BaseGraphId::BG2);
    CHECK(select_base_graph(293, 0.7) == BaseGraphId::BG1);
    CHECK(select_base_graph(4000, 0.5) == BaseGraphId::BG1);
    CHECK(select_base_graph(4000, 0.25) == BaseGraphId::BG2);
    CHECK_THROWS_AS(select_base_graph(0, 0.5), std::domain_error);
    CHECK_THROWS_AS(select_base_graph(100, 1.0), std::domain_error);
}

TEST_CASE("ldpc encode: zero input, syndrome, linearity") {
    for (BaseGraphId bg : {BaseGraphId::BG1, BaseGraphId::BG2}) {
        const auto& g = ldpc_base_graph(bg);
        const int z = 32;
        const size_t k = static_cast<size_t>(g.info_cols) * z;

        const BitVec zero_cw = ldpc_encode(BitVec(k, 0), bg, z);
        for (uint8_t b : zero_cw) {
            CHECK(b == 0);
        }

        auto rng = make_rng(110);
        const BitVec a = random_bits(rng, k);
        const BitVec b = random_bits(rng, k);
        const BitVec ca = ldpc_encode(a, bg, z);
        const BitVec cb = ldpc_encode(b, bg, z);
        CHECK(ldpc_syndrome_ok(ca, bg, z));
        CHECK(ldpc_syndrome_ok(cb, bg, z));

        BitVec xored(ca.size());
        for (size_t i = 0; i < ca.size(); ++i) {
            xored[i] = ca[i] ^ cb[i];
        }
        CHECK(ldpc_syndrome_ok(xored, bg, z));

        BitVec broken = ca;
        broken[5] ^= 1;
        CHECK_FALSE(ldpc_syndrome_ok(broken, bg, z));

        CHECK_THROWS_AS(ldpc_encode(BitVec(k - 1, 0), bg, z), std::domain_error);
    }
}

TEST_CASE("segmentation splits and reassembles") {
    auto rng = make_rng(111);

    // short input: one block, no CB CRC
    const BitVec small = random_bits(rng, 1000);
    const Segmentation seg1 = segment(small, BaseGraphId::BG1);
    CHECK(seg1.num_blocks == 1);
    CHECK_FALSE(seg1.has_cb_crc);
    BitVec back;
    CHECK(desegment(seg1, back));
    CHECK(back == small);

    // forced multi-block: equal lengths, per-block CRC valid
    const BitVec big = random_bits(rng, 9000);
    const Segmentation seg2 = segment(big, BaseGraphId::BG1);
    CHECK(seg2.num_blocks == 2);
    CHECK(seg2.has_cb_crc);
    CHECK(seg2.blocks[0].size() == seg2.blocks[1].size());
    for (const auto& blk : seg2.blocks) {
        const BitVec with_crc(blk.begin(), blk.begin() + seg2.payload_bits);
        CHECK(crc_check(with_crc, CrcPoly::CRC24B));
    }
    CHECK(desegment(seg2, back));
    CHECK(back == big);

    // BG2 multi-block
    const BitVec mid = random_bits(rng, 7000);
    const Segmentation seg3 = segment(mid, BaseGraphId::BG2);
    CHECK(seg3.num_blocks >= 2);
    CHECK(desegment(seg3, back));
    CHECK(back == mid);
}

TEST_CASE("rate matching: prefix read at rv0 and exact double coverage") {
    auto rng = make_rng(112);
    const BaseGraphId bg = BaseGraphId::BG2;
    const int z = 16;
    const auto& g = ldpc_base_graph(bg);
    const size_t k = static_cast<size_t>(g.info_cols) * z;
    const BitVec cb = random_bits(rng, k);
    const BitVec cw = ldpc_encode(cb, bg, z);
    const int ncb = (g.cols - 2) * z;

    // no fillers in this direct-encode scenario
    const int buffer_len = ncb;
    const BitVec rm = ldpc_rate_match(cw, bg, z, {buffer_len, 0}, static_cast<int>(k), 0);
    for (int i = 0; i < buffer_len; ++i) {
        CHECK(rm[static_cast<size_t>(i)] == cw[static_cast<size_t>(i + 2 * z)]);
    }

    const BitVec twice = ldpc_rate_match(cw, bg, z, {2 * buffer_len, 0}, static_cast<int>(k), 0);
    std::vector<int> count(static_cast<size_t>(buffer_len), 0);
    for (int i = 0; i < 2 * buffer_len; ++i) {
        // position in the buffer cycles with period buffer_len
        count[static_cast<size_t>(i % buffer_len)] += 1;
        CHECK(twice[static_cast<size_t>(i)] == cw[static_cast<size_t>(i % buffer_len + 2 * z)]);
    }
    for (int c : count) {
        CHECK(c == 2);
    }

    // rv offsets differ and stay within the buffer
    for (int rv = 1; rv < 4; ++rv) {
        const BitVec shifted = ldpc_rate_match(cw, bg, z, {64, rv}, static_cast<int>(k), 0);
        CHECK(shifted.size() == 64);
    }
}

TEST_CASE("full transport chain identity at infinite SNR") {
    auto rng = make_rng(113);
    struct Case {
        int size_a;
        double rate;
    };
    // {single CB, multi CB} x {BG1, BG2}
    const std::vector<Case> cases = {
        {120, 0.2},    // BG2 single
        {7000, 0.2},   // BG2 multi
        {4000, 0.8},   // BG1 single
        {9000, 0.75},  // BG1 multi
    };
    for (const auto& c : cases) {
        for (int rv = 0; rv < 4; ++rv) {
            const BitVec payload = random_bits(rng, static_cast<size_t>(c.size_a));
            // generous e so every buffer bit is covered at any rv
            const int e_total = static_cast<int>(3.2 * (c.size_a + 24) / c.rate / 2) * 2;
            const auto enc = transport_encode(payload, e_total, c.rate, rv);
            const auto dec =
                transport_decode(bits_to_llrs(enc.bits), payload.size(), e_total, c.rate, rv);
            CHECK(dec.crc_ok);
            CHECK(dec.payload == payload);
        }
    }
}

TEST_CASE("lifting-size table") {
    const auto& sizes = ldpc_lifting_sizes();
    CHECK(sizes.size() == 51);
    CHECK(sizes.front() == 2);
    CHECK(sizes.back() == 384);
    for (size_t i = 1; i < sizes.size(); ++i) {
        CHECK(sizes[i] > sizes[i - 1]);
    }
}

TEST_CASE("encode/decode across lifting sizes, including tiny ones") {
    auto rng = make_rng(114);
    for (BaseGraphId bg : {BaseGraphId::BG1, BaseGraphId::BG2}) {
        const auto& g = ldpc_base_graph(bg);
        for (int z : {2, 3, 5, 7, 13, 15, 48, 208, 384}) {
            const size_t k = static_cast<size_t>(g.info_cols) * z;
            const BitVec cb = random_bits(rng, k);
            const BitVec cw = ldpc_encode(cb, bg, z);
            REQUIRE(ldpc_syndrome_ok(cw, bg, z));

            std::vector<double> llrs(cw.size());
            for (size_t i = 0; i < cw.size(); ++i) {
                llrs[i] = cw[i] ? -8.0 : 8.0;
            }
            // puncture the systematic head the way transmission does
            for (int i = 0; i < 2 * z; ++i) {
                llrs[static_cast<size_t>(i)] = 0.0;
            }
            const auto dec = ldpc_decode(llrs, bg, z);
            CHECK(dec.converged);
            CHECK(dec.bits == cb);
        }
    }
}

TEST_CASE("ldpc decoder flags") {
    const BaseGraphId bg = BaseGraphId::BG2;
    const int z = 16;
    const auto& g = ldpc_base_graph(bg);
    const std::vector<double> silence(static_cast<size_t>(g.cols) * z, 0.0);
    const auto res = ldpc_decode(silence, bg, z);
    CHECK_FALSE(res.converged);
}
