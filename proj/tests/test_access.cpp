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

#include <cmath>

#include "nrsim/access.hpp"
#include "nrsim/channel.hpp"
#include "nrsim/fft.hpp"
#include "nrsim/simulate.hpp"

using namespace nrsim;

TEST_CASE("ssb dimensions and content") {
    auto rng = make_rng(41);
    const CellId pci = CellId::from_pci(123);
    const BitVec payload = random_bits(rng, 32);
    const SsBlock ssb = build_ssb(pci, payload, 0);

    CHECK(ssb.grid.num_subcarriers() == 240);
    CHECK(ssb.grid.num_symbols() == 4);

    // symbol 0 holds exactly the 127 PSS REs
    int nonzero_sym0 = 0;
    for (int sc = 0; sc < 240; ++sc) {
        if (ssb.grid.at(0, sc, 0) != Complex(0, 0)) {
            ++nonzero_sym0;
        }
    }
    CHECK(nonzero_sym0 == 127);

    // symbols 1 and 3 fully occupied by PBCH + its DMRS
    for (int sym : {1, 3}) {
        for (int sc = 0; sc < 240; ++sc) {
            CHECK(ssb.grid.occupant({sc, sym}) != "");
        }
    }

    // determinism
    const SsBlock again = build_ssb(pci, payload, 0);
    for (int sym = 0; sym < 4; ++sym) {
        for (int sc = 0; sc < 240; ++sc) {
            CHECK(ssb.grid.at(0, sc, sym) == again.grid.at(0, sc, sym));
        }
    }

    CHECK_THROWS_AS(build_ssb(pci, BitVec{}, 0), std::domain_error);
    CHECK_THROWS_AS(build_ssb(pci, payload, 64), std::domain_error);
}

TEST_CASE("pbch round trip from the ssb grid") {
    auto rng = make_rng(42);
    const CellId pci = CellId::from_pci(777);
    const BitVec payload = random_bits(rng, 32);
    const SsBlock ssb = build_ssb(pci, payload, 3);
    const auto dec = decode_pbch(ssb.grid.port_values(0), pci, 3);
    CHECK(dec.crc_ok);
    CHECK(dec.payload == payload);

    // wrong pci hypothesis: dmrs/layout mismatch, crc fails
    const auto wrong = decode_pbch(ssb.grid.port_values(0), CellId::from_pci(778), 3);
    CHECK_FALSE(wrong.crc_ok);
}

TEST_CASE("burst positions stay within the half frame") {
    SsbConfig cfg;
    cfg.scs_khz = 15;
    cfg.num_ssb = 4;
    const auto pos15 = burst_positions(cfg);
    REQUIRE(pos15.size() == 4);
    for (const auto& p : pos15) {
        CHECK(p.slot < 5);  // 5 ms at 15 kHz
        CHECK(p.start_symbol < 14);
    }

    cfg.scs_khz = 240;
    cfg.num_ssb = 64;
    const auto pos240 = burst_positions(cfg);
    REQUIRE(pos240.size() == 64);
    for (const auto& p : pos240) {
        CHECK(p.slot < 80);  // 5 ms at 240 kHz
    }

    cfg.scs_khz = 15;
    cfg.num_ssb = 64;
    CHECK_THROWS_AS(burst_positions(cfg), std::domain_error);
    cfg.scs_khz = 60;
    cfg.num_ssb = 1;
    CHECK_THROWS_AS(burst_positions(cfg), std::domain_error);
}

namespace {

SimConfig capture_config() {
    SimConfig cfg;
    cfg.scenario = Scenario::CELL_SEARCH;
    cfg.seed = 7;
    cfg.ssb.scs_khz = 15;
    cfg.search.fft_size = 256;
    return cfg;
}

}  // namespace

TEST_CASE("cell search: noiseless loopback recovers pci and timing") {
    SimConfig cfg = capture_config();
    auto rng = make_rng(43);
    const SsbCapture cap = make_ssb_capture(cfg, rng);

    const auto res = cell_search(cap.samples, cfg.search);
    REQUIRE(res.has_value());
    CHECK(res->pci.pci == cap.pci.pci);
    CHECK(res->timing_offset_samples == cap.ssb_start_sample);
    CHECK(std::fabs(res->cfo_hz) < 100.0);

    // PBCH decodes at the detected position
    const Cvec ssb = extract_ssb_values(cap.samples, res->timing_offset_samples, res->cfo_hz,
                                        cfg.search);
    const auto pbch = decode_pbch(ssb, res->pci, 0);
    CHECK(pbch.crc_ok);
    CHECK(pbch.payload == cap.pbch_payload);
}

TEST_CASE("cell search is shift equivariant") {
    SimConfig cfg = capture_config();
    auto rng = make_rng(44);
    const SsbCapture cap = make_ssb_capture(cfg, rng);

    ChannelConfig ch;
    ch.delay_samples = 1234;
    const Cvec delayed = channel_apply(cap.samples, ch, cap.sample_rate_hz);
    const auto res = cell_search(delayed, cfg.search);
    REQUIRE(res.has_value());
    CHECK(res->pci.pci == cap.pci.pci);
    CHECK(res->timing_offset_samples == cap.ssb_start_sample + 1234);
}

TEST_CASE("cell search tolerates fractional cfo up to 0.4 scs") {
    SimConfig cfg = capture_config();
    auto rng = make_rng(45);
    const SsbCapture cap = make_ssb_capture(cfg, rng);

    const double cfo = 0.4 * 15000.0;
    ChannelConfig ch;
    ch.cfo_hz = cfo;
    const Cvec rx = channel_apply(cap.samples, ch, cap.sample_rate_hz);
    const auto res = cell_search(rx, cfg.search);
    REQUIRE(res.has_value());
    CHECK(res->pci.pci == cap.pci.pci);
    CHECK(res->cfo_hz == doctest::Approx(cfo).epsilon(0.05));
}

TEST_CASE("prach format table") {
    int longs = 0, shorts = 0;
    for (const auto& f : prach_formats()) {
        if (f.seq_len == 839) {
            ++longs;
        } else if (f.seq_len == 139) {
            ++shorts;
        }
    }
    CHECK(longs == 4);
    CHECK(shorts == 9);
    CHECK(prach_format("0").seq_len == 839);
    CHECK(prach_format("B4").repetitions == 12);
    CHECK_THROWS_AS(prach_format("z9"), std::domain_error);
}

TEST_CASE("prach generation: lengths and modulus") {
    PrachConfig long_cfg;
    long_cfg.format = prach_format("0");
    long_cfg.root_u = 129;
    const Cvec wave = generate_prach(long_cfg);
    CHECK(prach_fft_size(long_cfg) == 1024);
    CHECK(wave.size() == static_cast<size_t>(prach_cp_samples(long_cfg)) + 1024);

    // frequency samples are unit modulus (checked via the DFT of the root)
    const Cvec spec = fft::dft(zadoff_chu(129, 839), false);
    for (const auto& v : spec) {
        CHECK(std::fabs(std::abs(v) / std::sqrt(839.0) - 1.0) < 1e-9);
    }

    // short format at 15 kHz: symbol length equals the data symbol length
    PrachConfig short_cfg;
    short_cfg.format = prach_format("a1");
    short_cfg.mu = 0;
    short_cfg.root_u = 7;
    const Cvec s = generate_prach(short_cfg);
    const int n = prach_fft_size(short_cfg);
    CHECK(n == 256);
    CHECK(s.size() == static_cast<size_t>(prach_cp_samples(short_cfg)) + 2u * 256u);
    // repeated symbols are contiguous copies: the tail of one is the
    // cyclic prefix of the next
    const size_t cp = static_cast<size_t>(prach_cp_samples(short_cfg));
    for (int i = 0; i < n; ++i) {
        CHECK(std::abs(s[cp + static_cast<size_t>(i)] -
                       s[cp + static_cast<size_t>(i + n)]) < 1e-12);
    }

    CHECK_THROWS_AS(generate_prach(PrachConfig{prach_format("0"), 0, 839, 0, 0}),
                    std::domain_error);
}

TEST_CASE("prach detection: loopback, delay, dual preamble") {
    PrachConfig cfg;
    cfg.format = prach_format("0");
    cfg.root_u = 129;
    PrachZoneConfig zone;
    zone.ncs = 13;

    // zone 5, no delay
    cfg.cyclic_shift = 5 * 13;
    const Cvec wave = generate_prach(cfg);
    auto dets = detect_prach(wave, cfg, zone);
    REQUIRE(dets.size() == 1);
    CHECK(dets[0].preamble_index == 5);
    CHECK(dets[0].timing_advance_samples == 0);

    // delayed: TA equals the delay
    ChannelConfig ch;
    ch.delay_samples = 7;
    Cvec delayed = channel_apply(wave, ch, prach_sample_rate(cfg));
    // keep the detector window aligned: drop the first CP-worth of samples
    // as the receiver slices its own occasion; here the delay shifts the
    // sequence inside the CP
    dets = detect_prach(delayed, cfg, zone);
    REQUIRE(dets.size() == 1);
    CHECK(dets[0].preamble_index == 5);
    CHECK(dets[0].timing_advance_samples == 7);

    // two simultaneous preambles with different shifts
    PrachConfig other = cfg;
    other.cyclic_shift = 20 * 13;
    const Cvec second = generate_prach(other);
    Cvec sum(wave.size());
    for (size_t i = 0; i < sum.size(); ++i) {
        sum[i] = wave[i] + second[i];
    }
    dets = detect_prach(sum, cfg, zone);
    REQUIRE(dets.size() == 2);
    CHECK(dets[0].preamble_index == 5);
    CHECK(dets[1].preamble_index == 20);
}
