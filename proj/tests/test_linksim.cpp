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

#include <cstdio>
#include <fstream>
#include <sstream>

#include "nrsim/simio.hpp"
#include "nrsim/access.hpp"
#include "nrsim/simulate.hpp"

using namespace nrsim;

namespace {

SimConfig base_link_config(Scenario s) {
    ConfigMap m;
    m["sim.scenario"] = s == Scenario::PDSCH ? "pdsch" : "pusch";
    m["sim.trials"] = "4";
    m["carrier.num_rb"] = "24";
    m["alloc.num_rb"] = "24";
    return parse_sim_config(m);
}

}  // namespace

TEST_CASE("config parsing and overrides") {
    ConfigMap m = parse_config_text(
        "# comment\n"
        "sim.scenario = pdsch\n"
        "mcs.modulation = 16qam   # inline comment\n"
        "sim.snr_db = 0,2,inf\n");
    CHECK(cfg_str(m, "sim.scenario", "") == "pdsch");
    apply_override(m, "mcs.modulation=qpsk");
    const SimConfig cfg = parse_sim_config(m);
    CHECK(cfg.mcs.modulation == Modulation::QPSK);
    REQUIRE(cfg.snr_db.size() == 3);
    CHECK(std::isinf(cfg.snr_db[2]));

    CHECK_THROWS(parse_config_text("key value without equals\n"));
    ConfigMap bad = m;
    bad["link.transform_precoding"] = "1";
    bad["link.layers"] = "2";
    bad["sim.scenario"] = "pusch";
    CHECK_THROWS_AS(parse_sim_config(bad), std::domain_error);

    // 2-codeword uplink rejected
    ConfigMap ul = m;
    ul["sim.scenario"] = "pusch";
    ul["link.codewords"] = "2";
    ul["link.layers"] = "8";
    CHECK_THROWS_AS(parse_sim_config(ul), std::domain_error);
}

TEST_CASE("reserved patterns from config keys") {
    ConfigMap m;
    m["sim.scenario"] = "pdsch";
    m["reserved.rb_symbol"] = "0:3,1:3,5:7";
    SimConfig cfg = parse_sim_config(m);
    CHECK(cfg.reserved.granularity == ReservedGranularity::RB_SYMBOL);
    REQUIRE(cfg.reserved.rb_symbol_mask.size() == 3);
    CHECK(cfg.reserved.rb_symbol_mask[2] == std::pair<int, int>{5, 7});
    CHECK(shared_link_trial(cfg, std::numeric_limits<double>::infinity(), 0));

    ConfigMap re = m;
    re.erase("reserved.rb_symbol");
    re["reserved.re"] = "10:2,11:2";
    const SimConfig cfg_re = parse_sim_config(re);
    CHECK(cfg_re.reserved.granularity == ReservedGranularity::RE);
    CHECK(cfg_re.reserved.re_mask.size() == 2);

    ConfigMap both = m;
    both["reserved.re"] = "1:1";
    CHECK_THROWS_AS(parse_sim_config(both), std::domain_error);
}

TEST_CASE("frequency-first mapping probe") {
    // the data-RE enumeration fills subcarriers before moving in time
    Allocation alloc{1, 4, 0, 2};
    const auto res = shared_channel_data_res(alloc, {1}, {}, {});
    REQUIRE(res.size() == 3u * 24u);  // symbol 1 is DMRS
    for (size_t i = 0; i < res.size(); ++i) {
        const int sym = 2 + static_cast<int>(i) / 24;
        const int sc = static_cast<int>(i) % 24;
        CHECK(res[i].symbol == sym);
        CHECK(res[i].subcarrier == sc);
    }
}

TEST_CASE("pdsch chain is exact at infinite snr") {
    SimConfig cfg = base_link_config(Scenario::PDSCH);
    for (uint64_t t = 0; t < 4; ++t) {
        CHECK(shared_link_trial(cfg, std::numeric_limits<double>::infinity(), t));
    }
}

TEST_CASE("pdsch chain with layers, reserved REs and ptrs") {
    SimConfig cfg = base_link_config(Scenario::PDSCH);
    cfg.num_layers = 2;
    cfg.dmrs.num_ports = 2;
    cfg.ptrs_enabled = true;
    cfg.reserved.granularity = ReservedGranularity::RB_SYMBOL;
    cfg.reserved.rb_symbol_mask = {{0, 3}, {1, 3}, {5, 7}};
    for (uint64_t t = 0; t < 3; ++t) {
        CHECK(shared_link_trial(cfg, std::numeric_limits<double>::infinity(), t));
    }

    // 2 codewords over 8 layers
    SimConfig mimo = base_link_config(Scenario::PDSCH);
    mimo.num_layers = 8;
    mimo.num_codewords = 2;
    mimo.dmrs.num_front_symbols = 2;
    mimo.dmrs.num_ports = 8;
    CHECK(shared_link_trial(mimo, std::numeric_limits<double>::infinity(), 0));
}

TEST_CASE("pusch chain with and without dft-s-ofdm") {
    SimConfig cfg = base_link_config(Scenario::PUSCH);
    CHECK(shared_link_trial(cfg, std::numeric_limits<double>::infinity(), 0));

    cfg.transform_precoding = true;
    CHECK(shared_link_trial(cfg, std::numeric_limits<double>::infinity(), 1));

    // low-PAPR Zadoff-Chu DMRS rides the same chain
    cfg.dmrs.sequence_mode = DmrsSequenceMode::ZC_LOW_PAPR;
    CHECK(shared_link_trial(cfg, std::numeric_limits<double>::infinity(), 2));
    CHECK(shared_link_trial(cfg, 8.0, 3));

    cfg.num_layers = 2;
    cfg.dmrs.num_ports = 2;
    CHECK_THROWS_AS(shared_link_trial(cfg, 100.0, 0), std::domain_error);
}

TEST_CASE("ptrs common-phase-error correction makes phase noise survivable") {
    SimConfig cfg = base_link_config(Scenario::PDSCH);
    cfg.phase_noise_var = 6e-4;  // ~1.5 rad drift over the slot

    // without PTRS the accumulated rotation breaks most transport blocks
    int ok_without = 0;
    for (uint64_t t = 0; t < 10; ++t) {
        ok_without += shared_link_trial(cfg, std::numeric_limits<double>::infinity(), t) ? 1 : 0;
    }
    CHECK(ok_without <= 7);

    // per-symbol correction from the PTRS restores the chain
    cfg.ptrs_enabled = true;
    int ok_with = 0;
    for (uint64_t t = 0; t < 10; ++t) {
        ok_with += shared_link_trial(cfg, std::numeric_limits<double>::infinity(), t) ? 1 : 0;
    }
    CHECK(ok_with == 10);
    CHECK(ok_with > ok_without);
}

TEST_CASE("mmse equalizer option runs the chain") {
    SimConfig cfg = base_link_config(Scenario::PDSCH);
    cfg.mmse_equalizer = true;
    CHECK(shared_link_trial(cfg, 8.0, 0));
    CHECK(shared_link_trial(cfg, std::numeric_limits<double>::infinity(), 1));
}

TEST_CASE("ssb on a raster offset is found when the searcher is told") {
    ConfigMap m;
    m["sim.scenario"] = "cell_search";
    m["ssb.frequency_offset_rb"] = "4";
    m["search.fft_size"] = "512";
    const SimConfig cfg = parse_sim_config(m);

    auto rng = make_rng(71);
    const SsbCapture cap = make_ssb_capture(cfg, rng);
    // noise keeps the peak-to-average metric meaningfully normalized
    ChannelConfig ch;
    ch.snr_db = 10.0;
    ch.seed = 72;
    const Cvec rx = channel_apply(cap.samples, ch, cap.sample_rate_hz);

    // SSB center sits 24 subcarriers above the carrier center
    CellSearchConfig search = cfg.search;
    search.raster_offsets_hz = {24 * 15000.0};
    const auto res = cell_search(rx, search);
    REQUIRE(res.has_value());
    CHECK(res->pci.pci == cap.pci.pci);
    CHECK(res->timing_offset_samples == cap.ssb_start_sample);
    CHECK(res->cfo_hz == doctest::Approx(24 * 15000.0).epsilon(0.01));

    // searching only the center raster position cannot produce a valid
    // result: whatever leakage crosses the threshold has the wrong
    // identity or timing and its PBCH will not decode
    search.raster_offsets_hz = {0.0};
    const auto wrong = cell_search(rx, search);
    if (wrong.has_value()) {
        const bool same_cell = wrong->pci.pci == cap.pci.pci &&
                               wrong->timing_offset_samples == cap.ssb_start_sample;
        CHECK_FALSE(same_cell);
        const Cvec ssb = extract_ssb_values(rx, wrong->timing_offset_samples, wrong->cfo_hz,
                                            search);
        CHECK_FALSE(decode_pbch(ssb, wrong->pci, 0).crc_ok);
    }
}

TEST_CASE("pdsch survives moderate noise") {
    SimConfig cfg = base_link_config(Scenario::PDSCH);
    cfg.mcs.code_rate = 1.0 / 3.0;
    int ok = 0;
    for (uint64_t t = 0; t < 5; ++t) {
        ok += shared_link_trial(cfg, 6.0, t) ? 1 : 0;
    }
    CHECK(ok == 5);
}

TEST_CASE("run_scenario tallies and parallel determinism") {
    SimConfig cfg = base_link_config(Scenario::PDSCH);
    cfg.trials = 6;
    cfg.snr_db = {std::numeric_limits<double>::infinity()};
    cfg.threads = 1;
    const SimResult a = run_scenario(cfg);
    REQUIRE(a.points.size() == 1);
    CHECK(a.points[0].trials == 6);
    CHECK(a.points[0].errors == 0);

    cfg.threads = 3;
    const SimResult b = run_scenario(cfg);
    CHECK(a.points[0].errors == b.points[0].errors);
    CHECK(csv_text(a, false) == csv_text(b, false));
}

TEST_CASE("csv format") {
    SimResult r;
    r.scenario = "pdsch";
    r.points.push_back({2.0, 100, 17, 0, 0, 1.25});
    const std::string text = csv_text(r, true);
    CHECK(text.find("scenario,snr_db,trials,errors,rate,elapsed_s\n") == 0);
    CHECK(text.find("pdsch,2,100,17,0.17000000,1.250") != std::string::npos);
    const std::string fixed = csv_text(r, false);
    CHECK(fixed.find(",0.000") != std::string::npos);
}

TEST_CASE("iq file round trip is bit exact") {
    auto rng = make_rng(61);
    std::normal_distribution<double> g(0.0, 1.0);
    // materialize the 32-bit values in memory so the expectation is
    // exactly what the file stores
    std::vector<float> quantized(2000);
    for (auto& f : quantized) {
        f = static_cast<float>(g(rng));
    }
    Cvec x(1000);
    for (size_t i = 0; i < x.size(); ++i) {
        x[i] = Complex(quantized[2 * i], quantized[2 * i + 1]);
    }
    const std::string path = "/tmp/nrsim_test.iq";
    write_iq(path, x, 3.84e6, 15);
    const IqCapture cap = read_iq(path);
    REQUIRE(cap.samples.size() == x.size());
    for (size_t i = 0; i < x.size(); ++i) {
        CHECK(cap.samples[i].real() == static_cast<double>(quantized[2 * i]));
        CHECK(cap.samples[i].imag() == static_cast<double>(quantized[2 * i + 1]));
    }
    CHECK(cap.sample_rate_hz == 3.84e6);
    CHECK(cap.scs_khz == 15);

    // re-writing what was read reproduces the file byte for byte
    const std::string path2 = "/tmp/nrsim_test2.iq";
    write_iq(path2, cap.samples, 3.84e6, 15);
    std::ifstream f1(path, std::ios::binary), f2(path2, std::ios::binary);
    std::stringstream b1, b2;
    b1 << f1.rdbuf();
    b2 << f2.rdbuf();
    CHECK(b1.str() == b2.str());
    CHECK(b1.str().size() == 8000);

    std::remove(path.c_str());
    std::remove((path + ".meta").c_str());
    std::remove(path2.c_str());
    std::remove((path2 + ".meta").c_str());

    CHECK_THROWS(read_iq("/nonexistent/file.iq"));
}

TEST_CASE("multi-ssb burst capture") {
    ConfigMap m;
    m["sim.scenario"] = "cell_search";
    m["ssb.num_ssb"] = "4";
    const SimConfig cfg = parse_sim_config(m);
    auto rng = make_rng(73);
    const SsbCapture cap = make_ssb_capture(cfg, rng);
    REQUIRE(cap.ssb_start_samples.size() == 4);
    for (size_t i = 1; i < 4; ++i) {
        CHECK(cap.ssb_start_samples[i] > cap.ssb_start_samples[i - 1]);
    }
    // the detector locks onto one of the transmitted beams
    const auto res = cell_search(cap.samples, cfg.search);
    REQUIRE(res.has_value());
    CHECK(res->pci.pci == cap.pci.pci);
    bool at_beam = false;
    for (long start : cap.ssb_start_samples) {
        at_beam = at_beam || res->timing_offset_samples == start;
    }
    CHECK(at_beam);

    // per beam: the DMRS identifies the index and the PBCH decodes
    for (int i = 0; i < 4; ++i) {
        const Cvec ssb =
            extract_ssb_values(cap.samples, cap.ssb_start_samples[static_cast<size_t>(i)], 0.0,
                               cfg.search);
        CHECK(identify_ssb_index(ssb, cap.pci) == i);
        const auto pbch = decode_pbch(ssb, cap.pci, i);
        CHECK(pbch.crc_ok);
        CHECK(pbch.payload == cap.pbch_payload);
    }

    // a multi-beam scenario run succeeds end to end
    ConfigMap m2 = m;
    m2["sim.trials"] = "3";
    m2["sim.snr_db"] = "3";
    m2["search.max_delay"] = "200";
    const SimResult r = run_scenario(parse_sim_config(m2));
    CHECK(r.points[0].errors == 0);
}

TEST_CASE("cell search scenario loopback via run_scenario") {
    ConfigMap m;
    m["sim.scenario"] = "cell_search";
    m["sim.trials"] = "3";
    m["sim.snr_db"] = "inf";
    m["search.max_delay"] = "100";
    const SimConfig cfg = parse_sim_config(m);
    const SimResult r = run_scenario(cfg);
    CHECK(r.points[0].errors == 0);
    CHECK(r.points[0].detections == 3);
}

TEST_CASE("prach scenario loopback via run_scenario") {
    ConfigMap m;
    m["sim.scenario"] = "prach";
    m["sim.trials"] = "3";
    m["sim.snr_db"] = "inf";
    m["prach.format"] = "0";
    const SimConfig cfg = parse_sim_config(m);
    const SimResult r = run_scenario(cfg);
    CHECK(r.points[0].errors == 0);
    CHECK(r.points[0].false_alarms == 0);
}
