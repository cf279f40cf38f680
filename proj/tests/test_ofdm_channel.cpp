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

#include "nrsim/channel.hpp"
#include "nrsim/ofdm.hpp"

using namespace nrsim;

namespace {

ResourceGrid random_grid(std::mt19937_64& rng, int ports, int sc, int symbols) {
    ResourceGrid grid(ports, sc, symbols);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int p = 0; p < ports; ++p) {
        std::vector<ReValue> res;
        for (int s = 0; s < symbols; ++s) {
            for (int k = 0; k < sc; ++k) {
                res.push_back({{k, s}, Complex(g(rng), g(rng))});
            }
        }
        grid.map_res(p, res, "test");
    }
    return grid;
}

}  // namespace

TEST_CASE("single active subcarrier gives a complex exponential") {
    ResourceGrid grid(1, 24, 1);
    grid.map_res(0, {{{12 + 3, 0}, Complex(1.0, 0.0)}}, "tone");  // +3 bins off center
    const OfdmConfig cfg = make_ofdm_config(numerology_params(0), 24, 1, 256);
    const Cvec t = ofdm_modulate(grid, 0, cfg);
    const size_t cp = static_cast<size_t>(cfg.cp_samples[0]);
    // constant modulus and the expected per-sample rotation
    const double want_mag = 1.0 / std::sqrt(256.0);
    const double want_step = 2.0 * kPi * 3.0 / 256.0;
    for (size_t i = cp + 1; i < t.size(); ++i) {
        CHECK(std::abs(t[i]) == doctest::Approx(want_mag).epsilon(1e-9));
        const double step = std::arg(t[i] / t[i - 1]);
        CHECK(step == doctest::Approx(want_step).epsilon(1e-9));
    }
}

TEST_CASE("ofdm round trip and energy preservation") {
    auto rng = make_rng(31);
    for (int mu : {0, 1}) {
        const ResourceGrid grid = random_grid(rng, 1, 120, 14);
        const OfdmConfig cfg = make_ofdm_config(numerology_params(mu), 120, 14);
        const Cvec t = ofdm_modulate(grid, 0, cfg);
        const Cvec back = ofdm_demodulate(t, cfg, 120, 14);
        double max_err = 0.0;
        double grid_energy = 0.0, back_energy = 0.0;
        for (int s = 0; s < 14; ++s) {
            for (int k = 0; k < 120; ++k) {
                const Complex want = grid.at(0, k, s);
                const Complex got = back[static_cast<size_t>(k) + static_cast<size_t>(s) * 120];
                max_err = std::max(max_err, std::abs(want - got));
                grid_energy += std::norm(want);
                back_energy += std::norm(got);
            }
        }
        CHECK(max_err < 1e-9);
        CHECK(std::fabs(grid_energy - back_energy) / grid_energy < 1e-9);
    }
}

TEST_CASE("cp layout: long cp on half-subframe boundaries") {
    // mu=1: 28 symbols per subframe, long CP at symbols 0 and 14
    const OfdmConfig cfg = make_ofdm_config(numerology_params(1), 120, 28, 2048);
    CHECK(cfg.cp_samples[0] > cfg.cp_samples[1]);
    CHECK(cfg.cp_samples[14] == cfg.cp_samples[0]);
    for (int l = 1; l < 14; ++l) {
        CHECK(cfg.cp_samples[static_cast<size_t>(l)] == 144);
    }
    CHECK(cfg.cp_samples[0] == 144 + 16 * 2);

    CHECK_THROWS_AS(make_ofdm_config(numerology_params(0), 100, 14, 64), std::domain_error);
    CHECK_THROWS_AS(make_ofdm_config(numerology_params(0), 300, 14, 256), std::domain_error);
}

TEST_CASE("channel: identity at infinite snr, delay, determinism") {
    auto rng = make_rng(32);
    std::normal_distribution<double> g(0.0, 1.0);
    Cvec x(5000);
    for (auto& v : x) {
        v = Complex(g(rng), g(rng));
    }

    ChannelConfig ident;
    CHECK(channel_apply(x, ident, 1e6) == x);

    ChannelConfig delayed;
    delayed.delay_samples = 1234;
    const Cvec d = channel_apply(x, delayed, 1e6);
    REQUIRE(d.size() == x.size() + 1234);
    for (int i = 0; i < 1234; ++i) {
        CHECK(d[static_cast<size_t>(i)] == Complex(0, 0));
    }
    CHECK(d[1234] == x[0]);

    ChannelConfig noisy;
    noisy.snr_db = 10.0;
    noisy.seed = 99;
    CHECK(channel_apply(x, noisy, 1e6) == channel_apply(x, noisy, 1e6));
    ChannelConfig other = noisy;
    other.seed = 100;
    CHECK(channel_apply(x, noisy, 1e6) != channel_apply(x, other, 1e6));
}

TEST_CASE("channel: measured snr within 0.1 dB at 1e6 samples") {
    auto rng = make_rng(33);
    std::normal_distribution<double> g(0.0, 1.0);
    Cvec x(1000000);
    for (auto& v : x) {
        v = Complex(g(rng), g(rng));
    }
    const double p_sig = mean_power(x);

    ChannelConfig ch;
    ch.snr_db = 7.0;
    ch.seed = 5;
    const Cvec y = channel_apply(x, ch, 1e6);
    double p_noise = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        p_noise += std::norm(y[i] - x[i]);
    }
    p_noise /= static_cast<double>(x.size());
    const double snr_meas = 10.0 * std::log10(p_sig / p_noise);
    CHECK(snr_meas == doctest::Approx(7.0).epsilon(0.015));
}

TEST_CASE("channel: cfo rotates at the configured rate") {
    Cvec ones(1000, Complex(1.0, 0.0));
    ChannelConfig ch;
    ch.cfo_hz = 250.0;
    const double fs = 1e6;
    const Cvec y = channel_apply(ones, ch, fs);
    const double step = std::arg(y[1] / y[0]);
    CHECK(step == doctest::Approx(2.0 * kPi * 250.0 / fs).epsilon(1e-9));
}
