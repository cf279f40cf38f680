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
#include <set>

#include "nrsim/fft.hpp"
#include "nrsim/sequences.hpp"

using namespace nrsim;

namespace {

// independent register-level oracle: explicit state vector, shift once per
// clock, feedback = XOR of tapped cells
BitVec lfsr_oracle(const LfsrSpec& spec, size_t length) {
    std::vector<uint8_t> state(spec.init.begin(), spec.init.end());
    BitVec out;
    for (size_t i = 0; i < length; ++i) {
        out.push_back(state[0]);
        uint8_t fb = 0;
        for (int t : spec.taps) {
            fb ^= state[static_cast<size_t>(t)];
        }
        for (size_t k = 0; k + 1 < state.size(); ++k) {
            state[k] = state[k + 1];
        }
        state.back() = fb;
    }
    return out;
}

LfsrSpec degree7_spec() {
    LfsrSpec s;
    s.degree = 7;
    s.taps = {0, 4};  // x(i+7) = x(i+4) + x(i), a maximal polynomial
    s.init = {1, 0, 0, 0, 0, 0, 0};
    return s;
}

}  // namespace

TEST_CASE("m_sequence matches the register oracle") {
    const LfsrSpec spec = degree7_spec();
    CHECK(m_sequence(spec, 254) == lfsr_oracle(spec, 254));

    LfsrSpec other = spec;
    other.init = {0, 1, 1, 0, 1, 1, 1};
    CHECK(m_sequence(other, 300) == lfsr_oracle(other, 300));
}

TEST_CASE("m_sequence period and balance") {
    const BitVec x = m_sequence(degree7_spec(), 254);
    int ones = 0;
    for (int i = 0; i < 127; ++i) {
        ones += x[static_cast<size_t>(i)];
        CHECK(x[static_cast<size_t>(i)] == x[static_cast<size_t>(i) + 127]);  // period 127
    }
    CHECK(ones == 64);  // 64 ones, 63 zeros over one period
}

TEST_CASE("m_sequence first output and error paths") {
    LfsrSpec spec = degree7_spec();
    spec.init = {0, 1, 0, 1, 1, 0, 0};
    CHECK(m_sequence(spec, 1)[0] == spec.init[0]);

    spec.init = {0, 0, 0, 0, 0, 0, 0};
    CHECK_THROWS_AS(m_sequence(spec, 10), std::domain_error);
}

TEST_CASE("gold sequence determinism and structure") {
    CHECK(gold_sequence(12345, 200) == gold_sequence(12345, 200));

    // different init differs somewhere within the first 64 bits
    const BitVec a = gold_sequence(0, 64);
    const BitVec b = gold_sequence(1, 64);
    CHECK(a != b);

    // prefix property
    const BitVec longer = gold_sequence(7777, 300);
    const BitVec shorter = gold_sequence(7777, 120);
    CHECK(BitVec(longer.begin(), longer.begin() + 120) == shorter);

    // XOR with the first constituent recovers the second
    const size_t n = 100;
    LfsrSpec x1;
    x1.degree = 31;
    x1.taps = {0, 3};
    x1.init = BitVec(31, 0);
    x1.init[0] = 1;
    const BitVec c1 = m_sequence(x1, 1600 + n);

    LfsrSpec x2;
    x2.degree = 31;
    x2.taps = {0, 1, 2, 3};
    x2.init = BitVec(31, 0);
    const uint32_t c_init = 0x2468ace;
    for (int i = 0; i < 31; ++i) {
        x2.init[static_cast<size_t>(i)] = static_cast<uint8_t>((c_init >> i) & 1u);
    }
    const BitVec c2 = m_sequence(x2, 1600 + n);

    const BitVec g = gold_sequence(c_init, n);
    for (size_t i = 0; i < n; ++i) {
        CHECK(static_cast<int>(g[i] ^ c1[1600 + i]) == static_cast<int>(c2[1600 + i]));
    }
}

TEST_CASE("zadoff-chu modulus and autocorrelation") {
    for (auto [u, n] : std::vector<std::pair<int, int>>{{1, 839}, {25, 839}, {7, 139}, {5, 63}}) {
        const Cvec x = zadoff_chu(u, n);
        for (const auto& v : x) {
            CHECK(std::fabs(std::abs(v) - 1.0) < 1e-12);
        }
        // zero cyclic autocorrelation off peak
        for (int tau : {1, 2, n / 3, n - 1}) {
            Complex acc(0, 0);
            for (int i = 0; i < n; ++i) {
                acc += x[static_cast<size_t>(i)] * std::conj(x[static_cast<size_t>((i + tau) % n)]);
            }
            CHECK(std::abs(acc) < 1e-9 * n);
        }
    }
    CHECK(std::abs(zadoff_chu(1, 839)[0] - Complex(1.0, 0.0)) < 1e-12);
    CHECK_THROWS_AS(zadoff_chu(0, 839, 0), std::domain_error);
    CHECK_THROWS_AS(zadoff_chu(7, 63, 0), std::domain_error);  // gcd 7
    CHECK_THROWS_AS(zadoff_chu(3, 839, 839), std::domain_error);
}

TEST_CASE("zadoff-chu constant amplitude after DFT") {
    const Cvec x = zadoff_chu(129, 839);
    const Cvec spec = fft::dft(x, false);
    double lo = 1e300, hi = 0.0;
    for (const auto& v : spec) {
        lo = std::min(lo, std::abs(v));
        hi = std::max(hi, std::abs(v));
    }
    CHECK((hi - lo) / hi < 1e-9);
}

TEST_CASE("pss alphabet, length, and detector ambiguity") {
    for (int nid2 = 0; nid2 < 3; ++nid2) {
        const Cvec d = pss_sequence(nid2);
        REQUIRE(d.size() == 127);
        for (const auto& v : d) {
            CHECK((v == Complex(1, 0) || v == Complex(-1, 0)));
        }
    }
    CHECK_THROWS_AS(pss_sequence(3), std::domain_error);

    // time-domain cross-ambiguity between two nid2 candidates: the
    // detector-facing statistic, max over all cyclic lags
    const Cvec t0 = fft::dft(pss_sequence(0), true);
    const Cvec t1 = fft::dft(pss_sequence(1), true);
    double self = 0.0, cross = 0.0;
    for (size_t tau = 0; tau < 127; ++tau) {
        Complex a(0, 0), c(0, 0);
        for (size_t i = 0; i < 127; ++i) {
            a += t0[i] * std::conj(t0[(i + tau) % 127]);
            c += t0[i] * std::conj(t1[(i + tau) % 127]);
        }
        if (tau == 0) {
            self = std::abs(a);
        }
        cross = std::max(cross, std::abs(c));
    }
    CHECK(cross / self < 0.3);
}

TEST_CASE("sss distinct across all 1008 identities") {
    std::set<std::vector<int>> seen;
    for (int pci = 0; pci < 1008; ++pci) {
        const Cvec d = sss_sequence(CellId::from_pci(pci));
        REQUIRE(d.size() == 127);
        std::vector<int> signs(127);
        for (size_t i = 0; i < 127; ++i) {
            CHECK((d[i] == Complex(1, 0) || d[i] == Complex(-1, 0)));
            signs[i] = d[i].real() > 0 ? 1 : -1;
        }
        seen.insert(signs);
    }
    CHECK(seen.size() == 1008);

    const CellId c = CellId::from_pci(777);
    CHECK(sss_sequence(c) == sss_sequence(c));
    CHECK(c.pci == 3 * c.nid1 + c.nid2);
}

TEST_CASE("low papr sequence") {
    const Cvec r = low_papr_sequence(3, 36);
    REQUIRE(r.size() == 36);
    for (const auto& v : r) {
        CHECK(std::fabs(std::abs(v) - 1.0) < 1e-12);
    }
    CHECK(low_papr_sequence(3, 36) == low_papr_sequence(3, 36));
    CHECK(low_papr_sequence(3, 36) != low_papr_sequence(4, 36));
    CHECK_THROWS_AS(low_papr_sequence(0, 10), std::domain_error);
    CHECK_THROWS_AS(low_papr_sequence(0, 18), std::domain_error);
}

TEST_CASE("scramble round trip") {
    auto rng = make_rng(77);
    BitVec bits = random_bits(rng, 500);
    const BitVec orig = bits;
    scramble(bits, 0xabcde);
    CHECK(bits != orig);
    scramble(bits, 0xabcde);
    CHECK(bits == orig);

    std::vector<double> llrs(500);
    for (size_t i = 0; i < llrs.size(); ++i) {
        llrs[i] = orig[i] ? -1.0 : 1.0;  // noiseless soft bits of scrambled-free stream
    }
    // scramble bits, then descramble llrs of the scrambled stream
    BitVec tx = orig;
    scramble(tx, 99);
    std::vector<double> rx(500);
    for (size_t i = 0; i < rx.size(); ++i) {
        rx[i] = tx[i] ? -1.0 : 1.0;
    }
    descramble_llrs(rx, 99);
    for (size_t i = 0; i < rx.size(); ++i) {
        CHECK((rx[i] > 0) == (orig[i] == 0));
    }
}
