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

#include "nrsim/fft.hpp"
#include "nrsim/util.hpp"

using namespace nrsim;

namespace {

// quadratic-time reference transform
Cvec naive_dft(const Cvec& x, bool inverse) {
    const size_t n = x.size();
    const double sign = inverse ? 1.0 : -1.0;
    Cvec out(n, Complex(0, 0));
    for (size_t k = 0; k < n; ++k) {
        for (size_t m = 0; m < n; ++m) {
            const double ang =
                sign * 2.0 * kPi * static_cast<double>(k * m % n) / static_cast<double>(n);
            out[k] += x[m] * Complex(std::cos(ang), std::sin(ang));
        }
    }
    return out;
}

Cvec random_vec(std::mt19937_64& rng, size_t n) {
    std::normal_distribution<double> g(0.0, 1.0);
    Cvec x(n);
    for (auto& v : x) {
        v = Complex(g(rng), g(rng));
    }
    return x;
}

double max_err(const Cvec& a, const Cvec& b) {
    double e = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        e = std::max(e, std::abs(a[i] - b[i]));
    }
    return e;
}

}  // namespace

TEST_CASE("pow2 transform matches the naive DFT") {
    auto rng = make_rng(11);
    for (size_t n : {2u, 8u, 64u, 256u}) {
        Cvec x = random_vec(rng, n);
        Cvec want = naive_dft(x, false);
        Cvec got = fft::dft(x, false);
        CHECK(max_err(want, got) < 1e-9 * static_cast<double>(n));
    }
}

TEST_CASE("bluestein handles prime and composite sizes") {
    auto rng = make_rng(12);
    for (size_t n : {3u, 12u, 139u, 300u, 839u}) {
        Cvec x = random_vec(rng, n);
        CHECK(max_err(naive_dft(x, false), fft::dft(x, false)) < 1e-8 * static_cast<double>(n));
        CHECK(max_err(naive_dft(x, true), fft::dft(x, true)) < 1e-8 * static_cast<double>(n));
    }
}

TEST_CASE("forward-inverse round trip") {
    auto rng = make_rng(13);
    for (size_t n : {16u, 139u, 1024u}) {
        Cvec x = random_vec(rng, n);
        Cvec y = fft::dft(x, false);
        Cvec back = fft::dft(y, true);
        for (auto& v : back) {
            v /= static_cast<double>(n);
        }
        CHECK(max_err(x, back) < 1e-9 * static_cast<double>(n));
    }
}

TEST_CASE("next_pow2") {
    CHECK(fft::next_pow2(1) == 1);
    CHECK(fft::next_pow2(255) == 256);
    CHECK(fft::next_pow2(256) == 256);
    CHECK(fft::next_pow2(257) == 512);
}
