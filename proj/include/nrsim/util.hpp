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

#ifndef NRSIM_UTIL_HPP
#define NRSIM_UTIL_HPP

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace nrsim {

using Complex = std::complex<double>;
using Cvec = std::vector<Complex>;
using BitVec = std::vector<uint8_t>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Stateless 64-bit mixer used to derive independent RNG streams from a
/// master seed plus indices (trial number, SNR point, ...).
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Derive a per-stream RNG. Streams for distinct (seed, a, b) pairs are
/// decorrelated, so Monte-Carlo trials can run in any order or thread.
inline std::mt19937_64 make_rng(uint64_t seed, uint64_t a = 0, uint64_t b = 0) {
    uint64_t s = splitmix64(seed ^ splitmix64(a ^ splitmix64(b)));
    return std::mt19937_64(s);
}

inline BitVec random_bits(std::mt19937_64& rng, size_t n) {
    BitVec out(n);
    for (size_t i = 0; i < n; ++i) {
        out[i] = static_cast<uint8_t>(rng() & 1u);
    }
    return out;
}

/// Mean |x|^2 over a sample buffer.
double mean_power(const Cvec& x);

/// max |x|^2 / mean |x|^2, in dB.
double papr_db(const Cvec& x);

std::string to_lower(std::string s);

}  // namespace nrsim

#endif  // NRSIM_UTIL_HPP
