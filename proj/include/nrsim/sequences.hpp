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

#ifndef NRSIM_SEQUENCES_HPP
#define NRSIM_SEQUENCES_HPP

#include <cstdint>
#include <vector>

#include "nrsim/util.hpp"

namespace nrsim {

/// Fibonacci LFSR generating x(n) with x(n + degree) = sum over taps t of
/// x(n + t) mod 2. Tap offsets lie in [0, degree); init supplies
/// x(0) .. x(degree-1).
struct LfsrSpec {
    int degree = 0;
    std::vector<int> taps;
    BitVec init;
};

/// Clocks the register `length` times; output n is x(n), so the first
/// output bit is init[0]. Throws std::domain_error on an all-zero init.
BitVec m_sequence(const LfsrSpec& spec, size_t length);

/// NR-style pseudo-random sequence: XOR of two degree-31 m-sequences with
/// a 1600-step fast-forward. The first register is seeded with a single
/// leading one, the second with the bits of c_init.
BitVec gold_sequence(uint32_t c_init, size_t length);

/// Bit-to-BPSK convention used project wide: bit b -> 1 - 2b.
inline double bpsk(uint8_t bit) { return 1.0 - 2.0 * static_cast<double>(bit); }

/// x[n] = exp(-j pi u n (n+1) / n_zc), cyclically shifted in the sequence
/// domain. Requires gcd(u, n_zc) = 1.
Cvec zadoff_chu(int u, int n_zc, int cyclic_shift = 0);

struct CellId {
    int pci = 0;   // 0..1007
    int nid1 = 0;  // 0..335
    int nid2 = 0;  // 0..2

    static CellId from_pci(int pci);
    static CellId from_parts(int nid1, int nid2);
};

/// Length-127 BPSK m-sequence; the three nid2 variants are cyclic shifts
/// by 43 * nid2.
Cvec pss_sequence(int nid2);

/// Length-127 BPSK Gold sequence determined by (nid1, nid2).
Cvec sss_sequence(const CellId& cell);

/// Unit-modulus Zadoff-Chu based sequence for DFT-S-OFDM reference
/// signals: a root indexed by `group` on the largest prime below `length`,
/// cyclically extended. Length must be a positive multiple of 12.
Cvec low_papr_sequence(int group, int length);

/// Scrambles bits in place: b[i] ^= c[i] with c from gold_sequence(c_init).
void scramble(BitVec& bits, uint32_t c_init);

/// Descramble soft values: flips LLR signs where the scrambling bit is 1.
void descramble_llrs(std::vector<double>& llrs, uint32_t c_init);

int gcd_int(int a, int b);
bool is_prime(int n);
int largest_prime_below(int n);

}  // namespace nrsim

#endif  // NRSIM_SEQUENCES_HPP
