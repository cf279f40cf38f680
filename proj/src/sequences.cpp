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

#include "nrsim/sequences.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace nrsim {

BitVec m_sequence(const LfsrSpec& spec, size_t length) {
    if (spec.degree < 2 || spec.init.size() != static_cast<size_t>(spec.degree)) {
        throw std::domain_error("m_sequence: bad register specification");
    }
    bool all_zero = true;
    for (uint8_t b : spec.init) {
        all_zero = all_zero && (b == 0);
    }
    if (all_zero) {
        throw std::domain_error("m_sequence: all-zero initial state");
    }
    for (int t : spec.taps) {
        if (t < 0 || t >= spec.degree) {
            throw std::domain_error("m_sequence: tap offset out of range");
        }
    }
    BitVec x(length + static_cast<size_t>(spec.degree));
    for (int i = 0; i < spec.degree; ++i) {
        x[static_cast<size_t>(i)] = spec.init[static_cast<size_t>(i)] & 1u;
    }
    for (size_t n = 0; n + spec.degree < x.size(); ++n) {
        uint8_t fb = 0;
        for (int t : spec.taps) {
            fb ^= x[n + static_cast<size_t>(t)];
        }
        x[n + static_cast<size_t>(spec.degree)] = fb;
    }
    x.resize(length);
    return x;
}

BitVec gold_sequence(uint32_t c_init, size_t length) {
    constexpr size_t kDiscard = 1600;
    const size_t total = kDiscard + length;

    BitVec x1(total + 31), x2(total + 31);
    x1[0] = 1;  // remaining bits zero
    for (int i = 0; i < 31; ++i) {
        x2[static_cast<size_t>(i)] = static_cast<uint8_t>((c_init >> i) & 1u);
    }
    for (size_t n = 0; n < total; ++n) {
        x1[n + 31] = static_cast<uint8_t>(x1[n + 3] ^ x1[n]);
        x2[n + 31] = static_cast<uint8_t>(x2[n + 3] ^ x2[n + 2] ^ x2[n + 1] ^ x2[n]);
    }
    BitVec c(length);
    for (size_t n = 0; n < length; ++n) {
        c[n] = static_cast<uint8_t>(x1[n + kDiscard] ^ x2[n + kDiscard]);
    }
    return c;
}

int gcd_int(int a, int b) {
    return std::gcd(a, b);
}

bool is_prime(int n) {
    if (n < 2) {
        return false;
    }
    for (int d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

int largest_prime_below(int n) {
    for (int p = n - 1; p >= 2; --p) {
        if (is_prime(p)) {
            return p;
        }
    }
    throw std::domain_error("largest_prime_below: no prime below " + std::to_string(n));
}

Cvec zadoff_chu(int u, int n_zc, int cyclic_shift) {
    if (n_zc < 3) {
        throw std::domain_error("zadoff_chu: sequence length too small");
    }
    if (u <= 0 || u >= n_zc || gcd_int(u, n_zc) != 1) {
        throw std::domain_error("zadoff_chu: root must satisfy gcd(u, n_zc) = 1");
    }
    if (cyclic_shift < 0 || cyclic_shift >= n_zc) {
        throw std::domain_error("zadoff_chu: cyclic shift out of range");
    }
    Cvec x(static_cast<size_t>(n_zc));
    for (int n = 0; n < n_zc; ++n) {
        const int m = (n + cyclic_shift) % n_zc;
        // m(m+1) mod 2*n_zc keeps the phase argument exact in double
        const long long mm = (static_cast<long long>(m) * (m + 1)) % (2LL * n_zc);
        const double phase = -kPi * static_cast<double>(u) * static_cast<double>(mm) /
                             static_cast<double>(n_zc);
        x[static_cast<size_t>(n)] = Complex(std::cos(phase), std::sin(phase));
    }
    return x;
}

CellId CellId::from_pci(int pci) {
    if (pci < 0 || pci > 1007) {
        throw std::domain_error("CellId: pci must be in 0..1007");
    }
    return CellId{pci, pci / 3, pci % 3};
}

CellId CellId::from_parts(int nid1, int nid2) {
    if (nid1 < 0 || nid1 > 335 || nid2 < 0 || nid2 > 2) {
        throw std::domain_error("CellId: nid1 in 0..335 and nid2 in 0..2 required");
    }
    return CellId{3 * nid1 + nid2, nid1, nid2};
}

namespace {

BitVec pss_base_msequence() {
    // x(i+7) = x(i+4) + x(i), seeded 0110111
    LfsrSpec spec;
    spec.degree = 7;
    spec.taps = {0, 4};
    spec.init = {0, 1, 1, 0, 1, 1, 1};
    return m_sequence(spec, 127);
}

}  // namespace

Cvec pss_sequence(int nid2) {
    if (nid2 < 0 || nid2 > 2) {
        throw std::domain_error("pss_sequence: nid2 must be in 0..2");
    }
    static const BitVec x = pss_base_msequence();
    Cvec d(127);
    for (int n = 0; n < 127; ++n) {
        const int m = (n + 43 * nid2) % 127;
        d[static_cast<size_t>(n)] = Complex(bpsk(x[static_cast<size_t>(m)]), 0.0);
    }
    return d;
}

Cvec sss_sequence(const CellId& cell) {
    (void)CellId::from_parts(cell.nid1, cell.nid2);  // validates ranges
    static const BitVec x0 = [] {
        LfsrSpec s;
        s.degree = 7;
        s.taps = {0, 4};
        s.init = {1, 0, 0, 0, 0, 0, 0};
        return m_sequence(s, 127);
    }();
    static const BitVec x1 = [] {
        LfsrSpec s;
        s.degree = 7;
        s.taps = {0, 1};
        s.init = {1, 0, 0, 0, 0, 0, 0};
        return m_sequence(s, 127);
    }();
    const int m0 = 15 * (cell.nid1 / 112) + 5 * cell.nid2;
    const int m1 = cell.nid1 % 112;
    Cvec d(127);
    for (int n = 0; n < 127; ++n) {
        const double a = bpsk(x0[static_cast<size_t>((n + m0) % 127)]);
        const double b = bpsk(x1[static_cast<size_t>((n + m1) % 127)]);
        d[static_cast<size_t>(n)] = Complex(a * b, 0.0);
    }
    return d;
}

Cvec low_papr_sequence(int group, int length) {
    if (length < 12 || length % 12 != 0) {
        throw std::domain_error("low_papr_sequence: length must be a positive multiple of 12");
    }
    if (group < 0) {
        throw std::domain_error("low_papr_sequence: group must be non-negative");
    }
    const int n_zc = largest_prime_below(length);
    const int u = (group % (n_zc - 1)) + 1;
    const Cvec base = zadoff_chu(u, n_zc);
    Cvec r(static_cast<size_t>(length));
    for (int n = 0; n < length; ++n) {
        r[static_cast<size_t>(n)] = base[static_cast<size_t>(n % n_zc)];
    }
    return r;
}

void scramble(BitVec& bits, uint32_t c_init) {
    const BitVec c = gold_sequence(c_init, bits.size());
    for (size_t i = 0; i < bits.size(); ++i) {
        bits[i] ^= c[i];
    }
}

void descramble_llrs(std::vector<double>& llrs, uint32_t c_init) {
    const BitVec c = gold_sequence(c_init, llrs.size());
    for (size_t i = 0; i < llrs.size(); ++i) {
        if (c[i]) {
            llrs[i] = -llrs[i];
        }
    }
}

}  // namespace nrsim
