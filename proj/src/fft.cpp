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

#include "nrsim/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace nrsim::fft {

bool is_pow2(size_t n) {
    return n != 0 && (n & (n - 1)) == 0;
}

size_t next_pow2(size_t n) {
    size_t p = 1;
    while (p < n) {
        p <<= 1;
    }
    return p;
}

void transform_pow2(Cvec& x, bool inverse) {
    const size_t n = x.size();
    if (!is_pow2(n)) {
        throw std::domain_error("transform_pow2: size is not a power of two");
    }
    // bit-reversal permutation
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) {
            j ^= bit;
        }
        j ^= bit;
        if (i < j) {
            std::swap(x[i], x[j]);
        }
    }
    const double sign = inverse ? 1.0 : -1.0;
    for (size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * kPi / static_cast<double>(len);
        const Complex wlen(std::cos(ang), std::sin(ang));
        for (size_t i = 0; i < n; i += len) {
            Complex w(1.0, 0.0);
            for (size_t k = 0; k < len / 2; ++k) {
                Complex u = x[i + k];
                Complex v = x[i + k + len / 2] * w;
                x[i + k] = u + v;
                x[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

namespace {

// Bluestein: express the length-n DFT as a circular convolution of
// chirp-premultiplied input with the conjugate chirp, sized up to a
// power of two.
Cvec bluestein(const Cvec& x, bool inverse) {
    const size_t n = x.size();
    const size_t m = next_pow2(2 * n - 1);
    const double sign = inverse ? 1.0 : -1.0;

    Cvec chirp(n);
    for (size_t k = 0; k < n; ++k) {
        // k^2 mod 2n keeps the angle argument small for large n
        uint64_t k2 = (static_cast<uint64_t>(k) * k) % (2 * n);
        double ang = sign * kPi * static_cast<double>(k2) / static_cast<double>(n);
        chirp[k] = Complex(std::cos(ang), std::sin(ang));
    }

    Cvec a(m, Complex(0.0, 0.0));
    Cvec b(m, Complex(0.0, 0.0));
    for (size_t k = 0; k < n; ++k) {
        a[k] = x[k] * chirp[k];
        b[k] = std::conj(chirp[k]);
    }
    for (size_t k = 1; k < n; ++k) {
        b[m - k] = std::conj(chirp[k]);
    }

    transform_pow2(a, false);
    transform_pow2(b, false);
    for (size_t i = 0; i < m; ++i) {
        a[i] *= b[i];
    }
    transform_pow2(a, true);

    Cvec out(n);
    const double scale = 1.0 / static_cast<double>(m);
    for (size_t k = 0; k < n; ++k) {
        out[k] = a[k] * scale * chirp[k];
    }
    return out;
}

}  // namespace

Cvec dft(const Cvec& x, bool inverse) {
    if (x.empty()) {
        return {};
    }
    if (is_pow2(x.size())) {
        Cvec y = x;
        transform_pow2(y, inverse);
        return y;
    }
    return bluestein(x, inverse);
}

}  // namespace nrsim::fft
