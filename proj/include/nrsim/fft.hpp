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

#ifndef NRSIM_FFT_HPP
#define NRSIM_FFT_HPP

#include <cstddef>

#include "nrsim/util.hpp"

namespace nrsim::fft {

/// In-place radix-2 transform, size must be a power of two.
/// Forward kernel is sum x[n] e^{-j2pi kn/N}; inverse uses e^{+j...}.
/// Neither direction scales the output.
void transform_pow2(Cvec& x, bool inverse);

/// Transform of arbitrary length (Bluestein for non powers of two).
/// Same kernel and (lack of) scaling convention as transform_pow2.
Cvec dft(const Cvec& x, bool inverse);

/// Smallest power of two >= n.
size_t next_pow2(size_t n);

bool is_pow2(size_t n);

}  // namespace nrsim::fft

#endif  // NRSIM_FFT_HPP
