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

#ifndef NRSIM_LDPC_HPP
#define NRSIM_LDPC_HPP

#include <vector>

#include "nrsim/crc.hpp"
#include "nrsim/util.hpp"

namespace nrsim {

enum class BaseGraphId { BG1, BG2 };

/// Quasi-cyclic base graph loaded from the checked-in table files.
/// Parity structure: cols [info_cols, info_cols+4) form a directly
/// solvable core, every later column is degree one (one extension row
/// each), and the first two information columns are punctured before
/// transmission.
struct LdpcBaseGraph {
    int rows = 0;
    int cols = 0;
    int info_cols = 0;

    struct Edge {
        int row;
        int col;
        int shift;
    };
    std::vector<Edge> edges;
    std::vector<std::vector<int>> row_edges;  // edge indices per row

    int parity_cols() const { return cols - info_cols; }
};

const LdpcBaseGraph& ldpc_base_graph(BaseGraphId bg);

/// Supported lifting sizes, ascending.
const std::vector<int>& ldpc_lifting_sizes();

/// BG2 for small blocks or low rates, BG1 otherwise:
/// BG2 when size_a <= 292, or size_a <= 3824 and rate <= 0.67,
/// or rate <= 0.25.
BaseGraphId select_base_graph(int size_a, double code_rate);

/// Code-block segmentation of a CRC-carrying transport block.
struct Segmentation {
    BaseGraphId bg = BaseGraphId::BG1;
    int lifting_size = 0;
    int num_blocks = 1;
    int block_info_bits = 0;   // K = kb * z, incl. CB CRC and fillers
    int payload_bits = 0;      // K' = bits per block before fillers
    int filler_bits = 0;       // K - K'
    bool has_cb_crc = false;   // present only when num_blocks > 1
    size_t input_bits = 0;     // original length for de-segmentation
    std::vector<BitVec> blocks;
};

Segmentation segment(const BitVec& tb_with_crc, BaseGraphId bg);

/// Inverse of segment: strips CB CRCs, fillers, and tail padding.
/// Returns false when any per-block CRC fails (output still produced).
bool desegment(const Segmentation& seg, BitVec& tb_with_crc_out);

/// Systematic quasi-cyclic encoding; input length must be
/// info_cols * lifting_size. Output is the full cols * z codeword
/// (including the punctured leading 2z systematic bits).
BitVec ldpc_encode(const BitVec& code_block, BaseGraphId bg, int lifting_size);

/// True when every lifted parity check is satisfied.
bool ldpc_syndrome_ok(const BitVec& codeword, BaseGraphId bg, int lifting_size);

struct RateMatchSpec {
    int e = 0;   // coded bits to output
    int rv = 0;  // redundancy version 0..3
};

/// Circular-buffer bit selection. The buffer is the codeword minus the 2z
/// punctured systematic bits; filler positions are skipped. Starting
/// offsets per rv follow fixed fractions of the buffer length.
BitVec ldpc_rate_match(const BitVec& codeword, BaseGraphId bg, int lifting_size,
                       const RateMatchSpec& spec, int filler_start, int filler_count);

/// LLR-domain inverse of ldpc_rate_match: accumulates repeated positions,
/// pins fillers to a large known-zero LLR, and returns a full-codeword
/// LLR vector (punctured head restored as zero LLRs).
std::vector<double> ldpc_rate_recover(const std::vector<double>& llrs, BaseGraphId bg,
                                      int lifting_size, const RateMatchSpec& spec,
                                      int filler_start, int filler_count);

struct LdpcDecodeResult {
    BitVec bits;  // systematic part, info_cols * z bits
    bool converged = false;
    int iterations = 0;
};

/// Normalized min-sum (factor 0.75), flooding schedule, early exit on a
/// zero syndrome. LLR convention: positive favors bit 0.
LdpcDecodeResult ldpc_decode(const std::vector<double>& llrs, BaseGraphId bg, int lifting_size,
                             int max_iters = 25);

/// Transport-block chain: TB CRC24A, base-graph selection, segmentation
/// with CB CRC24B, encoding, rate matching to e_total bits, and
/// concatenation in code-block order.
struct TransportEncoded {
    BitVec bits;
    Segmentation seg;
    std::vector<int> e_per_block;
};

TransportEncoded transport_encode(const BitVec& payload, int e_total, double code_rate, int rv);

struct TransportDecoded {
    BitVec payload;
    bool crc_ok = false;
};

TransportDecoded transport_decode(const std::vector<double>& llrs, size_t payload_size,
                                  int e_total, double code_rate, int rv, int max_iters = 25);

}  // namespace nrsim

#endif  // NRSIM_LDPC_HPP
