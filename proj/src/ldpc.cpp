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

#include "nrsim/ldpc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nrsim/tables.hpp"

namespace nrsim {

namespace {

constexpr double kMinSumFactor = 0.75;
constexpr double kFillerLlr = 40.0;

LdpcBaseGraph load_base_graph(const std::string& file, int exp_rows, int exp_cols, int exp_kb) {
    const auto table = load_int_table(data_dir() + "/ldpc/" + file);
    LdpcBaseGraph g;
    g.rows = exp_rows;
    g.cols = exp_cols;
    g.info_cols = exp_kb;
    g.row_edges.assign(static_cast<size_t>(exp_rows), {});
    for (const auto& row : table) {
        if (row.size() != 3) {
            throw std::runtime_error("ldpc base graph: expected 'row col shift' lines in " + file);
        }
        LdpcBaseGraph::Edge e{static_cast<int>(row[0]), static_cast<int>(row[1]),
                              static_cast<int>(row[2])};
        if (e.row < 0 || e.row >= exp_rows || e.col < 0 || e.col >= exp_cols || e.shift < 0) {
            throw std::runtime_error("ldpc base graph: entry out of range in " + file);
        }
        g.row_edges[static_cast<size_t>(e.row)].push_back(static_cast<int>(g.edges.size()));
        g.edges.push_back(e);
    }

    // The encoder relies on the core/extension layout; verify it once here
    // so a malformed data file fails loudly instead of mis-encoding.
    auto shift_of = [&](int r, int c) -> int {
        for (int ei : g.row_edges[static_cast<size_t>(r)]) {
            if (g.edges[static_cast<size_t>(ei)].col == c) {
                return g.edges[static_cast<size_t>(ei)].shift;
            }
        }
        return -1;
    };
    const int kb = exp_kb;
    const bool core_ok = shift_of(0, kb) == 1 && shift_of(1, kb) == 0 && shift_of(3, kb) == 0 &&
                         shift_of(2, kb) == -1 && shift_of(0, kb + 1) == 0 &&
                         shift_of(1, kb + 1) == 0 && shift_of(1, kb + 2) == 0 &&
                         shift_of(2, kb + 2) == 0 && shift_of(2, kb + 3) == 0 &&
                         shift_of(3, kb + 3) == 0;
    if (!core_ok) {
        throw std::runtime_error("ldpc base graph: unsupported parity core in " + file);
    }
    for (int r = 4; r < exp_rows; ++r) {
        if (shift_of(r, kb + r) != 0) {
            throw std::runtime_error("ldpc base graph: missing extension identity in " + file);
        }
        for (int ei : g.row_edges[static_cast<size_t>(r)]) {
            const auto& e = g.edges[static_cast<size_t>(ei)];
            if (e.col >= kb + 4 && e.col != kb + r) {
                throw std::runtime_error("ldpc base graph: extension row touches later parity in " +
                                         file);
            }
        }
    }
    return g;
}

using Block = std::vector<uint8_t>;  // one lifted column, z bits

Block rot(const Block& v, int s) {
    const int z = static_cast<int>(v.size());
    s %= z;
    Block out(static_cast<size_t>(z));
    for (int i = 0; i < z; ++i) {
        out[static_cast<size_t>(i)] = v[static_cast<size_t>((i + s) % z)];
    }
    return out;
}

void xor_rot_into(Block& acc, const Block& v, int s) {
    const int z = static_cast<int>(v.size());
    s %= z;
    for (int i = 0; i < z; ++i) {
        acc[static_cast<size_t>(i)] ^= v[static_cast<size_t>((i + s) % z)];
    }
}

struct SegGeometry {
    BaseGraphId bg;
    int num_blocks;
    int payload_bits;  // K' per block (chunk + CB CRC)
    int lifting_size;
    int block_info_bits;  // K = kb * z
    int filler_bits;
    bool has_cb_crc;
};

int max_code_block_bits(BaseGraphId bg) {
    return bg == BaseGraphId::BG1 ? 8448 : 3840;
}

SegGeometry seg_geometry(size_t b_bits, BaseGraphId bg) {
    const int kcb = max_code_block_bits(bg);
    SegGeometry geo;
    geo.bg = bg;
    const long b = static_cast<long>(b_bits);
    long k_prime = 0;
    if (b <= kcb) {
        geo.num_blocks = 1;
        geo.has_cb_crc = false;
        k_prime = b;
    } else {
        const int l = 24;
        geo.num_blocks = static_cast<int>((b + (kcb - l) - 1) / (kcb - l));
        geo.has_cb_crc = true;
        const long b_prime = b + static_cast<long>(geo.num_blocks) * l;
        k_prime = (b_prime + geo.num_blocks - 1) / geo.num_blocks;
    }
    geo.payload_bits = static_cast<int>(k_prime);

    int kb = 22;
    if (bg == BaseGraphId::BG2) {
        if (b > 640) {
            kb = 10;
        } else if (b > 560) {
            kb = 9;
        } else if (b > 192) {
            kb = 8;
        } else {
            kb = 6;
        }
    }
    int z = 0;
    for (int cand : ldpc_lifting_sizes()) {
        if (static_cast<long>(kb) * cand >= k_prime) {
            z = cand;
            break;
        }
    }
    if (z == 0) {
        throw std::domain_error("segment: block too large for the lifting-size table");
    }
    geo.lifting_size = z;
    const int info_cols = bg == BaseGraphId::BG1 ? 22 : 10;
    geo.block_info_bits = info_cols * z;
    geo.filler_bits = geo.block_info_bits - geo.payload_bits;
    return geo;
}

}  // namespace

const LdpcBaseGraph& ldpc_base_graph(BaseGraphId bg) {
    static const LdpcBaseGraph bg1 = load_base_graph("bg1.txt", 46, 68, 22);
    static const LdpcBaseGraph bg2 = load_base_graph("bg2.txt", 42, 52, 10);
    return bg == BaseGraphId::BG1 ? bg1 : bg2;
}

const std::vector<int>& ldpc_lifting_sizes() {
    static const std::vector<int> sizes = [] {
        const auto rows = load_int_table(data_dir() + "/ldpc/lifting_sizes.txt");
        std::vector<int> out;
        for (const auto& r : rows) {
            for (long v : r) {
                out.push_back(static_cast<int>(v));
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }();
    return sizes;
}

BaseGraphId select_base_graph(int size_a, double code_rate) {
    if (size_a < 1 || code_rate <= 0.0 || code_rate >= 1.0) {
        throw std::domain_error("select_base_graph: need size_a >= 1 and 0 < rate < 1");
    }
    if (size_a <= 292 || (size_a <= 3824 && code_rate <= 0.67) || code_rate <= 0.25) {
        return BaseGraphId::BG2;
    }
    return BaseGraphId::BG1;
}

Segmentation segment(const BitVec& tb_with_crc, BaseGraphId bg) {
    if (tb_with_crc.empty()) {
        throw std::domain_error("segment: empty input");
    }
    const SegGeometry geo = seg_geometry(tb_with_crc.size(), bg);
    Segmentation seg;
    seg.bg = bg;
    seg.lifting_size = geo.lifting_size;
    seg.num_blocks = geo.num_blocks;
    seg.block_info_bits = geo.block_info_bits;
    seg.payload_bits = geo.payload_bits;
    seg.filler_bits = geo.filler_bits;
    seg.has_cb_crc = geo.has_cb_crc;
    seg.input_bits = tb_with_crc.size();

    const int chunk = geo.payload_bits - (geo.has_cb_crc ? 24 : 0);
    size_t pos = 0;
    for (int c = 0; c < geo.num_blocks; ++c) {
        BitVec part;
        const size_t take = std::min(static_cast<size_t>(chunk), tb_with_crc.size() - pos);
        part.assign(tb_with_crc.begin() + static_cast<long>(pos),
                    tb_with_crc.begin() + static_cast<long>(pos + take));
        pos += take;
        part.resize(static_cast<size_t>(chunk), 0);  // tail padding in the last block
        if (geo.has_cb_crc) {
            part = crc_attach(part, CrcPoly::CRC24B);
        }
        part.resize(static_cast<size_t>(geo.block_info_bits), 0);  // filler bits
        seg.blocks.push_back(std::move(part));
    }
    return seg;
}

bool desegment(const Segmentation& seg, BitVec& tb_with_crc_out) {
    tb_with_crc_out.clear();
    bool ok = true;
    const int chunk = seg.payload_bits - (seg.has_cb_crc ? 24 : 0);
    for (const auto& block : seg.blocks) {
        BitVec with_crc(block.begin(), block.begin() + seg.payload_bits);
        if (seg.has_cb_crc) {
            ok = crc_check(with_crc, CrcPoly::CRC24B) && ok;
        }
        tb_with_crc_out.insert(tb_with_crc_out.end(), with_crc.begin(),
                               with_crc.begin() + chunk);
    }
    tb_with_crc_out.resize(seg.input_bits);
    return ok;
}

BitVec ldpc_encode(const BitVec& code_block, BaseGraphId bg, int lifting_size) {
    const LdpcBaseGraph& g = ldpc_base_graph(bg);
    const int z = lifting_size;
    const int kb = g.info_cols;
    if (code_block.size() != static_cast<size_t>(kb) * z) {
        throw std::domain_error("ldpc_encode: code block length must be info_cols * z");
    }

    std::vector<Block> v(static_cast<size_t>(g.cols), Block(static_cast<size_t>(z), 0));
    for (int c = 0; c < kb; ++c) {
        for (int i = 0; i < z; ++i) {
            v[static_cast<size_t>(c)][static_cast<size_t>(i)] =
                code_block[static_cast<size_t>(c) * z + i];
        }
    }

    // T_r: information-part contribution of core row r
    std::vector<Block> t(4, Block(static_cast<size_t>(z), 0));
    for (int r = 0; r < 4; ++r) {
        for (int ei : g.row_edges[static_cast<size_t>(r)]) {
            const auto& e = g.edges[static_cast<size_t>(ei)];
            if (e.col < kb) {
                xor_rot_into(t[static_cast<size_t>(r)], v[static_cast<size_t>(e.col)], e.shift);
            }
        }
    }
    // Summing the four core rows cancels p1..p3 and leaves I(1) p0 = S.
    Block s = t[0];
    for (int r = 1; r < 4; ++r) {
        for (int i = 0; i < z; ++i) {
            s[static_cast<size_t>(i)] ^= t[static_cast<size_t>(r)][static_cast<size_t>(i)];
        }
    }
    Block& p0 = v[static_cast<size_t>(kb)];
    Block& p1 = v[static_cast<size_t>(kb + 1)];
    Block& p2 = v[static_cast<size_t>(kb + 2)];
    Block& p3 = v[static_cast<size_t>(kb + 3)];
    p0 = rot(s, z - 1);
    p1 = t[0];
    xor_rot_into(p1, p0, 1);
    p2 = t[1];
    xor_rot_into(p2, p0, 0);
    xor_rot_into(p2, p1, 0);
    p3 = t[2];
    xor_rot_into(p3, p2, 0);

    for (int r = 4; r < g.rows; ++r) {
        Block acc(static_cast<size_t>(z), 0);
        for (int ei : g.row_edges[static_cast<size_t>(r)]) {
            const auto& e = g.edges[static_cast<size_t>(ei)];
            if (e.col != kb + r) {
                xor_rot_into(acc, v[static_cast<size_t>(e.col)], e.shift);
            }
        }
        v[static_cast<size_t>(kb + r)] = std::move(acc);
    }

    BitVec out(static_cast<size_t>(g.cols) * z);
    for (int c = 0; c < g.cols; ++c) {
        for (int i = 0; i < z; ++i) {
            out[static_cast<size_t>(c) * z + i] = v[static_cast<size_t>(c)][static_cast<size_t>(i)];
        }
    }
    return out;
}

bool ldpc_syndrome_ok(const BitVec& codeword, BaseGraphId bg, int lifting_size) {
    const LdpcBaseGraph& g = ldpc_base_graph(bg);
    const int z = lifting_size;
    if (codeword.size() != static_cast<size_t>(g.cols) * z) {
        throw std::domain_error("ldpc_syndrome_ok: bad codeword length");
    }
    for (int r = 0; r < g.rows; ++r) {
        Block acc(static_cast<size_t>(z), 0);
        for (int ei : g.row_edges[static_cast<size_t>(r)]) {
            const auto& e = g.edges[static_cast<size_t>(ei)];
            const int s = e.shift % z;
            for (int i = 0; i < z; ++i) {
                acc[static_cast<size_t>(i)] ^=
                    codeword[static_cast<size_t>(e.col) * z + (i + s) % z];
            }
        }
        for (int i = 0; i < z; ++i) {
            if (acc[static_cast<size_t>(i)]) {
                return false;
            }
        }
    }
    return true;
}

namespace {

int rv_start(BaseGraphId bg, int rv, int z, int ncb) {
    // fixed fractions of the circular buffer, rounded to lifting multiples
    static constexpr int kNumBg1[4] = {0, 17, 33, 56};
    static constexpr int kNumBg2[4] = {0, 13, 25, 43};
    const int den = bg == BaseGraphId::BG1 ? 66 : 50;
    const int num = (bg == BaseGraphId::BG1 ? kNumBg1 : kNumBg2)[rv];
    return static_cast<int>((static_cast<long>(num) * ncb) / (static_cast<long>(den) * z)) * z;
}

}  // namespace

BitVec ldpc_rate_match(const BitVec& codeword, BaseGraphId bg, int lifting_size,
                       const RateMatchSpec& spec, int filler_start, int filler_count) {
    const LdpcBaseGraph& g = ldpc_base_graph(bg);
    const int z = lifting_size;
    if (spec.e < 1) {
        throw std::domain_error("ldpc_rate_match: e must be positive");
    }
    if (spec.rv < 0 || spec.rv > 3) {
        throw std::domain_error("ldpc_rate_match: rv must be 0..3");
    }
    const int ncb = (g.cols - 2) * z;
    const int f_lo = filler_start - 2 * z;  // buffer coordinates
    const int f_hi = f_lo + filler_count;

    BitVec out(static_cast<size_t>(spec.e));
    int idx = rv_start(bg, spec.rv, z, ncb);
    for (int k = 0; k < spec.e;) {
        if (idx < f_lo || idx >= f_hi) {
            out[static_cast<size_t>(k++)] = codeword[static_cast<size_t>(idx + 2 * z)];
        }
        idx = (idx + 1) % ncb;
    }
    return out;
}

std::vector<double> ldpc_rate_recover(const std::vector<double>& llrs, BaseGraphId bg,
                                      int lifting_size, const RateMatchSpec& spec,
                                      int filler_start, int filler_count) {
    const LdpcBaseGraph& g = ldpc_base_graph(bg);
    const int z = lifting_size;
    if (llrs.size() != static_cast<size_t>(spec.e)) {
        throw std::domain_error("ldpc_rate_recover: LLR length must equal e");
    }
    const int ncb = (g.cols - 2) * z;
    const int f_lo = filler_start - 2 * z;
    const int f_hi = f_lo + filler_count;

    std::vector<double> full(static_cast<size_t>(g.cols) * z, 0.0);
    int idx = rv_start(bg, spec.rv, z, ncb);
    for (int k = 0; k < spec.e;) {
        if (idx < f_lo || idx >= f_hi) {
            full[static_cast<size_t>(idx + 2 * z)] += llrs[static_cast<size_t>(k++)];
        }
        idx = (idx + 1) % ncb;
    }
    for (int i = f_lo; i < f_hi; ++i) {
        full[static_cast<size_t>(i + 2 * z)] = kFillerLlr;
    }
    return full;
}

LdpcDecodeResult ldpc_decode(const std::vector<double>& llrs, BaseGraphId bg, int lifting_size,
                             int max_iters) {
    const LdpcBaseGraph& g = ldpc_base_graph(bg);
    const int z = lifting_size;
    if (llrs.size() != static_cast<size_t>(g.cols) * z) {
        throw std::domain_error("ldpc_decode: LLR length must be cols * z");
    }

    LdpcDecodeResult res;
    res.bits.assign(static_cast<size_t>(g.info_cols) * z, 0);

    bool any_info = false;
    for (double l : llrs) {
        if (l != 0.0) {
            any_info = true;
            break;
        }
    }
    if (!any_info) {
        return res;  // no channel information: report non-convergence
    }

    std::vector<double> posterior = llrs;
    // check-to-variable messages, one per lifted edge
    std::vector<std::vector<double>> msg(g.edges.size(), std::vector<double>(static_cast<size_t>(z), 0.0));

    auto hard_ok = [&]() {
        for (int r = 0; r < g.rows; ++r) {
            for (int i = 0; i < z; ++i) {
                uint8_t acc = 0;
                for (int ei : g.row_edges[static_cast<size_t>(r)]) {
                    const auto& e = g.edges[static_cast<size_t>(ei)];
                    const size_t vi =
                        static_cast<size_t>(e.col) * z + (i + e.shift % z) % z;
                    acc ^= posterior[vi] < 0.0 ? 1 : 0;
                }
                if (acc) {
                    return false;
                }
            }
        }
        return true;
    };

    for (int iter = 1; iter <= max_iters; ++iter) {
        for (int r = 0; r < g.rows; ++r) {
            const auto& row = g.row_edges[static_cast<size_t>(r)];
            for (int i = 0; i < z; ++i) {
                double min1 = 1e300, min2 = 1e300;
                int arg_min = -1;
                int neg = 0;
                for (size_t k = 0; k < row.size(); ++k) {
                    const auto& e = g.edges[static_cast<size_t>(row[k])];
                    const size_t vi = static_cast<size_t>(e.col) * z + (i + e.shift % z) % z;
                    const double x = posterior[vi] - msg[static_cast<size_t>(row[k])][static_cast<size_t>(i)];
                    const double a = std::fabs(x);
                    if (x < 0.0) {
                        ++neg;
                    }
                    if (a < min1) {
                        min2 = min1;
                        min1 = a;
                        arg_min = static_cast<int>(k);
                    } else if (a < min2) {
                        min2 = a;
                    }
                }
                for (size_t k = 0; k < row.size(); ++k) {
                    const auto& e = g.edges[static_cast<size_t>(row[k])];
                    const size_t vi = static_cast<size_t>(e.col) * z + (i + e.shift % z) % z;
                    double& m = msg[static_cast<size_t>(row[k])][static_cast<size_t>(i)];
                    const double x = posterior[vi] - m;
                    const int sign_others = (neg - (x < 0.0 ? 1 : 0)) % 2;
                    const double mag = (static_cast<int>(k) == arg_min) ? min2 : min1;
                    const double nm = (sign_others ? -1.0 : 1.0) * kMinSumFactor * mag;
                    posterior[vi] = x + nm;
                    m = nm;
                }
            }
        }
        res.iterations = iter;
        if (hard_ok()) {
            res.converged = true;
            break;
        }
    }

    for (size_t i = 0; i < res.bits.size(); ++i) {
        res.bits[i] = posterior[i] < 0.0 ? 1 : 0;
    }
    return res;
}

TransportEncoded transport_encode(const BitVec& payload, int e_total, double code_rate, int rv) {
    if (payload.empty()) {
        throw std::domain_error("transport_encode: empty payload");
    }
    const BitVec tb = crc_attach(payload, CrcPoly::CRC24A);
    const BaseGraphId bg = select_base_graph(static_cast<int>(payload.size()), code_rate);
    TransportEncoded enc;
    enc.seg = segment(tb, bg);

    const int c = enc.seg.num_blocks;
    if (e_total < c) {
        throw std::domain_error("transport_encode: e_total smaller than the code-block count");
    }
    enc.e_per_block.assign(static_cast<size_t>(c), e_total / c);
    for (int j = 0; j < e_total % c; ++j) {
        enc.e_per_block[static_cast<size_t>(j)] += 1;
    }

    for (int j = 0; j < c; ++j) {
        const BitVec cw = ldpc_encode(enc.seg.blocks[static_cast<size_t>(j)], bg,
                                      enc.seg.lifting_size);
        const BitVec rm = ldpc_rate_match(cw, bg, enc.seg.lifting_size,
                                          {enc.e_per_block[static_cast<size_t>(j)], rv},
                                          enc.seg.payload_bits, enc.seg.filler_bits);
        enc.bits.insert(enc.bits.end(), rm.begin(), rm.end());
    }
    return enc;
}

TransportDecoded transport_decode(const std::vector<double>& llrs, size_t payload_size,
                                  int e_total, double code_rate, int rv, int max_iters) {
    const size_t b = payload_size + 24;
    const BaseGraphId bg = select_base_graph(static_cast<int>(payload_size), code_rate);
    const SegGeometry geo = seg_geometry(b, bg);
    if (llrs.size() != static_cast<size_t>(e_total)) {
        throw std::domain_error("transport_decode: LLR length must equal e_total");
    }

    std::vector<int> e_per(static_cast<size_t>(geo.num_blocks), e_total / geo.num_blocks);
    for (int j = 0; j < e_total % geo.num_blocks; ++j) {
        e_per[static_cast<size_t>(j)] += 1;
    }

    Segmentation seg;
    seg.bg = bg;
    seg.lifting_size = geo.lifting_size;
    seg.num_blocks = geo.num_blocks;
    seg.block_info_bits = geo.block_info_bits;
    seg.payload_bits = geo.payload_bits;
    seg.filler_bits = geo.filler_bits;
    seg.has_cb_crc = geo.has_cb_crc;
    seg.input_bits = b;

    TransportDecoded out;
    bool blocks_ok = true;
    size_t pos = 0;
    for (int j = 0; j < geo.num_blocks; ++j) {
        std::vector<double> part(llrs.begin() + static_cast<long>(pos),
                                 llrs.begin() + static_cast<long>(pos) + e_per[static_cast<size_t>(j)]);
        pos += static_cast<size_t>(e_per[static_cast<size_t>(j)]);
        const auto full = ldpc_rate_recover(part, bg, geo.lifting_size,
                                            {e_per[static_cast<size_t>(j)], rv},
                                            geo.payload_bits, geo.filler_bits);
        const LdpcDecodeResult dec = ldpc_decode(full, bg, geo.lifting_size, max_iters);
        blocks_ok = blocks_ok && dec.converged;
        seg.blocks.push_back(dec.bits);
    }

    BitVec tb;
    blocks_ok = desegment(seg, tb) && blocks_ok;
    out.crc_ok = blocks_ok && crc_check(tb, CrcPoly::CRC24A);
    if (tb.size() > 24) {
        out.payload.assign(tb.begin(), tb.end() - 24);
    }
    return out;
}

}  // namespace nrsim
