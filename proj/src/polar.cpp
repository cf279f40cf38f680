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

#include "nrsim/polar.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nrsim/crc.hpp"
#include "nrsim/fft.hpp"
#include "nrsim/tables.hpp"

namespace nrsim {

namespace {

constexpr int kMaxTransform = 1024;

CrcPoly crc_poly_for(int crc_len) {
    switch (crc_len) {
        case 6:
            return CrcPoly::CRC6;
        case 11:
            return CrcPoly::CRC11;
        case 16:
            return CrcPoly::CRC16;
        case 24:
            return CrcPoly::CRC24A;
        default:
            throw std::domain_error("polar: crc_len must be 6, 11, 16 or 24");
    }
}

void validate(const PolarSpec& spec) {
    if (!fft::is_pow2(static_cast<size_t>(spec.coded_len)) || spec.coded_len < 4 ||
        spec.coded_len > kMaxTransform) {
        throw std::domain_error("polar: coded_len must be a power of two in 4..1024");
    }
    (void)crc_poly_for(spec.crc_len);
    if (spec.payload_len < 1) {
        throw std::domain_error("polar: payload_len must be positive");
    }
    if (spec.payload_len + spec.crc_len > spec.coded_len) {
        throw std::domain_error("polar: payload plus CRC exceeds coded_len");
    }
    if (spec.list_size < 1 || spec.list_size > 64) {
        throw std::domain_error("polar: list_size must be 1..64");
    }
}

}  // namespace

const std::vector<int>& polar_reliability_order() {
    static const std::vector<int> order = [] {
        const auto rows = load_int_table(data_dir() + "/polar/reliability_1024.txt");
        std::vector<int> out;
        for (const auto& r : rows) {
            for (long v : r) {
                out.push_back(static_cast<int>(v));
            }
        }
        if (out.size() != kMaxTransform) {
            throw std::runtime_error("polar reliability table must list 1024 entries");
        }
        return out;
    }();
    return order;
}

std::vector<int> polar_info_positions(const PolarSpec& spec) {
    validate(spec);
    const int k = spec.payload_len + spec.crc_len;
    std::vector<int> info;
    info.reserve(static_cast<size_t>(k));
    for (int idx : polar_reliability_order()) {
        if (idx < spec.coded_len) {
            info.push_back(idx);
            if (static_cast<int>(info.size()) == k) {
                break;
            }
        }
    }
    std::sort(info.begin(), info.end());
    return info;
}

void polar_transform(BitVec& u) {
    const size_t n = u.size();
    if (!fft::is_pow2(n)) {
        throw std::domain_error("polar_transform: length must be a power of two");
    }
    for (size_t s = 1; s < n; s <<= 1) {
        for (size_t i = 0; i < n; i += 2 * s) {
            for (size_t k = 0; k < s; ++k) {
                u[i + k] ^= u[i + k + s];
            }
        }
    }
}

BitVec polar_encode(const BitVec& payload, const PolarSpec& spec, uint32_t crc_mask) {
    validate(spec);
    if (payload.size() != static_cast<size_t>(spec.payload_len)) {
        throw std::domain_error("polar_encode: payload length mismatch");
    }
    const BitVec with_crc = crc_attach(payload, crc_poly_for(spec.crc_len), crc_mask);
    const std::vector<int> info = polar_info_positions(spec);

    BitVec u(static_cast<size_t>(spec.coded_len), 0);
    for (size_t i = 0; i < info.size(); ++i) {
        u[static_cast<size_t>(info[i])] = with_crc[i];
    }
    polar_transform(u);
    return u;
}

BitVec polar_rate_match(const BitVec& coded, size_t e) {
    if (e < coded.size()) {
        throw std::domain_error("polar_rate_match: only repetition (e >= N) is supported");
    }
    BitVec out(e);
    for (size_t i = 0; i < e; ++i) {
        out[i] = coded[i % coded.size()];
    }
    return out;
}

std::vector<double> polar_rate_recover(const std::vector<double>& llrs, int coded_len) {
    if (llrs.size() < static_cast<size_t>(coded_len)) {
        throw std::domain_error("polar_rate_recover: fewer soft bits than coded_len");
    }
    std::vector<double> out(static_cast<size_t>(coded_len), 0.0);
    for (size_t i = 0; i < llrs.size(); ++i) {
        out[i % static_cast<size_t>(coded_len)] += llrs[i];
    }
    return out;
}

namespace {

// One SCL path: LLR stacks per tree depth plus saved left-child partial
// sums. Depth 0 is the channel, depth n the leaves.
struct Path {
    std::vector<std::vector<double>> llr;   // llr[d], size N >> d (d >= 1)
    std::vector<std::vector<uint8_t>> left; // left[d], size N >> (d+1)
    BitVec u;
    double metric = 0.0;

    Path(int n_levels, int n) {
        llr.resize(static_cast<size_t>(n_levels) + 1);
        left.resize(static_cast<size_t>(n_levels));
        for (int d = 1; d <= n_levels; ++d) {
            llr[static_cast<size_t>(d)].resize(static_cast<size_t>(n >> d));
        }
        for (int d = 0; d < n_levels; ++d) {
            left[static_cast<size_t>(d)].resize(static_cast<size_t>(n >> (d + 1)));
        }
        u.reserve(static_cast<size_t>(n));
    }
};

inline double f_min(double a, double b) {
    const double s = ((a < 0.0) != (b < 0.0)) ? -1.0 : 1.0;
    return s * std::min(std::fabs(a), std::fabs(b));
}

}  // namespace

PolarDecodeResult polar_decode(const std::vector<double>& llrs, const PolarSpec& spec,
                               uint32_t crc_mask) {
    validate(spec);
    const int n_bits = spec.coded_len;
    if (llrs.size() != static_cast<size_t>(n_bits)) {
        throw std::domain_error("polar_decode: LLR length must equal coded_len");
    }
    int levels = 0;
    while ((1 << levels) < n_bits) {
        ++levels;
    }
    const std::vector<int> info = polar_info_positions(spec);
    std::vector<uint8_t> is_info(static_cast<size_t>(n_bits), 0);
    for (int pos : info) {
        is_info[static_cast<size_t>(pos)] = 1;
    }

    std::vector<Path> paths;
    paths.emplace_back(levels, n_bits);

    auto level_llr = [&](Path& p, int d) -> std::vector<double>& { return p.llr[static_cast<size_t>(d)]; };

    auto compute_llrs = [&](Path& p, int phi) {
        int d_start = 1;
        if (phi != 0) {
            int t = 0;
            while (((phi >> t) & 1) == 0) {
                ++t;
            }
            d_start = levels - t;
            // entering a right child: g-function with the stored left sums
            auto& dst = level_llr(p, d_start);
            const std::vector<double>& src =
                (d_start == 1) ? llrs : level_llr(p, d_start - 1);
            const auto& lb = p.left[static_cast<size_t>(d_start - 1)];
            const size_t m = dst.size();
            for (size_t k = 0; k < m; ++k) {
                const double a = src[k];
                const double b = src[k + m];
                dst[k] = lb[k] ? (b - a) : (b + a);
            }
            ++d_start;
        }
        for (int d = d_start; d <= levels; ++d) {
            auto& dst = level_llr(p, d);
            const std::vector<double>& src = (d == 1) ? llrs : level_llr(p, d - 1);
            const size_t m = dst.size();
            for (size_t k = 0; k < m; ++k) {
                dst[k] = f_min(src[k], src[k + m]);
            }
        }
    };

    auto propagate = [&](Path& p, int phi, uint8_t bit) {
        std::vector<uint8_t> w{bit};
        int d = levels;
        int j = phi;
        while (j & 1) {
            auto& lb = p.left[static_cast<size_t>(d - 1)];
            std::vector<uint8_t> parent(2 * w.size());
            for (size_t k = 0; k < w.size(); ++k) {
                parent[k] = static_cast<uint8_t>(lb[k] ^ w[k]);
                parent[w.size() + k] = w[k];
            }
            w = std::move(parent);
            j >>= 1;
            --d;
        }
        if (d > 0) {
            p.left[static_cast<size_t>(d - 1)] = w;
        }
    };

    for (int phi = 0; phi < n_bits; ++phi) {
        for (auto& p : paths) {
            compute_llrs(p, phi);
        }
        if (!is_info[static_cast<size_t>(phi)]) {
            for (auto& p : paths) {
                const double lam = p.llr[static_cast<size_t>(levels)][0];
                if (lam < 0.0) {
                    p.metric += -lam;
                }
                p.u.push_back(0);
                propagate(p, phi, 0);
            }
            continue;
        }
        // info leaf: branch every path on both bit values
        std::vector<Path> next;
        next.reserve(paths.size() * 2);
        for (auto& p : paths) {
            const double lam = p.llr[static_cast<size_t>(levels)][0];
            Path alt = p;
            p.u.push_back(0);
            if (lam < 0.0) {
                p.metric += -lam;
            }
            alt.u.push_back(1);
            if (lam > 0.0) {
                alt.metric += lam;
            }
            next.push_back(std::move(p));
            next.push_back(std::move(alt));
        }
        if (next.size() > static_cast<size_t>(spec.list_size)) {
            std::stable_sort(next.begin(), next.end(),
                             [](const Path& a, const Path& b) { return a.metric < b.metric; });
            next.erase(next.begin() + spec.list_size, next.end());
        }
        paths = std::move(next);
        for (auto& p : paths) {
            propagate(p, phi, p.u.back());
        }
    }

    std::stable_sort(paths.begin(), paths.end(),
                     [](const Path& a, const Path& b) { return a.metric < b.metric; });

    const CrcPoly poly = crc_poly_for(spec.crc_len);
    PolarDecodeResult res;
    for (const auto& p : paths) {
        BitVec with_crc(info.size());
        for (size_t i = 0; i < info.size(); ++i) {
            with_crc[i] = p.u[static_cast<size_t>(info[i])];
        }
        if (crc_check(with_crc, poly, crc_mask)) {
            res.ok = true;
            res.payload.assign(with_crc.begin(),
                               with_crc.end() - static_cast<long>(spec.crc_len));
            return res;
        }
    }
    // no CRC pass: report the best-metric payload with ok = false
    BitVec with_crc(info.size());
    for (size_t i = 0; i < info.size(); ++i) {
        with_crc[i] = paths.front().u[static_cast<size_t>(info[i])];
    }
    res.payload.assign(with_crc.begin(), with_crc.end() - static_cast<long>(spec.crc_len));
    return res;
}

}  // namespace nrsim
