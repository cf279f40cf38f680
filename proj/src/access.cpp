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

#include "nrsim/access.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "nrsim/fft.hpp"
#include "nrsim/modulation.hpp"
#include "nrsim/ofdm.hpp"
#include "nrsim/polar.hpp"
#include "nrsim/refsignals.hpp"
#include "nrsim/tables.hpp"

namespace nrsim {

namespace {

constexpr int kPbchPolarSize = 512;
constexpr int kPbchCrcLen = 16;

uint32_t pbch_dmrs_cinit(const CellId& pci, int ssb_index) {
    // +1 keeps the register seed nonzero without touching the index bits
    return ((static_cast<uint32_t>(pci.pci) + 1u) << 6) ^ static_cast<uint32_t>(ssb_index);
}

// PBCH RE bookkeeping shared by the mapper and the receiver. DMRS sits on
// every 4th subcarrier with a pci-dependent offset; everything else in the
// PBCH region carries data. Region: symbols 1 and 3 full width, symbol 2
// outside the SSS block.
struct PbchLayout {
    std::vector<ReCoord> dmrs;
    std::vector<ReCoord> data;
};

PbchLayout pbch_layout(const CellId& pci) {
    PbchLayout out;
    const int v = pci.pci % 4;
    auto add_range = [&](int symbol, int sc_lo, int sc_hi) {
        for (int sc = sc_lo; sc < sc_hi; ++sc) {
            if (sc % 4 == v) {
                out.dmrs.push_back({sc, symbol});
            } else {
                out.data.push_back({sc, symbol});
            }
        }
    };
    add_range(1, 0, kSsbSubcarriers);
    add_range(2, 0, 48);
    add_range(2, 192, kSsbSubcarriers);
    add_range(3, 0, kSsbSubcarriers);
    return out;
}

}  // namespace

SsBlock build_ssb(const CellId& pci, const BitVec& pbch_payload, int ssb_index) {
    (void)CellId::from_parts(pci.nid1, pci.nid2);
    if (ssb_index < 0 || ssb_index > 63) {
        throw std::domain_error("build_ssb: ssb_index must be 0..63");
    }
    if (pbch_payload.empty()) {
        throw std::domain_error("build_ssb: PBCH payload must not be empty");
    }

    SsBlock ssb;
    ssb.pci = pci;
    ssb.ssb_index = ssb_index;
    ssb.pbch_payload = pbch_payload;

    std::vector<ReValue> pss;
    const Cvec pss_seq = pss_sequence(pci.nid2);
    for (int i = 0; i < 127; ++i) {
        pss.push_back({{kPssFirstSubcarrier + i, 0}, pss_seq[static_cast<size_t>(i)]});
    }
    ssb.grid.map_res(0, pss, "pss");

    std::vector<ReValue> sss;
    const Cvec sss_seq = sss_sequence(pci);
    for (int i = 0; i < 127; ++i) {
        sss.push_back({{kPssFirstSubcarrier + i, 2}, sss_seq[static_cast<size_t>(i)]});
    }
    ssb.grid.map_res(0, sss, "sss");

    const PbchLayout layout = pbch_layout(pci);

    const Cvec dmrs_vals = gold_qpsk(pbch_dmrs_cinit(pci, ssb_index), layout.dmrs.size());
    std::vector<ReValue> dmrs;
    for (size_t i = 0; i < layout.dmrs.size(); ++i) {
        dmrs.push_back({layout.dmrs[i], dmrs_vals[i]});
    }
    ssb.grid.map_res(0, dmrs, "pbch-dmrs");

    PolarSpec spec;
    spec.payload_len = static_cast<int>(pbch_payload.size());
    spec.coded_len = kPbchPolarSize;
    spec.crc_len = kPbchCrcLen;
    const BitVec coded = polar_encode(pbch_payload, spec);
    const BitVec tx = polar_rate_match(coded, 2 * layout.data.size());
    const Cvec symbols = modulate(tx, Modulation::QPSK);
    std::vector<ReValue> data;
    for (size_t i = 0; i < layout.data.size(); ++i) {
        data.push_back({layout.data[i], symbols[i]});
    }
    ssb.grid.map_res(0, data, "pbch");
    return ssb;
}

PbchDecodeResult decode_pbch(const Cvec& ssb_values, const CellId& pci, int ssb_index,
                             int payload_bits) {
    if (ssb_values.size() != static_cast<size_t>(kSsbSubcarriers) * kSsbSymbols) {
        throw std::domain_error("decode_pbch: expected a 240 x 4 RE block");
    }
    const PbchLayout layout = pbch_layout(pci);
    auto at = [&](ReCoord c) {
        return ssb_values[static_cast<size_t>(c.subcarrier) +
                          static_cast<size_t>(c.symbol) * kSsbSubcarriers];
    };

    // least-squares channel estimate per PBCH symbol from its DMRS
    const Cvec dmrs_vals = gold_qpsk(pbch_dmrs_cinit(pci, ssb_index), layout.dmrs.size());
    Complex h_sym[kSsbSymbols] = {};
    int h_count[kSsbSymbols] = {};
    for (size_t i = 0; i < layout.dmrs.size(); ++i) {
        const ReCoord c = layout.dmrs[i];
        h_sym[c.symbol] += at(c) * std::conj(dmrs_vals[i]);
        h_count[c.symbol] += 1;
    }
    for (int s = 0; s < kSsbSymbols; ++s) {
        if (h_count[s] > 0) {
            h_sym[s] /= static_cast<double>(h_count[s]);
        }
    }

    Cvec eq(layout.data.size());
    for (size_t i = 0; i < layout.data.size(); ++i) {
        const ReCoord c = layout.data[i];
        const Complex h = h_sym[c.symbol];
        eq[i] = std::norm(h) > 1e-12 ? at(c) / h : Complex(0, 0);
    }
    const std::vector<double> llrs = soft_demod(eq, Modulation::QPSK, 1e-3);

    PolarSpec spec;
    spec.payload_len = payload_bits;
    spec.coded_len = kPbchPolarSize;
    spec.crc_len = kPbchCrcLen;
    const auto folded = polar_rate_recover(llrs, kPbchPolarSize);
    const auto dec = polar_decode(folded, spec);
    return {dec.ok, dec.payload};
}

int identify_ssb_index(const Cvec& ssb_values, const CellId& pci, int max_index) {
    if (ssb_values.size() != static_cast<size_t>(kSsbSubcarriers) * kSsbSymbols) {
        throw std::domain_error("identify_ssb_index: expected a 240 x 4 RE block");
    }
    if (max_index < 0 || max_index > 63) {
        throw std::domain_error("identify_ssb_index: max_index must be 0..63");
    }
    const PbchLayout layout = pbch_layout(pci);
    int best = 0;
    double best_metric = -1.0;
    for (int idx = 0; idx <= max_index; ++idx) {
        const Cvec ref = gold_qpsk(pbch_dmrs_cinit(pci, idx), layout.dmrs.size());
        Complex acc(0, 0);
        for (size_t i = 0; i < layout.dmrs.size(); ++i) {
            const ReCoord c = layout.dmrs[i];
            acc += ssb_values[static_cast<size_t>(c.subcarrier) +
                              static_cast<size_t>(c.symbol) * kSsbSubcarriers] *
                   std::conj(ref[i]);
        }
        const double metric = std::abs(acc);
        if (metric > best_metric) {
            best_metric = metric;
            best = idx;
        }
    }
    return best;
}

std::vector<BurstPosition> burst_positions(const SsbConfig& cfg) {
    std::vector<int> first_symbols;
    int max_ssb = 0;
    switch (cfg.scs_khz) {
        case 15:  // {2, 8} + 14 n
            for (int n = 0; n <= 3; ++n) {
                first_symbols.push_back(2 + 14 * n);
                first_symbols.push_back(8 + 14 * n);
            }
            max_ssb = 8;
            break;
        case 30:  // {2, 8} + 14 n
            for (int n = 0; n <= 3; ++n) {
                first_symbols.push_back(2 + 14 * n);
                first_symbols.push_back(8 + 14 * n);
            }
            max_ssb = 8;
            break;
        case 120:  // {4, 8, 16, 20} + 28 n, n skips every 5th
            for (int n = 0; n <= 18; ++n) {
                if (n % 5 == 4) {
                    continue;
                }
                for (int s : {4, 8, 16, 20}) {
                    first_symbols.push_back(s + 28 * n);
                }
            }
            max_ssb = 64;
            break;
        case 240:  // {8, 12, 16, 20, 32, 36, 40, 44} + 56 n, n skips every 5th
            for (int n = 0; n <= 8; ++n) {
                if (n % 5 == 4) {
                    continue;
                }
                for (int s : {8, 12, 16, 20, 32, 36, 40, 44}) {
                    first_symbols.push_back(s + 56 * n);
                }
            }
            max_ssb = 64;
            break;
        default:
            throw std::domain_error("burst_positions: SSB scs must be 15, 30, 120 or 240 kHz");
    }
    if (cfg.num_ssb < 1 || cfg.num_ssb > max_ssb) {
        throw std::domain_error("burst_positions: num_ssb exceeds the pattern maximum of " +
                                std::to_string(max_ssb));
    }
    std::sort(first_symbols.begin(), first_symbols.end());

    const int mu = cfg.scs_khz == 15 ? 0 : cfg.scs_khz == 30 ? 1 : cfg.scs_khz == 120 ? 3 : 4;
    const int window_symbols = 5 * (1 << mu) * kSymbolsPerSlot;  // 5 ms
    std::vector<BurstPosition> out;
    for (int i = 0; i < cfg.num_ssb; ++i) {
        const int sym = first_symbols[static_cast<size_t>(i)];
        if (sym + kSsbSymbols > window_symbols) {
            throw std::domain_error("burst_positions: position falls outside the 5 ms window");
        }
        out.push_back({sym / kSymbolsPerSlot, sym % kSymbolsPerSlot});
    }
    return out;
}

namespace {

// time-domain PSS reference symbol (no CP), SSB-centered, with an integer
// subcarrier offset for CFO hypotheses
Cvec pss_time_template(int nid2, int fft_size, int bin_offset) {
    const Cvec seq = pss_sequence(nid2);
    return ofdm_symbol_time(seq, fft_size,
                            kPssFirstSubcarrier - kSsbSubcarriers / 2 + bin_offset);
}

// linear cross-correlation of x against template p over all alignments,
// via zero-padded transforms
Cvec correlate(const Cvec& x_spectrum, const Cvec& p, size_t m) {
    Cvec pf(m, Complex(0, 0));
    std::copy(p.begin(), p.end(), pf.begin());
    fft::transform_pow2(pf, false);
    Cvec prod(m);
    for (size_t i = 0; i < m; ++i) {
        prod[i] = x_spectrum[i] * std::conj(pf[i]);
    }
    fft::transform_pow2(prod, true);
    const double scale = 1.0 / static_cast<double>(m);
    for (auto& v : prod) {
        v *= scale;
    }
    return prod;
}

}  // namespace

std::optional<CellSearchResult> cell_search(const Cvec& iq, const CellSearchConfig& cfg) {
    const int n = cfg.fft_size;
    if (iq.size() < static_cast<size_t>(2 * n)) {
        return std::nullopt;
    }
    const double fs = static_cast<double>(n) * cfg.scs_khz * 1000.0;
    const int cp = 144 * n / 2048;
    const double input_power = mean_power(iq);
    if (input_power <= 0.0) {
        return std::nullopt;
    }

    const size_t m = fft::next_pow2(iq.size() + static_cast<size_t>(n));

    double best_metric = 0.0;
    int best_nid2 = -1;
    int best_k = 0;
    double best_raster = 0.0;
    long best_tau = -1;
    Complex best_half1, best_half2;

    for (double raster : cfg.raster_offsets_hz) {
        Cvec shifted;
        const Cvec* cap = &iq;
        if (raster != 0.0) {
            shifted = iq;
            const double w = -2.0 * kPi * raster / fs;
            for (size_t i = 0; i < shifted.size(); ++i) {
                shifted[i] *= Complex(std::cos(w * static_cast<double>(i)),
                                      std::sin(w * static_cast<double>(i)));
            }
            cap = &shifted;
        }
        Cvec xf(m, Complex(0, 0));
        std::copy(cap->begin(), cap->end(), xf.begin());
        fft::transform_pow2(xf, false);

        for (int nid2 = 0; nid2 < 3; ++nid2) {
            for (int k = -cfg.max_integer_cfo; k <= cfg.max_integer_cfo; ++k) {
                const Cvec tmpl = pss_time_template(nid2, n, k);
                const double e_p = mean_power(tmpl) * static_cast<double>(n);
                const Cvec corr = correlate(xf, tmpl, m);
                const size_t last = iq.size() - static_cast<size_t>(n);
                for (size_t tau = 0; tau <= last; ++tau) {
                    const double metric =
                        std::norm(corr[tau]) / (e_p * input_power);
                    if (metric > best_metric) {
                        best_metric = metric;
                        best_nid2 = nid2;
                        best_k = k;
                        best_tau = static_cast<long>(tau);
                        best_raster = raster;
                    }
                }
            }
        }
    }

    if (best_nid2 < 0 || best_metric < cfg.threshold) {
        return std::nullopt;
    }

    // fractional CFO from the phase between the two template halves,
    // measured on the raster-derotated capture
    {
        const Cvec tmpl = pss_time_template(best_nid2, n, best_k);
        const double wr = -2.0 * kPi * best_raster / fs;
        Complex c1(0, 0), c2(0, 0);
        for (int i = 0; i < n / 2; ++i) {
            const size_t idx = static_cast<size_t>(best_tau + i);
            const size_t idx2 = idx + static_cast<size_t>(n / 2);
            const Complex r1 = iq[idx] * Complex(std::cos(wr * static_cast<double>(idx)),
                                                 std::sin(wr * static_cast<double>(idx)));
            const Complex r2 = iq[idx2] * Complex(std::cos(wr * static_cast<double>(idx2)),
                                                  std::sin(wr * static_cast<double>(idx2)));
            c1 += r1 * std::conj(tmpl[static_cast<size_t>(i)]);
            c2 += r2 * std::conj(tmpl[static_cast<size_t>(i + n / 2)]);
        }
        best_half1 = c1;
        best_half2 = c2;
    }
    const double frac_cfo =
        std::arg(best_half2 * std::conj(best_half1)) * fs / (kPi * static_cast<double>(n));
    const double cfo_hz = frac_cfo + best_k * cfg.scs_khz * 1000.0 + best_raster;

    CellSearchResult res;
    res.cfo_hz = cfo_hz;
    res.metric = best_metric;
    res.timing_offset_samples = best_tau - cp;  // SSB starts at the PSS CP

    // SSS over the 336 nid1 hypotheses at the detected location
    const Cvec ssb = extract_ssb_values(iq, res.timing_offset_samples, cfo_hz, cfg);
    Cvec sss_rx(127);
    for (int i = 0; i < 127; ++i) {
        sss_rx[static_cast<size_t>(i)] =
            ssb[static_cast<size_t>(kPssFirstSubcarrier + i) + 2u * kSsbSubcarriers];
    }
    double best_sss = -1.0;
    int best_nid1 = 0;
    for (int nid1 = 0; nid1 < 336; ++nid1) {
        const Cvec ref = sss_sequence(CellId::from_parts(nid1, best_nid2));
        Complex acc(0, 0);
        for (size_t i = 0; i < 127; ++i) {
            acc += sss_rx[i] * std::conj(ref[i]);
        }
        const double v = std::abs(acc);
        if (v > best_sss) {
            best_sss = v;
            best_nid1 = nid1;
        }
    }
    res.pci = CellId::from_parts(best_nid1, best_nid2);
    return res;
}

Cvec extract_ssb_values(const Cvec& iq, long timing_offset_samples, double cfo_hz,
                        const CellSearchConfig& cfg) {
    const int n = cfg.fft_size;
    const int cp = 144 * n / 2048;
    const double fs = static_cast<double>(n) * cfg.scs_khz * 1000.0;

    Cvec out(static_cast<size_t>(kSsbSubcarriers) * kSsbSymbols, Complex(0, 0));
    const double w = -2.0 * kPi * cfo_hz / fs;
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (int l = 0; l < kSsbSymbols; ++l) {
        const long start = timing_offset_samples + cp + static_cast<long>(l) * (n + cp);
        if (start < 0 || start + n > static_cast<long>(iq.size())) {
            continue;  // symbol out of capture: leave zeros
        }
        Cvec bins(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) {
            const size_t idx = static_cast<size_t>(start + i);
            const double ang = w * static_cast<double>(idx);
            bins[static_cast<size_t>(i)] = iq[idx] * Complex(std::cos(ang), std::sin(ang));
        }
        fft::transform_pow2(bins, false);
        for (int i = 0; i < kSsbSubcarriers; ++i) {
            const int bin = (i - kSsbSubcarriers / 2 + 16 * n) % n;
            out[static_cast<size_t>(i) + static_cast<size_t>(l) * kSsbSubcarriers] =
                bins[static_cast<size_t>(bin)] * scale;
        }
    }
    return out;
}

const std::vector<PrachFormat>& prach_formats() {
    static const std::vector<PrachFormat> formats = [] {
        const std::string path = data_dir() + "/prach/formats.txt";
        std::ifstream in(path);
        if (!in) {
            throw std::runtime_error("cannot open PRACH format table: " + path);
        }
        std::vector<PrachFormat> out;
        std::string line;
        while (std::getline(in, line)) {
            const size_t hash = line.find('#');
            if (hash != std::string::npos) {
                line.erase(hash);
            }
            std::istringstream ls(line);
            PrachFormat f;
            if (ls >> f.name >> f.seq_len >> f.scs_hz >> f.symbol_ref >> f.cp_ref >>
                f.repetitions) {
                out.push_back(f);
            }
        }
        if (out.size() != 13) {
            throw std::runtime_error("PRACH format table must define 4 long + 9 short formats");
        }
        return out;
    }();
    return formats;
}

const PrachFormat& prach_format(const std::string& name) {
    for (const auto& f : prach_formats()) {
        if (f.name == to_lower(name)) {
            return f;
        }
    }
    throw std::domain_error("unknown PRACH format: " + name);
}

double prach_scs_hz(const PrachConfig& cfg) {
    if (cfg.format.scs_hz > 0) {
        return cfg.format.scs_hz;
    }
    return 15000.0 * (1 << cfg.mu);
}

int prach_fft_size(const PrachConfig& cfg) {
    if (cfg.fft_size > 0) {
        return cfg.fft_size;
    }
    return cfg.format.seq_len == 839 ? 1024 : 256;
}

double prach_sample_rate(const PrachConfig& cfg) {
    return prach_scs_hz(cfg) * prach_fft_size(cfg);
}

int prach_cp_samples(const PrachConfig& cfg) {
    const double scaled = static_cast<double>(cfg.format.cp_ref) * prach_fft_size(cfg) /
                          cfg.format.symbol_ref;
    return static_cast<int>(std::lround(scaled));
}

namespace {

// unit-modulus frequency-domain preamble: DFT of the shifted root sequence
Cvec prach_freq_sequence(int root_u, int cyclic_shift, int seq_len) {
    const Cvec x = zadoff_chu(root_u, seq_len, cyclic_shift);
    Cvec spec = fft::dft(x, false);
    const double scale = 1.0 / std::sqrt(static_cast<double>(seq_len));
    for (auto& v : spec) {
        v *= scale;
    }
    return spec;
}

}  // namespace

Cvec generate_prach(const PrachConfig& cfg) {
    const int l = cfg.format.seq_len;
    if (gcd_int(cfg.root_u, l) != 1 || cfg.root_u < 1 || cfg.root_u >= l) {
        throw std::domain_error("generate_prach: invalid root index");
    }
    if (cfg.cyclic_shift < 0 || cfg.cyclic_shift >= l) {
        throw std::domain_error("generate_prach: cyclic shift out of range");
    }
    const int n = prach_fft_size(cfg);
    if (n < l) {
        throw std::domain_error("generate_prach: fft_size smaller than the sequence");
    }
    const Cvec freq = prach_freq_sequence(cfg.root_u, cfg.cyclic_shift, l);
    const Cvec sym = ofdm_symbol_time(freq, n, -l / 2);

    const int cp = prach_cp_samples(cfg);
    Cvec out;
    out.reserve(static_cast<size_t>(cp) + static_cast<size_t>(cfg.format.repetitions) * n);
    out.insert(out.end(), sym.end() - cp, sym.end());
    for (int r = 0; r < cfg.format.repetitions; ++r) {
        out.insert(out.end(), sym.begin(), sym.end());
    }
    return out;
}

std::vector<PrachDetection> detect_prach(const Cvec& iq, const PrachConfig& cfg,
                                         const PrachZoneConfig& zone) {
    const int l = cfg.format.seq_len;
    const int n = prach_fft_size(cfg);
    const int cp = prach_cp_samples(cfg);
    if (zone.ncs < 1 || zone.ncs > l) {
        throw std::domain_error("detect_prach: zone size must be in 1..seq_len");
    }
    const int num_preambles = l / zone.ncs;

    const Cvec root = prach_freq_sequence(cfg.root_u, 0, l);
    const size_t pdp_len = 8 * static_cast<size_t>(n);  // 1/8-sample resolution
    std::vector<double> pdp(pdp_len, 0.0);

    int used_reps = 0;
    for (int r = 0; r < cfg.format.repetitions; ++r) {
        const size_t start = static_cast<size_t>(cp) + static_cast<size_t>(r) * n;
        if (start + static_cast<size_t>(n) > iq.size()) {
            break;
        }
        Cvec bins(iq.begin() + static_cast<long>(start),
                  iq.begin() + static_cast<long>(start) + n);
        fft::transform_pow2(bins, false);

        Cvec prod(pdp_len, Complex(0, 0));
        for (int i = 0; i < l; ++i) {
            const int bin = (i - l / 2 + 16 * n) % n;
            prod[static_cast<size_t>(i)] =
                bins[static_cast<size_t>(bin)] * std::conj(root[static_cast<size_t>(i)]);
        }
        fft::transform_pow2(prod, true);
        for (size_t i = 0; i < pdp_len; ++i) {
            pdp[i] += std::norm(prod[i]);
        }
        ++used_reps;
    }
    if (used_reps == 0) {
        return {};
    }

    double mean = 0.0;
    for (double v : pdp) {
        mean += v;
    }
    mean /= static_cast<double>(pdp_len);
    if (mean <= 0.0) {
        return {};
    }

    // zone-wise peaks: PDP position t maps to sequence lag (pdp_len - t) * l / pdp_len
    std::vector<double> zone_peak(static_cast<size_t>(num_preambles), 0.0);
    std::vector<size_t> zone_arg(static_cast<size_t>(num_preambles), 0);
    for (size_t t = 0; t < pdp_len; ++t) {
        const double lag_seq =
            static_cast<double>((pdp_len - t) % pdp_len) * l / static_cast<double>(pdp_len);
        // a delay moves the lag just below its zone start, so the zone is
        // the ceiling; lags above the last zone wrap around to preamble 0
        int v = static_cast<int>(std::ceil(lag_seq / zone.ncs - 1e-9));
        if (v >= num_preambles) {
            v = 0;
        }
        // reject positions beyond the usable delay span; the guard keeps a
        // peak's correlation shoulder from spilling into the next zone
        const double guard = 1.5;
        const double ta_seq = std::fmod(v * zone.ncs - lag_seq + l, l);
        if (ta_seq > zone.ncs - guard) {
            continue;
        }
        if (pdp[t] > zone_peak[static_cast<size_t>(v)]) {
            zone_peak[static_cast<size_t>(v)] = pdp[t];
            zone_arg[static_cast<size_t>(v)] = t;
        }
    }

    std::vector<PrachDetection> out;
    for (int v = 0; v < num_preambles; ++v) {
        const double metric = zone_peak[static_cast<size_t>(v)] / mean;
        if (metric < zone.threshold) {
            continue;
        }
        const size_t t = zone_arg[static_cast<size_t>(v)];
        const double lag_seq =
            static_cast<double>((pdp_len - t) % pdp_len) * l / static_cast<double>(pdp_len);

        // sidelobe masking: the correlation skirt of a strong peak reaches
        // into neighboring zones; drop this peak when a stronger one lies
        // within the skirt width
        constexpr double kSkirtSeqSamples = 3.0;
        bool masked = false;
        for (int u = 0; u < num_preambles && !masked; ++u) {
            if (u == v || zone_peak[static_cast<size_t>(u)] <= zone_peak[static_cast<size_t>(v)]) {
                continue;
            }
            const size_t tu = zone_arg[static_cast<size_t>(u)];
            const double lag_u = static_cast<double>((pdp_len - tu) % pdp_len) * l /
                                 static_cast<double>(pdp_len);
            double d = std::fabs(lag_seq - lag_u);
            d = std::min(d, l - d);
            masked = d <= kSkirtSeqSamples;
        }
        if (masked) {
            continue;
        }
        const double ta_seq = std::fmod(v * zone.ncs - lag_seq + l, l);
        const int ta = static_cast<int>(std::lround(ta_seq * n / l));
        out.push_back({v, ta, metric});
    }
    std::sort(out.begin(), out.end(), [](const PrachDetection& a, const PrachDetection& b) {
        return a.preamble_index < b.preamble_index;
    });
    return out;
}

}  // namespace nrsim
