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

#include "nrsim/simulate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "nrsim/sequences.hpp"

namespace nrsim {

Scenario scenario_from_string(const std::string& name) {
    const std::string n = to_lower(name);
    if (n == "pdsch") return Scenario::PDSCH;
    if (n == "pusch") return Scenario::PUSCH;
    if (n == "cell_search" || n == "cellsearch") return Scenario::CELL_SEARCH;
    if (n == "prach") return Scenario::PRACH;
    throw std::domain_error("unknown scenario: " + name);
}

std::string scenario_name(Scenario s) {
    switch (s) {
        case Scenario::PDSCH: return "pdsch";
        case Scenario::PUSCH: return "pusch";
        case Scenario::CELL_SEARCH: return "cell_search";
        case Scenario::PRACH: return "prach";
    }
    return "?";
}

std::vector<ReCoord> shared_channel_data_res(const Allocation& alloc,
                                             const std::vector<int>& dmrs_symbols,
                                             const std::vector<ReCoord>& ptrs_res,
                                             const ReservedPattern& reserved) {
    std::vector<ReCoord> out;
    for (int l = 0; l < alloc.num_symbols; ++l) {
        const int sym = alloc.start_symbol + l;
        if (std::find(dmrs_symbols.begin(), dmrs_symbols.end(), sym) != dmrs_symbols.end()) {
            continue;  // DMRS symbols carry no shared-channel data
        }
        for (int i = 0; i < alloc.num_subcarriers(); ++i) {
            const ReCoord c{alloc.first_subcarrier() + i, sym};
            if (reserved.covers(c)) {
                continue;
            }
            bool is_ptrs = false;
            for (const auto& p : ptrs_res) {
                if (p == c) {
                    is_ptrs = true;
                    break;
                }
            }
            if (!is_ptrs) {
                out.push_back(c);
            }
        }
    }
    return out;
}

namespace {

uint32_t data_cinit(int codeword) {
    return (static_cast<uint32_t>(codeword + 1) << 14) ^ 0x5a5u;
}

struct LinkGeometry {
    std::vector<int> dmrs_symbols;
    std::vector<ReValue> ptrs_res;
    std::vector<ReCoord> data_res;
    std::vector<int> layer_split;      // layers per codeword
    std::vector<int> e_per_codeword;   // coded bits per codeword
    std::vector<size_t> tb_bits;       // payload size per codeword
};

LinkGeometry link_geometry(const SimConfig& cfg) {
    LinkGeometry geo;
    geo.dmrs_symbols = dmrs_symbol_indices(cfg.dmrs, cfg.alloc);
    if (cfg.ptrs_enabled) {
        geo.ptrs_res = ptrs_map(cfg.ptrs, cfg.dmrs, cfg.alloc, 0);
    }
    std::vector<ReCoord> ptrs_coords;
    for (const auto& rv : geo.ptrs_res) {
        ptrs_coords.push_back(rv.coord);
    }
    geo.data_res = shared_channel_data_res(cfg.alloc, geo.dmrs_symbols, ptrs_coords,
                                           cfg.reserved);
    if (geo.data_res.empty()) {
        throw std::domain_error("link: allocation leaves no data REs");
    }

    LayerMapSpec lm{cfg.num_codewords, cfg.num_layers, cfg.scenario == Scenario::PUSCH};
    geo.layer_split = layers_per_codeword(lm);

    const int q_bits = bits_per_symbol(cfg.mcs.modulation);
    for (int nl : geo.layer_split) {
        // every layer carries one symbol per data RE
        const long symbols = static_cast<long>(geo.data_res.size()) * nl;
        const int e = static_cast<int>(symbols * q_bits);
        geo.e_per_codeword.push_back(e);
        const long a = std::lround(e * cfg.mcs.code_rate) - 24;
        if (a < 16) {
            throw std::domain_error("link: allocation too small for the configured rate");
        }
        geo.tb_bits.push_back(static_cast<size_t>(a));
    }
    return geo;
}

// per-symbol blocks of a frequency-first RE list (for DFT spreading)
std::vector<std::pair<size_t, size_t>> symbol_blocks(const std::vector<ReCoord>& res) {
    std::vector<std::pair<size_t, size_t>> blocks;
    size_t start = 0;
    for (size_t i = 1; i <= res.size(); ++i) {
        if (i == res.size() || res[i].symbol != res[start].symbol) {
            blocks.push_back({start, i});
            start = i;
        }
    }
    return blocks;
}

}  // namespace

LinkTxResult shared_link_transmit(const SimConfig& cfg, std::mt19937_64& rng) {
    const LinkGeometry geo = link_geometry(cfg);
    const Numerology num = numerology_params(cfg.mu);

    LinkTxResult tx;
    std::vector<Cvec> codeword_symbols;
    for (size_t q = 0; q < geo.layer_split.size(); ++q) {
        BitVec payload = random_bits(rng, geo.tb_bits[q]);
        tx.payloads.push_back(payload);
        TransportEncoded enc = transport_encode(payload, geo.e_per_codeword[q],
                                                cfg.mcs.code_rate, cfg.rv);
        scramble(enc.bits, data_cinit(static_cast<int>(q)));
        codeword_symbols.push_back(modulate(enc.bits, cfg.mcs.modulation));
    }
    tx.e_per_codeword = geo.e_per_codeword;

    LayerMapSpec lm{cfg.num_codewords, cfg.num_layers, cfg.scenario == Scenario::PUSCH};
    std::vector<Cvec> layers = layer_map(codeword_symbols, lm);

    if (cfg.transform_precoding) {
        if (layers.size() != 1) {
            throw std::domain_error("link: DFT-S-OFDM requires a single layer");
        }
        // spread each OFDM symbol's block separately
        for (const auto& [lo, hi] : symbol_blocks(geo.data_res)) {
            const int m = static_cast<int>(hi - lo);
            Cvec block(layers[0].begin() + static_cast<long>(lo),
                       layers[0].begin() + static_cast<long>(hi));
            const Cvec spread = transform_precode(block, m);
            std::copy(spread.begin(), spread.end(), layers[0].begin() + static_cast<long>(lo));
        }
    }

    ResourceGrid grid(cfg.num_layers, cfg.num_rb * kSubcarriersPerRb, kSymbolsPerSlot);
    const PortRes dmrs = dmrs_map(cfg.dmrs, cfg.alloc, 0);
    for (int p = 0; p < cfg.num_layers; ++p) {
        grid.map_res(p, dmrs.per_port[static_cast<size_t>(p)], "dmrs");
    }
    if (cfg.ptrs_enabled) {
        grid.map_res(cfg.ptrs.assoc_dmrs_port, geo.ptrs_res, "ptrs");
    }
    for (size_t l = 0; l < layers.size(); ++l) {
        std::vector<ReValue> res(geo.data_res.size());
        for (size_t i = 0; i < geo.data_res.size(); ++i) {
            res[i] = {geo.data_res[i], layers[l][i]};
        }
        grid.map_res(static_cast<int>(l), res, "data");
    }

    tx.ofdm = make_ofdm_config(num, cfg.num_rb * kSubcarriersPerRb, kSymbolsPerSlot,
                               cfg.fft_size);
    double power = 0.0;
    for (int p = 0; p < cfg.num_layers; ++p) {
        tx.port_samples.push_back(ofdm_modulate(grid, p, tx.ofdm));
        power += mean_power(tx.port_samples.back());
    }
    tx.mean_tx_power = power / cfg.num_layers;
    return tx;
}

namespace {

// least-squares estimates averaged per (RB, DMRS instance), linearly
// interpolated across frequency, nearest instance in time
struct ChannelEstimate {
    // est[instance][rb]
    std::vector<std::vector<Complex>> est;
    std::vector<double> instance_center;  // mean symbol index per instance
    int start_rb;
    int num_rb;

    Complex at(int subcarrier, int symbol) const {
        size_t inst = 0;
        double best = 1e300;
        for (size_t i = 0; i < instance_center.size(); ++i) {
            const double d = std::fabs(instance_center[i] - symbol);
            if (d < best) {
                best = d;
                inst = i;
            }
        }
        const auto& row = est[inst];
        // linear interpolation between RB centers
        const double pos = (static_cast<double>(subcarrier) - start_rb * kSubcarriersPerRb -
                            5.5) /
                           kSubcarriersPerRb;
        if (row.size() == 1) {
            return row[0];
        }
        const double clamped = std::clamp(pos, 0.0, static_cast<double>(row.size() - 1));
        const size_t i0 = static_cast<size_t>(std::floor(clamped));
        const size_t i1 = std::min(i0 + 1, row.size() - 1);
        const double w = clamped - static_cast<double>(i0);
        return row[i0] * (1.0 - w) + row[i1] * w;
    }
};

ChannelEstimate estimate_channel(const Cvec& grid_vals, int grid_width,
                                 const std::vector<ReValue>& port_dmrs,
                                 const Allocation& alloc) {
    // group DMRS symbols into consecutive instances
    std::vector<int> symbols;
    for (const auto& rv : port_dmrs) {
        if (std::find(symbols.begin(), symbols.end(), rv.coord.symbol) == symbols.end()) {
            symbols.push_back(rv.coord.symbol);
        }
    }
    std::sort(symbols.begin(), symbols.end());
    std::vector<std::pair<int, int>> instances;  // symbol range [lo, hi]
    for (size_t i = 0; i < symbols.size(); ++i) {
        if (instances.empty() || symbols[i] != instances.back().second + 1) {
            instances.push_back({symbols[i], symbols[i]});
        } else {
            instances.back().second = symbols[i];
        }
    }

    ChannelEstimate ce;
    ce.start_rb = alloc.start_rb;
    ce.num_rb = alloc.num_rb;
    ce.est.assign(instances.size(), std::vector<Complex>(static_cast<size_t>(alloc.num_rb),
                                                         Complex(0, 0)));
    std::vector<std::vector<int>> counts(instances.size(),
                                         std::vector<int>(static_cast<size_t>(alloc.num_rb), 0));
    for (const auto& rv : port_dmrs) {
        size_t inst = 0;
        for (size_t i = 0; i < instances.size(); ++i) {
            if (rv.coord.symbol >= instances[i].first && rv.coord.symbol <= instances[i].second) {
                inst = i;
                break;
            }
        }
        const int rb = rv.coord.subcarrier / kSubcarriersPerRb - alloc.start_rb;
        const Complex y = grid_vals[static_cast<size_t>(rv.coord.subcarrier) +
                                    static_cast<size_t>(rv.coord.symbol) * grid_width];
        ce.est[inst][static_cast<size_t>(rb)] += y * std::conj(rv.value);
        counts[inst][static_cast<size_t>(rb)] += 1;
    }
    for (size_t i = 0; i < instances.size(); ++i) {
        for (size_t rb = 0; rb < ce.est[i].size(); ++rb) {
            if (counts[i][rb] > 0) {
                ce.est[i][rb] /= static_cast<double>(counts[i][rb]);
            }
        }
        ce.instance_center.push_back(0.5 * (instances[i].first + instances[i].second));
    }
    return ce;
}

}  // namespace

bool shared_link_receive(const SimConfig& cfg, const LinkTxResult& tx,
                         const std::vector<Cvec>& rx_ports, double noise_var) {
    const LinkGeometry geo = link_geometry(cfg);
    const int width = cfg.num_rb * kSubcarriersPerRb;
    const PortRes dmrs = dmrs_map(cfg.dmrs, cfg.alloc, 0);
    const double nv = std::max(noise_var, 1e-12);

    std::vector<Cvec> grids;
    std::vector<ChannelEstimate> chests;
    for (int p = 0; p < cfg.num_layers; ++p) {
        grids.push_back(ofdm_demodulate(rx_ports[static_cast<size_t>(p)], tx.ofdm, width,
                                        kSymbolsPerSlot));
        chests.push_back(estimate_channel(grids.back(), width,
                                          dmrs.per_port[static_cast<size_t>(p)], cfg.alloc));
    }

    // common-phase-error track from PTRS: one phasor per PTRS-bearing
    // symbol, nearest-symbol lookup elsewhere
    std::vector<int> cpe_symbols;
    std::vector<double> cpe_phase;
    if (cfg.ptrs_enabled) {
        const int ap = cfg.ptrs.assoc_dmrs_port;
        std::map<int, Complex> acc;
        for (const auto& rv : geo.ptrs_res) {
            const Complex y = grids[static_cast<size_t>(ap)][static_cast<size_t>(rv.coord.subcarrier) +
                                                             static_cast<size_t>(rv.coord.symbol) * width];
            const Complex h = chests[static_cast<size_t>(ap)].at(rv.coord.subcarrier,
                                                                 rv.coord.symbol);
            acc[rv.coord.symbol] += y * std::conj(h * rv.value);
        }
        for (const auto& [sym, sum] : acc) {
            cpe_symbols.push_back(sym);
            cpe_phase.push_back(std::arg(sum));
        }
    }
    auto cpe_for = [&](int symbol) -> Complex {
        if (cpe_symbols.empty()) {
            return {1.0, 0.0};
        }
        size_t best = 0;
        for (size_t i = 1; i < cpe_symbols.size(); ++i) {
            if (std::abs(cpe_symbols[i] - symbol) < std::abs(cpe_symbols[best] - symbol)) {
                best = i;
            }
        }
        return {std::cos(-cpe_phase[best]), std::sin(-cpe_phase[best])};
    };

    const double reg = cfg.mmse_equalizer ? nv : 0.0;
    std::vector<Cvec> layer_streams;
    for (int p = 0; p < cfg.num_layers; ++p) {
        Cvec stream(geo.data_res.size());
        for (size_t i = 0; i < geo.data_res.size(); ++i) {
            const ReCoord c = geo.data_res[i];
            const Complex y = grids[static_cast<size_t>(p)][static_cast<size_t>(c.subcarrier) +
                                                            static_cast<size_t>(c.symbol) * width] *
                              cpe_for(c.symbol);
            const Complex h = chests[static_cast<size_t>(p)].at(c.subcarrier, c.symbol);
            const double denom = std::norm(h) + reg;
            stream[i] = denom > 1e-12 ? y * std::conj(h) / denom : Complex(0, 0);
        }
        layer_streams.push_back(std::move(stream));
    }

    if (cfg.transform_precoding) {
        for (const auto& [lo, hi] : symbol_blocks(geo.data_res)) {
            const int m = static_cast<int>(hi - lo);
            Cvec block(layer_streams[0].begin() + static_cast<long>(lo),
                       layer_streams[0].begin() + static_cast<long>(hi));
            const Cvec despread = transform_deprecode(block, m);
            std::copy(despread.begin(), despread.end(),
                      layer_streams[0].begin() + static_cast<long>(lo));
        }
    }

    LayerMapSpec lm{cfg.num_codewords, cfg.num_layers, cfg.scenario == Scenario::PUSCH};
    std::vector<size_t> cw_lengths;
    for (size_t q = 0; q < geo.layer_split.size(); ++q) {
        cw_lengths.push_back(static_cast<size_t>(geo.e_per_codeword[q]) /
                             static_cast<size_t>(bits_per_symbol(cfg.mcs.modulation)));
    }
    const std::vector<Cvec> codewords = layer_demap(layer_streams, lm, cw_lengths);

    bool all_ok = true;
    for (size_t q = 0; q < codewords.size(); ++q) {
        std::vector<double> llrs = soft_demod(codewords[q], cfg.mcs.modulation, nv);
        descramble_llrs(llrs, data_cinit(static_cast<int>(q)));
        const TransportDecoded dec = transport_decode(llrs, geo.tb_bits[q],
                                                      geo.e_per_codeword[q],
                                                      cfg.mcs.code_rate, cfg.rv);
        all_ok = all_ok && dec.crc_ok && dec.payload == tx.payloads[q];
    }
    return all_ok;
}

bool shared_link_trial(const SimConfig& cfg, double snr_db, uint64_t trial_index) {
    uint64_t snr_key = 0;
    std::memcpy(&snr_key, &snr_db, sizeof(snr_key));
    std::mt19937_64 rng = make_rng(cfg.seed, snr_key, trial_index);

    const LinkTxResult tx = shared_link_transmit(cfg, rng);
    std::vector<Cvec> rx;
    for (size_t p = 0; p < tx.port_samples.size(); ++p) {
        ChannelConfig ch;
        ch.snr_db = snr_db;
        ch.cfo_hz = cfg.cfo_hz;
        ch.delay_samples = 0;  // genie-aided timing for the shared channels
        ch.phase_noise_var = cfg.phase_noise_var;
        ch.seed = splitmix64(cfg.seed ^ snr_key) + 31 * trial_index + p;
        rx.push_back(channel_apply(tx.port_samples[p], ch, tx.ofdm.sample_rate_hz));
    }
    const double noise_var = noise_var_for_snr(snr_db, tx.mean_tx_power);
    return shared_link_receive(cfg, tx, rx, noise_var);
}

SsbCapture make_ssb_capture(const SimConfig& cfg, std::mt19937_64& rng, int forced_pci) {
    SsbCapture cap;
    const int pci = forced_pci >= 0 ? forced_pci : static_cast<int>(rng() % 1008);
    cap.pci = CellId::from_pci(pci);
    cap.pbch_payload = random_bits(rng, static_cast<size_t>(cfg.pbch_payload_bits));

    const auto positions = burst_positions(cfg.ssb);

    const int mu = cfg.ssb.scs_khz == 15   ? 0
                   : cfg.ssb.scs_khz == 30 ? 1
                   : cfg.ssb.scs_khz == 120 ? 3
                                            : 4;
    const Numerology num = numerology_params(mu);
    const BurstPosition last = positions[static_cast<size_t>(cfg.ssb.num_ssb - 1)];
    const int num_symbols = (last.slot + 1) * kSymbolsPerSlot;

    // the SSB need not sit at the carrier center; a nonzero RB offset
    // puts it on a raster position the searcher must be told about
    const int offset_rb = cfg.ssb.frequency_offset_rb;
    const int ssb_rb = kSsbSubcarriers / kSubcarriersPerRb;
    const int carrier_rb = offset_rb + ssb_rb;
    ResourceGrid carrier(1, carrier_rb * kSubcarriersPerRb, num_symbols);
    for (int i = 0; i < cfg.ssb.num_ssb; ++i) {
        // one block per beam: same payload, distinct ssb_index
        const SsBlock ssb = build_ssb(cap.pci, cap.pbch_payload, i);
        const BurstPosition pos = positions[static_cast<size_t>(i)];
        std::vector<ReValue> res;
        for (int l = 0; l < kSsbSymbols; ++l) {
            for (int sc = 0; sc < kSsbSubcarriers; ++sc) {
                const Complex v = ssb.grid.at(0, sc, l);
                if (v != Complex(0, 0)) {
                    res.push_back({{offset_rb * kSubcarriersPerRb + sc,
                                    pos.slot * kSymbolsPerSlot + pos.start_symbol + l},
                                   v});
                }
            }
        }
        carrier.map_res(0, res, "ssb" + std::to_string(i));
    }

    const OfdmConfig ofdm = make_ofdm_config(num, carrier_rb * kSubcarriersPerRb, num_symbols,
                                             cfg.search.fft_size);
    cap.samples = ofdm_modulate(carrier, 0, ofdm);
    cap.sample_rate_hz = ofdm.sample_rate_hz;

    std::vector<size_t> symbol_offsets(static_cast<size_t>(num_symbols) + 1, 0);
    for (int l = 0; l < num_symbols; ++l) {
        symbol_offsets[static_cast<size_t>(l) + 1] =
            symbol_offsets[static_cast<size_t>(l)] +
            static_cast<size_t>(ofdm.cp_samples[static_cast<size_t>(l)]) +
            static_cast<size_t>(ofdm.fft_size);
    }
    for (int i = 0; i < cfg.ssb.num_ssb; ++i) {
        const BurstPosition pos = positions[static_cast<size_t>(i)];
        cap.ssb_start_samples.push_back(static_cast<long>(
            symbol_offsets[static_cast<size_t>(pos.slot * kSymbolsPerSlot + pos.start_symbol)]));
    }
    cap.ssb_start_sample = cap.ssb_start_samples.front();
    return cap;
}

namespace {

struct TrialOutcome {
    bool error = false;
    bool detection = false;
    long false_alarms = 0;
};

TrialOutcome cell_search_trial(const SimConfig& cfg, double snr_db, uint64_t trial) {
    uint64_t snr_key = 0;
    std::memcpy(&snr_key, &snr_db, sizeof(snr_key));
    std::mt19937_64 rng = make_rng(cfg.seed, snr_key ^ 0xce11, trial);

    const SsbCapture cap = make_ssb_capture(cfg, rng);
    ChannelConfig ch;
    ch.snr_db = snr_db;
    ch.cfo_hz = cfg.cfo_hz;
    ch.delay_samples = static_cast<int>(rng() % static_cast<uint64_t>(cfg.search_max_delay + 1));
    ch.seed = splitmix64(cfg.seed ^ snr_key ^ 0xce11) + trial;
    const Cvec rx = channel_apply(cap.samples, ch, cap.sample_rate_hz);

    CellSearchConfig search = cfg.search;
    search.scs_khz = cfg.ssb.scs_khz;
    const auto found = cell_search(rx, search);

    TrialOutcome out;
    const int cp = 144 * search.fft_size / 2048;
    if (!found) {
        out.error = true;
        return out;
    }
    out.detection = true;
    const bool pci_ok = found->pci.pci == cap.pci.pci;
    // any transmitted beam is a valid detection target
    bool timing_ok = false;
    for (long start : cap.ssb_start_samples) {
        timing_ok = timing_ok ||
                    std::labs(found->timing_offset_samples - (start + ch.delay_samples)) <= cp / 2;
    }
    out.error = !(pci_ok && timing_ok);
    return out;
}

TrialOutcome prach_trial(const SimConfig& cfg, double snr_db, uint64_t trial) {
    uint64_t snr_key = 0;
    std::memcpy(&snr_key, &snr_db, sizeof(snr_key));
    std::mt19937_64 rng = make_rng(cfg.seed, snr_key ^ 0x9ac4, trial);

    PrachConfig pc;
    pc.format = prach_format(cfg.prach_format_name);
    pc.mu = cfg.mu;
    pc.root_u = cfg.prach_root;
    const int l = pc.format.seq_len;
    const int n = prach_fft_size(pc);
    const int num_preambles = l / cfg.prach_zone.ncs;
    const int v = static_cast<int>(rng() % static_cast<uint64_t>(num_preambles));
    pc.cyclic_shift = v * cfg.prach_zone.ncs;

    const Cvec wave = generate_prach(pc);
    const int zone_span = cfg.prach_zone.ncs * n / l;
    const int max_delay = cfg.prach_max_delay > 0 ? cfg.prach_max_delay
                                                  : std::max(0, zone_span / 2);
    ChannelConfig ch;
    ch.snr_db = snr_db;
    ch.delay_samples = max_delay > 0 ? static_cast<int>(rng() % static_cast<uint64_t>(max_delay + 1)) : 0;
    ch.seed = splitmix64(cfg.seed ^ snr_key ^ 0x9ac4) + trial;
    const Cvec rx = channel_apply(wave, ch, prach_sample_rate(pc));

    const auto detections = detect_prach(rx, pc, cfg.prach_zone);
    TrialOutcome out;
    bool hit = false;
    for (const auto& d : detections) {
        if (d.preamble_index == v) {
            hit = true;
        } else {
            out.false_alarms += 1;
        }
    }
    out.detection = hit;
    out.error = !hit;
    return out;
}

}  // namespace

SimConfig parse_sim_config(const ConfigMap& m) {
    SimConfig cfg;
    cfg.scenario = scenario_from_string(cfg_str(m, "sim.scenario", "pdsch"));
    cfg.seed = static_cast<uint64_t>(cfg_int(m, "sim.seed", 1));
    cfg.trials = cfg_int(m, "sim.trials", 100);
    cfg.threads = static_cast<int>(cfg_int(m, "sim.threads", 1));
    cfg.snr_db = cfg_num_list(m, "sim.snr_db", {std::numeric_limits<double>::infinity()});

    cfg.mu = static_cast<int>(cfg_int(m, "carrier.mu", 0));
    cfg.num_rb = static_cast<int>(cfg_int(m, "carrier.num_rb", 24));
    cfg.fft_size = static_cast<int>(cfg_int(m, "carrier.fft_size", 0));

    cfg.alloc.start_symbol = static_cast<int>(cfg_int(m, "alloc.start_symbol", 0));
    cfg.alloc.num_symbols = static_cast<int>(cfg_int(m, "alloc.num_symbols", 14));
    cfg.alloc.start_rb = static_cast<int>(cfg_int(m, "alloc.start_rb", 0));
    cfg.alloc.num_rb = static_cast<int>(cfg_int(m, "alloc.num_rb", cfg.num_rb));

    cfg.mcs.modulation = modulation_from_string(cfg_str(m, "mcs.modulation", "qpsk"));
    cfg.mcs.code_rate = cfg_num(m, "mcs.code_rate", 1.0 / 3.0);
    cfg.num_layers = static_cast<int>(cfg_int(m, "link.layers", 1));
    cfg.num_codewords = static_cast<int>(cfg_int(m, "link.codewords", 1));
    cfg.transform_precoding = cfg_int(m, "link.transform_precoding", 0) != 0;
    cfg.rv = static_cast<int>(cfg_int(m, "link.rv", 0));
    cfg.cfo_hz = cfg_num(m, "link.cfo_hz", 0.0);
    cfg.phase_noise_var = cfg_num(m, "link.phase_noise_var", 0.0);
    cfg.mmse_equalizer = cfg_int(m, "equalizer.mmse", 0) != 0;

    cfg.dmrs.num_front_symbols = static_cast<int>(cfg_int(m, "dmrs.front_symbols", 1));
    cfg.dmrs.additional_positions = static_cast<int>(cfg_int(m, "dmrs.additional_positions", 0));
    cfg.dmrs.num_ports = cfg.num_layers;
    const int ports_per_group = cfg.dmrs.num_front_symbols == 2 ? 4 : 2;
    const int min_comb = (cfg.num_layers + ports_per_group - 1) / ports_per_group;
    cfg.dmrs.comb = std::max(static_cast<int>(cfg_int(m, "dmrs.comb", 3)), min_comb);
    cfg.dmrs.sequence_mode = to_lower(cfg_str(m, "dmrs.mode", "gold")) == "zc"
                                 ? DmrsSequenceMode::ZC_LOW_PAPR
                                 : DmrsSequenceMode::GOLD_QPSK;
    if (cfg.dmrs.sequence_mode == DmrsSequenceMode::ZC_LOW_PAPR && !cfg.transform_precoding) {
        throw std::domain_error("config: ZC DMRS requires DFT-S-OFDM (link.transform_precoding)");
    }

    cfg.ptrs_enabled = cfg_int(m, "ptrs.enabled", 0) != 0;
    cfg.ptrs.freq_density_krb = static_cast<int>(cfg_int(m, "ptrs.k_rb", 2));
    cfg.ptrs.time_density = static_cast<int>(cfg_int(m, "ptrs.time_density", 1));
    cfg.ptrs.assoc_dmrs_port = static_cast<int>(cfg_int(m, "ptrs.port", 0));

    // reserved rate-matching patterns: "rb:sym,rb:sym,..." at RB level or
    // "sc:sym,..." at RE level (the two are mutually exclusive)
    const std::string rb_mask = cfg_str(m, "reserved.rb_symbol", "");
    const std::string re_mask = cfg_str(m, "reserved.re", "");
    if (!rb_mask.empty() && !re_mask.empty()) {
        throw std::domain_error("config: choose one reserved granularity");
    }
    auto parse_pairs = [](const std::string& text) {
        std::vector<std::pair<int, int>> out;
        std::istringstream ls(text);
        std::string item;
        while (std::getline(ls, item, ',')) {
            const size_t colon = item.find(':');
            if (colon == std::string::npos) {
                throw std::domain_error("config: reserved entries are pairs like 3:7");
            }
            out.push_back({std::stoi(item.substr(0, colon)), std::stoi(item.substr(colon + 1))});
        }
        return out;
    };
    if (!rb_mask.empty()) {
        cfg.reserved.granularity = ReservedGranularity::RB_SYMBOL;
        cfg.reserved.rb_symbol_mask = parse_pairs(rb_mask);
    } else if (!re_mask.empty()) {
        cfg.reserved.granularity = ReservedGranularity::RE;
        for (const auto& [sc, sym] : parse_pairs(re_mask)) {
            cfg.reserved.re_mask.push_back({sc, sym});
        }
    }

    cfg.ssb.scs_khz = static_cast<int>(cfg_int(m, "ssb.scs_khz", 15));
    cfg.ssb.burst_periodicity_ms = cfg_num(m, "ssb.period_ms", 20.0);
    cfg.ssb.num_ssb = static_cast<int>(cfg_int(m, "ssb.num_ssb", 1));
    cfg.ssb.frequency_offset_rb = static_cast<int>(cfg_int(m, "ssb.frequency_offset_rb", 0));

    cfg.search.fft_size = static_cast<int>(cfg_int(m, "search.fft_size", 256));
    cfg.search.threshold = cfg_num(m, "search.threshold", cfg.search.threshold);
    cfg.search.max_integer_cfo = static_cast<int>(cfg_int(m, "search.max_integer_cfo", 0));
    cfg.search.raster_offsets_hz = cfg_num_list(m, "search.raster_offsets_hz", {0.0});
    cfg.search_max_delay = static_cast<int>(cfg_int(m, "search.max_delay", 512));
    cfg.pbch_payload_bits = static_cast<int>(cfg_int(m, "pbch.payload_bits", 32));

    cfg.prach_format_name = cfg_str(m, "prach.format", "0");
    cfg.prach_root = static_cast<int>(cfg_int(m, "prach.root", 129));
    cfg.prach_zone.ncs = static_cast<int>(cfg_int(m, "prach.ncs", 13));
    cfg.prach_zone.threshold = cfg_num(m, "prach.threshold", cfg.prach_zone.threshold);
    cfg.prach_max_delay = static_cast<int>(cfg_int(m, "prach.max_delay", 0));

    // surface configuration inconsistencies before the run
    if (cfg.scenario == Scenario::PDSCH || cfg.scenario == Scenario::PUSCH) {
        (void)link_geometry(cfg);
        if (cfg.transform_precoding && cfg.num_layers != 1) {
            throw std::domain_error("config: DFT-S-OFDM supports single-layer transmission only");
        }
        if (cfg.alloc.start_rb + cfg.alloc.num_rb > cfg.num_rb) {
            throw std::domain_error("config: allocation exceeds the carrier");
        }
    }
    return cfg;
}

namespace {

TrialOutcome run_one_trial(const SimConfig& cfg, double snr_db, uint64_t trial) {
    switch (cfg.scenario) {
        case Scenario::PDSCH:
        case Scenario::PUSCH: {
            TrialOutcome out;
            out.error = !shared_link_trial(cfg, snr_db, trial);
            return out;
        }
        case Scenario::CELL_SEARCH:
            return cell_search_trial(cfg, snr_db, trial);
        case Scenario::PRACH:
            return prach_trial(cfg, snr_db, trial);
    }
    return {};
}

}  // namespace

SimResult run_scenario(const SimConfig& cfg) {
    SimResult result;
    result.scenario = scenario_name(cfg.scenario);
    for (double snr : cfg.snr_db) {
        const auto t0 = std::chrono::steady_clock::now();
        SnrPointResult point;
        point.snr_db = snr;
        point.trials = cfg.trials;

        const int threads = std::max(1, cfg.threads);
        std::vector<long> errs(static_cast<size_t>(threads), 0);
        std::vector<long> dets(static_cast<size_t>(threads), 0);
        std::vector<long> fas(static_cast<size_t>(threads), 0);
        auto worker = [&](int w) {
            for (long t = w; t < cfg.trials; t += threads) {
                const TrialOutcome o = run_one_trial(cfg, snr, static_cast<uint64_t>(t));
                errs[static_cast<size_t>(w)] += o.error ? 1 : 0;
                dets[static_cast<size_t>(w)] += o.detection ? 1 : 0;
                fas[static_cast<size_t>(w)] += o.false_alarms;
            }
        };
        if (threads == 1) {
            worker(0);
        } else {
            std::vector<std::thread> pool;
            for (int w = 0; w < threads; ++w) {
                pool.emplace_back(worker, w);
            }
            for (auto& th : pool) {
                th.join();
            }
        }
        for (int w = 0; w < threads; ++w) {
            point.errors += errs[static_cast<size_t>(w)];
            point.detections += dets[static_cast<size_t>(w)];
            point.false_alarms += fas[static_cast<size_t>(w)];
        }
        point.elapsed_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        result.points.push_back(point);
    }
    return result;
}

}  // namespace nrsim
