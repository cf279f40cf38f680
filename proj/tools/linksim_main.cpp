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

// linksim: NR link-level simulator front end.
//
//   linksim run <config> [--set key=value ...] [--csv out.csv]
//   linksim cellsearch --iq <file> --scs <khz> [--fft N] [--threshold T]
//   linksim prach --format <name> [--root u] [--shift cs] [--ncs n] ...
//   linksim seq dump --kind <pss|sss|gold|m|zc|lowpapr> [options]
//
// Exit codes: 0 success, 2 configuration error, 3 I/O error.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <limits>

#include "nrsim/access.hpp"
#include "nrsim/sequences.hpp"
#include "nrsim/simio.hpp"
#include "nrsim/simulate.hpp"

using namespace nrsim;

namespace {

int cmd_run(const std::string& config_path, const std::vector<std::string>& overrides,
            const std::string& csv_path, bool no_csv_timing) {
    ConfigMap m;
    try {
        m = load_config(config_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    SimConfig cfg;
    try {
        for (const auto& o : overrides) {
            apply_override(m, o);
        }
        cfg = parse_sim_config(m);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    const SimResult result = run_scenario(cfg);
    std::cout << csv_text(result, !no_csv_timing);
    if (!csv_path.empty()) {
        try {
            write_csv(result, csv_path, !no_csv_timing);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 3;
        }
    }
    return 0;
}

int cmd_cellsearch_generate(const std::string& out_path, int pci, int scs_khz, int fft,
                            int delay, double snr_db, uint64_t seed) {
    SimConfig cfg;
    cfg.scenario = Scenario::CELL_SEARCH;
    cfg.ssb.scs_khz = scs_khz;
    cfg.search.fft_size = fft;
    try {
        auto rng = make_rng(seed);
        const SsbCapture cap = make_ssb_capture(cfg, rng, pci);
        ChannelConfig ch;
        ch.snr_db = snr_db;
        ch.delay_samples = delay;
        ch.seed = seed;
        const Cvec rx = channel_apply(cap.samples, ch, cap.sample_rate_hz);
        write_iq(out_path, rx, cap.sample_rate_hz, scs_khz);
        std::printf("pci %d ssb_start %ld samples %zu\n", cap.pci.pci,
                    cap.ssb_start_sample + delay, rx.size());
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

int cmd_cellsearch(const std::string& iq_path, int scs_khz, int fft, double threshold,
                   int max_icfo, int pbch_bits) {
    IqCapture cap;
    try {
        cap = read_iq(iq_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    CellSearchConfig cfg;
    cfg.scs_khz = cap.scs_khz > 0 ? cap.scs_khz : scs_khz;
    cfg.fft_size = fft;
    if (threshold > 0) {
        cfg.threshold = threshold;
    }
    cfg.max_integer_cfo = max_icfo;
    const auto res = cell_search(cap.samples, cfg);
    if (!res) {
        std::cout << "no cell detected\n";
        return 0;
    }
    std::printf("pci %d (nid1 %d, nid2 %d)\n", res->pci.pci, res->pci.nid1, res->pci.nid2);
    std::printf("timing_offset_samples %ld\n", res->timing_offset_samples);
    std::printf("cfo_hz %.1f\n", res->cfo_hz);
    std::printf("metric %.2f\n", res->metric);
    const Cvec ssb = extract_ssb_values(cap.samples, res->timing_offset_samples, res->cfo_hz, cfg);
    const int ssb_index = identify_ssb_index(ssb, res->pci);
    std::printf("ssb_index %d\n", ssb_index);
    const auto pbch = decode_pbch(ssb, res->pci, ssb_index, pbch_bits);
    std::printf("pbch_crc %s\n", pbch.crc_ok ? "ok" : "fail");
    return 0;
}

int cmd_prach(const std::string& iq_path, const std::string& format, int root, int shift,
              int mu, int ncs, double threshold, const std::string& out_iq) {
    PrachConfig pc;
    try {
        pc.format = prach_format(format);
        pc.root_u = root;
        pc.cyclic_shift = shift;
        pc.mu = mu;
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    if (!out_iq.empty()) {
        // generator mode
        try {
            const Cvec wave = generate_prach(pc);
            write_iq(out_iq, wave, prach_sample_rate(pc),
                     static_cast<int>(prach_scs_hz(pc) / 1000.0));
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 3;
        }
        return 0;
    }
    IqCapture cap;
    try {
        cap = read_iq(iq_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    PrachZoneConfig zone;
    zone.ncs = ncs;
    if (threshold > 0) {
        zone.threshold = threshold;
    }
    const auto dets = detect_prach(cap.samples, pc, zone);
    if (dets.empty()) {
        std::cout << "no preamble detected\n";
        return 0;
    }
    for (const auto& d : dets) {
        std::printf("preamble %d ta_samples %d metric %.2f\n", d.preamble_index,
                    d.timing_advance_samples, d.metric);
    }
    return 0;
}

int cmd_seq_dump(const std::string& kind, int a, int b, int len, const std::string& out_path) {
    Cvec seq;
    try {
        const std::string k = to_lower(kind);
        if (k == "pss") {
            seq = pss_sequence(a);
        } else if (k == "sss") {
            seq = sss_sequence(CellId::from_pci(a));
        } else if (k == "zc") {
            seq = zadoff_chu(a, b);
        } else if (k == "lowpapr") {
            seq = low_papr_sequence(a, b);
        } else if (k == "gold") {
            const BitVec bits = gold_sequence(static_cast<uint32_t>(a), static_cast<size_t>(len));
            for (uint8_t v : bits) {
                seq.emplace_back(static_cast<double>(v), 0.0);
            }
        } else if (k == "m") {
            LfsrSpec spec;
            spec.degree = 7;
            spec.taps = {0, 4};
            spec.init = {1, 0, 0, 0, 0, 0, 0};
            const BitVec bits = m_sequence(spec, static_cast<size_t>(len));
            for (uint8_t v : bits) {
                seq.emplace_back(static_cast<double>(v), 0.0);
            }
        } else {
            std::cerr << "config error: unknown sequence kind " << kind << "\n";
            return 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    FILE* out = stdout;
    if (!out_path.empty()) {
        out = std::fopen(out_path.c_str(), "w");
        if (!out) {
            std::cerr << "error: cannot open " << out_path << "\n";
            return 3;
        }
    }
    std::fprintf(out, "index,re,im\n");
    for (size_t i = 0; i < seq.size(); ++i) {
        std::fprintf(out, "%zu,%.12g,%.12g\n", i, seq[i].real(), seq[i].imag());
    }
    if (out != stdout) {
        std::fclose(out);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"NR link-level simulator"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "run a Monte-Carlo scenario from a config file");
    std::string config_path, csv_path;
    std::vector<std::string> overrides;
    bool no_csv_timing = false;
    run->add_option("config", config_path, "config file")->required();
    run->add_option("--set", overrides, "override a config key (key=value)");
    run->add_option("--csv", csv_path, "write results to a CSV file");
    run->add_flag("--no-csv-timing", no_csv_timing,
                  "write elapsed_s as 0.000 for reproducible output files");

    // cellsearch
    auto* cs = app.add_subcommand("cellsearch", "search an IQ capture for a cell");
    std::string cs_iq, cs_out;
    int cs_scs = 15, cs_fft = 256, cs_icfo = 0, cs_pbch = 32, cs_pci = -1, cs_delay = 0;
    double cs_thresh = -1.0, cs_snr = std::numeric_limits<double>::infinity();
    uint64_t cs_seed = 1;
    cs->add_option("--iq", cs_iq, "IQ capture file");
    cs->add_option("--scs", cs_scs, "subcarrier spacing in kHz");
    cs->add_option("--fft", cs_fft, "FFT size of the capture");
    cs->add_option("--threshold", cs_thresh, "detection threshold override");
    cs->add_option("--max-integer-cfo", cs_icfo, "integer CFO hypotheses (in units of scs)");
    cs->add_option("--pbch-bits", cs_pbch, "PBCH payload size");
    cs->add_option("--generate", cs_out, "write an SSB capture to this IQ file instead");
    cs->add_option("--pci", cs_pci, "cell identity for --generate (random when omitted)");
    cs->add_option("--delay", cs_delay, "sample delay for --generate");
    cs->add_option("--snr", cs_snr, "AWGN SNR in dB for --generate");
    cs->add_option("--seed", cs_seed, "RNG seed for --generate");

    // prach
    auto* pr = app.add_subcommand("prach", "generate or detect PRACH preambles");
    std::string pr_iq, pr_format = "0", pr_out;
    int pr_root = 129, pr_shift = 0, pr_mu = 0, pr_ncs = 13;
    double pr_thresh = -1.0;
    pr->add_option("--iq", pr_iq, "IQ capture to search");
    pr->add_option("--format", pr_format, "preamble format name")->required();
    pr->add_option("--root", pr_root, "Zadoff-Chu root");
    pr->add_option("--shift", pr_shift, "cyclic shift (generator mode)");
    pr->add_option("--mu", pr_mu, "numerology for short formats");
    pr->add_option("--ncs", pr_ncs, "cyclic-shift zone size");
    pr->add_option("--threshold", pr_thresh, "detection threshold override");
    pr->add_option("--generate", pr_out, "write a preamble to this IQ file instead of detecting");

    // seq dump
    auto* seq = app.add_subcommand("seq", "sequence utilities");
    auto* dump = seq->add_subcommand("dump", "print a sequence as CSV");
    std::string sd_kind = "pss", sd_out;
    int sd_a = 0, sd_b = 839, sd_len = 127;
    dump->add_option("--kind", sd_kind, "pss | sss | gold | m | zc | lowpapr")->required();
    dump->add_option("--a", sd_a, "nid2 / pci / root / group / c_init");
    dump->add_option("--b", sd_b, "length parameter (zc n_zc, lowpapr length)");
    dump->add_option("--len", sd_len, "output length for gold/m");
    dump->add_option("--out", sd_out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) {
            return cmd_run(config_path, overrides, csv_path, no_csv_timing);
        }
        if (cs->parsed()) {
            if (!cs_out.empty()) {
                return cmd_cellsearch_generate(cs_out, cs_pci, cs_scs, cs_fft, cs_delay, cs_snr,
                                               cs_seed);
            }
            if (cs_iq.empty()) {
                std::cerr << "config error: cellsearch needs --iq or --generate <file>\n";
                return 2;
            }
            return cmd_cellsearch(cs_iq, cs_scs, cs_fft, cs_thresh, cs_icfo, cs_pbch);
        }
        if (pr->parsed()) {
            if (pr_iq.empty() && pr_out.empty()) {
                std::cerr << "config error: prach needs --iq (detect) or --generate <file>\n";
                return 2;
            }
            return cmd_prach(pr_iq, pr_format, pr_root, pr_shift, pr_mu, pr_ncs, pr_thresh,
                             pr_out);
        }
        if (seq->parsed() && dump->parsed()) {
            return cmd_seq_dump(sd_kind, sd_a, sd_b, sd_len, sd_out);
        }
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
