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

#ifndef NRSIM_SIMIO_HPP
#define NRSIM_SIMIO_HPP

#include <map>
#include <string>
#include <vector>

#include "nrsim/util.hpp"

namespace nrsim {

/// Flat key-value configuration with dotted section names, e.g.
/// `carrier.num_rb = 24`. '#' starts a comment.
using ConfigMap = std::map<std::string, std::string>;

ConfigMap load_config(const std::string& path);
ConfigMap parse_config_text(const std::string& text);

/// Applies a `key=value` override (CLI flags take precedence over file keys).
void apply_override(ConfigMap& cfg, const std::string& key_eq_value);

std::string cfg_str(const ConfigMap& cfg, const std::string& key, const std::string& def);
double cfg_num(const ConfigMap& cfg, const std::string& key, double def);
long cfg_int(const ConfigMap& cfg, const std::string& key, long def);
std::vector<double> cfg_num_list(const ConfigMap& cfg, const std::string& key,
                                 const std::vector<double>& def);

/// Monte-Carlo tallies for one SNR point.
struct SnrPointResult {
    double snr_db = 0.0;
    long trials = 0;
    long errors = 0;        // scenario-defining error events
    long detections = 0;    // detection scenarios only
    long false_alarms = 0;  // detection scenarios only
    double elapsed_s = 0.0;
};

struct SimResult {
    std::string scenario;
    std::vector<SnrPointResult> points;
};

/// CSV rows `scenario,snr_db,trials,errors,rate,elapsed_s`. With
/// include_timing false the elapsed column is written as 0.000 so that
/// equal tallies produce byte-identical files.
void write_csv(const SimResult& result, const std::string& path, bool include_timing = true);
std::string csv_text(const SimResult& result, bool include_timing = true);

/// Headerless interleaved 32-bit little-endian floats, I then Q per
/// sample; `<path>.meta` records sample_rate_hz and scs_khz.
void write_iq(const std::string& path, const Cvec& samples, double sample_rate_hz, int scs_khz);

struct IqCapture {
    Cvec samples;
    double sample_rate_hz = 0.0;
    int scs_khz = 0;
};

/// Reads samples and, when present, the sidecar metadata.
IqCapture read_iq(const std::string& path);

}  // namespace nrsim

#endif  // NRSIM_SIMIO_HPP
