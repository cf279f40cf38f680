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

#include "nrsim/simio.hpp"

#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace nrsim {

namespace {

std::string trim(const std::string& s) {
    const size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) {
        return "";
    }
    const size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

ConfigMap parse_config_text(const std::string& text) {
    ConfigMap cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        const std::string t = trim(line);
        if (t.empty()) {
            continue;
        }
        const size_t eq = t.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": expected key = value");
        }
        cfg[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
    }
    return cfg;
}

ConfigMap load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open config file: " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

void apply_override(ConfigMap& cfg, const std::string& key_eq_value) {
    const size_t eq = key_eq_value.find('=');
    if (eq == std::string::npos) {
        throw std::runtime_error("override must be key=value: " + key_eq_value);
    }
    cfg[trim(key_eq_value.substr(0, eq))] = trim(key_eq_value.substr(eq + 1));
}

std::string cfg_str(const ConfigMap& cfg, const std::string& key, const std::string& def) {
    const auto it = cfg.find(key);
    return it == cfg.end() ? def : it->second;
}

double cfg_num(const ConfigMap& cfg, const std::string& key, double def) {
    const auto it = cfg.find(key);
    if (it == cfg.end()) {
        return def;
    }
    if (it->second == "inf") {
        return std::numeric_limits<double>::infinity();
    }
    try {
        return std::stod(it->second);
    } catch (const std::exception&) {
        throw std::runtime_error("config key " + key + ": not a number: " + it->second);
    }
}

long cfg_int(const ConfigMap& cfg, const std::string& key, long def) {
    const auto it = cfg.find(key);
    if (it == cfg.end()) {
        return def;
    }
    try {
        return std::stol(it->second);
    } catch (const std::exception&) {
        throw std::runtime_error("config key " + key + ": not an integer: " + it->second);
    }
}

std::vector<double> cfg_num_list(const ConfigMap& cfg, const std::string& key,
                                 const std::vector<double>& def) {
    const auto it = cfg.find(key);
    if (it == cfg.end()) {
        return def;
    }
    std::vector<double> out;
    std::string item;
    std::istringstream ls(it->second);
    while (std::getline(ls, item, ',')) {
        if (item == "inf") {
            out.push_back(std::numeric_limits<double>::infinity());
        } else {
            out.push_back(std::stod(item));
        }
    }
    if (out.empty()) {
        throw std::runtime_error("config key " + key + ": empty list");
    }
    return out;
}

std::string csv_text(const SimResult& result, bool include_timing) {
    std::string out = "scenario,snr_db,trials,errors,rate,elapsed_s\n";
    char line[256];
    for (const auto& p : result.points) {
        const double rate = p.trials > 0 ? static_cast<double>(p.errors) / p.trials : 0.0;
        std::snprintf(line, sizeof(line), "%s,%.6g,%ld,%ld,%.8f,%.3f\n",
                      result.scenario.c_str(), p.snr_db, p.trials, p.errors, rate,
                      include_timing ? p.elapsed_s : 0.0);
        out += line;
    }
    return out;
}

void write_csv(const SimResult& result, const std::string& path, bool include_timing) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open CSV output: " + path);
    }
    out << csv_text(result, include_timing);
    if (!out) {
        throw std::runtime_error("write failed: " + path);
    }
}

void write_iq(const std::string& path, const Cvec& samples, double sample_rate_hz, int scs_khz) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open IQ output: " + path);
    }
    for (const auto& v : samples) {
        const float iq[2] = {static_cast<float>(v.real()), static_cast<float>(v.imag())};
        out.write(reinterpret_cast<const char*>(iq), sizeof(iq));
    }
    if (!out) {
        throw std::runtime_error("write failed: " + path);
    }
    std::ofstream meta(path + ".meta");
    if (!meta) {
        throw std::runtime_error("cannot open IQ sidecar: " + path + ".meta");
    }
    meta << "sample_rate_hz = " << static_cast<long long>(sample_rate_hz) << "\n";
    meta << "scs_khz = " << scs_khz << "\n";
}

IqCapture read_iq(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open IQ input: " + path);
    }
    IqCapture cap;
    float iq[2];
    while (in.read(reinterpret_cast<char*>(iq), sizeof(iq))) {
        cap.samples.emplace_back(iq[0], iq[1]);
    }
    std::ifstream meta(path + ".meta");
    if (meta) {
        std::stringstream buf;
        buf << meta.rdbuf();
        const ConfigMap m = parse_config_text(buf.str());
        cap.sample_rate_hz = cfg_num(m, "sample_rate_hz", 0.0);
        cap.scs_khz = static_cast<int>(cfg_int(m, "scs_khz", 0));
    }
    return cap;
}

}  // namespace nrsim
