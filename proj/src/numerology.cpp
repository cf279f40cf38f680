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

#include "nrsim/numerology.hpp"

#include <stdexcept>

namespace nrsim {

Numerology numerology_params(int mu) {
    if (mu < 0 || mu > 4) {
        throw std::domain_error("numerology_params: mu must be in 0..4");
    }
    Numerology n;
    n.mu = mu;
    n.scs_khz = 15 << mu;
    n.slots_per_subframe = 1 << mu;
    n.symbols_per_slot = kSymbolsPerSlot;
    n.cp_us = 4.7 / static_cast<double>(1 << mu);
    return n;
}

FrequencyRange frequency_range(FreqRangeId id) {
    FrequencyRange fr;
    fr.id = id;
    if (id == FreqRangeId::FR1) {
        fr.low_mhz = 450.0;
        fr.high_mhz = 6000.0;
        fr.max_carrier_bw_mhz = 100.0;
    } else {
        fr.low_mhz = 24250.0;
        fr.high_mhz = 52600.0;
        fr.max_carrier_bw_mhz = 400.0;
    }
    return fr;
}

std::vector<std::string> validate_carrier(int num_rb, const Numerology& numerology,
                                          const FrequencyRange& fr) {
    if (num_rb <= 0) {
        throw std::domain_error("validate_carrier: num_rb must be positive");
    }
    std::vector<std::string> violations;
    const int subcarriers = num_rb * kSubcarriersPerRb;
    if (subcarriers > kMaxCarrierSubcarriers) {
        violations.push_back("active subcarriers " + std::to_string(subcarriers) +
                             " exceed carrier limit " + std::to_string(kMaxCarrierSubcarriers));
    }
    const double bw_mhz = static_cast<double>(subcarriers) * numerology.scs_khz / 1000.0;
    if (bw_mhz > fr.max_carrier_bw_mhz) {
        violations.push_back("occupied bandwidth " + std::to_string(bw_mhz) +
                             " MHz exceeds frequency-range cap " +
                             std::to_string(fr.max_carrier_bw_mhz) + " MHz");
    }
    return violations;
}

bool classify_symbol(const SlotFormat& format, int symbol_idx, LinkDir dir) {
    if (symbol_idx < 0 || symbol_idx >= kSymbolsPerSlot) {
        throw std::domain_error("classify_symbol: symbol index out of range");
    }
    const SymbolDir s = format.directions[static_cast<size_t>(symbol_idx)];
    if (s == SymbolDir::FLEXIBLE) {
        return true;
    }
    return (dir == LinkDir::DL) ? (s == SymbolDir::DL) : (s == SymbolDir::UL);
}

void CarrierBwpConfig::configure(const BandwidthPart& bwp) {
    if (bwp.id < 0 || bwp.id > 3) {
        throw std::domain_error("bandwidth part id must be 0..3");
    }
    if (bwp.num_rb <= 0 || bwp.start_rb < 0 || bwp.start_rb + bwp.num_rb > carrier_num_rb_) {
        throw std::domain_error("bandwidth part does not fit the carrier");
    }
    for (auto& p : parts_) {
        if (p.id == bwp.id && p.direction == bwp.direction) {
            p = bwp;  // reconfiguration of an existing part
            return;
        }
    }
    if (configured_count(bwp.direction) >= 4) {
        throw std::domain_error("at most 4 bandwidth parts per direction");
    }
    parts_.push_back(bwp);
}

void CarrierBwpConfig::activate(int id, LinkDir dir) {
    for (size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i].id == id && parts_[i].direction == dir) {
            (dir == LinkDir::DL ? active_dl_ : active_ul_) = static_cast<int>(i);
            return;
        }
    }
    throw std::domain_error("cannot activate unconfigured bandwidth part");
}

const BandwidthPart* CarrierBwpConfig::active(LinkDir dir) const {
    const int idx = (dir == LinkDir::DL) ? active_dl_ : active_ul_;
    return idx < 0 ? nullptr : &parts_[static_cast<size_t>(idx)];
}

int CarrierBwpConfig::configured_count(LinkDir dir) const {
    int n = 0;
    for (const auto& p : parts_) {
        n += (p.direction == dir) ? 1 : 0;
    }
    return n;
}

}  // namespace nrsim
