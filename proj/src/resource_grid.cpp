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

#include "nrsim/resource_grid.hpp"

#include <algorithm>

namespace nrsim {

ResourceGrid::ResourceGrid(int num_ports, int num_subcarriers, int num_symbols)
    : num_ports_(num_ports), num_subcarriers_(num_subcarriers), num_symbols_(num_symbols) {
    if (num_ports <= 0 || num_subcarriers <= 0 || num_symbols <= 0) {
        throw std::domain_error("ResourceGrid: dimensions must be positive");
    }
    if (num_subcarriers % kSubcarriersPerRb != 0) {
        throw std::domain_error("ResourceGrid: subcarrier count must be a multiple of 12");
    }
    if (num_subcarriers > kMaxCarrierSubcarriers) {
        throw std::domain_error("ResourceGrid: subcarrier count exceeds the 3300 carrier limit");
    }
    values_.assign(static_cast<size_t>(num_ports),
                   Cvec(static_cast<size_t>(num_subcarriers) * num_symbols, Complex(0, 0)));
    occupancy_.assign(static_cast<size_t>(num_subcarriers) * num_symbols, 0);
}

size_t ResourceGrid::index(ReCoord c) const {
    if (c.subcarrier < 0 || c.subcarrier >= num_subcarriers_ || c.symbol < 0 ||
        c.symbol >= num_symbols_) {
        throw std::domain_error("ResourceGrid: RE coordinate out of range (subcarrier " +
                                std::to_string(c.subcarrier) + ", symbol " +
                                std::to_string(c.symbol) + ")");
    }
    return static_cast<size_t>(c.subcarrier) + static_cast<size_t>(c.symbol) * num_subcarriers_;
}

void ResourceGrid::check_port(int port) const {
    if (port < 0 || port >= num_ports_) {
        throw std::domain_error("ResourceGrid: port out of range");
    }
}

uint16_t ResourceGrid::intern(const std::string& tag) {
    for (size_t i = 0; i < tag_names_.size(); ++i) {
        if (tag_names_[i] == tag) {
            return static_cast<uint16_t>(i + 1);
        }
    }
    tag_names_.push_back(tag);
    return static_cast<uint16_t>(tag_names_.size());
}

void ResourceGrid::set(int port, ReCoord c, Complex value, const std::string& channel_tag) {
    check_port(port);
    const size_t i = index(c);
    const uint16_t id = intern(channel_tag);
    if (occupancy_[i] != 0 && occupancy_[i] != id) {
        throw CollisionError(tag_names_[occupancy_[i] - 1], channel_tag, c);
    }
    occupancy_[i] = id;
    values_[static_cast<size_t>(port)][i] = value;
}

void ResourceGrid::map_res(int port, const std::vector<ReValue>& res,
                           const std::string& channel_tag) {
    check_port(port);
    // validate coordinates and occupancy before mutating anything
    const uint16_t id = intern(channel_tag);
    for (const auto& rv : res) {
        const size_t i = index(rv.coord);
        if (occupancy_[i] != 0 && occupancy_[i] != id) {
            throw CollisionError(tag_names_[occupancy_[i] - 1], channel_tag, rv.coord);
        }
    }
    for (const auto& rv : res) {
        set(port, rv.coord, rv.value, channel_tag);
    }
}

Complex ResourceGrid::at(int port, ReCoord c) const {
    check_port(port);
    return values_[static_cast<size_t>(port)][index(c)];
}

Complex ResourceGrid::at(int port, int subcarrier, int symbol) const {
    return at(port, ReCoord{subcarrier, symbol});
}

const std::string& ResourceGrid::occupant(ReCoord c) const {
    static const std::string empty;
    const uint16_t id = occupancy_[index(c)];
    return id == 0 ? empty : tag_names_[id - 1];
}

size_t ResourceGrid::occupied_count() const {
    return static_cast<size_t>(
        std::count_if(occupancy_.begin(), occupancy_.end(), [](uint16_t v) { return v != 0; }));
}

const Cvec& ResourceGrid::port_values(int port) const {
    check_port(port);
    return values_[static_cast<size_t>(port)];
}

bool ReservedPattern::covers(ReCoord c) const {
    if (granularity == ReservedGranularity::RB_SYMBOL) {
        const int rb = c.subcarrier / kSubcarriersPerRb;
        for (const auto& [mrb, msym] : rb_symbol_mask) {
            if (mrb == rb && msym == c.symbol) {
                return true;
            }
        }
        return false;
    }
    for (const auto& m : re_mask) {
        if (m == c) {
            return true;
        }
    }
    return false;
}

std::vector<ReCoord> apply_reserved(const std::vector<ReCoord>& alloc,
                                    const ReservedPattern& pattern) {
    std::vector<ReCoord> out;
    out.reserve(alloc.size());
    for (const auto& c : alloc) {
        if (!pattern.covers(c)) {
            out.push_back(c);
        }
    }
    return out;
}

}  // namespace nrsim
