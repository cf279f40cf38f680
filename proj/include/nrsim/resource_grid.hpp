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

#ifndef NRSIM_RESOURCE_GRID_HPP
#define NRSIM_RESOURCE_GRID_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nrsim/numerology.hpp"
#include "nrsim/util.hpp"

namespace nrsim {

/// One resource element coordinate: subcarrier in frequency, OFDM symbol
/// in time.
struct ReCoord {
    int subcarrier = 0;
    int symbol = 0;

    friend bool operator==(const ReCoord&, const ReCoord&) = default;
};

struct ReValue {
    ReCoord coord;
    Complex value;
};

/// Thrown when two different channel tags write the same RE.
class CollisionError : public std::runtime_error {
public:
    CollisionError(const std::string& existing, const std::string& incoming, ReCoord where)
        : std::runtime_error("RE collision at (subcarrier " + std::to_string(where.subcarrier) +
                             ", symbol " + std::to_string(where.symbol) + "): '" + existing +
                             "' vs '" + incoming + "'"),
          existing_tag(existing),
          incoming_tag(incoming),
          coord(where) {}

    std::string existing_tag;
    std::string incoming_tag;
    ReCoord coord;
};

/// Per-port complex grid of num_subcarriers x num_symbols REs with a
/// channel-tag occupancy layer shared across ports. Rewriting an RE with
/// the same tag overwrites silently; a different tag raises CollisionError.
class ResourceGrid {
public:
    ResourceGrid(int num_ports, int num_subcarriers, int num_symbols);

    int num_ports() const { return num_ports_; }
    int num_subcarriers() const { return num_subcarriers_; }
    int num_symbols() const { return num_symbols_; }
    int num_rb() const { return num_subcarriers_ / kSubcarriersPerRb; }

    void map_res(int port, const std::vector<ReValue>& res, const std::string& channel_tag);

    /// Single-RE write with the same occupancy rules as map_res.
    void set(int port, ReCoord c, Complex value, const std::string& channel_tag);

    Complex at(int port, ReCoord c) const;
    Complex at(int port, int subcarrier, int symbol) const;

    /// Tag of the channel occupying the RE; empty string when unoccupied.
    const std::string& occupant(ReCoord c) const;

    size_t occupied_count() const;

    /// All values for one port, symbol-major is NOT used: index is
    /// subcarrier + symbol * num_subcarriers.
    const Cvec& port_values(int port) const;

private:
    size_t index(ReCoord c) const;
    void check_port(int port) const;
    uint16_t intern(const std::string& tag);

    int num_ports_;
    int num_subcarriers_;
    int num_symbols_;
    std::vector<Cvec> values_;            // per port
    std::vector<uint16_t> occupancy_;     // 0 = free, else tag id + 1
    std::vector<std::string> tag_names_;  // id -> name
};

enum class ReservedGranularity { RB_SYMBOL, RE };

/// Resources withheld from shared-channel mapping, at RB x symbol or
/// single-RE granularity.
struct ReservedPattern {
    ReservedGranularity granularity = ReservedGranularity::RB_SYMBOL;
    std::vector<std::pair<int, int>> rb_symbol_mask;  // (rb, symbol)
    std::vector<ReCoord> re_mask;

    bool covers(ReCoord c) const;
};

/// Filters an allocation down to the REs not covered by the pattern.
/// RB_SYMBOL granularity removes all 12 REs of each masked (rb, symbol).
std::vector<ReCoord> apply_reserved(const std::vector<ReCoord>& alloc,
                                    const ReservedPattern& pattern);

}  // namespace nrsim

#endif  // NRSIM_RESOURCE_GRID_HPP
