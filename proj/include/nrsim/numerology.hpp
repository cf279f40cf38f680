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

#ifndef NRSIM_NUMEROLOGY_HPP
#define NRSIM_NUMEROLOGY_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace nrsim {

inline constexpr int kSymbolsPerSlot = 14;
inline constexpr int kSubframesPerFrame = 10;
inline constexpr int kSubcarriersPerRb = 12;
inline constexpr int kMaxCarrierSubcarriers = 3300;

/// Carrier timing parameters for numerology index mu (0..4).
struct Numerology {
    int mu = 0;
    int scs_khz = 15;
    int slots_per_subframe = 1;
    int symbols_per_slot = kSymbolsPerSlot;
    double cp_us = 4.7;  // nominal; sample-exact CP derived by the OFDM engine
};

/// scs = 15 * 2^mu kHz, 2^mu slots per subframe, nominal CP 4.7 us / 2^mu.
Numerology numerology_params(int mu);

enum class FreqRangeId { FR1, FR2 };

struct FrequencyRange {
    FreqRangeId id = FreqRangeId::FR1;
    double low_mhz = 450.0;
    double high_mhz = 6000.0;
    double max_carrier_bw_mhz = 100.0;
};

/// FR1: 450 MHz - 6 GHz, 100 MHz cap. FR2: 24.25 - 52.6 GHz, 400 MHz cap.
FrequencyRange frequency_range(FreqRangeId id);

/// Checks the 3300-active-subcarrier limit and the frequency-range
/// bandwidth cap (occupied bandwidth taken as 12 * num_rb * scs).
/// Returns human-readable violations; empty means the carrier is valid.
std::vector<std::string> validate_carrier(int num_rb, const Numerology& numerology,
                                          const FrequencyRange& fr);

enum class SymbolDir : uint8_t { DL, UL, FLEXIBLE };

/// Per-slot symbol direction pattern. Unconfigured means all flexible.
struct SlotFormat {
    std::array<SymbolDir, kSymbolsPerSlot> directions;

    SlotFormat() { directions.fill(SymbolDir::FLEXIBLE); }
};

enum class LinkDir : uint8_t { DL, UL };

/// DL transmissions may use DL or FLEXIBLE symbols; UL analogously.
bool classify_symbol(const SlotFormat& format, int symbol_idx, LinkDir dir);

struct BandwidthPart {
    int id = 0;  // 0..3
    int start_rb = 0;
    int num_rb = 0;
    Numerology numerology;
    LinkDir direction = LinkDir::DL;
};

/// Carrier-level bandwidth-part bookkeeping: up to 4 configured per
/// direction, at most one active per direction at any time.
class CarrierBwpConfig {
public:
    explicit CarrierBwpConfig(int carrier_num_rb) : carrier_num_rb_(carrier_num_rb) {}

    /// Throws std::domain_error when the id is out of range, the part does
    /// not fit the carrier, or 4 parts are already configured for the
    /// direction.
    void configure(const BandwidthPart& bwp);

    /// Activating a part deactivates the previously active one in the same
    /// direction.
    void activate(int id, LinkDir dir);

    /// Active part for the direction, or nullptr when none is active.
    const BandwidthPart* active(LinkDir dir) const;

    int configured_count(LinkDir dir) const;

private:
    int carrier_num_rb_;
    std::vector<BandwidthPart> parts_;
    int active_dl_ = -1;
    int active_ul_ = -1;
};

}  // namespace nrsim

#endif  // NRSIM_NUMEROLOGY_HPP
