// SPDX-License-Identifier: Apache-2.0
//
// nearfar: NOMA user clustering for near-field / far-field coexistence
// Copyright (C) 2026 The nearfar authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef NEARFAR_CONFIG_HPP
#define NEARFAR_CONFIG_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nearfar
{

// The reference scenario quotes its Rayleigh distance (21.2625 m for 64
// elements at 28 GHz) with c rounded to 3e8 m/s; keep the same constant so
// geometry reproduces those ring bounds exactly.
inline constexpr double speed_of_light = 3.0e8;
inline constexpr double pi = 3.14159265358979323846;

inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watt_to_dbm(double watt) { return 10.0 * std::log10(watt) + 30.0; }

/// Raised when the NF rate target cannot be met by any admissible structure.
class InfeasibleError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

enum class Strategy
{
    s1 = 1, ///< treat all other signals as interference, beams decoded K..1
    s2 = 2, ///< intra-beam SIC along the cluster order
    s3 = 3, ///< intra-beam SIC combined with cross-beam removal
};

enum class PowerPolicy
{
    equal_split,
    nf_first,
};

enum class Algorithm
{
    game,
    random_uc,
    annealing,
    oracle,
};

enum class OrderMode
{
    designed,
    random,
};

enum class RandomUcMode
{
    single,
    overlap,
};

inline std::string to_string(Strategy s) { return std::to_string(static_cast<int>(s)); }

inline std::string to_string(PowerPolicy p) { return p == PowerPolicy::equal_split ? "equal" : "nf-first"; }

inline std::string to_string(Algorithm a)
{
    switch (a)
    {
    case Algorithm::game:
        return "game";
    case Algorithm::random_uc:
        return "random-uc";
    case Algorithm::annealing:
        return "sa";
    case Algorithm::oracle:
        return "oracle";
    }
    return "?";
}

inline std::string to_string(OrderMode o) { return o == OrderMode::designed ? "designed" : "random"; }

inline std::string to_string(RandomUcMode m) { return m == RandomUcMode::single ? "single" : "overlap"; }

inline Strategy parse_strategy(std::string_view s)
{
    if (s == "1" || s == "s1")
        return Strategy::s1;
    if (s == "2" || s == "s2")
        return Strategy::s2;
    if (s == "3" || s == "s3")
        return Strategy::s3;
    throw std::invalid_argument("Unknown strategy '" + std::string(s) + "', expected 1, 2 or 3.");
}

inline PowerPolicy parse_power_policy(std::string_view s)
{
    if (s == "equal")
        return PowerPolicy::equal_split;
    if (s == "nf-first")
        return PowerPolicy::nf_first;
    throw std::invalid_argument("Unknown power policy '" + std::string(s) + "'.");
}

inline Algorithm parse_algorithm(std::string_view s)
{
    if (s == "game")
        return Algorithm::game;
    if (s == "random-uc")
        return Algorithm::random_uc;
    if (s == "sa")
        return Algorithm::annealing;
    if (s == "oracle")
        return Algorithm::oracle;
    throw std::invalid_argument("Unknown algorithm '" + std::string(s) + "'.");
}

inline OrderMode parse_order_mode(std::string_view s)
{
    if (s == "designed")
        return OrderMode::designed;
    if (s == "random")
        return OrderMode::random;
    throw std::invalid_argument("Unknown order mode '" + std::string(s) + "'.");
}

inline RandomUcMode parse_random_uc_mode(std::string_view s)
{
    if (s == "single")
        return RandomUcMode::single;
    if (s == "overlap")
        return RandomUcMode::overlap;
    throw std::invalid_argument("Unknown random-uc mode '" + std::string(s) + "'.");
}

struct Ring
{
    double inner; // m
    double outer; // m
};

/// Simulated annealing schedule. A non-positive initial temperature means
/// "10% of the initial utility", resolved when the run starts.
struct AnnealingSchedule
{
    double initial_temperature = 0.0;
    double cooling_factor = 0.95;
    int steps = 200;
    int moves_per_step = 10;

    void validate() const
    {
        if (!(cooling_factor > 0.0 && cooling_factor < 1.0))
            throw std::invalid_argument("Annealing cooling factor must lie in (0, 1).");
        if (steps < 0 || moves_per_step < 0)
            throw std::invalid_argument("Annealing steps and moves must be non-negative.");
    }
};

struct SystemConfig
{
    int antennas = 64;         // L
    double carrier_hz = 28e9;  // f_c
    double noise_dbm = -80.0;  // sigma^2
    double pt_dbm = 30.0;      // per-beam budget
    double rate_min = 0.2;     // NF target, bits/channel use
    int nf_users = 5;          // K
    int ff_users = 20;         // N
    Ring nf_ring{5.0, 21.2625};
    Ring ff_ring{86.4054, 96.4054};
    double element_spacing = 0.0; // m; 0 selects half a wavelength
    double zf_efficiency_floor = 1e-3; // drops with a weaker ZF beam are redrawn; 0 disables
    std::uint64_t seed = 1;

    PowerPolicy power_policy = PowerPolicy::equal_split;
    Strategy strategy = Strategy::s2;
    Algorithm algorithm = Algorithm::game;
    OrderMode order_mode = OrderMode::designed;
    RandomUcMode random_uc_mode = RandomUcMode::overlap;
    double random_uc_probability = 0.5;
    AnnealingSchedule annealing;

    double wavelength() const { return speed_of_light / carrier_hz; }
    double spacing() const { return element_spacing > 0.0 ? element_spacing : 0.5 * wavelength(); }
    double noise_watt() const { return dbm_to_watt(noise_dbm); }
    double pt_watt() const { return dbm_to_watt(pt_dbm); }

    void validate() const
    {
        if (antennas < 1)
            throw std::invalid_argument("L must be at least 1.");
        if (nf_users < 1)
            throw std::invalid_argument("K must be at least 1.");
        if (ff_users < 0)
            throw std::invalid_argument("N must be non-negative.");
        if (nf_users > antennas)
            throw std::invalid_argument("K must not exceed L.");
        if (!(carrier_hz > 0.0) || !std::isfinite(carrier_hz))
            throw std::invalid_argument("Carrier frequency must be positive.");
        if (!std::isfinite(noise_dbm) || !std::isfinite(pt_dbm))
            throw std::invalid_argument("Power levels must be finite.");
        if (!(rate_min >= 0.0) || !std::isfinite(rate_min))
            throw std::invalid_argument("Rmin must be non-negative.");
        if (!(nf_ring.inner > 0.0 && nf_ring.inner < nf_ring.outer))
            throw std::invalid_argument("NF ring must satisfy 0 < inner < outer.");
        if (!(ff_ring.inner > 0.0 && ff_ring.inner < ff_ring.outer))
            throw std::invalid_argument("FF ring must satisfy 0 < inner < outer.");
        if (element_spacing < 0.0)
            throw std::invalid_argument("Element spacing must be positive (or 0 for half wavelength).");
        if (!(zf_efficiency_floor >= 0.0 && zf_efficiency_floor < 1.0))
            throw std::invalid_argument("ZF efficiency floor must lie in [0, 1).");
        if (!(random_uc_probability >= 0.0 && random_uc_probability <= 1.0))
            throw std::invalid_argument("Random UC probability must lie in [0, 1].");
        annealing.validate();
    }
};

/// Noise and budget in linear units, converted once per trial.
struct LinkBudget
{
    double pt;    // W per beam
    double noise; // W

    static LinkBudget from(const SystemConfig &config) { return {config.pt_watt(), config.noise_watt()}; }
};

} // namespace nearfar

#endif
