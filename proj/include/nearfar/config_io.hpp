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

// JSON configuration files. Keys mirror SystemConfig:
//
//   { "L": 64, "fc": 28e9, "noise_dbm": -80, "Pt_dbm": 30, "Rmin": 0.2,
//     "K": 5, "N": 20, "nf_ring": [5, 21.2625], "ff_ring": [86.4054, 96.4054],
//     "element_spacing": 0, "zf_efficiency_floor": 1e-3, "seed": 1, "power_policy": "equal",
//     "strategy": 2, "algorithm": "game", "order_mode": "designed",
//     "random_uc_mode": "overlap", "random_uc_probability": 0.5,
//     "annealing": { "initial_temperature": 0, "cooling_factor": 0.95,
//                    "steps": 200, "moves_per_step": 10 } }
//
// Every key is optional; unknown keys are rejected.

#ifndef NEARFAR_CONFIG_IO_HPP
#define NEARFAR_CONFIG_IO_HPP

#include "config.hpp"

#include <json.hpp>

#include <fstream>
#include <stdexcept>
#include <string>

namespace nearfar
{

inline Ring ring_from_json(const nlohmann::json &j, const char *name)
{
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument(std::string(name) + " must be a two-element array [inner, outer].");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline void apply_json(SystemConfig &c, const nlohmann::json &j)
{
    if (!j.is_object())
        throw std::invalid_argument("Configuration must be a JSON object.");
    for (const auto &[key, v] : j.items())
    {
        if (key == "L")
            c.antennas = v.get<int>();
        else if (key == "fc")
            c.carrier_hz = v.get<double>();
        else if (key == "noise_dbm")
            c.noise_dbm = v.get<double>();
        else if (key == "Pt_dbm")
            c.pt_dbm = v.get<double>();
        else if (key == "Rmin")
            c.rate_min = v.get<double>();
        else if (key == "K")
            c.nf_users = v.get<int>();
        else if (key == "N")
            c.ff_users = v.get<int>();
        else if (key == "nf_ring")
            c.nf_ring = ring_from_json(v, "nf_ring");
        else if (key == "ff_ring")
            c.ff_ring = ring_from_json(v, "ff_ring");
        else if (key == "element_spacing")
            c.element_spacing = v.get<double>();
        else if (key == "zf_efficiency_floor")
            c.zf_efficiency_floor = v.get<double>();
        else if (key == "seed")
            c.seed = v.get<std::uint64_t>();
        else if (key == "power_policy")
            c.power_policy = parse_power_policy(v.get<std::string>());
        else if (key == "strategy")
            c.strategy = parse_strategy(v.is_number() ? std::to_string(v.get<int>()) : v.get<std::string>());
        else if (key == "algorithm")
            c.algorithm = parse_algorithm(v.get<std::string>());
        else if (key == "order_mode")
            c.order_mode = parse_order_mode(v.get<std::string>());
        else if (key == "random_uc_mode")
            c.random_uc_mode = parse_random_uc_mode(v.get<std::string>());
        else if (key == "random_uc_probability")
            c.random_uc_probability = v.get<double>();
        else if (key == "annealing")
        {
            for (const auto &[ak, av] : v.items())
            {
                if (ak == "initial_temperature")
                    c.annealing.initial_temperature = av.get<double>();
                else if (ak == "cooling_factor")
                    c.annealing.cooling_factor = av.get<double>();
                else if (ak == "steps")
                    c.annealing.steps = av.get<int>();
                else if (ak == "moves_per_step")
                    c.annealing.moves_per_step = av.get<int>();
                else
                    throw std::invalid_argument("Unknown annealing key '" + ak + "'.");
            }
        }
        else
            throw std::invalid_argument("Unknown configuration key '" + key + "'.");
    }
}

inline SystemConfig load_config(const std::string &path, SystemConfig base = {})
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("Cannot open configuration file '" + path + "'.");
    nlohmann::json j;
    try
    {
        in >> j;
    }
    catch (const nlohmann::json::exception &e)
    {
        throw std::invalid_argument("Malformed configuration file '" + path + "': " + e.what());
    }
    apply_json(base, j);
    return base;
}

inline nlohmann::json to_json(const SystemConfig &c)
{
    return {
        {"L", c.antennas},
        {"fc", c.carrier_hz},
        {"noise_dbm", c.noise_dbm},
        {"Pt_dbm", c.pt_dbm},
        {"Rmin", c.rate_min},
        {"K", c.nf_users},
        {"N", c.ff_users},
        {"nf_ring", {c.nf_ring.inner, c.nf_ring.outer}},
        {"ff_ring", {c.ff_ring.inner, c.ff_ring.outer}},
        {"element_spacing", c.element_spacing},
        {"zf_efficiency_floor", c.zf_efficiency_floor},
        {"seed", c.seed},
        {"power_policy", to_string(c.power_policy)},
        {"strategy", static_cast<int>(c.strategy)},
        {"algorithm", to_string(c.algorithm)},
        {"order_mode", to_string(c.order_mode)},
        {"random_uc_mode", to_string(c.random_uc_mode)},
        {"random_uc_probability", c.random_uc_probability},
        {"annealing",
         {{"initial_temperature", c.annealing.initial_temperature},
          {"cooling_factor", c.annealing.cooling_factor},
          {"steps", c.annealing.steps},
          {"moves_per_step", c.annealing.moves_per_step}}},
    };
}

} // namespace nearfar

#endif
