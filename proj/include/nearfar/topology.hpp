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

#ifndef NEARFAR_TOPOLOGY_HPP
#define NEARFAR_TOPOLOGY_HPP

#include "config.hpp"
#include "random.hpp"

#include <cmath>
#include <vector>

namespace nearfar
{

struct Point
{
    double x = 0.0;
    double y = 0.0;
};

inline double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Position at radius r and angle theta from broadside (+y), measured toward +x.
inline Point polar_point(double radius, double theta) { return {radius * std::sin(theta), radius * std::cos(theta)}; }

/// Array geometry plus one user drop.
///
/// The array lies on the x-axis, centred at the origin. Element 0 sits at the
/// +x end and indices increase toward -x, so that for a user at angle theta
/// the path-length difference to element l is approximately l*d*sin(theta),
/// the same progression the steering vector uses.
struct Topology
{
    std::vector<Point> elements;
    Point array_center{0.0, 0.0};
    std::vector<Point> nf_positions;
    std::vector<Point> ff_positions;
    std::vector<double> ff_angles; // rad, from broadside

    int antenna_count() const { return static_cast<int>(elements.size()); }
    int nf_count() const { return static_cast<int>(nf_positions.size()); }
    int ff_count() const { return static_cast<int>(ff_positions.size()); }
};

inline std::vector<Point> build_array(const SystemConfig &config)
{
    config.validate();
    const double d = config.spacing();
    const int count = config.antennas;
    std::vector<Point> out(static_cast<std::size_t>(count));
    for (int l = 0; l < count; ++l)
        out[static_cast<std::size_t>(l)] = {(0.5 * (count - 1) - l) * d, 0.0};
    return out;
}

/// 2 D^2 / lambda for the configured aperture D = (L - 1) d.
inline double rayleigh_distance(const SystemConfig &config)
{
    const double aperture = (config.antennas - 1) * config.spacing();
    return 2.0 * aperture * aperture / config.wavelength();
}

/// Radii uniform in radius, angles uniform in (-pi/2, pi/2).
inline Topology drop_users(const SystemConfig &config, Rng &rng)
{
    Topology t;
    t.elements = build_array(config);
    t.nf_positions.reserve(static_cast<std::size_t>(config.nf_users));
    for (int k = 0; k < config.nf_users; ++k)
    {
        const double r = rng.uniform(config.nf_ring.inner, config.nf_ring.outer);
        const double theta = rng.uniform(-0.5 * pi, 0.5 * pi);
        t.nf_positions.push_back(polar_point(r, theta));
    }
    t.ff_positions.reserve(static_cast<std::size_t>(config.ff_users));
    t.ff_angles.reserve(static_cast<std::size_t>(config.ff_users));
    for (int n = 0; n < config.ff_users; ++n)
    {
        const double r = rng.uniform(config.ff_ring.inner, config.ff_ring.outer);
        const double theta = rng.uniform(-0.5 * pi, 0.5 * pi);
        t.ff_positions.push_back(polar_point(r, theta));
        t.ff_angles.push_back(theta);
    }
    return t;
}

} // namespace nearfar

#endif
