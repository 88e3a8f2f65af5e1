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

#ifndef NEARFAR_CHANNEL_HPP
#define NEARFAR_CHANNEL_HPP

#include "config.hpp"
#include "numerics.hpp"
#include "topology.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

namespace nearfar
{

/// Free-space amplitude c / (4 pi f_c r), r measured from the array centre.
inline double path_loss(Point position, Point array_center, double carrier_hz)
{
    const double r = distance(position, array_center);
    if (!(r > 0.0))
        throw std::domain_error("path_loss: user coincides with the array centre.");
    return speed_of_light / (4.0 * pi * carrier_hz * r);
}

/// Spherical-wave channel: entry l = alpha * exp(-j 2 pi / lambda |user - element_l|).
inline ComplexVector nf_channel(Point user, std::span<const Point> elements, Point array_center, double carrier_hz)
{
    const double alpha = path_loss(user, array_center, carrier_hz);
    const double wavenumber = 2.0 * pi * carrier_hz / speed_of_light;
    ComplexVector h(elements.size());
    for (std::size_t l = 0; l < elements.size(); ++l)
    {
        const double r = distance(user, elements[l]);
        if (!(r > 0.0))
            throw std::domain_error("nf_channel: user coincides with an array element.");
        h[l] = std::polar(alpha, -wavenumber * r);
    }
    return h;
}

/// Steering-vector channel referenced to element 0:
/// entry l = alpha * exp(-j k |user - element_0|) * exp(-j k d l sin(theta)).
inline ComplexVector ff_channel(double theta, Point user, std::span<const Point> elements, Point array_center,
                                double carrier_hz, double spacing)
{
    if (elements.empty())
        throw std::invalid_argument("ff_channel: empty array.");
    const double alpha = path_loss(user, array_center, carrier_hz);
    const double wavenumber = 2.0 * pi * carrier_hz / speed_of_light;
    const double reference = wavenumber * distance(user, elements.front());
    const double step = wavenumber * spacing * std::sin(theta);
    ComplexVector g(elements.size());
    for (std::size_t l = 0; l < elements.size(); ++l)
        g[l] = std::polar(alpha, -reference - step * static_cast<double>(l));
    return g;
}

/// NF channels as columns of H, FF channels as separate vectors.
struct ChannelSet
{
    ComplexMatrix nf;        // L x K
    std::vector<ComplexVector> ff;
    std::vector<double> alpha_nf;
    std::vector<double> alpha_ff;
    double wavelength = 0.0;
};

inline ChannelSet build_channels(const Topology &topology, const SystemConfig &config)
{
    ChannelSet cs;
    cs.wavelength = config.wavelength();
    std::vector<ComplexVector> columns;
    columns.reserve(topology.nf_positions.size());
    for (const auto &p : topology.nf_positions)
    {
        columns.push_back(nf_channel(p, topology.elements, topology.array_center, config.carrier_hz));
        cs.alpha_nf.push_back(path_loss(p, topology.array_center, config.carrier_hz));
    }
    cs.nf = ComplexMatrix::from_columns(columns);
    for (std::size_t n = 0; n < topology.ff_positions.size(); ++n)
    {
        const auto &p = topology.ff_positions[n];
        cs.ff.push_back(ff_channel(topology.ff_angles[n], p, topology.elements, topology.array_center,
                                   config.carrier_hz, config.spacing()));
        cs.alpha_ff.push_back(path_loss(p, topology.array_center, config.carrier_hz));
    }
    return cs;
}

/// CSV dump for cross-checking: kind,user,element,re,im
inline void write_channels_csv(std::ostream &out, const ChannelSet &cs)
{
    char buf[128];
    out << "kind,user,element,re,im\n";
    for (std::size_t k = 0; k < cs.nf.cols(); ++k)
        for (std::size_t l = 0; l < cs.nf.rows(); ++l)
        {
            std::snprintf(buf, sizeof buf, "nf,%zu,%zu,%.17g,%.17g\n", k, l, cs.nf(l, k).real(), cs.nf(l, k).imag());
            out << buf;
        }
    for (std::size_t n = 0; n < cs.ff.size(); ++n)
        for (std::size_t l = 0; l < cs.ff[n].size(); ++l)
        {
            std::snprintf(buf, sizeof buf, "ff,%zu,%zu,%.17g,%.17g\n", n, l, cs.ff[n][l].real(), cs.ff[n][l].imag());
            out << buf;
        }
}

} // namespace nearfar

#endif
