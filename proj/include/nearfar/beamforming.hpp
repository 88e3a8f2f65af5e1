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

#ifndef NEARFAR_BEAMFORMING_HPP
#define NEARFAR_BEAMFORMING_HPP

#include "channel.hpp"
#include "numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace nearfar
{

/// Beam-domain gains seen by every user, the only channel information the
/// rate expressions need.
struct GainTable
{
    std::vector<double> nf;              // |h_k^H p_k|^2, size K
    std::vector<std::vector<double>> ff; // ff[k][n] = |g_n^H p_k|^2, K x N

    int beams() const { return static_cast<int>(nf.size()); }
    int ff_users() const { return ff.empty() ? 0 : static_cast<int>(ff.front().size()); }
};

struct BeamSet
{
    std::vector<ComplexVector> beams; // unit-norm p_k
    GainTable gains;
};

/// Columns of H (H^H H)^{-1}, each rescaled to unit norm.
///
/// Refining X alone stalls at a leakage of about eps * cond(H)^2 since X is
/// large when NF users sit close together. Correcting P itself against
/// H^H P = I drives the leakage down to rounding in H^H P.
inline std::vector<ComplexVector> zf_beams(const ComplexMatrix &h)
{
    const ComplexMatrix eye = ComplexMatrix::identity(h.cols());
    ComplexMatrix p = product(h, solve_gram(h, eye));
    for (int step = 0; step < 2; ++step)
    {
        ComplexMatrix miss = adjoint_product(h, p);
        for (std::size_t i = 0; i < miss.rows(); ++i)
            for (std::size_t j = 0; j < miss.cols(); ++j)
                miss(i, j) = eye(i, j) - miss(i, j);
        const ComplexMatrix dp = product(h, solve_gram(h, miss));
        for (std::size_t i = 0; i < p.rows(); ++i)
            for (std::size_t j = 0; j < p.cols(); ++j)
                p(i, j) += dp(i, j);
    }
    std::vector<ComplexVector> beams;
    beams.reserve(p.cols());
    for (std::size_t k = 0; k < p.cols(); ++k)
    {
        ComplexVector col = p.column(k);
        const double norm = std::sqrt(squared_norm(col));
        if (!(norm > 0.0) || !std::isfinite(norm))
            throw SingularMatrixError("zf_beams: degenerate beam.");
        for (auto &v : col)
            v /= norm;
        beams.push_back(std::move(col));
    }
    return beams;
}

inline GainTable effective_gains(const std::vector<ComplexVector> &beams, const ChannelSet &channels)
{
    if (beams.size() != channels.nf.cols())
        throw std::invalid_argument("effective_gains: beam count differs from NF user count.");
    GainTable g;
    g.nf.resize(beams.size());
    g.ff.assign(beams.size(), std::vector<double>(channels.ff.size(), 0.0));
    for (std::size_t k = 0; k < beams.size(); ++k)
    {
        const ComplexVector hk = channels.nf.column(k);
        g.nf[k] = std::norm(hermitian_product(hk, beams[k]));
        for (std::size_t n = 0; n < channels.ff.size(); ++n)
            g.ff[k][n] = std::norm(hermitian_product(channels.ff[n], beams[k]));
    }
    return g;
}

inline BeamSet build_beams(const ChannelSet &channels)
{
    BeamSet b;
    b.beams = zf_beams(channels.nf);
    b.gains = effective_gains(b.beams, channels);
    return b;
}

/// min over k of |h_k^H p_k|^2 / ||h_k||^2: the fraction of array gain each
/// NF user keeps after nulling; near zero for almost-colinear NF channels.
inline double zf_efficiency(const ChannelSet &channels, const GainTable &gains)
{
    double worst = 1.0;
    for (std::size_t k = 0; k < gains.nf.size(); ++k)
        worst = std::min(worst, gains.nf[k] / squared_norm(channels.nf.column(k)));
    return worst;
}

/// max over j != k of |h_j^H p_k|^2 / |h_k^H p_k|^2.
inline double max_cross_gain_ratio(const ComplexMatrix &h, const std::vector<ComplexVector> &beams)
{
    double worst = 0.0;
    for (std::size_t k = 0; k < beams.size(); ++k)
    {
        const double own = std::norm(hermitian_product(h.column(k), beams[k]));
        for (std::size_t j = 0; j < beams.size(); ++j)
            if (j != k)
                worst = std::max(worst, std::norm(hermitian_product(h.column(j), beams[k])) / own);
    }
    return worst;
}

} // namespace nearfar

#endif
