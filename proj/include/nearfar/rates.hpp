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

#ifndef NEARFAR_RATES_HPP
#define NEARFAR_RATES_HPP

#include "beamforming.hpp"
#include "config.hpp"
#include "power.hpp"
#include "structure.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace nearfar
{

/// Achievable rates of one structure under one strategy, bits/channel use.
struct RateReport
{
    Strategy strategy = Strategy::s2;
    std::vector<std::vector<double>> ff; // K x N, zero where n is not in cluster k
    std::vector<double> nf;              // K
};

/// Evaluates the rate expressions for a fixed structure and power split.
///
/// Positions are zero-based cluster positions: position 0 is decoded last and
/// removes everybody after it. Beams are indexed 0..K-1 and, for the cross-beam
/// strategies, decoded from K-1 down to 0.
class RateEvaluator
{
public:
    RateEvaluator(const GainTable &gains, const LinkBudget &budget, const ClusterStructure &structure,
                  const PowerAllocation &power)
        : gains_(gains), budget_(budget), s_(structure), power_(power)
    {
        const int beams = s_.beams();
        if (gains_.beams() != beams || static_cast<int>(power_.nf.size()) != beams)
            throw std::invalid_argument("RateEvaluator: beam count mismatch.");
        prefix_.resize(static_cast<std::size_t>(beams));
        beam_total_.resize(static_cast<std::size_t>(beams));
        for (int k = 0; k < beams; ++k)
        {
            const auto &members = s_.cluster(k);
            auto &pre = prefix_[static_cast<std::size_t>(k)];
            pre.assign(members.size() + 1, 0.0);
            for (std::size_t j = 0; j < members.size(); ++j)
                pre[j + 1] = pre[j] + p_ff(k, members[j]);
            beam_total_[static_cast<std::size_t>(k)] = p_nf(k) + pre.back();
        }
    }

    double p_nf(int k) const { return power_.nf[static_cast<std::size_t>(k)]; }
    double p_ff(int k, int n) const { return power_.ff[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)]; }
    double g(int k, int n) const { return gains_.ff[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)]; }
    double noise() const { return budget_.noise; }

    /// Sum of FF powers on beam k over the first `count` positions (clipped to the cluster size).
    double partial_ff_power(int k, std::size_t count) const
    {
        const auto &pre = prefix_[static_cast<std::size_t>(k)];
        return pre[std::min(count, pre.size() - 1)];
    }

    std::size_t position_of(int k, int n) const
    {
        const auto pos = s_.position(k, n);
        if (!pos)
            throw std::invalid_argument("RateEvaluator: user is not a member of the beam.");
        return *pos;
    }

    // ---------------------------------------------------------------- NF side

    double nf_rate(int k) const
    {
        return nf_rate_value(p_nf(k), gains_.nf[static_cast<std::size_t>(k)], noise());
    }

    /// Rate at which NF user k decodes the FF signal at `pos` of its cluster.
    double nf_decode_ff_rate(int k, std::size_t pos) const
    {
        const int n = s_.cluster(k).at(pos);
        const double a_k = noise() / gains_.nf[static_cast<std::size_t>(k)];
        return std::log2(1.0 + p_ff(k, n) / (a_k + p_nf(k) + partial_ff_power(k, pos)));
    }

    // ------------------------------------------------------------- Strategy 1

    /// All other users' signals treated as noise, own signals on higher beams
    /// already removed.
    double ff_rate_s1(int n, int k) const
    {
        double interference = 0.0;
        for (int b = 0; b < s_.beams(); ++b)
            interference += (beam_total_[static_cast<std::size_t>(b)] - p_ff(b, n)) * g(b, n);
        for (int b = 0; b < k; ++b)
            interference += p_ff(b, n) * g(b, n);
        return std::log2(1.0 + p_ff(k, n) * g(k, n) / (interference + noise()));
    }

    // ------------------------------------------------------------- Strategy 2

    /// P_t * sum_{i != k} g_{i,n}
    double inter_beam_interference(int k, int n) const
    {
        double acc = 0.0;
        for (int b = 0; b < s_.beams(); ++b)
            if (b != k)
                acc += g(b, n);
        return budget_.pt * acc;
    }

    /// (P_t sum_{i != k} g_{i,n} + sigma^2) / g_{k,n}; the ordering key of the designed decoding order.
    double a2(int k, int n) const { return (inter_beam_interference(k, n) + noise()) / g(k, n); }

    /// Interference-plus-noise seen by `decoder` when decoding position
    /// `target_pos` on beam k: full power on every other beam, the NF signal
    /// and the users ahead of `target_pos` on beam k.
    double s2_denominator(int decoder, std::size_t target_pos, int k) const
    {
        return inter_beam_interference(k, decoder) + (p_nf(k) + partial_ff_power(k, target_pos)) * g(k, decoder) +
               noise();
    }

    /// Rate at which user `decoder` decodes the signal at position `target_pos` of beam k.
    double ff_decode_rate_s2(int decoder, std::size_t target_pos, int k) const
    {
        const int target = s_.cluster(k).at(target_pos);
        return std::log2(1.0 + p_ff(k, target) * g(k, decoder) / s2_denominator(decoder, target_pos, k));
    }

    /// Closed form: the decoder with the largest a2 among positions <= pos(n)
    /// sets the rate. Written as max_m s2_denominator / g_{k,m}, which equals
    /// max_m a2(k, m) + p_k + partial sum and shares its shape with strategy 3.
    double ff_rate_s2(int n, int k) const
    {
        const std::size_t pos = position_of(k, n);
        const auto &members = s_.cluster(k);
        double worst = 0.0;
        for (std::size_t m = 0; m <= pos; ++m)
            worst = std::max(worst, s2_denominator(members[m], pos, k) / g(k, members[m]));
        return std::log2(1.0 + p_ff(k, n) / worst);
    }

    /// Explicit min over the own rate and every stronger user's decode rate.
    double ff_rate_s2_pairwise(int n, int k) const
    {
        const std::size_t pos = position_of(k, n);
        const auto &members = s_.cluster(k);
        double rate = ff_decode_rate_s2(n, pos, k);
        for (std::size_t m = 0; m < pos; ++m)
            rate = std::min(rate, ff_decode_rate_s2(members[m], pos, k));
        return rate;
    }

    // ------------------------------------------------------------- Strategy 3

    /// Interference-plus-noise seen by `decoder` when decoding position
    /// `target_pos` on beam k: lower beams are undecoded, beams >= k keep the
    /// NF signal and the users ahead of position `target_pos` on each beam.
    double s3_denominator(int decoder, std::size_t target_pos, int k) const
    {
        double acc = 0.0;
        for (int b = 0; b < k; ++b)
            acc += budget_.pt * g(b, decoder);
        for (int b = k; b < s_.beams(); ++b)
            acc += (p_nf(b) + partial_ff_power(b, target_pos)) * g(b, decoder);
        return acc + noise();
    }

    double ff_decode_rate_s3(int decoder, std::size_t target_pos, int k) const
    {
        const int target = s_.cluster(k).at(target_pos);
        return std::log2(1.0 + p_ff(k, target) * g(k, decoder) / s3_denominator(decoder, target_pos, k));
    }

    double a3(int k, int decoder, std::size_t target_pos) const
    {
        return s3_denominator(decoder, target_pos, k) / g(k, decoder);
    }

    double ff_rate_s3(int n, int k) const
    {
        const std::size_t pos = position_of(k, n);
        const auto &members = s_.cluster(k);
        double worst = 0.0;
        for (std::size_t m = 0; m <= pos; ++m)
            worst = std::max(worst, a3(k, members[m], pos));
        return std::log2(1.0 + p_ff(k, n) / worst);
    }

    double ff_rate_s3_pairwise(int n, int k) const
    {
        const std::size_t pos = position_of(k, n);
        const auto &members = s_.cluster(k);
        double rate = ff_decode_rate_s3(n, pos, k);
        for (std::size_t m = 0; m < pos; ++m)
            rate = std::min(rate, ff_decode_rate_s3(members[m], pos, k));
        return rate;
    }

    // ------------------------------------------------------------------ Final

    double ff_strategy_rate(int n, int k, Strategy strategy, bool pairwise = false) const
    {
        switch (strategy)
        {
        case Strategy::s1:
            return ff_rate_s1(n, k);
        case Strategy::s2:
            return pairwise ? ff_rate_s2_pairwise(n, k) : ff_rate_s2(n, k);
        case Strategy::s3:
            return pairwise ? ff_rate_s3_pairwise(n, k) : ff_rate_s3(n, k);
        }
        return 0.0;
    }

    /// Strategy rate capped by the NF user's ability to strip the signal first.
    double ff_rate_final(int n, int k, Strategy strategy, bool pairwise = false) const
    {
        return std::min(nf_decode_ff_rate(k, position_of(k, n)), ff_strategy_rate(n, k, strategy, pairwise));
    }

    RateReport report(Strategy strategy, bool pairwise = false) const
    {
        RateReport r;
        r.strategy = strategy;
        r.nf.resize(static_cast<std::size_t>(s_.beams()));
        r.ff.assign(static_cast<std::size_t>(s_.beams()),
                    std::vector<double>(static_cast<std::size_t>(s_.ff_users()), 0.0));
        for (int k = 0; k < s_.beams(); ++k)
        {
            r.nf[static_cast<std::size_t>(k)] = nf_rate(k);
            for (int n : s_.cluster(k))
                r.ff[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)] = ff_rate_final(n, k, strategy, pairwise);
        }
        return r;
    }

private:
    const GainTable &gains_;
    LinkBudget budget_;
    const ClusterStructure &s_;
    const PowerAllocation &power_;
    std::vector<std::vector<double>> prefix_;
    std::vector<double> beam_total_;
};

/// Allocates power for `s` and evaluates every rate under `strategy`.
inline RateReport evaluate_rates(const ClusterStructure &s, const GainTable &gains, const LinkBudget &budget,
                                 const PowerRule &rule, Strategy strategy)
{
    const PowerAllocation power = allocate(s, gains, budget, rule);
    return RateEvaluator(gains, budget, s, power).report(strategy);
}

} // namespace nearfar

#endif
