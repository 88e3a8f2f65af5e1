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

#ifndef NEARFAR_POWER_HPP
#define NEARFAR_POWER_HPP

#include "beamforming.hpp"
#include "config.hpp"
#include "structure.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace nearfar
{

/// Tolerance on the NF target when checking QoS, absorbs the round-off of
/// inverting the rate formula under the nf-first policy.
inline constexpr double qos_tolerance = 1e-12;

/// Per-beam transmit powers. ff[k][n] > 0 exactly when n is in cluster k.
struct PowerAllocation
{
    std::vector<double> nf;              // K
    std::vector<std::vector<double>> ff; // K x N

    double beam_total(int k) const
    {
        double total = nf[static_cast<std::size_t>(k)];
        for (double p : ff[static_cast<std::size_t>(k)])
            total += p;
        return total;
    }
};

/// Everything the power rule needs besides the structure.
struct PowerRule
{
    PowerPolicy policy = PowerPolicy::equal_split;
    double rate_min = 0.2;

    static PowerRule from(const SystemConfig &c) { return {c.power_policy, c.rate_min}; }
};

/// log2(1 + p |h^H p|^2 / sigma^2)
inline double nf_rate_value(double power, double nf_gain, double noise)
{
    return std::log2(1.0 + power * nf_gain / noise);
}

/// Smallest NF power meeting the target exactly.
inline double nf_required_power(double rate_min, double nf_gain, double noise)
{
    return (std::exp2(rate_min) - 1.0) * noise / nf_gain;
}

/// NF power on a beam with `cluster_size` FF members, or nullopt when the
/// policy cannot fund both the NF target and the FF members.
inline std::optional<double> nf_power(int cluster_size, double nf_gain, const LinkBudget &budget,
                                      const PowerRule &rule)
{
    if (cluster_size == 0)
        return budget.pt;
    switch (rule.policy)
    {
    case PowerPolicy::equal_split:
        return budget.pt / static_cast<double>(1 + cluster_size);
    case PowerPolicy::nf_first: {
        const double required = nf_required_power(rule.rate_min, nf_gain, budget.noise);
        if (!(required < budget.pt))
            return std::nullopt;
        return required;
    }
    }
    return std::nullopt;
}

/// Splits the per-beam budget according to the policy. Throws
/// InfeasibleError if nf-first cannot fund a non-empty beam.
inline PowerAllocation allocate(const ClusterStructure &s, const GainTable &gains, const LinkBudget &budget,
                                const PowerRule &rule)
{
    PowerAllocation a;
    const auto beams = static_cast<std::size_t>(s.beams());
    a.nf.assign(beams, 0.0);
    a.ff.assign(beams, std::vector<double>(static_cast<std::size_t>(s.ff_users()), 0.0));
    for (int k = 0; k < s.beams(); ++k)
    {
        const auto &members = s.cluster(k);
        const int size = static_cast<int>(members.size());
        const auto p_nf = nf_power(size, gains.nf[static_cast<std::size_t>(k)], budget, rule);
        if (!p_nf)
            throw InfeasibleError("allocate: beam " + std::to_string(k) +
                                  " cannot meet the NF target and serve its FF users.");
        a.nf[static_cast<std::size_t>(k)] = *p_nf;
        if (size > 0)
        {
            const double share = (budget.pt - *p_nf) / static_cast<double>(size);
            for (int n : members)
                a.ff[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)] = share;
        }
    }
    return a;
}

/// Whether a beam carrying `cluster_size` FF users meets the NF target.
inline bool nf_qos_ok(int k, int cluster_size, const GainTable &gains, const LinkBudget &budget,
                      const PowerRule &rule)
{
    const double gain = gains.nf[static_cast<std::size_t>(k)];
    const auto p = nf_power(cluster_size, gain, budget, rule);
    if (!p)
        return false;
    return nf_rate_value(*p, gain, budget.noise) >= rule.rate_min - qos_tolerance;
}

/// Per-beam QoS verdict for a whole structure.
inline std::vector<bool> nf_qos_check(const ClusterStructure &s, const GainTable &gains, const LinkBudget &budget,
                                      const PowerRule &rule)
{
    std::vector<bool> ok(static_cast<std::size_t>(s.beams()));
    for (int k = 0; k < s.beams(); ++k)
        ok[static_cast<std::size_t>(k)] =
            nf_qos_ok(k, static_cast<int>(s.cluster(k).size()), gains, budget, rule);
    return ok;
}

inline bool all_beams_qos_ok(const ClusterStructure &s, const GainTable &gains, const LinkBudget &budget,
                             const PowerRule &rule)
{
    for (int k = 0; k < s.beams(); ++k)
        if (!nf_qos_ok(k, static_cast<int>(s.cluster(k).size()), gains, budget, rule))
            return false;
    return true;
}

} // namespace nearfar

#endif
