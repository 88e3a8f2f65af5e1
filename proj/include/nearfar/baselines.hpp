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

#ifndef NEARFAR_BASELINES_HPP
#define NEARFAR_BASELINES_HPP

#include "clustering.hpp"
#include "config.hpp"
#include "random.hpp"
#include "structure.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace nearfar
{

/// Random user clustering. Starts from a random single-beam assignment; in
/// overlap mode every user then also requests each other beam with the given
/// probability, subject to the NF user's acceptance.
inline ClusterStructure random_clustering(const Objective &obj, const OrderKeys &keys, Rng &rng,
                                          RandomUcMode mode = RandomUcMode::overlap, double probability = 0.5)
{
    ClusterStructure s = init_structure(obj, keys, rng);
    if (mode == RandomUcMode::overlap)
    {
        for (int n = 0; n < s.ff_users(); ++n)
            for (int k = 0; k < s.beams(); ++k)
            {
                if (s.contains(k, n))
                    continue;
                if (rng.bernoulli(probability) && obj.qos_ok(k, static_cast<int>(s.cluster(k).size()) + 1))
                    s.add(k, n);
            }
        apply_order(s, keys);
    }
    return s;
}

/// Uniformly random permutation of every cluster.
inline ClusterStructure random_order(ClusterStructure s, Rng &rng)
{
    for (int k = 0; k < s.beams(); ++k)
    {
        std::vector<int> members = s.cluster(k);
        rng.shuffle(members);
        s.set_cluster(k, std::move(members));
    }
    return s;
}

struct AnnealingRecord
{
    long iteration = 0;
    Action action = Action::none;
    bool accepted = false;
    double temperature = 0.0;
    double utility = 0.0;      ///< current structure after the move
    double best_utility = 0.0; ///< best seen so far
    double avg_nf_rate = 0.0;  ///< current structure
};

struct AnnealingResult
{
    ClusterStructure best;
    double best_utility = 0.0;
    double initial_utility = 0.0;
    double initial_avg_nf_rate = 0.0;
    double initial_temperature = 0.0;
    std::vector<AnnealingRecord> trace;
};

/// Simulated annealing over single-user merge, split and transfer moves.
/// Moves that add a user to a beam are QoS-gated; no move leaves a user
/// without a beam. A worsening move (delta < 0) is accepted with
/// probability exp(delta / T). Returns the best structure seen.
inline AnnealingResult simulated_annealing(ClusterStructure start, const Objective &obj, const OrderKeys &keys,
                                           const AnnealingSchedule &schedule, Rng &rng)
{
    schedule.validate();
    apply_order(start, keys);
    AnnealingResult res;
    ClusterStructure current = std::move(start);
    double u = obj.utility(current);
    res.best = current;
    res.best_utility = u;
    res.initial_utility = u;
    res.initial_avg_nf_rate = obj.avg_nf_rate(current);

    double temperature = schedule.initial_temperature > 0.0 ? schedule.initial_temperature : 0.1 * u;
    if (!(temperature > 0.0))
        temperature = 1e-9;
    res.initial_temperature = temperature;

    const int beams = obj.beams();
    const int users = obj.ff_users();
    if (users == 0)
        return res;

    long iteration = 0;
    for (int step = 0; step < schedule.steps; ++step)
    {
        for (int mv = 0; mv < schedule.moves_per_step; ++mv)
        {
            AnnealingRecord rec;
            rec.iteration = ++iteration;
            rec.temperature = temperature;

            const int n = static_cast<int>(rng.index(static_cast<std::size_t>(users)));
            const int k = static_cast<int>(rng.index(static_cast<std::size_t>(beams)));
            ClusterStructure cand = current;
            int grown_beam = -1;
            if (!current.contains(k, n))
            {
                if (rng.bernoulli(0.5))
                {
                    rec.action = Action::merge;
                    cand.add(k, n);
                }
                else
                {
                    std::vector<int> held;
                    for (int j = 0; j < beams; ++j)
                        if (current.contains(j, n))
                            held.push_back(j);
                    const int from = held[rng.index(held.size())];
                    rec.action = Action::transfer;
                    cand.remove(from, n);
                    cand.add(k, n);
                }
                grown_beam = k;
            }
            else if (current.membership_count(n) > 1)
            {
                rec.action = Action::split;
                cand.remove(k, n);
            }
            else if (beams > 1)
            {
                int to = static_cast<int>(rng.index(static_cast<std::size_t>(beams - 1)));
                if (to >= k)
                    ++to;
                rec.action = Action::transfer;
                cand.remove(k, n);
                cand.add(to, n);
                grown_beam = to;
            }

            bool accepted = false;
            if (rec.action != Action::none &&
                (grown_beam < 0 || obj.qos_ok(grown_beam, static_cast<int>(cand.cluster(grown_beam).size()))))
            {
                if (grown_beam >= 0)
                    cand.set_cluster(grown_beam, order_cluster(grown_beam, cand.cluster(grown_beam), keys));
                const double cand_u = obj.utility(cand);
                const double delta = cand_u - u;
                accepted = delta > 0.0 || rng.uniform() < std::exp(delta / temperature);
                if (accepted)
                {
                    current = std::move(cand);
                    u = cand_u;
                    if (u > res.best_utility)
                    {
                        res.best_utility = u;
                        res.best = current;
                    }
                }
            }
            rec.accepted = accepted;
            rec.utility = u;
            rec.best_utility = res.best_utility;
            rec.avg_nf_rate = obj.avg_nf_rate(current);
            res.trace.push_back(rec);
        }
        temperature *= schedule.cooling_factor;
    }
    return res;
}

struct OracleResult
{
    ClusterStructure best;
    double utility = -std::numeric_limits<double>::infinity();
    std::uint64_t candidates = 0; ///< assignments enumerated
    std::uint64_t feasible = 0;   ///< of which met every NF target
};

inline constexpr std::uint64_t oracle_limit = 100000;

/// Enumerates every overlapping assignment (each user on a non-empty beam
/// subset), keeps the feasible ones, orders clusters by `keys` and returns the
/// utility maximiser. Requires (2^K - 1)^N <= 1e5.
inline OracleResult exhaustive_oracle(const Objective &obj, const OrderKeys &keys)
{
    const int beams = obj.beams();
    const int users = obj.ff_users();
    if (beams >= 20)
        throw std::length_error("exhaustive_oracle: too many beams.");
    const std::uint64_t subsets = (std::uint64_t{1} << beams) - 1;
    std::uint64_t total = 1;
    for (int n = 0; n < users; ++n)
    {
        total *= subsets;
        if (total > oracle_limit)
            throw std::length_error("exhaustive_oracle: instance too large for enumeration.");
    }

    OracleResult res;
    std::vector<std::uint64_t> mask(static_cast<std::size_t>(users), 1);
    for (std::uint64_t c = 0; c < total; ++c)
    {
        ClusterStructure s(beams, users);
        for (int n = 0; n < users; ++n)
            for (int k = 0; k < beams; ++k)
                if (mask[static_cast<std::size_t>(n)] & (std::uint64_t{1} << k))
                    s.add(k, n);
        ++res.candidates;
        if (obj.all_qos_ok(s))
        {
            ++res.feasible;
            apply_order(s, keys);
            const double u = obj.utility(s);
            if (u > res.utility)
            {
                res.utility = u;
                res.best = std::move(s);
            }
        }
        for (int n = 0; n < users; ++n)
        {
            auto &m = mask[static_cast<std::size_t>(n)];
            if (++m <= subsets)
                break;
            m = 1;
        }
    }
    if (res.feasible == 0)
        throw InfeasibleError("exhaustive_oracle: no assignment meets every NF target.");
    return res;
}

} // namespace nearfar

#endif
