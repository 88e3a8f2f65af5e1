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

#ifndef NEARFAR_CLUSTERING_HPP
#define NEARFAR_CLUSTERING_HPP

#include "beamforming.hpp"
#include "config.hpp"
#include "power.hpp"
#include "random.hpp"
#include "rates.hpp"
#include "structure.hpp"

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace nearfar
{

/// Strict-improvement threshold for merge and split, bits/channel use.
inline constexpr double improvement_epsilon = 1e-9;

/// Sum-rate objective over a fixed set of beam gains.
class Objective
{
public:
    Objective(GainTable gains, LinkBudget budget, PowerRule rule, Strategy strategy)
        : gains_(std::move(gains)), budget_(budget), rule_(rule), strategy_(strategy) {}

    const GainTable &gains() const { return gains_; }
    const LinkBudget &budget() const { return budget_; }
    const PowerRule &rule() const { return rule_; }
    Strategy strategy() const { return strategy_; }
    int beams() const { return gains_.beams(); }
    int ff_users() const { return gains_.ff_users(); }

    Objective with_strategy(Strategy s) const { return Objective(gains_, budget_, rule_, s); }

    RateReport rates(const ClusterStructure &s) const { return evaluate_rates(s, gains_, budget_, rule_, strategy_); }

    /// Sum of final FF rates over every membership.
    double utility(const ClusterStructure &s) const
    {
        const RateReport r = rates(s);
        double total = 0.0;
        for (int k = 0; k < s.beams(); ++k)
            for (int n : s.cluster(k))
                total += r.ff[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)];
        return total;
    }

    bool qos_ok(int k, int cluster_size) const { return nf_qos_ok(k, cluster_size, gains_, budget_, rule_); }

    bool all_qos_ok(const ClusterStructure &s) const { return all_beams_qos_ok(s, gains_, budget_, rule_); }

    /// Mean NF rate; depends on the structure only through cluster sizes.
    double avg_nf_rate(const ClusterStructure &s) const
    {
        double total = 0.0;
        for (int k = 0; k < s.beams(); ++k)
        {
            const double gain = gains_.nf[static_cast<std::size_t>(k)];
            const auto p = nf_power(static_cast<int>(s.cluster(k).size()), gain, budget_, rule_);
            total += p ? nf_rate_value(*p, gain, budget_.noise) : 0.0;
        }
        return s.beams() > 0 ? total / s.beams() : 0.0;
    }

private:
    GainTable gains_;
    LinkBudget budget_;
    PowerRule rule_;
    Strategy strategy_;
};

/// Per-(beam, user) sort keys defining the within-cluster order: ascending
/// key, ties by ascending user id.
struct OrderKeys
{
    std::vector<std::vector<double>> key; // K x N

    double operator()(int k, int n) const { return key[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)]; }

    /// a2_{k,n} = (P_t sum_{i != k} g_{i,n} + sigma^2) / g_{k,n}
    static OrderKeys designed(const GainTable &gains, const LinkBudget &budget)
    {
        OrderKeys keys;
        const int beams = gains.beams();
        const int users = gains.ff_users();
        keys.key.assign(static_cast<std::size_t>(beams), std::vector<double>(static_cast<std::size_t>(users)));
        for (int k = 0; k < beams; ++k)
            for (int n = 0; n < users; ++n)
            {
                double other = 0.0;
                for (int i = 0; i < beams; ++i)
                    if (i != k)
                        other += gains.ff[static_cast<std::size_t>(i)][static_cast<std::size_t>(n)];
                keys.key[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)] =
                    (budget.pt * other + budget.noise) /
                    gains.ff[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)];
            }
        return keys;
    }

    /// A fixed random permutation per beam, drawn once; a user joining a
    /// cluster lands at its pre-drawn rank so the order stays consistent.
    static OrderKeys random(int beams, int users, Rng &rng)
    {
        OrderKeys keys;
        keys.key.assign(static_cast<std::size_t>(beams), std::vector<double>(static_cast<std::size_t>(users)));
        for (auto &row : keys.key)
            for (auto &v : row)
                v = rng.uniform();
        return keys;
    }

    static OrderKeys make(OrderMode mode, const GainTable &gains, const LinkBudget &budget, Rng &rng)
    {
        return mode == OrderMode::designed ? designed(gains, budget) : random(gains.beams(), gains.ff_users(), rng);
    }
};

/// Sorts `members` of beam k by ascending key, ties by user id.
inline std::vector<int> order_cluster(int k, std::vector<int> members, const OrderKeys &keys)
{
    std::sort(members.begin(), members.end(), [&](int a, int b) {
        const double ka = keys(k, a);
        const double kb = keys(k, b);
        if (ka != kb)
            return ka < kb;
        return a < b;
    });
    return members;
}

/// Designed decoding order of one cluster: ascending a2, ties by user id.
inline std::vector<int> design_decoding_order(int k, std::vector<int> members, const GainTable &gains,
                                              const LinkBudget &budget)
{
    return order_cluster(k, std::move(members), OrderKeys::designed(gains, budget));
}

inline void apply_order(ClusterStructure &s, const OrderKeys &keys)
{
    for (int k = 0; k < s.beams(); ++k)
        s.set_cluster(k, order_cluster(k, s.cluster(k), keys));
}

// ------------------------------------------------------------------ moves

enum class Action
{
    none,
    merge,
    split,
    transfer,
};

inline std::string to_string(Action a)
{
    switch (a)
    {
    case Action::none:
        return "none";
    case Action::merge:
        return "merge";
    case Action::split:
        return "split";
    case Action::transfer:
        return "transfer";
    }
    return "?";
}

enum class Verdict
{
    accepted,
    rejected_utility, ///< no strict improvement
    rejected_qos,     ///< NF user refuses the application
    forbidden,        ///< would leave the user without a beam
};

struct MoveResult
{
    Verdict verdict = Verdict::rejected_utility;
    ClusterStructure structure; ///< candidate structure (even when rejected)
    double utility = 0.0;       ///< candidate utility, if it was evaluated

    bool accepted() const { return verdict == Verdict::accepted; }
};

/// FF user n applies to join beam k (n not yet a member). Accepted iff the
/// NF user keeps its target and the utility rises by more than epsilon.
inline MoveResult try_merge(const ClusterStructure &s, int n, int k, const Objective &obj, const OrderKeys &keys,
                            double current_utility, double epsilon = improvement_epsilon)
{
    if (s.contains(k, n))
        throw std::logic_error("try_merge: user already in cluster.");
    MoveResult r;
    r.structure = s;
    r.structure.add(k, n);
    r.structure.set_cluster(k, order_cluster(k, r.structure.cluster(k), keys));
    if (!obj.qos_ok(k, static_cast<int>(r.structure.cluster(k).size())))
    {
        r.verdict = Verdict::rejected_qos;
        return r;
    }
    r.utility = obj.utility(r.structure);
    r.verdict = r.utility > current_utility + epsilon ? Verdict::accepted : Verdict::rejected_utility;
    return r;
}

/// FF user n leaves beam k. Forbidden when k is its only beam; otherwise
/// accepted iff the utility rises by more than epsilon.
inline MoveResult try_split(const ClusterStructure &s, int n, int k, const Objective &obj, double current_utility,
                            double epsilon = improvement_epsilon)
{
    if (!s.contains(k, n))
        throw std::logic_error("try_split: user not in cluster.");
    MoveResult r;
    r.structure = s;
    if (s.membership_count(n) < 2)
    {
        r.verdict = Verdict::forbidden;
        return r;
    }
    r.structure.remove(k, n);
    r.utility = obj.utility(r.structure);
    r.verdict = r.utility > current_utility + epsilon ? Verdict::accepted : Verdict::rejected_utility;
    return r;
}

// --------------------------------------------------------------- the game

struct TraceRecord
{
    long iteration = 0; ///< 1-based visit counter
    int round = 0;
    int user = -1;
    int beam = -1;
    Action action = Action::none;
    bool accepted = false;
    double utility = 0.0;     ///< after the visit
    double avg_nf_rate = 0.0; ///< after the visit
};

struct GameTrace
{
    double initial_utility = 0.0;
    double initial_avg_nf_rate = 0.0;
    std::vector<TraceRecord> records;

    std::size_t accepted_actions() const
    {
        return static_cast<std::size_t>(
            std::count_if(records.begin(), records.end(), [](const TraceRecord &r) { return r.accepted; }));
    }
};

struct GameResult
{
    ClusterStructure structure;
    double utility = 0.0;
    int rounds = 0;
    GameTrace trace;
};

/// Random initial structure: every FF user on one uniformly drawn beam. Up to
/// 100 draws are tried until every NF user meets its target, then users are
/// dealt one by one to the currently smallest cluster.
inline ClusterStructure init_structure(const Objective &obj, const OrderKeys &keys, Rng &rng)
{
    const int beams = obj.beams();
    const int users = obj.ff_users();
    for (int attempt = 0; attempt < 100; ++attempt)
    {
        ClusterStructure s(beams, users);
        for (int n = 0; n < users; ++n)
            s.add(static_cast<int>(rng.index(static_cast<std::size_t>(beams))), n);
        if (obj.all_qos_ok(s))
        {
            apply_order(s, keys);
            return s;
        }
    }
    ClusterStructure s(beams, users);
    for (int n = 0; n < users; ++n)
    {
        int smallest = 0;
        for (int k = 1; k < beams; ++k)
            if (s.cluster(k).size() < s.cluster(smallest).size())
                smallest = k;
        s.add(smallest, n);
    }
    if (!obj.all_qos_ok(s))
        throw InfeasibleError("init_structure: the NF rate target cannot be met with every FF user served.");
    apply_order(s, keys);
    return s;
}

/// Merge-and-split loop. Users are visited 0..N-1, each scanning beams
/// 0..K-1; a visit tries the merge rule if the user is outside the cluster
/// and the split rule if inside. Rounds repeat until one passes with no
/// accepted action. A merge accepted on a visit is not followed by a split
/// of the same pair, since that split restores the previous structure.
inline GameResult play_game(ClusterStructure start, const Objective &obj, const OrderKeys &keys,
                            double epsilon = improvement_epsilon, int max_rounds = 10000)
{
    GameResult g;
    g.structure = std::move(start);
    apply_order(g.structure, keys);
    g.utility = obj.utility(g.structure);
    g.trace.initial_utility = g.utility;
    g.trace.initial_avg_nf_rate = obj.avg_nf_rate(g.structure);

    const int beams = obj.beams();
    const int users = obj.ff_users();
    if (users == 0)
        return g;

    long iteration = 0;
    bool changed = true;
    while (changed)
    {
        if (g.rounds >= max_rounds)
            throw std::runtime_error("play_game: no convergence within the round limit.");
        changed = false;
        ++g.rounds;
        for (int n = 0; n < users; ++n)
            for (int k = 0; k < beams; ++k)
            {
                TraceRecord rec;
                rec.iteration = ++iteration;
                rec.round = g.rounds;
                rec.user = n;
                rec.beam = k;
                MoveResult move;
                if (!g.structure.contains(k, n))
                {
                    rec.action = Action::merge;
                    move = try_merge(g.structure, n, k, obj, keys, g.utility, epsilon);
                }
                else
                {
                    rec.action = Action::split;
                    move = try_split(g.structure, n, k, obj, g.utility, epsilon);
                }
                if (move.accepted())
                {
                    g.structure = std::move(move.structure);
                    g.utility = move.utility;
                    changed = true;
                    rec.accepted = true;
                }
                rec.utility = g.utility;
                rec.avg_nf_rate = obj.avg_nf_rate(g.structure);
                g.trace.records.push_back(rec);
            }
    }
    return g;
}

inline GameResult run_game(const Objective &obj, const OrderKeys &keys, Rng &init_rng,
                           double epsilon = improvement_epsilon)
{
    return play_game(init_structure(obj, keys, init_rng), obj, keys, epsilon);
}

struct Violation
{
    int user;
    int beam;
    Action action;
    double gain; ///< utility improvement of the move
};

struct StabilityReport
{
    bool stable = true;
    std::vector<Violation> violations;
};

/// Evaluates every merge and split candidate; the structure is stable when none is accepted.
inline StabilityReport certify_stability(const ClusterStructure &s, const Objective &obj, const OrderKeys &keys,
                                         double epsilon = improvement_epsilon)
{
    StabilityReport rep;
    const double u = obj.utility(s);
    for (int n = 0; n < s.ff_users(); ++n)
        for (int k = 0; k < s.beams(); ++k)
        {
            const bool member = s.contains(k, n);
            const MoveResult m =
                member ? try_split(s, n, k, obj, u, epsilon) : try_merge(s, n, k, obj, keys, u, epsilon);
            if (m.accepted())
                rep.violations.push_back({n, k, member ? Action::split : Action::merge, m.utility - u});
        }
    rep.stable = rep.violations.empty();
    return rep;
}

} // namespace nearfar

#endif
