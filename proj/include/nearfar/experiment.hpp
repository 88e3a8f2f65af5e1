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

#ifndef NEARFAR_EXPERIMENT_HPP
#define NEARFAR_EXPERIMENT_HPP

#include "baselines.hpp"
#include "beamforming.hpp"
#include "channel.hpp"
#include "clustering.hpp"
#include "config.hpp"
#include "metrics.hpp"
#include "random.hpp"
#include "topology.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <mutex>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace nearfar
{

// ------------------------------------------------------------------ scene

/// One drop with its channels and zero-forcing beams.
struct Scene
{
    Topology topology;
    ChannelSet channels;
    BeamSet beams;
    int redraws = 0; ///< discarded drops: rank-deficient or below the ZF efficiency floor
};

/// Draws until the NF channels admit zero-forcing with every beam keeping at
/// least `zf_efficiency_floor` of its array gain. The test does not depend on
/// the power budget, so a trial seed maps to the same drop at every P_t.
inline Scene build_scene(const SystemConfig &config, std::uint64_t trial_seed, int max_redraws = 1000)
{
    config.validate();
    Rng rng(trial_seed, Stream::topology);
    Scene scene;
    for (int attempt = 0; attempt <= max_redraws; ++attempt)
    {
        scene.topology = drop_users(config, rng);
        scene.channels = build_channels(scene.topology, config);
        try
        {
            scene.beams = build_beams(scene.channels);
        }
        catch (const SingularMatrixError &)
        {
            ++scene.redraws;
            continue;
        }
        if (zf_efficiency(scene.channels, scene.beams.gains) >= config.zf_efficiency_floor)
            return scene;
        ++scene.redraws;
    }
    throw SingularMatrixError("build_scene: no admissible drop within the redraw limit.");
}

inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) { return derive_seed(master, {trial}); }

// ------------------------------------------------------------- config echo

inline std::string canonical_string(const SystemConfig &c)
{
    char buf[768];
    std::snprintf(buf, sizeof buf,
                  "L=%d;fc=%.17g;noise_dbm=%.17g;Pt_dbm=%.17g;Rmin=%.17g;K=%d;N=%d;nf_ring=%.17g,%.17g;"
                  "ff_ring=%.17g,%.17g;d=%.17g;zf_floor=%.17g;seed=%llu;power=%s;strategy=%s;algorithm=%s;order=%s;"
                  "uc_mode=%s;uc_p=%.17g;sa=%.17g,%.17g,%d,%d",
                  c.antennas, c.carrier_hz, c.noise_dbm, c.pt_dbm, c.rate_min, c.nf_users, c.ff_users,
                  c.nf_ring.inner, c.nf_ring.outer, c.ff_ring.inner, c.ff_ring.outer, c.spacing(), c.zf_efficiency_floor,
                  static_cast<unsigned long long>(c.seed), to_string(c.power_policy).c_str(),
                  to_string(c.strategy).c_str(), to_string(c.algorithm).c_str(), to_string(c.order_mode).c_str(),
                  to_string(c.random_uc_mode).c_str(), c.random_uc_probability, c.annealing.initial_temperature,
                  c.annealing.cooling_factor, c.annealing.steps, c.annealing.moves_per_step);
    return buf;
}

/// FNV-1a 64 of the canonical config string, as 16 hex digits.
inline std::string config_hash(const SystemConfig &c)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : canonical_string(c))
    {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// ------------------------------------------------------------------ trials

struct TrialSummary
{
    long run_id = 0;
    std::string config_hash;
    std::uint64_t seed = 0;
    double pt_dbm = 0.0;
    int nf_users = 0;
    int ff_users = 0;
    int antennas = 0;
    Strategy strategy = Strategy::s2;
    Algorithm algorithm = Algorithm::game;
    OrderMode order_mode = OrderMode::designed;
    PowerPolicy power_policy = PowerPolicy::equal_split;
    double sum_rate = 0.0;
    double jain = 0.0;
    bool jain_all_zero = false;
    double avg_nf_rate = 0.0;
    long iterations = 0;
    double wall_ms = 0.0;
    int redraws = 0;
};

struct TrialOutcome
{
    TrialSummary summary;
    ClusterStructure structure;
    RateReport rates;
    std::optional<GameTrace> game_trace;
    std::optional<AnnealingResult> annealing;
};

/// Runs config.algorithm under config.strategy on a prepared scene.
inline TrialOutcome run_on_scene(const Scene &scene, const SystemConfig &config, std::uint64_t seed)
{
    const auto start = std::chrono::steady_clock::now();
    const LinkBudget budget = LinkBudget::from(config);
    const Objective obj(scene.beams.gains, budget, PowerRule::from(config), config.strategy);
    Rng order_rng(seed, Stream::order);
    const OrderKeys keys = OrderKeys::make(config.order_mode, obj.gains(), budget, order_rng);

    TrialOutcome out;
    long iterations = 0;
    switch (config.algorithm)
    {
    case Algorithm::game: {
        Rng init_rng(seed, Stream::init);
        GameResult g = run_game(obj, keys, init_rng);
        out.structure = std::move(g.structure);
        iterations = static_cast<long>(g.trace.records.size());
        out.game_trace = std::move(g.trace);
        break;
    }
    case Algorithm::random_uc: {
        Rng uc_rng(seed, Stream::random_uc);
        out.structure = random_clustering(obj, keys, uc_rng, config.random_uc_mode, config.random_uc_probability);
        break;
    }
    case Algorithm::annealing: {
        Rng init_rng(seed, Stream::init);
        Rng sa_rng(seed, Stream::annealing);
        ClusterStructure start = init_structure(obj, keys, init_rng);
        AnnealingResult a = simulated_annealing(std::move(start), obj, keys, config.annealing, sa_rng);
        out.structure = a.best;
        iterations = static_cast<long>(a.trace.size());
        out.annealing = std::move(a);
        break;
    }
    case Algorithm::oracle: {
        OracleResult o = exhaustive_oracle(obj, keys);
        out.structure = std::move(o.best);
        iterations = static_cast<long>(o.candidates);
        break;
    }
    }

    out.rates = obj.rates(out.structure);
    const FairnessResult fair = config.ff_users > 0 ? jain_fairness(out.rates) : FairnessResult{0.0, true};
    auto &s = out.summary;
    s.config_hash = config_hash(config);
    s.seed = seed;
    s.pt_dbm = config.pt_dbm;
    s.nf_users = config.nf_users;
    s.ff_users = config.ff_users;
    s.antennas = config.antennas;
    s.strategy = config.strategy;
    s.algorithm = config.algorithm;
    s.order_mode = config.order_mode;
    s.power_policy = config.power_policy;
    s.sum_rate = sum_rate(out.rates);
    s.jain = fair.index;
    s.jain_all_zero = fair.all_zero;
    s.avg_nf_rate = avg_nf_rate(out.rates);
    s.iterations = iterations;
    s.redraws = scene.redraws;
    s.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return out;
}

/// Full pipeline for one trial: drop, channels, beams, clustering, rates, metrics.
inline TrialOutcome run_single(const SystemConfig &config)
{
    const auto start = std::chrono::steady_clock::now();
    const Scene scene = build_scene(config, config.seed);
    TrialOutcome out = run_on_scene(scene, config, config.seed);
    out.summary.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return out;
}

// ------------------------------------------------------------------ sweeps

enum class SweepParameter
{
    pt_dbm,
    nf_users,
    ff_users,
};

inline SweepParameter parse_sweep_parameter(const std::string &s)
{
    if (s == "Pt_dbm")
        return SweepParameter::pt_dbm;
    if (s == "K")
        return SweepParameter::nf_users;
    if (s == "N")
        return SweepParameter::ff_users;
    throw std::invalid_argument("Unknown sweep parameter '" + s + "', expected Pt_dbm, K or N.");
}

struct SweepSpec
{
    SystemConfig base;
    SweepParameter parameter = SweepParameter::pt_dbm;
    std::vector<double> values;
    int trials = 1;
    std::vector<Strategy> strategies{Strategy::s2};
    std::vector<Algorithm> algorithms{Algorithm::game};
    int workers = 1;
    bool record_wall_clock = true;

    void validate() const
    {
        if (values.empty())
            throw std::invalid_argument("Sweep needs at least one value.");
        if (trials < 1)
            throw std::invalid_argument("Sweep needs at least one trial.");
        if (strategies.empty() || algorithms.empty())
            throw std::invalid_argument("Sweep needs at least one strategy and one algorithm.");
        if (workers < 1)
            throw std::invalid_argument("Worker count must be positive.");
    }

    SystemConfig config_at(double value) const
    {
        SystemConfig c = base;
        switch (parameter)
        {
        case SweepParameter::pt_dbm:
            c.pt_dbm = value;
            break;
        case SweepParameter::nf_users:
            c.nf_users = static_cast<int>(value);
            break;
        case SweepParameter::ff_users:
            c.ff_users = static_cast<int>(value);
            break;
        }
        return c;
    }
};

/// One row per (value, trial, strategy, algorithm), in that nesting order.
/// Trial seeds depend only on the master seed and the trial index, so every
/// cell of a trial (and every swept value) sees the same drop.
inline std::vector<TrialSummary> run_sweep(const SweepSpec &spec)
{
    spec.validate();
    const std::size_t cells = spec.strategies.size() * spec.algorithms.size();
    const std::size_t tasks = spec.values.size() * static_cast<std::size_t>(spec.trials);
    std::vector<TrialSummary> rows(tasks * cells);

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (;;)
        {
            const std::size_t task = next.fetch_add(1);
            if (task >= tasks)
                return;
            try
            {
                const std::size_t value_index = task / static_cast<std::size_t>(spec.trials);
                const std::size_t trial = task % static_cast<std::size_t>(spec.trials);
                SystemConfig config = spec.config_at(spec.values[value_index]);
                const std::uint64_t seed = trial_seed(spec.base.seed, trial);
                config.validate();
                const Scene scene = build_scene(config, seed);
                std::size_t slot = task * cells;
                for (Strategy st : spec.strategies)
                    for (Algorithm al : spec.algorithms)
                    {
                        config.strategy = st;
                        config.algorithm = al;
                        TrialSummary s = run_on_scene(scene, config, seed).summary;
                        s.run_id = static_cast<long>(slot);
                        if (!spec.record_wall_clock)
                            s.wall_ms = 0.0;
                        rows[slot++] = std::move(s);
                    }
            }
            catch (...)
            {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next.store(tasks);
            }
        }
    };

    const std::size_t thread_count = std::min<std::size_t>(static_cast<std::size_t>(spec.workers), tasks);
    if (thread_count <= 1)
        worker();
    else
    {
        std::vector<std::thread> pool;
        for (std::size_t i = 0; i < thread_count; ++i)
            pool.emplace_back(worker);
        for (auto &t : pool)
            t.join();
    }
    if (failure)
        std::rethrow_exception(failure);
    return rows;
}

inline constexpr const char *sweep_csv_header =
    "run_id,config_hash,seed,Pt_dbm,K,N,L,strategy,algorithm,order_mode,power_policy,sum_rate,jain,avg_nf_rate,"
    "iterations,wall_ms";

inline void write_summary_row(std::ostream &out, const TrialSummary &s)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, "%ld,%s,%llu,%.12g,%d,%d,%d,%s,%s,%s,%s,%.12g,%.12g,%.12g,%ld,%.3f\n", s.run_id,
                  s.config_hash.c_str(), static_cast<unsigned long long>(s.seed), s.pt_dbm, s.nf_users, s.ff_users,
                  s.antennas, to_string(s.strategy).c_str(), to_string(s.algorithm).c_str(),
                  to_string(s.order_mode).c_str(), to_string(s.power_policy).c_str(), s.sum_rate, s.jain,
                  s.avg_nf_rate, s.iterations, s.wall_ms);
    out << buf;
}

inline void write_sweep_csv(std::ostream &out, const std::vector<TrialSummary> &rows)
{
    out << sweep_csv_header << '\n';
    for (const auto &r : rows)
        write_summary_row(out, r);
}

// ------------------------------------------------------------- convergence

/// Per-iteration record of one clustering run, for convergence plots.
struct ConvergenceRow
{
    std::string algorithm;
    std::string order_mode;
    long iteration = 0;
    int round = 0;
    int user = -1;
    int beam = -1;
    std::string action;
    bool accepted = false;
    double utility = 0.0;
    double best_utility = 0.0;
    double avg_nf_rate = 0.0;
};

inline std::vector<ConvergenceRow> game_trace_rows(const GameTrace &t, OrderMode order)
{
    std::vector<ConvergenceRow> rows;
    rows.reserve(t.records.size() + 1);
    rows.push_back({"game", to_string(order), 0, 0, -1, -1, "init", false, t.initial_utility, t.initial_utility,
                    t.initial_avg_nf_rate});
    for (const auto &r : t.records)
        rows.push_back({"game", to_string(order), r.iteration, r.round, r.user, r.beam, to_string(r.action),
                        r.accepted, r.utility, r.utility, r.avg_nf_rate});
    return rows;
}

inline std::vector<ConvergenceRow> annealing_trace_rows(const AnnealingResult &a, OrderMode order)
{
    std::vector<ConvergenceRow> rows;
    rows.reserve(a.trace.size() + 1);
    rows.push_back({"sa", to_string(order), 0, 0, -1, -1, "init", false, a.initial_utility, a.initial_utility,
                    a.initial_avg_nf_rate});
    for (const auto &r : a.trace)
        rows.push_back({"sa", to_string(order), r.iteration, 0, -1, -1, to_string(r.action), r.accepted, r.utility,
                        r.best_utility, r.avg_nf_rate});
    return rows;
}

/// Game with designed order, game with random order and simulated annealing
/// on one shared drop and initial structure.
inline std::vector<ConvergenceRow> run_convergence(const SystemConfig &config)
{
    const Scene scene = build_scene(config, config.seed);
    std::vector<ConvergenceRow> rows;

    SystemConfig c = config;
    c.algorithm = Algorithm::game;
    c.order_mode = OrderMode::designed;
    auto designed = run_on_scene(scene, c, config.seed);
    auto r1 = game_trace_rows(*designed.game_trace, OrderMode::designed);
    rows.insert(rows.end(), r1.begin(), r1.end());

    c.order_mode = OrderMode::random;
    auto random = run_on_scene(scene, c, config.seed);
    auto r2 = game_trace_rows(*random.game_trace, OrderMode::random);
    rows.insert(rows.end(), r2.begin(), r2.end());

    c.algorithm = Algorithm::annealing;
    c.order_mode = OrderMode::designed;
    auto sa = run_on_scene(scene, c, config.seed);
    auto r3 = annealing_trace_rows(*sa.annealing, OrderMode::designed);
    rows.insert(rows.end(), r3.begin(), r3.end());
    return rows;
}

inline constexpr const char *convergence_csv_header =
    "config_hash,seed,strategy,algorithm,order_mode,iteration,round,user,beam,action,accepted,utility,best_utility,"
    "avg_nf_rate";

inline void write_convergence_csv(std::ostream &out, const SystemConfig &config,
                                  const std::vector<ConvergenceRow> &rows)
{
    const std::string hash = config_hash(config);
    out << convergence_csv_header << '\n';
    char buf[512];
    for (const auto &r : rows)
    {
        std::snprintf(buf, sizeof buf, "%s,%llu,%s,%s,%s,%ld,%d,%d,%d,%s,%d,%.12g,%.12g,%.12g\n", hash.c_str(),
                      static_cast<unsigned long long>(config.seed), to_string(config.strategy).c_str(),
                      r.algorithm.c_str(), r.order_mode.c_str(), r.iteration, r.round, r.user, r.beam,
                      r.action.c_str(), r.accepted ? 1 : 0, r.utility, r.best_utility, r.avg_nf_rate);
        out << buf;
    }
}

} // namespace nearfar

#endif
