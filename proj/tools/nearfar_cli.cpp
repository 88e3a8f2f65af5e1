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

#include <nearfar/config_io.hpp>
#include <nearfar/nearfar.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace
{

using namespace nearfar;

// Flags shared by every subcommand; unset options leave file values alone.
struct CommonOptions
{
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> strategy;
    std::optional<std::string> algorithm;
    std::optional<std::string> order;
    std::optional<std::string> power_policy;
    std::optional<std::string> random_uc_mode;
    std::optional<double> pt_dbm;
    std::optional<double> noise_dbm;
    std::optional<double> rate_min;
    std::optional<int> nf_users;
    std::optional<int> ff_users;
    std::optional<int> antennas;
    std::optional<int> sa_steps;
    std::optional<int> sa_moves;
    std::string out;
    int workers = 1;

    void attach(CLI::App *app)
    {
        app->add_option("--config", config_path, "JSON configuration file")->check(CLI::ExistingFile);
        app->add_option("--seed", seed, "Master seed");
        app->add_option("--strategy", strategy, "SIC strategy {1,2,3}");
        app->add_option("--algorithm", algorithm, "Clustering algorithm {game,random-uc,sa,oracle}");
        app->add_option("--order", order, "Decoding order {designed,random}");
        app->add_option("--power-policy", power_policy, "Power split {equal,nf-first}");
        app->add_option("--random-uc-mode", random_uc_mode, "Random clustering {single,overlap}");
        app->add_option("--pt-dbm", pt_dbm, "Per-beam power budget (dBm)");
        app->add_option("--noise-dbm", noise_dbm, "Noise power (dBm)");
        app->add_option("--rmin", rate_min, "NF target rate (bits/channel use)");
        app->add_option("-K,--nf-users", nf_users, "Number of NF users");
        app->add_option("-N,--ff-users", ff_users, "Number of FF users");
        app->add_option("-L,--antennas", antennas, "Number of array elements");
        app->add_option("--sa-steps", sa_steps, "Annealing temperature steps");
        app->add_option("--sa-moves", sa_moves, "Annealing moves per step");
        app->add_option("--out", out, "Output CSV path (stdout if omitted)");
        app->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
    }

    SystemConfig resolve() const
    {
        SystemConfig c = config_path.empty() ? SystemConfig{} : load_config(config_path);
        if (seed)
            c.seed = *seed;
        if (strategy)
            c.strategy = parse_strategy(*strategy);
        if (algorithm)
            c.algorithm = parse_algorithm(*algorithm);
        if (order)
            c.order_mode = parse_order_mode(*order);
        if (power_policy)
            c.power_policy = parse_power_policy(*power_policy);
        if (random_uc_mode)
            c.random_uc_mode = parse_random_uc_mode(*random_uc_mode);
        if (pt_dbm)
            c.pt_dbm = *pt_dbm;
        if (noise_dbm)
            c.noise_dbm = *noise_dbm;
        if (rate_min)
            c.rate_min = *rate_min;
        if (nf_users)
            c.nf_users = *nf_users;
        if (ff_users)
            c.ff_users = *ff_users;
        if (antennas)
            c.antennas = *antennas;
        if (sa_steps)
            c.annealing.steps = *sa_steps;
        if (sa_moves)
            c.annealing.moves_per_step = *sa_moves;
        c.validate();
        return c;
    }
};

template <typename Fn>
void with_output(const std::string &path, Fn &&fn)
{
    if (path.empty())
    {
        fn(std::cout);
        return;
    }
    std::ofstream file(path);
    if (!file)
        throw std::runtime_error("Cannot write '" + path + "'.");
    fn(file);
}

std::vector<std::string> split_list(const std::vector<std::string> &items)
{
    std::vector<std::string> out;
    for (const auto &item : items)
    {
        std::size_t start = 0;
        while (start <= item.size())
        {
            const auto comma = item.find(',', start);
            const auto piece = item.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            if (!piece.empty())
                out.push_back(piece);
            if (comma == std::string::npos)
                break;
            start = comma + 1;
        }
    }
    return out;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Near-field / far-field NOMA clustering simulator"};
    app.require_subcommand(1);

    CommonOptions run_opts;
    std::string trace_path;
    std::string channel_dump;
    auto *run = app.add_subcommand("run", "Run one trial and print its summary row");
    run_opts.attach(run);
    run->add_option("--trace", trace_path, "Write the clustering trace (game or sa) as CSV");
    run->add_option("--dump-channels", channel_dump, "Write NF/FF channel entries as CSV");

    CommonOptions sweep_opts;
    std::string param = "Pt_dbm";
    std::vector<std::string> values;
    std::vector<std::string> strategies{"1", "2", "3"};
    std::vector<std::string> algorithms{"game"};
    int trials = 10;
    bool no_timing = false;
    auto *sweep = app.add_subcommand("sweep", "Monte Carlo sweep over Pt_dbm, K or N");
    sweep_opts.attach(sweep);
    sweep->add_option("--param", param, "Swept parameter {Pt_dbm,K,N}");
    sweep->add_option("--values", values, "Values (space or comma separated)")->required();
    sweep->add_option("--trials", trials, "Trials per value")->check(CLI::PositiveNumber);
    sweep->add_option("--strategies", strategies, "Strategies to evaluate");
    sweep->add_option("--algorithms", algorithms, "Algorithms to evaluate");
    sweep->add_flag("--no-timing", no_timing, "Write wall_ms as 0 so output is byte-reproducible");

    CommonOptions conv_opts;
    auto *conv = app.add_subcommand("convergence", "Per-iteration traces of the game and simulated annealing");
    conv_opts.attach(conv);

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (run->parsed())
        {
            const SystemConfig config = run_opts.resolve();
            const TrialOutcome out = run_single(config);
            with_output(run_opts.out, [&](std::ostream &os) {
                os << sweep_csv_header << '\n';
                write_summary_row(os, out.summary);
            });
            if (!trace_path.empty())
            {
                std::vector<ConvergenceRow> rows;
                if (out.game_trace)
                    rows = game_trace_rows(*out.game_trace, config.order_mode);
                else if (out.annealing)
                    rows = annealing_trace_rows(*out.annealing, config.order_mode);
                with_output(trace_path, [&](std::ostream &os) { write_convergence_csv(os, config, rows); });
            }
            if (!channel_dump.empty())
            {
                const Scene scene = build_scene(config, config.seed);
                with_output(channel_dump, [&](std::ostream &os) { write_channels_csv(os, scene.channels); });
            }
        }
        else if (sweep->parsed())
        {
            SweepSpec spec;
            spec.base = sweep_opts.resolve();
            spec.parameter = parse_sweep_parameter(param);
            for (const auto &v : split_list(values))
                spec.values.push_back(std::stod(v));
            spec.strategies.clear();
            for (const auto &s : split_list(strategies))
                spec.strategies.push_back(parse_strategy(s));
            spec.algorithms.clear();
            for (const auto &a : split_list(algorithms))
                spec.algorithms.push_back(parse_algorithm(a));
            spec.trials = trials;
            spec.workers = sweep_opts.workers;
            spec.record_wall_clock = !no_timing;
            const auto rows = run_sweep(spec);
            with_output(sweep_opts.out, [&](std::ostream &os) { write_sweep_csv(os, rows); });
        }
        else if (conv->parsed())
        {
            const SystemConfig config = conv_opts.resolve();
            const auto rows = run_convergence(config);
            with_output(conv_opts.out, [&](std::ostream &os) { write_convergence_csv(os, config, rows); });
        }
    }
    catch (const InfeasibleError &e)
    {
        std::cerr << "infeasible configuration: " << e.what() << '\n';
        return 2;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
