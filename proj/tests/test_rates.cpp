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

#include <catch_amalgamated.hpp>

#include "oracles.hpp"

#include <nearfar/clustering.hpp>
#include <nearfar/experiment.hpp>
#include <nearfar/rates.hpp>

#include <cmath>

using namespace nearfar;

namespace
{

RateEvaluator evaluator(const oracle::Instance &in)
{
    return RateEvaluator(in.gains, in.budget, in.structure, in.power);
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

} // namespace

TEST_CASE("Rates - NF rate", "[rates]")
{
    CHECK(nf_rate_value(0.0, 1e-7, 1e-11) == 0.0);
    CHECK(nf_rate_value(2.0, 0.5e-11, 1e-11) == 1.0);
}

TEST_CASE("Rates - every expression matches the term-by-term oracle", "[rates]")
{
    Rng rng(100);
    for (int t = 0; t < 300; ++t)
    {
        const int beams = 1 + static_cast<int>(rng.index(4));
        const int users = 1 + static_cast<int>(rng.index(6));
        const oracle::Instance in = oracle::random_instance(rng, beams, users);
        const RateEvaluator ev = evaluator(in);
        for (int k = 0; k < beams; ++k)
        {
            CHECK(rel(ev.nf_rate(k), std::log2(1.0 + in.power.nf[k] * in.gains.nf[k] / in.budget.noise)) < 1e-13);
            for (int n : in.structure.cluster(k))
            {
                const auto pos = *in.structure.position(k, n);
                CHECK(rel(ev.nf_decode_ff_rate(k, pos), oracle::nf_decode(in, k, n)) < 1e-12);
                CHECK(rel(ev.ff_rate_s1(n, k), oracle::s1(in, k, n)) < 1e-12);
                CHECK(rel(ev.ff_rate_s2(n, k), oracle::s2(in, k, n)) < 1e-12);
                CHECK(rel(ev.ff_rate_s3(n, k), oracle::s3(in, k, n)) < 1e-12);
                CHECK(rel(ev.ff_rate_s2_pairwise(n, k), oracle::s2(in, k, n)) < 1e-12);
                CHECK(rel(ev.ff_rate_s3_pairwise(n, k), oracle::s3(in, k, n)) < 1e-12);
                for (auto s : {Strategy::s1, Strategy::s2, Strategy::s3})
                    CHECK(rel(ev.ff_rate_final(n, k, s), oracle::final_rate(in, k, n, s)) < 1e-12);
            }
        }
    }
}

TEST_CASE("Rates - singleton and single-beam closed forms", "[rates]")
{
    oracle::Instance in;
    in.gains.nf = {1e-8};
    in.gains.ff = {{3e-9}};
    in.budget = {1.0, 1e-11};
    in.structure = ClusterStructure(1, 1);
    in.structure.add(0, 0);
    in.power.nf = {0.4};
    in.power.ff = {{0.6}};
    const RateEvaluator ev = evaluator(in);
    const double a = 1e-11 / 1e-8;
    CHECK(std::abs(ev.nf_decode_ff_rate(0, 0) - std::log2(1.0 + 0.6 / (a + 0.4))) < 1e-14);
    const double s1 = std::log2(1.0 + 0.6 * 3e-9 / (0.4 * 3e-9 + 1e-11));
    CHECK(std::abs(ev.ff_rate_s1(0, 0) - s1) < 1e-14);
    // singleton under S2: own rate only, no other beams
    CHECK(std::abs(ev.ff_rate_s2(0, 0) - s1) < 1e-14);
    CHECK(ev.ff_rate_s3(0, 0) == ev.ff_rate_s2(0, 0));
}

TEST_CASE("Rates - zero own power gives zero", "[rates]")
{
    Rng rng(3);
    oracle::Instance in = oracle::random_instance(rng, 2, 3);
    const int n = in.structure.cluster(0).front();
    in.power.ff[0][n] = 0.0;
    const RateEvaluator ev = evaluator(in);
    CHECK(ev.nf_decode_ff_rate(0, 0) == 0.0);
    CHECK(ev.ff_rate_s1(n, 0) == 0.0);
    CHECK(ev.ff_rate_s2(n, 0) == 0.0);
    CHECK(ev.ff_rate_s3(n, 0) == 0.0);
}

TEST_CASE("Rates - two-user NF decode expanded by hand", "[rates]")
{
    oracle::Instance in;
    in.gains.nf = {2e-8};
    in.gains.ff = {{1e-9, 4e-9}};
    in.budget = {0.9, 1e-11};
    in.structure = ClusterStructure(1, 2);
    in.structure.set_cluster(0, {1, 0});
    in.power.nf = {0.3};
    in.power.ff = {{0.3, 0.3}};
    const RateEvaluator ev = evaluator(in);
    const double a = 1e-11 / 2e-8;
    CHECK(std::abs(ev.nf_decode_ff_rate(0, 0) - std::log2(1.0 + 0.3 / (a + 0.3))) < 1e-14);
    CHECK(std::abs(ev.nf_decode_ff_rate(0, 1) - std::log2(1.0 + 0.3 / (a + 0.3 + 0.3))) < 1e-14);
}

TEST_CASE("Rates - order matters under S2", "[rates]")
{
    oracle::Instance in;
    in.gains.nf = {1e-6, 1e-6};
    in.gains.ff = {{5e-9, 1e-10}, {1e-10, 2e-10}};
    in.budget = {1.0, 1e-11};
    in.structure = ClusterStructure(2, 2);
    in.power.nf = {1.0 / 3.0, 1.0};
    in.power.ff = {{1.0 / 3.0, 1.0 / 3.0}, {0.0, 0.0}};
    const LinkBudget b = in.budget;
    const OrderKeys keys = OrderKeys::designed(in.gains, b);
    REQUIRE(keys(0, 0) < keys(0, 1));

    in.structure.set_cluster(0, {0, 1}); // ascending A: each user uses its own A
    const RateEvaluator good(in.gains, in.budget, in.structure, in.power);
    const double own = std::log2(1.0 + (1.0 / 3.0) / (good.a2(0, 1) + 1.0 / 3.0 + 1.0 / 3.0));
    CHECK(std::abs(good.ff_rate_s2(1, 0) - own) < 1e-13);

    oracle::Instance bad = in;
    bad.structure.set_cluster(0, {1, 0}); // user 0 is now limited by user 1's larger A
    const RateEvaluator worse(bad.gains, bad.budget, bad.structure, bad.power);
    const double limited = std::log2(1.0 + (1.0 / 3.0) / (worse.a2(0, 1) + 1.0 / 3.0 + 1.0 / 3.0));
    CHECK(std::abs(worse.ff_rate_s2(0, 0) - limited) < 1e-13);
    CHECK(std::abs(worse.ff_rate_s2(0, 0) - worse.ff_rate_s2_pairwise(0, 0)) < 1e-13);
    CHECK(worse.ff_rate_s2(0, 0) < std::log2(1.0 + (1.0 / 3.0) / (worse.a2(0, 0) + 2.0 / 3.0)));
}

TEST_CASE("Rates - S3 dominates S2 and equals it for one beam", "[rates]")
{
    Rng rng(44);
    for (int t = 0; t < 300; ++t)
    {
        const int beams = 1 + static_cast<int>(rng.index(5));
        const oracle::Instance in = oracle::random_instance(rng, beams, 1 + static_cast<int>(rng.index(6)));
        const RateEvaluator ev = evaluator(in);
        const RateReport r2 = ev.report(Strategy::s2);
        const RateReport r3 = ev.report(Strategy::s3);
        for (int k = 0; k < beams; ++k)
            for (int n : in.structure.cluster(k))
            {
                CHECK(r3.ff[k][n] >= r2.ff[k][n] - 1e-12);
                if (beams == 1)
                    CHECK(r3.ff[k][n] == r2.ff[k][n]);
            }
    }
}

TEST_CASE("Rates - monotone in noise and own power", "[rates]")
{
    Rng rng(71);
    for (int t = 0; t < 100; ++t)
    {
        oracle::Instance in = oracle::random_instance(rng, 3, 4);
        oracle::Instance noisy = in;
        noisy.budget.noise *= 3.0;
        const int n = in.structure.cluster(1).empty() ? -1 : in.structure.cluster(1).back();
        oracle::Instance louder = in;
        if (n >= 0)
            louder.power.ff[1][n] *= 1.5;
        const RateEvaluator base = evaluator(in), ev_noisy = evaluator(noisy), ev_loud = evaluator(louder);
        for (auto s : {Strategy::s1, Strategy::s2, Strategy::s3})
        {
            const RateReport a = base.report(s), b = ev_noisy.report(s), c = ev_loud.report(s);
            for (int k = 0; k < 3; ++k)
            {
                CHECK(b.nf[k] <= a.nf[k]);
                for (int m : in.structure.cluster(k))
                    CHECK(b.ff[k][m] <= a.ff[k][m] + 1e-15);
            }
            if (n >= 0)
            {
                CHECK(ev_loud.ff_strategy_rate(n, 1, s) >= base.ff_strategy_rate(n, 1, s) - 1e-15);
                CHECK(c.ff[1][n] >= a.ff[1][n] - 1e-15);
            }
        }
    }
}

TEST_CASE("Rates - report support and final minimum", "[rates]")
{
    Rng rng(9);
    for (int t = 0; t < 50; ++t)
    {
        const oracle::Instance in = oracle::random_instance(rng, 3, 5);
        const RateEvaluator ev = evaluator(in);
        for (auto s : {Strategy::s1, Strategy::s2, Strategy::s3})
        {
            const RateReport r = ev.report(s);
            CHECK(r.strategy == s);
            for (int k = 0; k < 3; ++k)
            {
                CHECK(std::isfinite(r.nf[k]));
                for (int n = 0; n < 5; ++n)
                {
                    CHECK(std::isfinite(r.ff[k][n]));
                    CHECK(r.ff[k][n] >= 0.0);
                    CHECK((r.ff[k][n] > 0.0) == in.structure.contains(k, n));
                    if (in.structure.contains(k, n))
                    {
                        const double nf_side = ev.nf_decode_ff_rate(k, ev.position_of(k, n));
                        const double strat = ev.ff_strategy_rate(n, k, s);
                        CHECK(r.ff[k][n] == std::min(nf_side, strat));
                    }
                }
            }
        }
    }
}

TEST_CASE("Rates - the NF side rarely limits FF users in the reference scenario", "[rates]")
{
    SystemConfig c;
    int binding = 0, total = 0;
    for (std::uint64_t t = 0; t < 40; ++t)
    {
        c.seed = t + 1;
        const TrialOutcome out = run_single(c);
        const Scene scene = build_scene(c, c.seed);
        const LinkBudget b = LinkBudget::from(c);
        const PowerAllocation p = allocate(out.structure, scene.beams.gains, b, PowerRule::from(c));
        const RateEvaluator ev(scene.beams.gains, b, out.structure, p);
        for (int k = 0; k < out.structure.beams(); ++k)
            for (int n : out.structure.cluster(k))
            {
                ++total;
                binding += ev.nf_decode_ff_rate(k, ev.position_of(k, n)) < ev.ff_strategy_rate(n, k, c.strategy);
            }
    }
    REQUIRE(total > 0);
    const double fraction = static_cast<double>(binding) / total;
    INFO("NF side binding fraction: " << fraction);
    CHECK(fraction < 0.5);
}
