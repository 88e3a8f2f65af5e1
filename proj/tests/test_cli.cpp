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

#include <nearfar/experiment.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace
{

const std::filesystem::path scratch = std::filesystem::temp_directory_path() / "nearfar_cli_test";

int run(const std::string &args)
{
    std::filesystem::create_directories(scratch);
    const std::string cmd = std::string(NEARFAR_CLI_PATH) + " " + args + " >" + (scratch / "stdout.txt").string() +
                            " 2>" + (scratch / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path &p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("CLI - run prints one summary row", "[cli]")
{
    REQUIRE(run("run --seed 4 -N 6") == 0);
    const std::string out = slurp(scratch / "stdout.txt");
    CHECK(out.rfind(std::string(nearfar::sweep_csv_header) + "\n", 0) == 0);
    CHECK(std::count(out.begin(), out.end(), '\n') == 2);
    CHECK(out.find(",game,designed,equal,") != std::string::npos);
}

TEST_CASE("CLI - run writes trace and channel dump", "[cli]")
{
    const auto trace = scratch / "trace.csv";
    const auto chan = scratch / "chan.csv";
    REQUIRE(run("run --seed 4 -K 2 -N 3 -L 8 --trace " + trace.string() + " --dump-channels " + chan.string()) == 0);
    const std::string t = slurp(trace);
    CHECK(t.rfind(nearfar::convergence_csv_header, 0) == 0);
    CHECK(t.find(",init,") != std::string::npos);
    const std::string c = slurp(chan);
    CHECK(std::count(c.begin(), c.end(), '\n') == 1 + (2 + 3) * 8);
}

TEST_CASE("CLI - sweep output is reproducible", "[cli]")
{
    const auto a = scratch / "a.csv";
    const auto b = scratch / "b.csv";
    const std::string args = "sweep --values 20,30 --trials 3 --strategies 1 3 --algorithms game,random-uc "
                             "--no-timing -N 8 --seed 5 --out ";
    REQUIRE(run(args + a.string()) == 0);
    REQUIRE(run(args + b.string() + " --workers 2") == 0);
    const std::string ta = slurp(a);
    CHECK(ta == slurp(b));
    CHECK(std::count(ta.begin(), ta.end(), '\n') == 1 + 2 * 3 * 2 * 2);
}

TEST_CASE("CLI - convergence and config file", "[cli]")
{
    const auto cfg = scratch / "cfg.json";
    std::filesystem::create_directories(scratch);
    std::ofstream(cfg) << R"({"K": 2, "N": 4, "annealing": {"steps": 3}})";
    REQUIRE(run("convergence --config " + cfg.string() + " --sa-moves 2") == 0);
    const std::string out = slurp(scratch / "stdout.txt");
    CHECK(out.find(",sa,designed,6,") != std::string::npos);
    CHECK(out.find(",game,random,0,") != std::string::npos);
}

TEST_CASE("CLI - exit codes", "[cli]")
{
    CHECK(run("run --rmin 60") == 2);
    CHECK(run("run --strategy 7") == 1);
    CHECK(run("sweep --param L --values 1") == 1);
    CHECK(run("run --bogus") != 0);
    CHECK(run("") != 0);
    CHECK(slurp(scratch / "stderr.txt").size() + slurp(scratch / "stdout.txt").size() > 0);
}
