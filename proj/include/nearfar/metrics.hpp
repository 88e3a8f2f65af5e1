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

#ifndef NEARFAR_METRICS_HPP
#define NEARFAR_METRICS_HPP

#include "rates.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace nearfar
{

/// Sum of FF rates over all (beam, user) pairs; zero entries are non-members.
inline double sum_rate(const RateReport &r)
{
    double total = 0.0;
    for (const auto &row : r.ff)
        for (double v : row)
            total += v;
    return total;
}

/// Total rate of each FF user across its beams.
inline std::vector<double> per_user_rates(const RateReport &r)
{
    const std::size_t users = r.ff.empty() ? 0 : r.ff.front().size();
    std::vector<double> out(users, 0.0);
    for (const auto &row : r.ff)
        for (std::size_t n = 0; n < users; ++n)
            out[n] += row[n];
    return out;
}

struct FairnessResult
{
    double index = 0.0;
    bool all_zero = false;
};

/// Jain's index (sum r)^2 / (N sum r^2). All-zero rates give 0 with the flag set.
inline FairnessResult jain_fairness(std::span<const double> rates)
{
    if (rates.empty())
        throw std::invalid_argument("jain_fairness: needs at least one user.");
    double sum = 0.0;
    double sum_sq = 0.0;
    for (double r : rates)
    {
        sum += r;
        sum_sq += r * r;
    }
    if (sum_sq == 0.0)
        return {0.0, true};
    return {sum * sum / (static_cast<double>(rates.size()) * sum_sq), false};
}

inline FairnessResult jain_fairness(const RateReport &r)
{
    const auto users = per_user_rates(r);
    return jain_fairness(std::span<const double>(users));
}

inline double avg_nf_rate(const RateReport &r)
{
    if (r.nf.empty())
        return 0.0;
    double total = 0.0;
    for (double v : r.nf)
        total += v;
    return total / static_cast<double>(r.nf.size());
}

} // namespace nearfar

#endif
