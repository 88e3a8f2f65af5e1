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

#ifndef NEARFAR_STRUCTURE_HPP
#define NEARFAR_STRUCTURE_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace nearfar
{

/// Overlapping cluster structure. clusters[k] lists the FF users sharing
/// beam k; list position 0 is the strongest user, decoded last, and each
/// user removes the signals of all users listed after it.
class ClusterStructure
{
public:
    ClusterStructure() = default;
    ClusterStructure(int beams, int ff_users)
        : clusters_(static_cast<std::size_t>(beams)), ff_users_(ff_users) {}

    int beams() const { return static_cast<int>(clusters_.size()); }
    int ff_users() const { return ff_users_; }

    const std::vector<int> &cluster(int k) const { return clusters_[static_cast<std::size_t>(k)]; }
    const std::vector<std::vector<int>> &clusters() const { return clusters_; }

    bool contains(int k, int n) const
    {
        const auto &c = cluster(k);
        return std::find(c.begin(), c.end(), n) != c.end();
    }

    /// Zero-based position of n in cluster k.
    std::optional<std::size_t> position(int k, int n) const
    {
        const auto &c = cluster(k);
        const auto it = std::find(c.begin(), c.end(), n);
        if (it == c.end())
            return std::nullopt;
        return static_cast<std::size_t>(it - c.begin());
    }

    int membership_count(int n) const
    {
        int count = 0;
        for (int k = 0; k < beams(); ++k)
            count += contains(k, n) ? 1 : 0;
        return count;
    }

    std::size_t total_memberships() const
    {
        std::size_t total = 0;
        for (const auto &c : clusters_)
            total += c.size();
        return total;
    }

    /// Appends n to cluster k; callers re-order afterwards.
    void add(int k, int n)
    {
        if (contains(k, n))
            throw std::logic_error("ClusterStructure::add: user already in cluster.");
        clusters_[static_cast<std::size_t>(k)].push_back(n);
    }

    void remove(int k, int n)
    {
        auto &c = clusters_[static_cast<std::size_t>(k)];
        const auto it = std::find(c.begin(), c.end(), n);
        if (it == c.end())
            throw std::logic_error("ClusterStructure::remove: user not in cluster.");
        c.erase(it);
    }

    void set_cluster(int k, std::vector<int> members) { clusters_[static_cast<std::size_t>(k)] = std::move(members); }

    /// Every FF user holds at least one beam.
    bool covers_all_users() const
    {
        for (int n = 0; n < ff_users_; ++n)
            if (membership_count(n) == 0)
                return false;
        return true;
    }

    bool well_formed() const
    {
        for (const auto &c : clusters_)
        {
            std::vector<int> sorted = c;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                return false;
            for (int n : c)
                if (n < 0 || n >= ff_users_)
                    return false;
        }
        return true;
    }

    friend bool operator==(const ClusterStructure &, const ClusterStructure &) = default;

private:
    std::vector<std::vector<int>> clusters_;
    int ff_users_ = 0;
};

} // namespace nearfar

#endif
