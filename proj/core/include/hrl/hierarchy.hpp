#pragma once

#include <string>
#include <vector>

#include "hrl/mdp.hpp"

namespace hrl {

/// Ground-truth cluster structure shared by a task family.
class LatentHierarchy {
public:
    LatentHierarchy() = default;
    LatentHierarchy(std::vector<int> cluster_of, std::vector<std::vector<int>> entrances,
                    std::vector<std::vector<StateAction>> exits);

    int num_states() const { return static_cast<int>(cluster_of_.size()); }
    int num_clusters() const { return static_cast<int>(entrances_.size()); }
    int cluster_of(int s) const { return cluster_of_[static_cast<std::size_t>(s)]; }
    const std::vector<int>& cluster_map() const { return cluster_of_; }
    const std::vector<int>& entrances(int c) const { return entrances_[static_cast<std::size_t>(c)]; }
    const std::vector<StateAction>& exits(int c) const { return exits_[static_cast<std::size_t>(c)]; }
    std::vector<int> members(int c) const;

    /// Sorted union of all exits.
    std::vector<StateAction> all_exits() const;
    /// Sorted union of all entrances.
    std::vector<int> all_entrances() const;
    bool is_exit(StateAction sa) const;
    bool is_entrance(int s) const;

    int K() const { return static_cast<int>(all_exits().size()); }
    int L() const { return static_cast<int>(all_entrances().size()); }
    int M() const;

    bool operator==(const LatentHierarchy&) const = default;

private:
    std::vector<int> cluster_of_;
    std::vector<std::vector<int>> entrances_;
    std::vector<std::vector<StateAction>> exits_;
};

/// Tasks with shared (S, A, H, start) and a ground-truth hierarchy.
struct TaskFamily {
    std::vector<TabularMdp> tasks;
    LatentHierarchy hierarchy;
    std::string name;

    int num_tasks() const { return static_cast<int>(tasks.size()); }
    const TabularMdp& task(int t) const { return tasks.at(static_cast<std::size_t>(t)); }
    /// Throws if tasks disagree in S, A, H or start, or the hierarchy size differs.
    void check_shape() const;
};

}  // namespace hrl
