#include "hrl/hierarchy.hpp"

#include <algorithm>
#include <stdexcept>

namespace hrl {

LatentHierarchy::LatentHierarchy(std::vector<int> cluster_map, std::vector<std::vector<int>> entrances,
                                 std::vector<std::vector<StateAction>> exits)
    : cluster_of_(std::move(cluster_map)), entrances_(std::move(entrances)), exits_(std::move(exits)) {
    const int C = static_cast<int>(entrances_.size());
    if (static_cast<int>(exits_.size()) != C) throw std::invalid_argument("hierarchy: cluster count mismatch");
    for (int c : cluster_of_)
        if (c < 0 || c >= C) throw std::invalid_argument("hierarchy: cluster index out of range");
    for (int c = 0; c < C; ++c) {
        auto& en = entrances_[static_cast<std::size_t>(c)];
        std::sort(en.begin(), en.end());
        en.erase(std::unique(en.begin(), en.end()), en.end());
        for (int s : en)
            if (s < 0 || s >= num_states() || cluster_of(s) != c)
                throw std::invalid_argument("hierarchy: entrance " + std::to_string(s) + " not in its cluster");
        auto& ex = exits_[static_cast<std::size_t>(c)];
        std::sort(ex.begin(), ex.end());
        ex.erase(std::unique(ex.begin(), ex.end()), ex.end());
        for (auto e : ex)
            if (e.state < 0 || e.state >= num_states() || cluster_of(e.state) != c)
                throw std::invalid_argument("hierarchy: exit state " + std::to_string(e.state) + " not in its cluster");
    }
}

std::vector<int> LatentHierarchy::members(int c) const {
    std::vector<int> out;
    for (int s = 0; s < num_states(); ++s)
        if (cluster_of(s) == c) out.push_back(s);
    return out;
}

std::vector<StateAction> LatentHierarchy::all_exits() const {
    std::vector<StateAction> out;
    for (const auto& ex : exits_) out.insert(out.end(), ex.begin(), ex.end());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> LatentHierarchy::all_entrances() const {
    std::vector<int> out;
    for (const auto& en : entrances_) out.insert(out.end(), en.begin(), en.end());
    std::sort(out.begin(), out.end());
    return out;
}

bool LatentHierarchy::is_exit(StateAction sa) const {
    if (sa.state < 0 || sa.state >= num_states()) return false;
    const auto& ex = exits(cluster_of(sa.state));
    return std::binary_search(ex.begin(), ex.end(), sa);
}

bool LatentHierarchy::is_entrance(int s) const {
    if (s < 0 || s >= num_states()) return false;
    const auto& en = entrances(cluster_of(s));
    return std::binary_search(en.begin(), en.end(), s);
}

int LatentHierarchy::M() const {
    std::size_t m = 0;
    for (const auto& ex : exits_) m = std::max(m, ex.size());
    return static_cast<int>(m);
}

void TaskFamily::check_shape() const {
    if (tasks.empty()) throw std::invalid_argument("task family is empty");
    const auto& f = tasks.front();
    for (const auto& t : tasks)
        if (t.num_states() != f.num_states() || t.num_actions() != f.num_actions() || t.horizon() != f.horizon() ||
            t.start_state() != f.start_state())
            throw std::invalid_argument("tasks disagree in states, actions, horizon or start");
    if (hierarchy.num_states() != f.num_states()) throw std::invalid_argument("hierarchy size does not match tasks");
}

}  // namespace hrl
