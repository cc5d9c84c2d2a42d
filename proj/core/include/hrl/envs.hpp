#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hrl/hierarchy.hpp"
#include "hrl/mdp.hpp"

namespace hrl {

// ---- gated four-room -------------------------------------------------------

struct Cell {
    int x = 0;
    int y = 0;
    bool operator==(const Cell&) const = default;
};

enum Direction : int { kUp = 0, kRight = 1, kDown = 2, kLeft = 3 };

/// One-way gate: stepping from `from` in `dir` crosses the wall when open.
struct Gate {
    Cell from;
    int dir = kRight;
    bool operator==(const Gate&) const = default;
};

struct FourRoomSpec {
    int width = 9;
    int height = 7;
    int wall_col = 4;
    int wall_row = 3;
    std::array<Gate, 4> gates{{{{3, 1}, kRight}, {{1, 2}, kDown}, {{7, 2}, kDown}, {{3, 5}, kRight}}};
    std::array<bool, 4> open{{true, true, true, true}};
    Cell goal{8, 6};
    Cell start{0, 0};
    double slip = 0.0;
    bool dummy_start = false;
    int horizon = 20;

    bool same_geometry(const FourRoomSpec& o) const;
};

/// Cell <-> state bookkeeping for one geometry. Rooms: 0 top-left,
/// 1 top-right, 2 bottom-left, 3 bottom-right, 4 the dummy start.
class FourRoomLayout {
public:
    explicit FourRoomLayout(const FourRoomSpec& spec);
    int num_states() const { return num_states_; }
    int num_cells() const { return static_cast<int>(cells_.size()); }
    bool is_wall(Cell c) const;
    bool inside(Cell c) const;
    int state_of(Cell c) const;
    Cell cell_of(int s) const { return cells_.at(static_cast<std::size_t>(s)); }
    int room_of_cell(Cell c) const;
    int room_of(int s) const;
    int dummy_state() const { return dummy_; }  ///< -1 without a dummy start
    StateAction gate_exit(int g) const;
    Cell gate_target(int g) const;

private:
    FourRoomSpec spec_;
    std::vector<Cell> cells_;
    std::vector<int> index_;
    int num_states_ = 0;
    int dummy_ = -1;
};

/// Builds one task per spec. Gates are the exits; a closed gate bumps (stays),
/// which makes the gate cell an entrance of its own room.
TaskFamily make_four_room_family(const std::vector<FourRoomSpec>& specs, std::string name = "four_room");

/// Six-task deterministic family used by the acceptance checks.
std::vector<FourRoomSpec> six_task_four_room_specs(int horizon = 20);

// ---- binary tree -----------------------------------------------------------

struct BinaryTreeSpec {
    int depth = 4;             ///< W
    std::uint32_t leaf = 0;    ///< bits of l*, most significant first, length W-1
    int a_star = 0;
    int e_star = 0;
    double epsilon = 0.1;
    int horizon = 15;
};

enum class TreeVariant { full, reduced };

struct TreeEnv {
    TabularMdp mdp;
    LatentHierarchy hierarchy;
    int root = 0;
    int gate = 0;
    int trap = 0;
    int success = -1;  ///< absent in the reduced variant
    int failure = -1;
    int leaf_depth = 0;
    /// Index of the tree node for a bit string of the given length.
    static int node_index(int length, std::uint32_t bits) { return 1 + ((1 << length) - 1) + static_cast<int>(bits); }
};

/// full: 2^W + 4 states. reduced: drops the two terminal clusters and makes the gate absorbing.
TreeEnv make_binary_tree(const BinaryTreeSpec& spec, TreeVariant variant);

// ---- counterexamples -------------------------------------------------------

struct CounterexampleEnv {
    TabularMdp mdp;
    LatentHierarchy hierarchy;
    std::vector<int> reward_cluster;  ///< Z*
};

/// Chain s_0..s_n, t_0..t_n, s*; horizon n + 2.
CounterexampleEnv make_high_variance_chain(int n);

/// Room with two arms of length n/2 and a shortcut state; horizon n.
CounterexampleEnv make_two_arm_room(int n);

// ---- validation ------------------------------------------------------------

struct ValidationParams {
    double beta = 0.0;
    double rho = 0.0;
    double delta = 0.0;
    int index_samples = 8;
    std::uint64_t seed = 0;
};

struct ValidationReport {
    std::vector<std::string> violations;
    std::vector<std::string> notes;
    double beta_min = 0.0;
    double rho_min = 0.0;
    double delta_min = 0.0;
    double c_sampled = 0.0;
    bool ok() const { return violations.empty(); }
};

/// Checks exit/cluster structure, beta-separation, rho- and delta-significance,
/// and samples the reachability constant C over random index functions.
ValidationReport validate_family(const TaskFamily& family, const ValidationParams& params);

struct CoverageReport {
    double alpha = 0.0;  ///< every exit is important by more than this in some task
    double zeta = 0.0;   ///< every exit subset up to the cap gains more than this in some task
    std::vector<int> important_task;
    std::vector<double> importance_gap;
    long long subsets_checked = 0;
};

CoverageReport check_coverage(const TaskFamily& family, int subset_cap);

}  // namespace hrl
