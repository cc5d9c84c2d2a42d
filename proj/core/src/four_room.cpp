#include <algorithm>
#include <stdexcept>

#include "hrl/envs.hpp"

namespace hrl {

namespace {

constexpr int kDx[4] = {0, 1, 0, -1};
constexpr int kDy[4] = {-1, 0, 1, 0};

Cell step(Cell c, int dir) { return {c.x + kDx[dir], c.y + kDy[dir]}; }

}  // namespace

bool FourRoomSpec::same_geometry(const FourRoomSpec& o) const {
    return width == o.width && height == o.height && wall_col == o.wall_col && wall_row == o.wall_row &&
           gates == o.gates && slip == o.slip && dummy_start == o.dummy_start && horizon == o.horizon;
}

FourRoomLayout::FourRoomLayout(const FourRoomSpec& spec) : spec_(spec) {
    if (spec.width < 3 || spec.height < 3) throw std::invalid_argument("four-room grid too small");
    if (spec.wall_col <= 0 || spec.wall_col >= spec.width - 1 || spec.wall_row <= 0 || spec.wall_row >= spec.height - 1)
        throw std::invalid_argument("four-room walls must split the grid into four rooms");
    index_.assign(static_cast<std::size_t>(spec.width * spec.height), -1);
    for (int y = 0; y < spec.height; ++y)
        for (int x = 0; x < spec.width; ++x) {
            if (is_wall({x, y})) continue;
            index_[static_cast<std::size_t>(y * spec.width + x)] = static_cast<int>(cells_.size());
            cells_.push_back({x, y});
        }
    num_states_ = static_cast<int>(cells_.size());
    if (spec.dummy_start) dummy_ = num_states_++;
    for (int g = 0; g < 4; ++g) {
        const auto& gate = spec.gates[static_cast<std::size_t>(g)];
        if (gate.dir < 0 || gate.dir > 3) throw std::invalid_argument("gate direction out of range");
        const Cell wall = step(gate.from, gate.dir);
        const Cell to = step(wall, gate.dir);
        if (!inside(gate.from) || is_wall(gate.from) || !inside(wall) || !is_wall(wall) || !inside(to) || is_wall(to) ||
            room_of_cell(gate.from) == room_of_cell(to))
            throw std::invalid_argument("gate " + std::to_string(g) + " does not cross a wall between rooms");
    }
}

bool FourRoomLayout::inside(Cell c) const { return c.x >= 0 && c.y >= 0 && c.x < spec_.width && c.y < spec_.height; }

bool FourRoomLayout::is_wall(Cell c) const { return c.x == spec_.wall_col || c.y == spec_.wall_row; }

int FourRoomLayout::state_of(Cell c) const {
    if (!inside(c) || is_wall(c)) throw std::invalid_argument("cell is not a room cell");
    return index_[static_cast<std::size_t>(c.y * spec_.width + c.x)];
}

int FourRoomLayout::room_of_cell(Cell c) const { return (c.x < spec_.wall_col ? 0 : 1) + (c.y < spec_.wall_row ? 0 : 2); }

int FourRoomLayout::room_of(int s) const { return s == dummy_ ? 4 : room_of_cell(cell_of(s)); }

StateAction FourRoomLayout::gate_exit(int g) const {
    const auto& gate = spec_.gates.at(static_cast<std::size_t>(g));
    return {state_of(gate.from), gate.dir};
}

Cell FourRoomLayout::gate_target(int g) const {
    const auto& gate = spec_.gates.at(static_cast<std::size_t>(g));
    return step(step(gate.from, gate.dir), gate.dir);
}

namespace {

/// Moves inside the room; walls and gates both bump.
Cell room_move(const FourRoomLayout& lay, Cell c, int dir) {
    const Cell n = step(c, dir);
    if (!lay.inside(n) || lay.is_wall(n)) return c;
    return n;
}

}  // namespace

TaskFamily make_four_room_family(const std::vector<FourRoomSpec>& specs, std::string name) {
    if (specs.empty()) throw std::invalid_argument("four-room family needs at least one task");
    for (const auto& s : specs)
        if (!s.same_geometry(specs.front())) throw std::invalid_argument("four-room tasks disagree in geometry");
    const auto& base = specs.front();
    if (base.slip < 0.0 || base.slip >= 1.0) throw std::invalid_argument("slip must lie in [0,1)");
    const FourRoomLayout lay(base);
    const int S = lay.num_states(), A = 4;
    const int cells = lay.num_cells();

    for (int g = 0; g < 4; ++g) {
        bool any_open = false, any_closed = false;
        for (const auto& s : specs) (s.open[static_cast<std::size_t>(g)] ? any_open : any_closed) = true;
        if (!any_open || !any_closed)
            throw std::invalid_argument("gate " + std::to_string(g) + " never changes across tasks, so it is not an exit");
    }
    if (base.dummy_start) {
        bool varies = false;
        for (const auto& s : specs) varies |= !(s.start == base.start);
        if (!varies) throw std::invalid_argument("dummy start exit never changes across tasks");
    } else {
        for (const auto& s : specs)
            if (!(s.start == base.start)) throw std::invalid_argument("tasks disagree in start cell without a dummy start");
    }

    TaskFamily fam;
    fam.name = std::move(name);
    for (const auto& spec : specs) {
        lay.state_of(spec.goal);
        lay.state_of(spec.start);
        std::vector<SparseRow> rows(static_cast<std::size_t>(S) * A);
        std::vector<double> rewards(static_cast<std::size_t>(S) * A, 0.0);
        for (int s = 0; s < cells; ++s) {
            const Cell c = lay.cell_of(s);
            for (int a = 0; a < A; ++a) {
                Cell intended = room_move(lay, c, a);
                for (int g = 0; g < 4; ++g)
                    if (lay.gate_exit(g) == StateAction{s, a} && spec.open[static_cast<std::size_t>(g)])
                        intended = lay.gate_target(g);
                auto& row = rows[static_cast<std::size_t>(s) * A + a];
                row.push_back({lay.state_of(intended), 1.0 - spec.slip});
                if (spec.slip > 0.0) {
                    row.push_back({lay.state_of(room_move(lay, c, (a + 1) % 4)), spec.slip / 2});
                    row.push_back({lay.state_of(room_move(lay, c, (a + 3) % 4)), spec.slip / 2});
                }
                if (c == spec.goal) rewards[static_cast<std::size_t>(s) * A + a] = 1.0;
            }
        }
        int start = lay.state_of(spec.start);
        if (base.dummy_start) {
            const int d = lay.dummy_state();
            rows[static_cast<std::size_t>(d) * A + 0] = {{start, 1.0}};
            for (int a = 1; a < A; ++a) rows[static_cast<std::size_t>(d) * A + a] = {{d, 1.0}};
            start = d;
        }
        fam.tasks.emplace_back(S, A, spec.horizon, start, std::move(rows), std::move(rewards));
    }

    const int C = base.dummy_start ? 5 : 4;
    std::vector<int> cluster_of(static_cast<std::size_t>(S));
    for (int s = 0; s < S; ++s) cluster_of[static_cast<std::size_t>(s)] = lay.room_of(s);
    std::vector<std::vector<int>> entrances(static_cast<std::size_t>(C));
    std::vector<std::vector<StateAction>> exits(static_cast<std::size_t>(C));
    for (int g = 0; g < 4; ++g) {
        const auto ex = lay.gate_exit(g);
        exits[static_cast<std::size_t>(lay.room_of(ex.state))].push_back(ex);
        bool any_open = false, any_closed = false;
        for (const auto& s : specs) (s.open[static_cast<std::size_t>(g)] ? any_open : any_closed) = true;
        const int target = lay.state_of(lay.gate_target(g));
        if (any_open) entrances[static_cast<std::size_t>(lay.room_of(target))].push_back(target);
        if (any_closed) entrances[static_cast<std::size_t>(lay.room_of(ex.state))].push_back(ex.state);
    }
    if (base.dummy_start) {
        const int d = lay.dummy_state();
        entrances[4].push_back(d);
        exits[4].push_back({d, 0});
        for (const auto& s : specs) {
            const int st = lay.state_of(s.start);
            entrances[static_cast<std::size_t>(lay.room_of(st))].push_back(st);
        }
    } else {
        const int st = lay.state_of(base.start);
        entrances[static_cast<std::size_t>(lay.room_of(st))].push_back(st);
    }
    fam.hierarchy = LatentHierarchy(std::move(cluster_of), std::move(entrances), std::move(exits));
    fam.check_shape();
    return fam;
}

std::vector<FourRoomSpec> six_task_four_room_specs(int horizon) {
    struct Row {
        std::array<bool, 4> open;
        Cell goal;
    };
    const Row rows[6] = {
        {{true, true, true, true}, {8, 6}},
        {{false, true, true, true}, {8, 4}},
        {{true, false, true, true}, {5, 6}},
        {{true, true, false, true}, {8, 4}},
        {{true, true, true, false}, {5, 6}},
        {{false, false, false, false}, {2, 1}},
    };
    std::vector<FourRoomSpec> out;
    for (const auto& r : rows) {
        FourRoomSpec s;
        s.open = r.open;
        s.goal = r.goal;
        s.horizon = horizon;
        out.push_back(s);
    }
    return out;
}

}  // namespace hrl
