#include <stdexcept>

#include "hrl/envs.hpp"

namespace hrl {

TreeEnv make_binary_tree(const BinaryTreeSpec& spec, TreeVariant variant) {
    const int W = spec.depth;
    if (W < 2 || W > 20) throw std::invalid_argument("tree depth must lie in [2,20]");
    if (!(spec.epsilon > 0.0 && spec.epsilon <= 0.5)) throw std::invalid_argument("tree epsilon must lie in (0,1/2]");
    if (spec.leaf >= (1u << (W - 1))) throw std::invalid_argument("leaf index needs more than W-1 bits");
    if ((spec.a_star != 0 && spec.a_star != 1) || (spec.e_star != 0 && spec.e_star != 1))
        throw std::invalid_argument("a* and e* must be 0 or 1");
    if (spec.horizon < W + 2) throw std::invalid_argument("tree horizon must be at least W+2");

    const bool full = variant == TreeVariant::full;
    TreeEnv env;
    env.root = 0;
    env.gate = 1 << W;
    env.trap = env.gate + 1;
    if (full) {
        env.success = env.gate + 2;
        env.failure = env.gate + 3;
    }
    env.leaf_depth = W - 1;
    const int S = full ? (1 << W) + 4 : (1 << W) + 2;
    const int A = 2;
    std::vector<SparseRow> rows(static_cast<std::size_t>(S) * A);
    std::vector<double> rewards(static_cast<std::size_t>(S) * A, 0.0);
    std::vector<char> term(static_cast<std::size_t>(S), 0);
    auto at = [&](int s, int a) -> SparseRow& { return rows[static_cast<std::size_t>(s) * A + a]; };

    // The root feeds the empty-string node, so the gate is reached at step W+1.
    for (int a = 0; a < A; ++a) at(env.root, a) = {{TreeEnv::node_index(0, 0), 1.0}};
    for (int len = 0; len < W; ++len)
        for (std::uint32_t bits = 0; bits < (1u << len); ++bits) {
            const int s = TreeEnv::node_index(len, bits);
            for (int a = 0; a < A; ++a) {
                if (len < W - 1) {
                    at(s, a) = {{TreeEnv::node_index(len + 1, bits * 2 + static_cast<std::uint32_t>(a)), 1.0}};
                } else {
                    const double p = (bits == spec.leaf && a == spec.a_star) ? 0.5 + spec.epsilon : 0.5;
                    at(s, a) = {{env.gate, p}, {env.trap, 1.0 - p}};
                }
            }
        }
    for (int a = 0; a < A; ++a) {
        at(env.trap, a) = {{env.trap, 1.0}};
        if (full) {
            at(env.gate, a) = {{a == spec.e_star ? env.success : env.failure, 1.0}};
            at(env.success, a) = {{env.success, 1.0}};
            at(env.failure, a) = {{env.failure, 1.0}};
            rewards[static_cast<std::size_t>(env.success) * A + a] = 1.0;
        } else {
            at(env.gate, a) = {{env.gate, 1.0}};
            rewards[static_cast<std::size_t>(env.gate) * A + a] = 1.0;
        }
    }
    if (full) rewards[static_cast<std::size_t>(env.gate) * A + spec.a_star] = 1.0;
    term[static_cast<std::size_t>(env.trap)] = 1;
    if (full) {
        term[static_cast<std::size_t>(env.success)] = 1;
        term[static_cast<std::size_t>(env.failure)] = 1;
    } else {
        term[static_cast<std::size_t>(env.gate)] = 1;
    }
    env.mdp = TabularMdp(S, A, spec.horizon, env.root, std::move(rows), std::move(rewards), std::move(term));

    std::vector<int> cluster_of(static_cast<std::size_t>(S), 0);
    if (full) {
        cluster_of[static_cast<std::size_t>(env.success)] = 1;
        cluster_of[static_cast<std::size_t>(env.failure)] = 2;
        env.hierarchy = LatentHierarchy(std::move(cluster_of), {{env.root}, {env.success}, {env.failure}},
                                        {{{env.gate, 0}, {env.gate, 1}}, {}, {}});
    } else {
        env.hierarchy = LatentHierarchy(std::move(cluster_of), {{env.root}}, {{}});
    }
    return env;
}

CounterexampleEnv make_high_variance_chain(int n) {
    if (n < 1) throw std::invalid_argument("chain length must be positive");
    const int S = 2 * n + 3, A = 2;
    const int star = 2 * n + 2;
    auto s_of = [](int i) { return i; };
    auto t_of = [n](int i) { return n + 1 + i; };
    std::vector<SparseRow> rows(static_cast<std::size_t>(S) * A);
    std::vector<double> rewards(static_cast<std::size_t>(S) * A, 0.0);
    auto at = [&](int s, int a) -> SparseRow& { return rows[static_cast<std::size_t>(s) * A + a]; };
    for (int i = 0; i <= n; ++i) {
        if (i < n) {
            at(s_of(i), 0) = {{s_of(i + 1), 0.5}, {t_of(i), 0.5}};
            at(s_of(i), 1) = {{s_of(i + 1), 1.0}};
        } else {
            at(s_of(n), 0) = {{t_of(n), 1.0}};
            at(s_of(n), 1) = {{s_of(0), 1.0}};
        }
        for (int a = 0; a < A; ++a) at(t_of(i), a) = {{star, 1.0}};
    }
    for (int a = 0; a < A; ++a) {
        at(star, a) = {{star, 1.0}};
        rewards[static_cast<std::size_t>(star) * A + a] = 1.0;
    }
    std::vector<char> term(static_cast<std::size_t>(S), 0);
    term[static_cast<std::size_t>(star)] = 1;
    CounterexampleEnv env;
    env.mdp = TabularMdp(S, A, n + 2, s_of(0), std::move(rows), std::move(rewards), std::move(term));
    std::vector<int> cluster_of(static_cast<std::size_t>(S), 0);
    cluster_of[static_cast<std::size_t>(star)] = 1;
    std::vector<StateAction> exits;
    for (int i = 0; i <= n; ++i)
        for (int a = 0; a < A; ++a) exits.push_back({t_of(i), a});
    env.hierarchy = LatentHierarchy(std::move(cluster_of), {{s_of(0)}, {star}}, {exits, {}});
    env.reward_cluster = {star};
    return env;
}

CounterexampleEnv make_two_arm_room(int n) {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("two-arm room needs an even horizon of at least 2");
    const int half = n / 2;
    const int s0 = 0, t = n + 1, goal = n + 2;
    auto l_of = [](int i) { return i; };
    auto r_of = [half](int i) { return half + i; };
    const int S = n + 3, A = 3;
    std::vector<SparseRow> rows(static_cast<std::size_t>(S) * A);
    std::vector<double> rewards(static_cast<std::size_t>(S) * A, 0.0);
    auto at = [&](int s, int a) -> SparseRow& { return rows[static_cast<std::size_t>(s) * A + a]; };
    at(s0, 0) = {{l_of(1), 1.0}};
    at(s0, 1) = {{r_of(1), 1.0}};
    at(s0, 2) = {{t, 1.0}};
    for (int i = 1; i <= half; ++i)
        for (int a = 0; a < A; ++a) {
            if (i < half) {
                at(l_of(i), a) = {{l_of(i + 1), 1.0}};
                at(r_of(i), a) = {{r_of(i + 1), 1.0}};
            } else if (a == 0) {
                at(l_of(i), a) = {{goal, 1.0}};
                at(r_of(i), a) = {{goal, 1.0}};
                rewards[static_cast<std::size_t>(l_of(i)) * A] = 1.0;
                rewards[static_cast<std::size_t>(r_of(i)) * A] = 1.0;
            } else {
                at(l_of(i), a) = {{l_of(i), 1.0}};
                at(r_of(i), a) = {{r_of(i), 1.0}};
            }
        }
    for (int a = 0; a < A; ++a) {
        at(t, a) = {{l_of(half), 0.5}, {r_of(half), 0.5}};
        at(goal, a) = {{goal, 1.0}};
        rewards[static_cast<std::size_t>(goal) * A + a] = 1.0;
    }
    std::vector<char> term(static_cast<std::size_t>(S), 0);
    term[static_cast<std::size_t>(goal)] = 1;
    CounterexampleEnv env;
    env.mdp = TabularMdp(S, A, n, s0, std::move(rows), std::move(rewards), std::move(term));
    std::vector<int> cluster_of(static_cast<std::size_t>(S), 0);
    cluster_of[static_cast<std::size_t>(goal)] = 1;
    env.hierarchy = LatentHierarchy(std::move(cluster_of), {{s0}, {goal}}, {{{l_of(half), 0}, {r_of(half), 0}}, {}});
    env.reward_cluster = {goal};
    return env;
}

}  // namespace hrl
