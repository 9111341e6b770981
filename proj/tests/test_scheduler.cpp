#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "oracles.hpp"
#include "workwell/scheduler.hpp"

using namespace workwell;

TEST_CASE("QTable basics") {
    QTable t(3, 4);
    CHECK(t.state_count() == 3);
    CHECK(t.action_count() == 4);
    for (int s = 0; s < 3; ++s) {
        for (int a = 0; a < 4; ++a) REQUIRE(t.at(s, a) == 0.0);
    }
    t.set(2, 3, 1.5);
    CHECK(t.at(2, 3) == 1.5);
    CHECK_THROWS_AS(t.at(3, 0), std::invalid_argument);
    CHECK_THROWS_AS(t.set(0, 4, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(t.set(0, 0, std::nan("")), std::invalid_argument);
    CHECK_THROWS_AS(QTable(0, 1), std::invalid_argument);
}

TEST_CASE("learning params validation") {
    CHECK(validate_learning_params(LearningParams{0.1, 0.9, 0.1, 1.0}).empty());
    CHECK_THROWS_AS(make_learning_params(0.0, 0.9, 0.1), ConfigError);
    CHECK_THROWS_AS(make_learning_params(0.1, 1.0, 0.1), ConfigError);
    CHECK_THROWS_AS(make_learning_params(0.1, 0.9, 1.5), ConfigError);
    CHECK_THROWS_AS(make_learning_params(0.1, 0.9, 0.1, 0.0), ConfigError);
    CHECK(make_learning_params(1.0, 0.0, 0.0).alpha == 1.0);
}

TEST_CASE("q_update") {
    // alpha = 0 leaves the table untouched whatever the reward is.
    QTable t(2, 2);
    t.set(0, 0, 2.0);
    q_update(t, 0, 0, 123.0, 1, LearningParams{0.0, 0.9, 0.0});
    CHECK(t.at(0, 0) == 2.0);

    // Zero table, full learning rate: the max term vanishes.
    QTable z(3, 2);
    q_update(z, 1, 0, 1.0, 2, LearningParams{1.0, 0.9, 0.0});
    CHECK(z.at(1, 0) == 1.0);

    // Hand-evaluated: 2 + 0.5*(1 + 0.5*3 - 2) = 2.25.
    QTable h(2, 2);
    h.set(0, 0, 2.0);
    h.set(1, 0, 3.0);
    h.set(1, 1, 1.0);
    q_update(h, 0, 0, 1.0, 1, LearningParams{0.5, 0.5, 0.0});
    CHECK(h.at(0, 0) == doctest::Approx(2.25).epsilon(1e-15));

    CHECK_THROWS_AS(q_update(h, 5, 0, 1.0, 0, LearningParams{0.5, 0.5, 0.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(q_update(h, 0, 0, std::nan(""), 0, LearningParams{0.5, 0.5, 0.0}),
                    std::invalid_argument);
}

TEST_CASE("q_update touches exactly one entry") {
    Rng r(7);
    for (int round = 0; round < 300; ++round) {
        int states = 2 + r.uniform_int(6);
        int actions = 2 + r.uniform_int(5);
        QTable t(states, actions);
        for (int s = 0; s < states; ++s) {
            for (int a = 0; a < actions; ++a) t.set(s, a, r.uniform(-5.0, 5.0));
        }
        QTable before = t;
        int s = r.uniform_int(states), a = r.uniform_int(actions), s2 = r.uniform_int(states);
        q_update(t, s, a, r.uniform(-2.0, 2.0), s2, LearningParams{0.3, 0.8, 0.0});
        for (int ss = 0; ss < states; ++ss) {
            for (int aa = 0; aa < actions; ++aa) {
                if (ss == s && aa == a) continue;
                REQUIRE(t.at(ss, aa) == before.at(ss, aa));
            }
        }
    }
}

TEST_CASE("q_update fixed point is a no-op") {
    // Tables satisfying Q(s,a) = r + gamma*max_a' Q(s',a') exactly stay put
    // to machine precision for any alpha.
    Rng r(11);
    for (int round = 0; round < 1000; ++round) {
        int states = 2 + r.uniform_int(5);
        int actions = 2 + r.uniform_int(4);
        QTable t(states, actions);
        for (int s = 0; s < states; ++s) {
            for (int a = 0; a < actions; ++a) t.set(s, a, r.uniform(-10.0, 10.0));
        }
        int s = r.uniform_int(states), a = r.uniform_int(actions), s2 = r.uniform_int(states);
        double gamma = r.uniform(0.0, 0.999);
        double max_next = *std::max_element(t.row(s2).begin(), t.row(s2).end());
        double reward = t.at(s, a) - gamma * max_next; // Bellman-consistent by construction
        double before = t.at(s, a);
        q_update(t, s, a, reward, s2, LearningParams{r.uniform(0.01, 1.0), gamma, 0.0});
        REQUIRE(std::abs(t.at(s, a) - before) <= 1e-12);
    }
}

TEST_CASE("select_action") {
    QTable t(1, 3);
    t.set(0, 0, 0.1);
    t.set(0, 1, 0.9);
    t.set(0, 2, 0.9);
    Rng r(1);
    CHECK(select_action(t, 0, 0.0, r) == 1); // tie resolves to the lowest index

    QTable zeros(2, 4);
    CHECK(select_action(zeros, 1, 0.0, r) == 0);
    CHECK_THROWS_AS(select_action(zeros, 5, 0.0, r), std::invalid_argument);
    CHECK_THROWS_AS(select_action(zeros, 0, 1.5, r), std::invalid_argument);

    // epsilon = 1: uniform over actions, binomial 3-sigma bound per action.
    QTable wide(1, 4);
    Rng er(2024);
    int counts[4] = {0, 0, 0, 0};
    for (int i = 0; i < 10000; ++i) ++counts[select_action(wide, 0, 1.0, er)];
    for (int a = 0; a < 4; ++a) {
        REQUIRE(std::abs(counts[a] - 2500) <= 130);
    }
}

TEST_CASE("select_action greedy ignores the values of non-maximal actions") {
    Rng r(303);
    for (int round = 0; round < 500; ++round) {
        int actions = 3 + r.uniform_int(5);
        QTable t(1, actions);
        int best = r.uniform_int(actions);
        for (int a = 0; a < actions; ++a) {
            t.set(0, a, a == best ? 5.0 : r.uniform(-4.0, 4.0));
        }
        Rng pick(1);
        int chosen = select_action(t, 0, 0.0, pick);
        // Permute non-maximal values; the greedy pick must not move.
        QTable permuted(1, actions);
        std::vector<double> others;
        for (int a = 0; a < actions; ++a) {
            if (a != best) others.push_back(t.at(0, a));
        }
        std::rotate(others.begin(), others.begin() + (others.empty() ? 0 : 1), others.end());
        std::size_t oi = 0;
        for (int a = 0; a < actions; ++a) {
            permuted.set(0, a, a == best ? 5.0 : others[oi++]);
        }
        Rng pick2(1);
        REQUIRE(select_action(permuted, 0, 0.0, pick2) == chosen);
    }
}

TEST_CASE("scalarize") {
    CHECK(scalarize({3.0, -7.0}, 1.0, 0.0) == 3.0);
    CHECK(scalarize({3.0, -7.0}, 0.0, 1.0) == -7.0);
    CHECK(scalarize({2.0, -1.0}, 0.5, 0.5) == 0.5);
    CHECK_THROWS_AS(scalarize({1.0, 1.0}, -0.1, 0.5), std::invalid_argument);

    // Scaling both weights by c > 0 never changes the greedy argmax.
    Rng r(5);
    for (int round = 0; round < 300; ++round) {
        double wp = r.uniform(0.0, 2.0), ww = r.uniform(0.0, 2.0);
        if (wp + ww == 0.0) wp = 1.0;
        double c = r.uniform(0.1, 50.0);
        std::vector<RewardVector> candidates;
        for (int i = 0; i < 5; ++i) {
            candidates.push_back({r.uniform(-3.0, 3.0), r.uniform(-3.0, 3.0)});
        }
        auto argmax = [&](double a, double b) {
            int best = 0;
            for (int i = 1; i < 5; ++i) {
                if (scalarize(candidates[i], a, b) > scalarize(candidates[best], a, b)) best = i;
            }
            return best;
        };
        REQUIRE(argmax(wp, ww) == argmax(c * wp, c * ww));
    }
}

namespace {

// Two-state deterministic chain: action 0 advances (reward 1 from s0, 2 from
// s1), action 1 stays (reward 0).
TabularMdp two_state_chain() {
    TabularMdp mdp;
    mdp.state_count = 2;
    mdp.action_count = 2;
    mdp.transition = [](int s, int a) { return a == 0 ? 1 - s : s; };
    mdp.reward = [](int s, int a) { return a == 0 ? (s == 0 ? 1.0 : 2.0) : 0.0; };
    mdp.episode_length = 20;
    return mdp;
}

TabularMdp random_mdp(int states, int actions, std::uint64_t seed, int episode_length = 20) {
    // Deterministic tables generated once; captured by value in the lambdas.
    std::vector<std::vector<int>> trans(states, std::vector<int>(actions));
    std::vector<std::vector<double>> rew(states, std::vector<double>(actions));
    Rng r(seed);
    for (int s = 0; s < states; ++s) {
        for (int a = 0; a < actions; ++a) {
            trans[s][a] = r.uniform_int(states);
            rew[s][a] = r.uniform(-1.0, 2.0);
        }
    }
    TabularMdp mdp;
    mdp.state_count = states;
    mdp.action_count = actions;
    mdp.transition = [trans](int s, int a) { return trans[s][a]; };
    mdp.reward = [rew](int s, int a) { return rew[s][a]; };
    mdp.episode_length = episode_length;
    return mdp;
}

} // namespace

TEST_CASE("train_policy converges to the value-iteration oracle") {
    auto mdp = two_state_chain();
    LearningParams params{0.1, 0.9, 0.1, 1.0};
    QTable trained = train_policy(mdp, params, 5000, RngState{7});
    auto oracle = oracles::value_iteration(mdp, params.gamma);
    for (int s = 0; s < 2; ++s) {
        for (int a = 0; a < 2; ++a) {
            REQUIRE(std::abs(trained.at(s, a) - oracle[s][a]) < 1e-3);
        }
    }
}

TEST_CASE("train_policy trivial and error cases") {
    auto mdp = two_state_chain();
    QTable t = train_policy(mdp, LearningParams{0.0, 0.9, 0.1}, 1, RngState{1});
    for (int s = 0; s < 2; ++s) {
        for (int a = 0; a < 2; ++a) REQUIRE(t.at(s, a) == 0.0);
    }

    CHECK_THROWS_AS(train_policy(mdp, LearningParams{0.1, 0.9, 0.1}, 0, RngState{1}),
                    std::invalid_argument);

    auto bad = two_state_chain();
    bad.reward = [](int, int) { return std::numeric_limits<double>::infinity(); };
    CHECK_THROWS_AS(train_policy(bad, LearningParams{0.1, 0.9, 0.1}, 1, RngState{1}),
                    std::invalid_argument);
    auto bad2 = two_state_chain();
    bad2.transition = [](int, int) { return 9; };
    CHECK_THROWS_AS(train_policy(bad2, LearningParams{0.1, 0.9, 0.1}, 1, RngState{1}),
                    std::invalid_argument);
}

TEST_CASE("train_policy finds the optimal policy of a random MDP") {
    auto mdp = random_mdp(5, 3, 4242);
    LearningParams params{0.1, 0.9, 0.1, 1.0};
    QTable trained = train_policy(mdp, params, 50000, RngState{99});
    auto oracle = oracles::value_iteration(mdp, params.gamma);
    auto oracle_policy = oracles::greedy_policy(oracle);
    Rng pick(0);
    for (int s = 0; s < 5; ++s) {
        REQUIRE(select_action(trained, s, 0.0, pick) == oracle_policy[static_cast<std::size_t>(s)]);
    }

    QTable again = train_policy(mdp, params, 50000, RngState{99});
    CHECK(trained == again);
}

TEST_CASE("schedule_assignments desk cases") {
    AssignmentInstance one(1, 1, 1);
    one.set_weight(0, 0, 0, 5.0);
    auto r = schedule_assignments(one);
    REQUIRE(r.chosen.size() == 1);
    CHECK(r.chosen[0] == std::array<int, 3>{0, 0, 0});
    CHECK(r.objective == 5.0);
    CHECK(r.exact);

    AssignmentInstance cross(2, 2, 1);
    cross.set_weight(0, 0, 0, 3.0);
    cross.set_weight(0, 1, 0, 1.0);
    cross.set_weight(1, 0, 0, 1.0);
    cross.set_weight(1, 1, 0, 3.0);
    r = schedule_assignments(cross);
    CHECK(r.objective == 6.0);
    REQUIRE(r.chosen.size() == 2);
    CHECK(r.chosen[0] == std::array<int, 3>{0, 0, 0});
    CHECK(r.chosen[1] == std::array<int, 3>{1, 1, 0});

    AssignmentInstance zeros(2, 3, 2);
    r = schedule_assignments(zeros);
    CHECK(r.objective == 0.0);
    CHECK(r.chosen.empty());

    CHECK_THROWS_AS(zeros.set_weight(0, 0, 0, -1.0), std::invalid_argument);
}

TEST_CASE("schedule_assignments matches brute force on random instances") {
    Rng r(616);
    for (int round = 0; round < 200; ++round) {
        int employees = 1 + r.uniform_int(3);
        int tasks = 1 + r.uniform_int(8);
        int slots = 1 + r.uniform_int(2);
        int capacity = 1 + r.uniform_int(2);
        AssignmentInstance inst(employees, tasks, slots, capacity);
        for (int i = 0; i < employees; ++i) {
            for (int j = 0; j < tasks; ++j) {
                for (int k = 0; k < slots; ++k) {
                    if (r.uniform() < 0.2) continue; // keep some zeros
                    inst.set_weight(i, j, k, r.uniform(0.0, 4.0));
                }
            }
        }
        auto result = schedule_assignments(inst);
        REQUIRE(result.exact);
        double oracle = oracles::brute_force_assignment(inst);
        REQUIRE(result.objective == doctest::Approx(oracle).epsilon(1e-12));

        // Feasibility: unique tasks, capacity respected.
        std::set<int> seen_tasks;
        std::map<std::pair<int, int>, int> load;
        for (const auto& [i, j, k] : result.chosen) {
            REQUIRE(seen_tasks.insert(j).second);
            REQUIRE(++load[{i, k}] <= capacity);
        }
    }
}

TEST_CASE("schedule_assignments greedy fallback flags itself") {
    const int tasks = kExactAssignmentTaskLimit + 4;
    AssignmentInstance inst(3, tasks, 1, 1);
    Rng r(9);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < tasks; ++j) inst.set_weight(i, j, 0, r.uniform(0.1, 2.0));
    }
    auto result = schedule_assignments(inst);
    CHECK_FALSE(result.exact);
    // Greedy stays feasible: 3 employees x 1 slot x capacity 1.
    CHECK(result.chosen.size() == 3);
    std::set<int> tasks_seen;
    for (const auto& [i, j, k] : result.chosen) REQUIRE(tasks_seen.insert(j).second);
}

TEST_CASE("plan_hierarchical") {
    // Single macro: the trained high-level value approaches the macro's
    // value-iteration return (gamma^T truncation is ~1e-9 here).
    auto low = two_state_chain();
    low.initial_state = 0;
    low.episode_length = 30;
    LearningParams low_params{0.2, 0.5, 0.2, 1.0};
    LearningParams high_params{0.2, 0.0, 0.3, 1.0};

    auto policy = plan_hierarchical({{"only", low}}, high_params, low_params, 4000, RngState{3});
    REQUIRE(policy.high.action_count() == 1);
    auto oracle = oracles::value_iteration(low, low_params.gamma);
    double expected = oracles::greedy_return(low, oracle, 0, low_params.gamma, 30);
    CHECK(std::abs(policy.high.at(0, 0) - expected) < 1e-3);

    // Two constant-return macros: greedy high-level choice is the 1.0 arm.
    TabularMdp good;
    good.state_count = 1;
    good.action_count = 1;
    good.transition = [](int, int) { return 0; };
    good.reward = [](int, int) { return 1.0; };
    good.episode_length = 1;
    TabularMdp bad = good;
    bad.reward = [](int, int) { return 0.0; };
    auto two = plan_hierarchical({{"good", good}, {"bad", bad}}, high_params, low_params, 500,
                                 RngState{17});
    Rng pick(1);
    CHECK(select_action(two.high, 0, 0.0, pick) == 0);
    CHECK(two.high.at(0, 0) == doctest::Approx(1.0).epsilon(1e-9));

    CHECK_THROWS_AS(plan_hierarchical({{"only", low}}, high_params, low_params, 0, RngState{1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(plan_hierarchical({}, high_params, low_params, 10, RngState{1}),
                    std::invalid_argument);
}

TEST_CASE("qtable csv round-trip") {
    QTable t(3, 2);
    Rng r(21);
    for (int s = 0; s < 3; ++s) {
        for (int a = 0; a < 2; ++a) t.set(s, a, r.uniform(-3.0, 3.0));
    }
    QTable back = qtable_from_csv(qtable_to_csv(t));
    CHECK(back == t);
    CHECK_THROWS_AS(qtable_from_csv(""), ParseError);
    CHECK_THROWS_AS(qtable_from_csv("1,2\n3\n"), ParseError);
    CHECK_THROWS_AS(qtable_from_csv("1,x\n"), ParseError);
}
