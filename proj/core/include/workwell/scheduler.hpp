#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "workwell/domain.hpp"
#include "workwell/rng.hpp"

namespace workwell {

// Dense tabular action-value function. Dimensions are fixed at construction;
// entries start at zero.
class QTable {
public:
    QTable(int state_count, int action_count);

    int state_count() const { return states_; }
    int action_count() const { return actions_; }

    double at(int s, int a) const;
    void set(int s, int a, double v);
    std::span<const double> row(int s) const;

    friend bool operator==(const QTable&, const QTable&) = default;

private:
    void check_indices(int s, int a) const;

    int states_;
    int actions_;
    std::vector<double> values_;
};

struct LearningParams {
    double alpha = 0.1;         // (0,1]
    double gamma = 0.9;         // [0,1)
    double epsilon = 0.1;       // [0,1]
    double epsilon_decay = 1.0; // multiplicative per episode, (0,1]
};

std::vector<std::string> validate_learning_params(const LearningParams& p);
// Range-checked construction; throws ConfigError listing every violation.
LearningParams make_learning_params(double alpha, double gamma, double epsilon,
                                    double epsilon_decay = 1.0);

// Q(s,a) += alpha * (r + gamma * max_a' Q(s_next,a') - Q(s,a)). Touches
// exactly one entry. Out-of-range indices throw std::invalid_argument.
void q_update(QTable& table, int s, int a, double r, int s_next, const LearningParams& params);

// Epsilon-greedy: argmax with lowest-index tie-break, or a uniform action
// with probability epsilon. Deterministic given the rng state.
int select_action(const QTable& table, int s, double epsilon, Rng& rng);

struct RewardVector {
    double productivity_component = 0.0;
    double wellbeing_component = 0.0;
};

// r = w_productivity * productivity + w_wellbeing * wellbeing. Weights >= 0.
double scalarize(const RewardVector& reward, double w_productivity, double w_wellbeing);

// Deterministic tabular MDP: transition(s,a) -> s', reward(s,a) -> r, both
// total over the index ranges. Episodes run for episode_length steps from
// initial_state, or from a uniformly random state when initial_state < 0.
struct TabularMdp {
    int state_count = 1;
    int action_count = 1;
    std::function<int(int, int)> transition;
    std::function<double(int, int)> reward;
    int episode_length = 32;
    int initial_state = -1;
};

// Episodic epsilon-greedy Q-learning. epsilon decays multiplicatively per
// episode when epsilon_decay < 1. Non-finite rewards and out-of-range
// transitions throw std::invalid_argument.
QTable train_policy(const TabularMdp& mdp, const LearningParams& params, int episodes,
                    RngState seed);

// Weighted assignment over employees x tasks x slots.
class AssignmentInstance {
public:
    AssignmentInstance(int employees, int tasks, int slots, int capacity = 1);

    int employees() const { return employees_; }
    int tasks() const { return tasks_; }
    int slots() const { return slots_; }
    int capacity() const { return capacity_; }

    double weight(int i, int j, int k) const;
    void set_weight(int i, int j, int k, double w);

private:
    int employees_, tasks_, slots_, capacity_;
    std::vector<double> weights_;
};

inline constexpr int kExactAssignmentTaskLimit = 12;

struct AssignmentResult {
    std::vector<std::array<int, 3>> chosen; // (i,j,k), lexicographically sorted
    double objective = 0.0;
    bool exact = true; // false when the greedy fallback ran
};

// Maximizes the summed weight of chosen (employee,task,slot) triples subject
// to: each task chosen at most once, each (employee,slot) pair holding at
// most `capacity` tasks. Instances with <= 12 tasks are solved exactly by a
// pruned depth-first search; larger instances fall back to greedy-by-weight
// and report exact=false. Zero-weight triples are never chosen, so the
// all-zero instance canonically yields the empty set.
AssignmentResult schedule_assignments(const AssignmentInstance& instance);

struct MacroAction {
    std::string name;
    TabularMdp mdp;
};

struct HierarchicalPolicy {
    QTable high;              // one state, one action per macro
    std::vector<QTable> low;  // per-macro low-level tables
};

// Two-level scheme: per episode the high level picks one macro-action
// (epsilon-greedy over a single-state table); the chosen macro runs one
// epsilon-greedy training episode of its low-level MDP, then one greedy
// rollout whose discounted return becomes the high-level reward.
HierarchicalPolicy plan_hierarchical(const std::vector<MacroAction>& macro_actions,
                                     const LearningParams& high_params,
                                     const LearningParams& low_params, int episodes,
                                     RngState seed);

// CSV round-trip: rows = states, columns = actions.
std::string qtable_to_csv(const QTable& table);
QTable qtable_from_csv(const std::string& csv);

} // namespace workwell
