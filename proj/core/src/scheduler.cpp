#include "workwell/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>

namespace workwell {

QTable::QTable(int state_count, int action_count)
    : states_(state_count),
      actions_(action_count),
      values_(static_cast<std::size_t>(state_count) * static_cast<std::size_t>(action_count), 0.0) {
    if (state_count < 1 || action_count < 1) {
        throw std::invalid_argument("QTable: state_count and action_count must be >= 1");
    }
}

void QTable::check_indices(int s, int a) const {
    if (s < 0 || s >= states_ || a < 0 || a >= actions_) {
        throw std::invalid_argument("QTable: index (" + std::to_string(s) + "," + std::to_string(a) +
                                    ") out of range for " + std::to_string(states_) + "x" +
                                    std::to_string(actions_) + " table");
    }
}

double QTable::at(int s, int a) const {
    check_indices(s, a);
    return values_[static_cast<std::size_t>(s) * actions_ + a];
}

void QTable::set(int s, int a, double v) {
    check_indices(s, a);
    if (!std::isfinite(v)) {
        throw std::invalid_argument("QTable: refusing to store non-finite value");
    }
    values_[static_cast<std::size_t>(s) * actions_ + a] = v;
}

std::span<const double> QTable::row(int s) const {
    check_indices(s, 0);
    return {values_.data() + static_cast<std::size_t>(s) * actions_,
            static_cast<std::size_t>(actions_)};
}

std::vector<std::string> validate_learning_params(const LearningParams& p) {
    std::vector<std::string> violations;
    if (!(p.alpha > 0.0 && p.alpha <= 1.0)) violations.push_back("alpha out of (0,1]");
    if (!(p.gamma >= 0.0 && p.gamma < 1.0)) violations.push_back("gamma out of [0,1)");
    if (!(p.epsilon >= 0.0 && p.epsilon <= 1.0)) violations.push_back("epsilon out of [0,1]");
    if (!(p.epsilon_decay > 0.0 && p.epsilon_decay <= 1.0)) {
        violations.push_back("epsilon_decay out of (0,1]");
    }
    return violations;
}

LearningParams make_learning_params(double alpha, double gamma, double epsilon,
                                    double epsilon_decay) {
    LearningParams p{alpha, gamma, epsilon, epsilon_decay};
    auto violations = validate_learning_params(p);
    if (!violations.empty()) {
        std::string msg = "invalid learning params:";
        for (const auto& v : violations) msg += " " + v + ";";
        throw ConfigError(msg);
    }
    return p;
}

namespace {

int greedy_action(const QTable& table, int s) {
    auto row = table.row(s);
    int best = 0;
    for (int a = 1; a < table.action_count(); ++a) {
        if (row[a] > row[best]) best = a; // ties keep the lowest index
    }
    return best;
}

double row_max(const QTable& table, int s) {
    auto row = table.row(s);
    return *std::max_element(row.begin(), row.end());
}

} // namespace

void q_update(QTable& table, int s, int a, double r, int s_next, const LearningParams& params) {
    if (!std::isfinite(r)) {
        throw std::invalid_argument("q_update: non-finite reward");
    }
    double target = r + params.gamma * row_max(table, s_next);
    double current = table.at(s, a);
    table.set(s, a, current + params.alpha * (target - current));
}

int select_action(const QTable& table, int s, double epsilon, Rng& rng) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw std::invalid_argument("select_action: epsilon out of [0,1]");
    }
    // The exploration coin is always drawn, so the consumed stream length
    // does not depend on the table contents.
    double coin = rng.uniform();
    if (coin < epsilon) {
        return rng.uniform_int(table.action_count());
    }
    (void)table.row(s); // range check
    return greedy_action(table, s);
}

double scalarize(const RewardVector& reward, double w_productivity, double w_wellbeing) {
    if (!(w_productivity >= 0.0) || !(w_wellbeing >= 0.0)) {
        throw std::invalid_argument("scalarize: weights must be >= 0");
    }
    return w_productivity * reward.productivity_component +
           w_wellbeing * reward.wellbeing_component;
}

namespace {

void check_mdp(const TabularMdp& mdp) {
    if (mdp.state_count < 1 || mdp.action_count < 1) {
        throw std::invalid_argument("train_policy: mdp dimensions must be >= 1");
    }
    if (!mdp.transition || !mdp.reward) {
        throw std::invalid_argument("train_policy: mdp transition/reward must be callable");
    }
    if (mdp.episode_length < 1) {
        throw std::invalid_argument("train_policy: episode_length must be >= 1");
    }
    if (mdp.initial_state >= mdp.state_count) {
        throw std::invalid_argument("train_policy: initial_state out of range");
    }
}

double checked_reward(const TabularMdp& mdp, int s, int a) {
    double r = mdp.reward(s, a);
    if (!std::isfinite(r)) {
        throw std::invalid_argument("train_policy: mdp reward non-finite at (s=" +
                                    std::to_string(s) + ", a=" + std::to_string(a) + ")");
    }
    return r;
}

int checked_transition(const TabularMdp& mdp, int s, int a) {
    int next = mdp.transition(s, a);
    if (next < 0 || next >= mdp.state_count) {
        throw std::invalid_argument("train_policy: mdp transition out of range at (s=" +
                                    std::to_string(s) + ", a=" + std::to_string(a) + ")");
    }
    return next;
}

// One epsilon-greedy episode; updates the table in place and returns the
// discounted return of the visited trajectory.
double run_episode(const TabularMdp& mdp, QTable& table, const LearningParams& params,
                   double epsilon, Rng& rng, bool learn) {
    int s = mdp.initial_state >= 0 ? mdp.initial_state : rng.uniform_int(mdp.state_count);
    double discounted = 0.0;
    double discount = 1.0;
    for (int step = 0; step < mdp.episode_length; ++step) {
        int a = select_action(table, s, epsilon, rng);
        double r = checked_reward(mdp, s, a);
        int s_next = checked_transition(mdp, s, a);
        if (learn) q_update(table, s, a, r, s_next, params);
        discounted += discount * r;
        discount *= params.gamma;
        s = s_next;
    }
    return discounted;
}

} // namespace

QTable train_policy(const TabularMdp& mdp, const LearningParams& params, int episodes,
                    RngState seed) {
    check_mdp(mdp);
    if (episodes < 1) throw std::invalid_argument("train_policy: episodes must be >= 1");
    QTable table(mdp.state_count, mdp.action_count);
    Rng rng(seed);
    double epsilon = params.epsilon;
    for (int e = 0; e < episodes; ++e) {
        run_episode(mdp, table, params, epsilon, rng, /*learn=*/true);
        epsilon *= params.epsilon_decay;
    }
    return table;
}

AssignmentInstance::AssignmentInstance(int employees, int tasks, int slots, int capacity)
    : employees_(employees), tasks_(tasks), slots_(slots), capacity_(capacity) {
    if (employees < 0 || tasks < 0 || slots < 1 || capacity < 1) {
        throw std::invalid_argument("AssignmentInstance: bad dimensions");
    }
    weights_.assign(static_cast<std::size_t>(employees) * tasks * slots, 0.0);
}

double AssignmentInstance::weight(int i, int j, int k) const {
    return weights_[(static_cast<std::size_t>(i) * tasks_ + j) * slots_ + k];
}

void AssignmentInstance::set_weight(int i, int j, int k, double w) {
    if (!std::isfinite(w) || w < 0.0) {
        throw std::invalid_argument("AssignmentInstance: weights must be finite and >= 0");
    }
    weights_[(static_cast<std::size_t>(i) * tasks_ + j) * slots_ + k] = w;
}

namespace {

struct ExactSearch {
    const AssignmentInstance& inst;
    std::vector<int> used; // per (employee,slot) pair
    std::vector<double> suffix_best; // suffix_best[j] = sum of per-task max weights from j on
    std::vector<std::array<int, 3>> current;
    std::vector<std::array<int, 3>> best;
    double best_value = 0.0;
    double current_value = 0.0;

    explicit ExactSearch(const AssignmentInstance& instance) : inst(instance) {
        used.assign(static_cast<std::size_t>(inst.employees()) * inst.slots(), 0);
        suffix_best.assign(static_cast<std::size_t>(inst.tasks()) + 1, 0.0);
        for (int j = inst.tasks() - 1; j >= 0; --j) {
            double task_max = 0.0;
            for (int i = 0; i < inst.employees(); ++i) {
                for (int k = 0; k < inst.slots(); ++k) {
                    task_max = std::max(task_max, inst.weight(i, j, k));
                }
            }
            suffix_best[j] = suffix_best[j + 1] + task_max;
        }
    }

    void run(int j) {
        if (j == inst.tasks()) {
            if (current_value > best_value) {
                best_value = current_value;
                best = current;
            }
            return;
        }
        if (current_value + suffix_best[j] <= best_value) return; // bound prune
        // Option: skip this task.
        run(j + 1);
        // Option: assign it to any (employee, slot) with spare capacity.
        for (int i = 0; i < inst.employees(); ++i) {
            for (int k = 0; k < inst.slots(); ++k) {
                double w = inst.weight(i, j, k);
                if (w <= 0.0) continue; // zero-weight picks never improve the objective
                int& slot_used = used[static_cast<std::size_t>(i) * inst.slots() + k];
                if (slot_used >= inst.capacity()) continue;
                ++slot_used;
                current.push_back({i, j, k});
                current_value += w;
                run(j + 1);
                current_value -= w;
                current.pop_back();
                --slot_used;
            }
        }
    }
};

} // namespace

AssignmentResult schedule_assignments(const AssignmentInstance& instance) {
    AssignmentResult result;
    if (instance.tasks() == 0 || instance.employees() == 0) {
        return result;
    }
    if (instance.tasks() <= kExactAssignmentTaskLimit) {
        ExactSearch search(instance);
        search.run(0);
        result.chosen = std::move(search.best);
        result.objective = search.best_value;
        result.exact = true;
    } else {
        // Greedy by descending weight with feasibility checks; lexicographic
        // (i,j,k) order breaks weight ties deterministically.
        struct Triple {
            double w;
            int i, j, k;
        };
        std::vector<Triple> triples;
        for (int i = 0; i < instance.employees(); ++i) {
            for (int j = 0; j < instance.tasks(); ++j) {
                for (int k = 0; k < instance.slots(); ++k) {
                    double w = instance.weight(i, j, k);
                    if (w > 0.0) triples.push_back({w, i, j, k});
                }
            }
        }
        std::sort(triples.begin(), triples.end(), [](const Triple& a, const Triple& b) {
            if (a.w != b.w) return a.w > b.w;
            return std::tie(a.i, a.j, a.k) < std::tie(b.i, b.j, b.k);
        });
        std::vector<int> used(static_cast<std::size_t>(instance.employees()) * instance.slots(), 0);
        std::vector<char> task_taken(static_cast<std::size_t>(instance.tasks()), 0);
        for (const auto& t : triples) {
            if (task_taken[t.j]) continue;
            int& slot_used = used[static_cast<std::size_t>(t.i) * instance.slots() + t.k];
            if (slot_used >= instance.capacity()) continue;
            ++slot_used;
            task_taken[t.j] = 1;
            result.chosen.push_back({t.i, t.j, t.k});
            result.objective += t.w;
        }
        result.exact = false;
    }
    std::sort(result.chosen.begin(), result.chosen.end());
    return result;
}

HierarchicalPolicy plan_hierarchical(const std::vector<MacroAction>& macro_actions,
                                     const LearningParams& high_params,
                                     const LearningParams& low_params, int episodes,
                                     RngState seed) {
    if (macro_actions.empty()) {
        throw std::invalid_argument("plan_hierarchical: need at least one macro-action");
    }
    if (episodes < 1) throw std::invalid_argument("plan_hierarchical: episodes must be >= 1");
    for (const auto& m : macro_actions) check_mdp(m.mdp);

    HierarchicalPolicy policy{QTable(1, static_cast<int>(macro_actions.size())), {}};
    policy.low.reserve(macro_actions.size());
    for (const auto& m : macro_actions) {
        policy.low.emplace_back(m.mdp.state_count, m.mdp.action_count);
    }

    Rng rng(seed);
    double high_epsilon = high_params.epsilon;
    double low_epsilon = low_params.epsilon;
    for (int e = 0; e < episodes; ++e) {
        int macro = select_action(policy.high, 0, high_epsilon, rng);
        const TabularMdp& mdp = macro_actions[static_cast<std::size_t>(macro)].mdp;
        QTable& low = policy.low[static_cast<std::size_t>(macro)];
        // Train the chosen macro's low-level policy for one episode, then
        // score it with a greedy rollout; the rollout's discounted return is
        // the high-level reward.
        run_episode(mdp, low, low_params, low_epsilon, rng, /*learn=*/true);
        double macro_return = run_episode(mdp, low, low_params, 0.0, rng, /*learn=*/false);
        // One macro choice per episode: terminal update without bootstrap.
        double current = policy.high.at(0, macro);
        policy.high.set(0, macro, current + high_params.alpha * (macro_return - current));
        high_epsilon *= high_params.epsilon_decay;
        low_epsilon *= low_params.epsilon_decay;
    }
    return policy;
}

std::string qtable_to_csv(const QTable& table) {
    std::string out;
    for (int s = 0; s < table.state_count(); ++s) {
        for (int a = 0; a < table.action_count(); ++a) {
            if (a) out += ',';
            out += fmt_double(table.at(s, a));
        }
        out += '\n';
    }
    return out;
}

QTable qtable_from_csv(const std::string& csv) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw ParseError("qtable csv: bad numeric cell '" + cell + "'");
            }
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw ParseError("qtable csv: ragged rows");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty() || rows.front().empty()) {
        throw ParseError("qtable csv: empty table");
    }
    QTable table(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
    for (int s = 0; s < table.state_count(); ++s) {
        for (int a = 0; a < table.action_count(); ++a) {
            table.set(s, a, rows[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)]);
        }
    }
    return table;
}

} // namespace workwell
