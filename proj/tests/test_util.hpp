#ifndef PARPLAN_TEST_UTIL_HPP
#define PARPLAN_TEST_UTIL_HPP

#include <random>
#include <vector>

#include "parplan/model.hpp"

namespace parplan::testing {

// Five binary fluents, goal {x4=1, x5=1}, four actions:
//   a1 = <{x1=0}, {x1=1, x2=1}>   a2 = <{x3=0}, {x1=1, x3=1}>
//   a3 = <{x2=1, x3=1}, {x4=1}>   a4 = <{x2=1, x3=1}, {x5=1}>
inline PlanningTask make_t1() {
    PlanningTask task;
    for (int i = 1; i <= 5; ++i)
        task.fluents.push_back({"x" + std::to_string(i), {"0", "1"}});
    task.init.values = {0, 0, 0, 0, 0};
    task.goal.set(3, 1);
    task.goal.set(4, 1);
    Action a1{"a1", {}, {}};
    a1.pre.set(0, 0);
    a1.post.set(0, 1);
    a1.post.set(1, 1);
    Action a2{"a2", {}, {}};
    a2.pre.set(2, 0);
    a2.post.set(0, 1);
    a2.post.set(2, 1);
    Action a3{"a3", {}, {}};
    a3.pre.set(1, 1);
    a3.pre.set(2, 1);
    a3.post.set(3, 1);
    Action a4{"a4", {}, {}};
    a4.pre.set(1, 1);
    a4.pre.set(2, 1);
    a4.post.set(4, 1);
    task.actions = {a1, a2, a3, a4};
    validate_task(task);
    return task;
}

// Three binary fluents, goal {x3=1}:
//   a1 = <{}, {x1=1, x2=1}>   a2 = <{x1=1, x2=0}, {x3=1}>
// No sequential plan exists; {a1,a2} has an acyclic invalidation graph yet
// is not relaxed-serializable.
inline PlanningTask make_t2() {
    PlanningTask task;
    for (int i = 1; i <= 3; ++i)
        task.fluents.push_back({"x" + std::to_string(i), {"0", "1"}});
    task.init.values = {0, 0, 0};
    task.goal.set(2, 1);
    Action a1{"a1", {}, {}};
    a1.post.set(0, 1);
    a1.post.set(1, 1);
    Action a2{"a2", {}, {}};
    a2.pre.set(0, 1);
    a2.pre.set(1, 0);
    a2.post.set(2, 1);
    task.actions = {a1, a2};
    validate_task(task);
    return task;
}

struct RandomTaskParams {
    int max_fluents = 5;
    int max_domain = 3;
    int max_actions = 6;
    int max_pre = 2;
    int max_post = 2;
    bool with_goal = true;
};

inline PlanningTask random_task(std::mt19937 &rng, const RandomTaskParams &params = {}) {
    auto pick = [&](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };
    PlanningTask task;
    int num_fluents = pick(1, params.max_fluents);
    for (int x = 0; x < num_fluents; ++x) {
        Fluent fluent;
        fluent.name = "f" + std::to_string(x);
        int domain = pick(2, params.max_domain);
        for (int v = 0; v < domain; ++v)
            fluent.values.push_back(std::to_string(v));
        task.fluents.push_back(std::move(fluent));
    }
    task.init.values.resize(num_fluents);
    for (int x = 0; x < num_fluents; ++x)
        task.init.values[x] = pick(0, static_cast<int>(task.fluents[x].values.size()) - 1);

    int num_actions = pick(1, params.max_actions);
    for (int a = 0; a < num_actions; ++a) {
        Action action;
        action.name = "op" + std::to_string(a);
        int pre_count = pick(0, std::min(params.max_pre, num_fluents));
        int post_count = pick(1, std::min(params.max_post, num_fluents));
        for (int k = 0; k < pre_count; ++k) {
            int x = pick(0, num_fluents - 1);
            action.pre.set(x, pick(0, static_cast<int>(task.fluents[x].values.size()) - 1));
        }
        for (int k = 0; k < post_count; ++k) {
            int x = pick(0, num_fluents - 1);
            action.post.set(x, pick(0, static_cast<int>(task.fluents[x].values.size()) - 1));
        }
        task.actions.push_back(std::move(action));
    }
    if (params.with_goal) {
        int goals = pick(0, std::min(2, num_fluents));
        for (int k = 0; k < goals; ++k) {
            int x = pick(0, num_fluents - 1);
            task.goal.set(x, pick(0, static_cast<int>(task.fluents[x].values.size()) - 1));
        }
    }
    validate_task(task);
    return task;
}

// Random confluent subset of the task's actions (possibly empty).
inline std::vector<int> random_confluent_set(
    std::mt19937 &rng, const PlanningTask &task, int max_size) {
    std::vector<int> order(task.actions.size());
    for (size_t i = 0; i < order.size(); ++i)
        order[i] = static_cast<int>(i);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<int> chosen;
    for (int a : order) {
        if (static_cast<int>(chosen.size()) >= max_size)
            break;
        chosen.push_back(a);
        if (!is_confluent(task, chosen))
            chosen.pop_back();
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

inline State random_state(std::mt19937 &rng, const PlanningTask &task) {
    State state;
    for (const auto &fluent : task.fluents)
        state.values.push_back(std::uniform_int_distribution<int>(
            0, static_cast<int>(fluent.values.size()) - 1)(rng));
    return state;
}

}  // namespace parplan::testing

#endif
