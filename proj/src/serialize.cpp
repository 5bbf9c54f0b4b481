#include "parplan/serialize.hpp"

#include <algorithm>

#include "parplan/encoding.hpp"

using namespace std;

namespace parplan {

namespace {

bool preconditions_hold(const PlanningTask &task, const State &state, const vector<int> &actions) {
    for (int a : actions)
        if (!state_satisfies(state, task.actions.at(a).pre))
            return false;
    return true;
}

// True iff a's postcondition invalidates b's precondition on some fluent.
bool invalidates(const PlanningTask &task, int a, int b) {
    for (auto [x, v] : task.actions[a].post.bindings()) {
        auto required = task.actions[b].pre.get(x);
        if (required && *required != v)
            return true;
    }
    return false;
}

}  // namespace

bool check_forall(const PlanningTask &task, const State &state, const vector<int> &actions) {
    if (!is_confluent(task, actions))
        return false;
    if (!preconditions_hold(task, state, actions))
        return false;
    for (int a : actions) {
        const Action &action = task.actions.at(a);
        for (auto [x, v] : action.pre.bindings()) {
            auto own_post = action.post.get(x);
            if (!own_post) {
                // x must stay untouched by the others.
                for (int b : actions) {
                    if (b == a)
                        continue;
                    auto other = task.actions[b].post.get(x);
                    if (other && *other != v)
                        return false;
                }
            } else if (*own_post != v) {
                // Self-invalidated fluent: a must be its only writer.
                for (int b : actions) {
                    if (b == a)
                        continue;
                    if (task.actions[b].post.defines(x))
                        return false;
                }
            }
        }
    }
    return true;
}

CheckResult check_exists(const PlanningTask &task, const State &state, const vector<int> &actions) {
    CheckResult result;
    if (!is_confluent(task, actions) || !preconditions_hold(task, state, actions)) {
        result.non_ready = actions;
        return result;
    }
    // Edge a -> b: a invalidates b, so b must precede a. Kahn over the
    // precedence relation with ascending-ordinal tie-breaking.
    auto edges = invalidation_edges(task, actions);
    vector<int> pending = actions;
    sort(pending.begin(), pending.end());
    vector<int> order;
    while (!pending.empty()) {
        int chosen = -1;
        for (size_t i = 0; i < pending.size(); ++i) {
            int candidate = pending[i];
            bool blocked = false;
            for (auto [a, b] : edges) {
                if (a != candidate)
                    continue;
                // b must come first; blocked while b is still pending.
                if (find(pending.begin(), pending.end(), b) != pending.end()) {
                    blocked = true;
                    break;
                }
            }
            if (!blocked) {
                chosen = static_cast<int>(i);
                break;
            }
        }
        if (chosen == -1) {
            result.non_ready = pending;
            return result;
        }
        order.push_back(pending[chosen]);
        pending.erase(pending.begin() + chosen);
    }
    result.ok = true;
    result.witness = move(order);
    return result;
}

CheckResult check_exists_fixpoint(
    const PlanningTask &task, const State &state, const vector<int> &actions) {
    CheckResult result;
    if (!is_confluent(task, actions) || !preconditions_hold(task, state, actions)) {
        result.non_ready = actions;
        return result;
    }
    vector<int> sorted_actions = actions;
    sort(sorted_actions.begin(), sorted_actions.end());
    vector<bool> applied(task.actions.size(), false);
    vector<int> order;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int a : sorted_actions) {
            if (applied[a])
                continue;
            bool all_ready = true;
            for (int b : sorted_actions) {
                if (b == a || applied[b])
                    continue;
                if (invalidates(task, a, b)) {
                    all_ready = false;
                    break;
                }
            }
            if (all_ready) {
                applied[a] = true;
                order.push_back(a);
                changed = true;
            }
        }
    }
    for (int a : sorted_actions)
        if (!applied[a])
            result.non_ready.push_back(a);
    if (result.non_ready.empty()) {
        result.ok = true;
        result.witness = move(order);
    }
    return result;
}

CheckResult check_relaxed(const PlanningTask &task, const State &state, const vector<int> &actions) {
    CheckResult result;
    if (!is_confluent(task, actions)) {
        result.non_ready = actions;
        return result;
    }
    vector<int> sorted_actions = actions;
    sort(sorted_actions.begin(), sorted_actions.end());
    // reach starts from the current state and grows with safe postconditions.
    vector<vector<bool>> reach(task.fluents.size());
    for (size_t x = 0; x < task.fluents.size(); ++x) {
        reach[x].assign(task.fluents[x].values.size(), false);
        reach[x][state.values[x]] = true;
    }
    vector<bool> applied(task.actions.size(), false);
    vector<int> order;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int a : sorted_actions) {
            if (applied[a])
                continue;
            bool reachable = true;
            for (auto [x, v] : task.actions[a].pre.bindings())
                if (!reach[x][v]) {
                    reachable = false;
                    break;
                }
            if (!reachable)
                continue;
            bool all_ready = true;
            for (int b : sorted_actions) {
                if (b == a || applied[b])
                    continue;
                if (invalidates(task, a, b)) {
                    all_ready = false;
                    break;
                }
            }
            if (!all_ready)
                continue;
            applied[a] = true;
            order.push_back(a);
            for (auto [x, v] : task.actions[a].post.bindings())
                reach[x][v] = true;
            changed = true;
        }
    }
    for (int a : sorted_actions)
        if (!applied[a])
            result.non_ready.push_back(a);
    if (result.non_ready.empty()) {
        result.ok = true;
        result.witness = move(order);
    }
    return result;
}

string ValidationReport::to_line() const {
    if (valid)
        return "VALID";
    return "INVALID step=" + std::to_string(failed_step) + " reason=" + reason;
}

ValidationReport validate_plan(const PlanningTask &task, const StepPlan &plan) {
    ValidationReport report;
    State state = task.init;
    for (size_t i = 0; i < plan.steps.size(); ++i) {
        const vector<int> &step = plan.steps[i];
        int step_number = static_cast<int>(i) + 1;
        for (int a : step)
            if (a < 0 || a >= static_cast<int>(task.actions.size()))
                throw InputError("plan step " + std::to_string(step_number) +
                                 " references unknown action ordinal #" + std::to_string(a));
        if (step.empty())
            continue;  // idle state

        if (plan.semantics == PlanSemantics::sequential) {
            if (step.size() > 1) {
                report.failed_step = step_number;
                report.reason = "sequential_cardinality";
                return report;
            }
            auto next = successor(task, state, step[0]);
            if (!next) {
                report.failed_step = step_number;
                report.reason = "inapplicable";
                return report;
            }
            state = move(*next);
            report.flattened.push_back(step[0]);
            continue;
        }

        if (!is_confluent(task, step)) {
            report.failed_step = step_number;
            report.reason = "not_confluent";
            return report;
        }
        vector<int> witness;
        bool ok = false;
        switch (plan.semantics) {
        case PlanSemantics::forall: {
            ok = check_forall(task, state, step);
            witness = step;
            sort(witness.begin(), witness.end());
            break;
        }
        case PlanSemantics::exists: {
            auto result = check_exists(task, state, step);
            ok = result.ok;
            witness = move(result.witness);
            break;
        }
        case PlanSemantics::relaxed: {
            auto result = check_relaxed(task, state, step);
            ok = result.ok;
            witness = move(result.witness);
            break;
        }
        default:
            break;
        }
        if (!ok) {
            report.failed_step = step_number;
            report.reason = "not_serializable";
            return report;
        }
        report.flattened.insert(report.flattened.end(), witness.begin(), witness.end());
        state = parallel_update(task, state, step);
    }
    if (!check_goal(state, task.goal)) {
        report.failed_step = static_cast<int>(plan.steps.size());
        report.reason = "goal";
        return report;
    }
    report.valid = true;
    report.final_state = move(state);
    return report;
}

bool oracle_serializable(const PlanningTask &task, const State &state,
                         const vector<int> &actions, PlanSemantics semantics) {
    if (actions.size() > 8)
        throw UsageError("oracle_serializable: action set larger than the factorial guard (8)");
    if (semantics == PlanSemantics::sequential)
        throw UsageError("oracle_serializable: sequential sets are not serialized");
    vector<int> permutation = actions;
    sort(permutation.begin(), permutation.end());

    if (semantics == PlanSemantics::forall || semantics == PlanSemantics::exists) {
        if (!preconditions_hold(task, state, actions))
            return false;
    }
    bool some_defined = false;
    bool all_defined = true;
    do {
        if (apply_sequence(task, state, permutation))
            some_defined = true;
        else
            all_defined = false;
    } while (next_permutation(permutation.begin(), permutation.end()));
    switch (semantics) {
    case PlanSemantics::forall:
        return all_defined;
    case PlanSemantics::exists:
    case PlanSemantics::relaxed:
        return some_defined;
    default:
        return false;
    }
}

}  // namespace parplan
