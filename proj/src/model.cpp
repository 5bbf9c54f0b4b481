#include "parplan/model.hpp"

#include <algorithm>
#include <set>

using namespace std;

namespace parplan {

PartialState::PartialState(vector<pair<int, int>> bindings)
    : bindings_(move(bindings)) {
    sort(bindings_.begin(), bindings_.end());
    for (size_t i = 1; i < bindings_.size(); ++i) {
        if (bindings_[i - 1].first == bindings_[i].first)
            throw InputError("partial state binds fluent #" +
                             std::to_string(bindings_[i].first) + " twice");
    }
}

void PartialState::set(int fluent, int value) {
    auto it = lower_bound(bindings_.begin(), bindings_.end(), make_pair(fluent, 0),
                          [](const auto &a, const auto &b) { return a.first < b.first; });
    if (it != bindings_.end() && it->first == fluent)
        it->second = value;
    else
        bindings_.insert(it, {fluent, value});
}

optional<int> PartialState::get(int fluent) const {
    auto it = lower_bound(bindings_.begin(), bindings_.end(), make_pair(fluent, 0),
                          [](const auto &a, const auto &b) { return a.first < b.first; });
    if (it != bindings_.end() && it->first == fluent)
        return it->second;
    return nullopt;
}

int PlanningTask::fluent_ordinal(const string &name) const {
    for (size_t i = 0; i < fluents.size(); ++i)
        if (fluents[i].name == name)
            return static_cast<int>(i);
    throw InputError("unknown fluent: " + name);
}

int PlanningTask::action_ordinal(const string &name) const {
    for (size_t i = 0; i < actions.size(); ++i)
        if (actions[i].name == name)
            return static_cast<int>(i);
    throw InputError("unknown action: " + name);
}

int PlanningTask::value_ordinal(int fluent, const string &value) const {
    const auto &dom = fluents.at(fluent).values;
    for (size_t i = 0; i < dom.size(); ++i)
        if (dom[i] == value)
            return static_cast<int>(i);
    throw InputError("fluent " + fluents.at(fluent).name + " has no value " + value);
}

static void check_binding_range(
    const PlanningTask &task, const PartialState &partial, const string &owner) {
    for (auto [fluent, value] : partial.bindings()) {
        if (fluent < 0 || fluent >= static_cast<int>(task.fluents.size()))
            throw InputError(owner + " references undeclared fluent #" + std::to_string(fluent));
        if (value < 0 || value >= static_cast<int>(task.fluents[fluent].values.size()))
            throw InputError(owner + " assigns " + task.fluents[fluent].name +
                             " an out-of-domain value #" + std::to_string(value));
    }
}

void validate_task(const PlanningTask &task) {
    for (const auto &fluent : task.fluents) {
        if (fluent.values.empty())
            throw InputError("fluent " + fluent.name + " has an empty domain");
        set<string> seen(fluent.values.begin(), fluent.values.end());
        if (seen.size() != fluent.values.size())
            throw InputError("fluent " + fluent.name + " has duplicate domain values");
    }
    if (task.init.values.size() != task.fluents.size())
        throw InputError("initial state is not total: " +
                         std::to_string(task.init.values.size()) + " of " +
                         std::to_string(task.fluents.size()) + " fluents bound");
    for (size_t x = 0; x < task.init.values.size(); ++x) {
        int v = task.init.values[x];
        if (v < 0 || v >= static_cast<int>(task.fluents[x].values.size()))
            throw InputError("initial value of " + task.fluents[x].name + " out of domain");
    }
    check_binding_range(task, task.goal, "goal");

    set<string> action_names;
    for (const auto &action : task.actions) {
        if (!action_names.insert(action.name).second)
            throw InputError("duplicate action id: " + action.name);
        check_binding_range(task, action.pre, "action " + action.name);
        check_binding_range(task, action.post, "action " + action.name);
        if (action.post.empty())
            throw InputError("action " + action.name +
                             " has an empty postcondition (no-op actions are rejected)");
    }

    for (size_t g = 0; g < task.mutex_groups.size(); ++g) {
        int held = 0;
        for (auto [fluent, value] : task.mutex_groups[g].literals) {
            if (fluent < 0 || fluent >= static_cast<int>(task.fluents.size()) ||
                value < 0 || value >= static_cast<int>(task.fluents[fluent].values.size()))
                throw InputError("mutex group g" + std::to_string(g) + " references an unknown fact");
            if (task.init.values[fluent] == value)
                ++held;
        }
        if (held > 1)
            throw InputError("initial state violates mutex group g" + std::to_string(g));
    }
}

string to_string(PlanSemantics semantics) {
    switch (semantics) {
    case PlanSemantics::sequential: return "sequential";
    case PlanSemantics::forall: return "forall";
    case PlanSemantics::exists: return "exists";
    case PlanSemantics::relaxed: return "relaxed";
    }
    return "?";
}

optional<PlanSemantics> parse_semantics(const string &text) {
    if (text == "sequential" || text == "seq")
        return PlanSemantics::sequential;
    if (text == "forall")
        return PlanSemantics::forall;
    if (text == "exists")
        return PlanSemantics::exists;
    if (text == "relaxed")
        return PlanSemantics::relaxed;
    return nullopt;
}

bool state_satisfies(const State &state, const PartialState &partial) {
    for (auto [fluent, value] : partial.bindings())
        if (state.values.at(fluent) != value)
            return false;
    return true;
}

optional<State> successor(const PlanningTask &task, const State &state, int action) {
    if (action < 0 || action >= static_cast<int>(task.actions.size()))
        throw InputError("unknown action ordinal #" + std::to_string(action));
    const Action &a = task.actions[action];
    if (!state_satisfies(state, a.pre))
        return nullopt;
    State next = state;
    for (auto [fluent, value] : a.post.bindings())
        next.values[fluent] = value;
    return next;
}

optional<State> apply_sequence(
    const PlanningTask &task, const State &state, const vector<int> &actions) {
    State current = state;
    for (int action : actions) {
        auto next = successor(task, current, action);
        if (!next)
            return nullopt;
        current = move(*next);
    }
    return current;
}

bool check_goal(const State &state, const PartialState &goal) {
    return state_satisfies(state, goal);
}

bool is_confluent(const PlanningTask &task, const vector<int> &actions) {
    for (size_t i = 0; i < actions.size(); ++i) {
        const auto &post_i = task.actions.at(actions[i]).post;
        for (size_t j = i + 1; j < actions.size(); ++j) {
            const auto &post_j = task.actions.at(actions[j]).post;
            for (auto [fluent, value] : post_i.bindings()) {
                auto other = post_j.get(fluent);
                if (other && *other != value)
                    return false;
            }
        }
    }
    return true;
}

State parallel_update(const PlanningTask &task, const State &state, const vector<int> &actions) {
    State next = state;
    for (int action : actions)
        for (auto [fluent, value] : task.actions.at(action).post.bindings())
            next.values[fluent] = value;
    return next;
}

}  // namespace parplan
