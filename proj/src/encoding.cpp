#include "parplan/encoding.hpp"

#include <algorithm>
#include <set>

using namespace std;

namespace parplan {

string to_string(EncodingMode mode) {
    switch (mode) {
    case EncodingMode::seq: return "seq";
    case EncodingMode::forall: return "forall";
    case EncodingMode::exists_acyc: return "exists";
    case EncodingMode::gc_exists: return "gc";
    case EncodingMode::gc_relaxed: return "relaxed";
    }
    return "?";
}

vector<pair<int, int>> invalidation_edges(
    const PlanningTask &task, const vector<int> &actions) {
    vector<pair<int, int>> edges;
    for (int a : actions) {
        for (int b : actions) {
            if (a == b)
                continue;
            const auto &post_a = task.actions[a].post;
            const auto &pre_b = task.actions[b].pre;
            for (auto [fluent, value] : post_a.bindings()) {
                auto required = pre_b.get(fluent);
                if (required && *required != value) {
                    edges.push_back({a, b});
                    break;  // one edge per ordered pair
                }
            }
        }
    }
    return edges;
}

HorizonEncoding::HorizonEncoding(const PlanningTask &task, EncodingMode mode, Engine &engine)
    : task_(task), mode_(mode), engine_(engine) {
    int num_fluents = static_cast<int>(task.fluents.size());
    int num_actions = static_cast<int>(task.actions.size());

    fact_offset_.resize(num_fluents);
    for (int x = 0; x < num_fluents; ++x) {
        fact_offset_[x] = facts_per_step_;
        facts_per_step_ += static_cast<int>(task.fluents[x].values.size());
    }

    writers_by_value_.resize(num_fluents);
    writers_.resize(num_fluents);
    self_invalidating_.resize(num_fluents);
    for (int x = 0; x < num_fluents; ++x)
        writers_by_value_[x].resize(task.fluents[x].values.size());
    for (int a = 0; a < num_actions; ++a) {
        const Action &action = task.actions[a];
        for (auto [x, v] : action.post.bindings()) {
            writers_by_value_[x][v].push_back(a);
            writers_[x].push_back(a);
            auto pre_value = action.pre.get(x);
            if (pre_value && *pre_value != v)
                self_invalidating_[x].push_back(a);
        }
    }

    // Forall interference: a needs x untouched (x in pre, not in post), a'
    // moves x elsewhere.
    set<pair<int, int>> pairs;
    for (int a = 0; a < num_actions; ++a) {
        const Action &action = task.actions[a];
        for (auto [x, v] : action.pre.bindings()) {
            if (action.post.defines(x))
                continue;
            for (int b : writers_[x]) {
                if (b == a)
                    continue;
                if (*task.actions[b].post.get(x) != v)
                    pairs.insert({min(a, b), max(a, b)});
            }
        }
    }
    interference_pairs_.assign(pairs.begin(), pairs.end());

    vector<int> all_actions(num_actions);
    for (int a = 0; a < num_actions; ++a)
        all_actions[a] = a;
    invalidation_pairs_ = invalidation_edges(task, all_actions);

    // Step 0: initial state units, query(0) goal guard, mutex groups.
    holds_base_.push_back(engine_.num_vars());
    for (int i = 0; i < facts_per_step_; ++i)
        engine_.new_var();
    occurs_.emplace_back();
    single_.emplace_back(num_fluents, nullopt);
    step_nodes_.emplace_back();
    query_.push_back(engine_.new_var());
    max_step_ = 0;

    for (int x = 0; x < num_fluents; ++x)
        for (int v = 0; v < static_cast<int>(task.fluents[x].values.size()); ++v)
            engine_.add_clause({Lit::make(holds_var(x, v, 0), task.init.values[x] != v)});
    for (auto [x, v] : task.goal.bindings())
        engine_.add_clause({neg(query_[0]), pos(holds_var(x, v, 0))});
    for (const auto &group : task.mutex_groups) {
        vector<Lit> lits;
        for (auto [x, v] : group.literals)
            lits.push_back(pos(holds_var(x, v, 0)));
        engine_.add_amo(lits);
    }
}

Var HorizonEncoding::holds_var(int fluent, int value, int step) const {
    return holds_base_.at(step) + fact_offset_.at(fluent) + value;
}

Var HorizonEncoding::occurs_var(int action, int step) const {
    if (step < 1 || step > max_step_)
        throw UsageError("occurs(" + std::to_string(action) + "," + std::to_string(step) +
                         ") outside encoded steps");
    return occurs_.at(step).at(action);
}

Var HorizonEncoding::query_var(int step) const {
    return query_.at(step);
}

optional<Var> HorizonEncoding::single_var(int fluent, int step) const {
    return single_.at(step).at(fluent);
}

void HorizonEncoding::extend_to(int n) {
    for (int t = max_step_ + 1; t <= n; ++t)
        encode_step(t);
}

void HorizonEncoding::encode_step(int t) {
    if (t != max_step_ + 1)
        throw UsageError("encode_step out of order: step " + std::to_string(t) +
                         " after " + std::to_string(max_step_));
    int num_fluents = static_cast<int>(task_.fluents.size());
    int num_actions = static_cast<int>(task_.actions.size());

    holds_base_.push_back(engine_.num_vars());
    for (int i = 0; i < facts_per_step_; ++i)
        engine_.new_var();
    occurs_.emplace_back();
    for (int a = 0; a < num_actions; ++a)
        occurs_.back().push_back(engine_.new_var());
    single_.emplace_back(num_fluents, nullopt);
    step_nodes_.emplace_back(num_actions, -1);
    query_.push_back(engine_.new_var());
    max_step_ = t;

    // State choice: exactly one value per fluent.
    for (int x = 0; x < num_fluents; ++x) {
        int dom = static_cast<int>(task_.fluents[x].values.size());
        vector<Lit> at_least_one;
        for (int v = 0; v < dom; ++v)
            at_least_one.push_back(pos(holds_var(x, v, t)));
        engine_.add_clause(at_least_one);
        engine_.add_amo(at_least_one);
    }

    // Applied actions assert their postconditions.
    for (int a = 0; a < num_actions; ++a)
        for (auto [x, v] : task_.actions[a].post.bindings())
            engine_.add_clause({neg(occurs_var(a, t)), pos(holds_var(x, v, t))});

    // Frame: a changed fluent value needs an establishing action.
    for (int x = 0; x < num_fluents; ++x) {
        int dom = static_cast<int>(task_.fluents[x].values.size());
        for (int v = 0; v < dom; ++v) {
            vector<Lit> clause{neg(holds_var(x, v, t)), pos(holds_var(x, v, t - 1))};
            for (int a : writers_by_value_[x][v])
                clause.push_back(pos(occurs_var(a, t)));
            engine_.add_clause(clause);
        }
    }

    for (auto [x, v] : task_.goal.bindings())
        engine_.add_clause({neg(query_[t]), pos(holds_var(x, v, t))});

    for (const auto &group : task_.mutex_groups) {
        vector<Lit> lits;
        for (auto [x, v] : group.literals)
            lits.push_back(pos(holds_var(x, v, t)));
        engine_.add_amo(lits);
    }

    switch (mode_) {
    case EncodingMode::seq: {
        encode_preconditions(t);
        vector<Lit> occurs_lits;
        for (int a = 0; a < num_actions; ++a)
            occurs_lits.push_back(pos(occurs_var(a, t)));
        engine_.add_amo(occurs_lits);
        break;
    }
    case EncodingMode::forall:
        encode_preconditions(t);
        encode_forall_interference(t);
        break;
    case EncodingMode::exists_acyc:
        encode_preconditions(t);
        encode_exists_edges(t);
        break;
    case EncodingMode::gc_exists:
        encode_preconditions(t);
        if (forall_added_)
            encode_forall_interference(t);
        break;
    case EncodingMode::gc_relaxed:
        break;
    }
}

void HorizonEncoding::encode_preconditions(int t) {
    for (size_t a = 0; a < task_.actions.size(); ++a)
        for (auto [x, v] : task_.actions[a].pre.bindings())
            engine_.add_clause({neg(occurs_var(static_cast<int>(a), t)),
                                pos(holds_var(x, v, t - 1))});
}

void HorizonEncoding::encode_forall_interference(int t) {
    for (auto [a, b] : interference_pairs_)
        engine_.add_clause({neg(occurs_var(a, t)), neg(occurs_var(b, t))});

    // single(x,t): some occurring action flips x out of its own precondition,
    // so x may be written by that action alone.
    for (size_t x = 0; x < task_.fluents.size(); ++x) {
        if (self_invalidating_[x].empty())
            continue;
        Var single = engine_.new_var();
        single_[t][x] = single;
        for (int a : self_invalidating_[x])
            engine_.add_clause({neg(occurs_var(a, t)), pos(single)});
        const auto &writers = writers_[x];
        for (size_t i = 0; i < writers.size(); ++i)
            for (size_t j = i + 1; j < writers.size(); ++j)
                engine_.add_clause({neg(single), neg(occurs_var(writers[i], t)),
                                    neg(occurs_var(writers[j], t))});
    }
}

void HorizonEncoding::encode_exists_edges(int t) {
    auto node_of = [&](int action) {
        int &node = step_nodes_[t][action];
        if (node == -1)
            node = engine_.new_node();
        return node;
    };
    for (auto [a, b] : invalidation_pairs_)
        engine_.add_edge(pos(occurs_var(a, t)), node_of(a), node_of(b));
}

vector<Lit> HorizonEncoding::query_assumptions(int m) const {
    if (m < 0 || m > max_step_)
        throw UsageError("query step " + std::to_string(m) + " outside unrolled range 0.." +
                         std::to_string(max_step_));
    vector<Lit> assumptions;
    assumptions.push_back(pos(query_[m]));
    for (int i = 0; i <= max_step_; ++i)
        if (i != m)
            assumptions.push_back(neg(query_[i]));
    return assumptions;
}

void HorizonEncoding::add_forall_constraints() {
    if (mode_ != EncodingMode::gc_exists)
        throw UsageError("forall constraint block only applies to the gc generator");
    if (forall_added_)
        return;
    forall_added_ = true;
    for (int t = 1; t <= max_step_; ++t)
        encode_forall_interference(t);
}

StepPlan HorizonEncoding::extract_plan(const SolveOutcome &outcome, int m, PlanSemantics tag) const {
    StepPlan plan;
    plan.semantics = tag;
    for (int t = 1; t <= m; ++t) {
        vector<int> step;
        for (size_t a = 0; a < task_.actions.size(); ++a)
            if (outcome.model_value(occurs_.at(t).at(a)))
                step.push_back(static_cast<int>(a));
        plan.steps.push_back(move(step));
    }
    return plan;
}

vector<Lit> HorizonEncoding::exact_assignment_nogood(const vector<int> &actions, int step) const {
    vector<Lit> clause;
    vector<bool> in_set(task_.actions.size(), false);
    for (int a : actions)
        in_set.at(a) = true;
    for (size_t a = 0; a < task_.actions.size(); ++a)
        clause.push_back(Lit::make(occurs_var(static_cast<int>(a), step), in_set[a]));
    return clause;
}

}  // namespace parplan
