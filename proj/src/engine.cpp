#include "parplan/engine.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>

#include "parplan/model.hpp"

using namespace std;

namespace parplan {

namespace {

constexpr int8_t kUndef = -1;
constexpr int kRestartBase = 64;

// luby(0), luby(1), ... restart multipliers.
uint64_t luby(uint64_t i) {
    uint64_t size = 1, seq = 0;
    while (size < i + 1) {
        ++seq;
        size = 2 * size + 1;
    }
    while (size - 1 != i) {
        size = (size - 1) >> 1;
        --seq;
        i = i % size;
    }
    return uint64_t{1} << seq;
}

struct Clause {
    vector<Lit> lits;
    bool learnt = false;
    double activity = 0.0;
};

struct Watcher {
    Clause *clause;
    Lit blocker;
};

struct Edge {
    Lit on;
    int from;
    int to;
};

struct HintUndo {
    int trail_index;
    Var var;
    int64_t old_level;
    int8_t old_phase;  // 0/1, or 2 for unset
};

// Max-heap over variable activity with index positions (MiniSat order heap).
class ActivityHeap {
    vector<int> heap;
    vector<int> index;
    const vector<double> &activity;

    bool less(int a, int b) const {
        if (activity[a] != activity[b])
            return activity[a] > activity[b];
        return a < b;
    }
    void swap_at(size_t i, size_t j) {
        swap(heap[i], heap[j]);
        index[heap[i]] = static_cast<int>(i);
        index[heap[j]] = static_cast<int>(j);
    }
    void up(size_t i) {
        while (i > 0) {
            size_t parent = (i - 1) / 2;
            if (!less(heap[i], heap[parent]))
                break;
            swap_at(i, parent);
            i = parent;
        }
    }
    void down(size_t i) {
        while (true) {
            size_t left = 2 * i + 1, right = 2 * i + 2, best = i;
            if (left < heap.size() && less(heap[left], heap[best]))
                best = left;
            if (right < heap.size() && less(heap[right], heap[best]))
                best = right;
            if (best == i)
                break;
            swap_at(i, best);
            i = best;
        }
    }

public:
    explicit ActivityHeap(const vector<double> &activity) : activity(activity) {}

    bool contains(int v) const { return v < static_cast<int>(index.size()) && index[v] >= 0; }
    bool empty() const { return heap.empty(); }

    void grow(int v) {
        while (static_cast<int>(index.size()) <= v)
            index.push_back(-1);
    }
    void insert(int v) {
        grow(v);
        if (contains(v))
            return;
        index[v] = static_cast<int>(heap.size());
        heap.push_back(v);
        up(heap.size() - 1);
    }
    void update(int v) {
        if (contains(v)) {
            up(index[v]);
            down(index[v]);
        }
    }
    int pop() {
        int top = heap[0];
        swap_at(0, heap.size() - 1);
        heap.pop_back();
        index[top] = -1;
        if (!heap.empty())
            down(0);
        return top;
    }
};

}  // namespace

struct Engine::Impl {
    // Assignment state.
    vector<int8_t> assigns;      // per var: kUndef / 0 / 1
    vector<int8_t> saved_phase;  // phase saving, default false
    vector<int> level;           // per var
    vector<Clause *> reason;     // per var
    vector<Lit> trail;
    vector<int> trail_lim;
    size_t propagate_head = 0;
    bool ok = true;

    vector<unique_ptr<Clause>> clauses;
    vector<unique_ptr<Clause>> learnts;
    vector<vector<Watcher>> watches;  // per literal index

    // Branching order.
    vector<double> activity;
    double var_inc = 1.0;
    double cla_inc = 1.0;
    ActivityHeap order_heap{activity};
    vector<int8_t> seen;
    double max_learnts = 0;

    // Hints: a variable with hint level > 0 outranks activity order. The
    // hinted heap holds at most one entry per variable; a stale level key is
    // refreshed on pop.
    vector<int64_t> hint_level;
    vector<int8_t> hint_phase;  // 0/1, 2 = unset
    vector<pair<int64_t, Var>> hinted;
    vector<uint8_t> in_hinted;
    vector<HintUndo> hint_undo;
    bool in_callback = false;
    int firing_trail_index = -1;

    vector<vector<AssignCallback>> callbacks;

    // Conditional edge graph.
    vector<Edge> edges;
    vector<vector<int>> edges_of_lit;    // literal index -> edge ids
    vector<vector<pair<int, int>>> adj;  // node -> (to, edge id)
    int num_nodes = 0;
    vector<int> dfs_mark;
    int dfs_stamp = 0;

    vector<vector<Lit>> amo_groups;  // kept for the DIMACS dump only

    SolveStats stats;

    int decision_level() const { return static_cast<int>(trail_lim.size()); }

    int8_t value(Var v) const { return assigns[v]; }
    int8_t value(Lit l) const {
        int8_t a = assigns[l.var()];
        if (a == kUndef)
            return kUndef;
        return l.negated() ? static_cast<int8_t>(1 - a) : a;
    }

    Var new_var() {
        Var v = static_cast<Var>(assigns.size());
        assigns.push_back(kUndef);
        saved_phase.push_back(0);
        level.push_back(0);
        reason.push_back(nullptr);
        activity.push_back(0.0);
        seen.push_back(0);
        hint_level.push_back(0);
        hint_phase.push_back(2);
        in_hinted.push_back(0);
        callbacks.emplace_back();
        watches.emplace_back();
        watches.emplace_back();
        edges_of_lit.emplace_back();
        edges_of_lit.emplace_back();
        order_heap.insert(v);
        return v;
    }

    void check_var(Var v) const {
        if (v < 0 || v >= static_cast<int>(assigns.size()))
            throw UsageError("engine: unregistered variable #" + std::to_string(v));
    }

    void check_mutable(const char *what) const {
        if (in_callback)
            throw UsageError(string("engine: ") + what +
                             " not allowed inside an assignment callback");
        if (decision_level() != 0)
            throw UsageError(string("engine: ") + what + " only allowed between solve calls");
    }

    void hint_push(Var v) {
        if (!in_hinted[v] && hint_level[v] > 0) {
            hinted.push_back({hint_level[v], v});
            push_heap(hinted.begin(), hinted.end());
            in_hinted[v] = 1;
        }
    }

    void bump_var(Var v) {
        activity[v] += var_inc;
        if (activity[v] > 1e100) {
            for (auto &a : activity)
                a *= 1e-100;
            var_inc *= 1e-100;
        }
        order_heap.update(v);
    }

    void bump_clause(Clause &c) {
        c.activity += cla_inc;
        if (c.activity > 1e20) {
            for (auto &learnt : learnts)
                learnt->activity *= 1e-20;
            cla_inc *= 1e-20;
        }
    }

    void watch_clause(Clause *c) {
        watches[(~c->lits[0]).x].push_back({c, c->lits[1]});
        watches[(~c->lits[1]).x].push_back({c, c->lits[0]});
    }

    void detach_clause(Clause *c) {
        for (int side = 0; side < 2; ++side) {
            auto &ws = watches[(~c->lits[side]).x];
            ws.erase(remove_if(ws.begin(), ws.end(),
                               [c](const Watcher &w) { return w.clause == c; }),
                     ws.end());
        }
    }

    void unchecked_enqueue(Lit p, Clause *from) {
        Var v = p.var();
        assert(assigns[v] == kUndef);
        assigns[v] = p.negated() ? 0 : 1;
        level[v] = decision_level();
        reason[v] = from;
        trail.push_back(p);
        if (!callbacks[v].empty()) {
            bool was_in_callback = in_callback;
            int saved_firing = firing_trail_index;
            in_callback = true;
            firing_trail_index = static_cast<int>(trail.size()) - 1;
            for (const auto &cb : callbacks[v])
                cb(v, assigns[v] == 1);
            in_callback = was_in_callback;
            firing_trail_index = saved_firing;
        }
    }

    void cancel_until(int target_level) {
        if (decision_level() <= target_level)
            return;
        size_t target = trail_lim[target_level];
        while (!hint_undo.empty() &&
               hint_undo.back().trail_index >= static_cast<int>(target)) {
            const HintUndo &u = hint_undo.back();
            hint_level[u.var] = u.old_level;
            hint_phase[u.var] = u.old_phase;
            hint_undo.pop_back();
            hint_push(u.var);
        }
        for (size_t i = trail.size(); i-- > target;) {
            Var v = trail[i].var();
            saved_phase[v] = assigns[v];
            assigns[v] = kUndef;
            reason[v] = nullptr;
            order_heap.insert(v);
            hint_push(v);
        }
        trail.resize(target);
        trail_lim.resize(target_level);
        propagate_head = trail.size();
    }

    Clause *propagate() {
        while (propagate_head < trail.size()) {
            Lit p = trail[propagate_head++];
            ++stats.propagations;

            vector<Watcher> &ws = watches[p.x];
            size_t keep = 0;
            for (size_t i = 0; i < ws.size(); ++i) {
                Watcher w = ws[i];
                if (value(w.blocker) == 1) {
                    ws[keep++] = w;
                    continue;
                }
                Clause &c = *w.clause;
                Lit false_lit = ~p;
                if (c.lits[0] == false_lit)
                    swap(c.lits[0], c.lits[1]);
                assert(c.lits[1] == false_lit);
                Lit first = c.lits[0];
                if (value(first) == 1) {
                    ws[keep++] = {w.clause, first};
                    continue;
                }
                bool moved = false;
                for (size_t k = 2; k < c.lits.size(); ++k) {
                    if (value(c.lits[k]) != 0) {
                        swap(c.lits[1], c.lits[k]);
                        watches[(~c.lits[1]).x].push_back({w.clause, first});
                        moved = true;
                        break;
                    }
                }
                if (moved)
                    continue;
                ws[keep++] = {w.clause, first};
                if (value(first) == 0) {
                    for (size_t j = i + 1; j < ws.size(); ++j)
                        ws[keep++] = ws[j];
                    ws.resize(keep);
                    propagate_head = trail.size();
                    return w.clause;
                }
                unchecked_enqueue(first, w.clause);
            }
            ws.resize(keep);

            if (Clause *conflict = check_edges(p))
                return conflict;
        }
        return nullptr;
    }

    // Cycle detection for edges activated by the (true) literal p. Returns a
    // conflicting clause of negated activation literals along the cycle.
    Clause *check_edges(Lit p) {
        if (edges_of_lit[p.x].empty())
            return nullptr;
        for (int edge_id : edges_of_lit[p.x]) {
            const Edge &edge = edges[edge_id];
            vector<int> path_edges;
            if (!find_path(edge.to, edge.from, path_edges))
                continue;
            vector<Lit> lits;
            lits.push_back(~edge.on);
            for (int on_path : path_edges) {
                Lit l = ~edges[on_path].on;
                if (find(lits.begin(), lits.end(), l) == lits.end())
                    lits.push_back(l);
            }
            // Order by assignment depth so the watches unassign first.
            sort(lits.begin(), lits.end(), [&](Lit a, Lit b) {
                return level[a.var()] > level[b.var()];
            });
            learnts.push_back(make_unique<Clause>(Clause{move(lits), true, 0.0}));
            Clause *conflict = learnts.back().get();
            if (conflict->lits.size() >= 2)
                watch_clause(conflict);
            return conflict;
        }
        return nullptr;
    }

    // DFS over active edges; fills path_edges from source to target on hit.
    bool find_path(int source, int target, vector<int> &path_edges) {
        if (static_cast<int>(dfs_mark.size()) < num_nodes)
            dfs_mark.resize(num_nodes, 0);
        ++dfs_stamp;
        vector<pair<int, int>> parent(num_nodes, {-1, -1});
        vector<int> stack{source};
        dfs_mark[source] = dfs_stamp;
        while (!stack.empty()) {
            int node = stack.back();
            stack.pop_back();
            if (node == target) {
                int cur = target;
                while (cur != source) {
                    auto [prev, via] = parent[cur];
                    path_edges.push_back(via);
                    cur = prev;
                }
                return true;
            }
            for (auto [next, edge_id] : adj[node]) {
                if (value(edges[edge_id].on) != 1)
                    continue;
                if (dfs_mark[next] == dfs_stamp)
                    continue;
                dfs_mark[next] = dfs_stamp;
                parent[next] = {node, edge_id};
                stack.push_back(next);
            }
        }
        return false;
    }

    // First-UIP learning with basic self-subsumption minimization.
    void analyze(Clause *conflict, vector<Lit> &learnt, int &backtrack_level) {
        int counter = 0;
        Lit p{-2};
        learnt.push_back(Lit{-2});
        size_t index = trail.size();

        Clause *c = conflict;
        do {
            assert(c != nullptr);
            if (c->learnt)
                bump_clause(*c);
            for (size_t i = (p.x == -2 ? 0 : 1); i < c->lits.size(); ++i) {
                Lit q = c->lits[i];
                Var v = q.var();
                if (!seen[v] && level[v] > 0) {
                    seen[v] = 1;
                    bump_var(v);
                    if (level[v] >= decision_level())
                        ++counter;
                    else
                        learnt.push_back(q);
                }
            }
            while (!seen[trail[index - 1].var()])
                --index;
            p = trail[--index];
            c = reason[p.var()];
            seen[p.var()] = 0;
            --counter;
        } while (counter > 0);
        learnt[0] = ~p;

        vector<Lit> minimized;
        minimized.push_back(learnt[0]);
        for (size_t i = 1; i < learnt.size(); ++i) {
            Var v = learnt[i].var();
            Clause *r = reason[v];
            bool redundant = r != nullptr;
            if (r != nullptr) {
                for (size_t k = 1; k < r->lits.size(); ++k) {
                    Var u = r->lits[k].var();
                    if (!seen[u] && level[u] > 0) {
                        redundant = false;
                        break;
                    }
                }
            }
            if (!redundant)
                minimized.push_back(learnt[i]);
        }
        // Clear seen over the pre-minimization clause; dropped literals must
        // not leave stale marks for later analyses.
        for (const Lit &l : learnt)
            seen[l.var()] = 0;
        learnt.swap(minimized);

        if (learnt.size() == 1) {
            backtrack_level = 0;
        } else {
            size_t max_i = 1;
            for (size_t i = 2; i < learnt.size(); ++i)
                if (level[learnt[i].var()] > level[learnt[max_i].var()])
                    max_i = i;
            swap(learnt[1], learnt[max_i]);
            backtrack_level = level[learnt[1].var()];
        }
    }

    Var pick_branch_var() {
        while (!hinted.empty()) {
            auto [lvl, v] = hinted.front();
            pop_heap(hinted.begin(), hinted.end());
            hinted.pop_back();
            in_hinted[v] = 0;
            if (hint_level[v] <= 0)
                continue;
            if (hint_level[v] != lvl) {
                hint_push(v);  // refresh stale key
                continue;
            }
            if (value(v) != kUndef)
                continue;  // re-enters on unassignment
            return v;
        }
        while (!order_heap.empty()) {
            Var v = order_heap.pop();
            if (value(v) == kUndef)
                return v;
        }
        return -1;
    }

    bool pick_phase(Var v) const {
        if (hint_level[v] > 0 && hint_phase[v] != 2)
            return hint_phase[v] == 1;
        return saved_phase[v] == 1;
    }

    void reduce_db() {
        vector<Clause *> candidates;
        for (auto &c : learnts)
            candidates.push_back(c.get());
        sort(candidates.begin(), candidates.end(),
             [](Clause *a, Clause *b) { return a->activity < b->activity; });
        size_t limit = candidates.size() / 2;
        bool removed = false;
        for (size_t i = 0; i < limit; ++i) {
            Clause *c = candidates[i];
            if (c->lits.size() <= 2)
                continue;
            bool locked = false;
            for (const Lit &l : c->lits)
                if (value(l) == 1 && reason[l.var()] == c) {
                    locked = true;
                    break;
                }
            if (locked)
                continue;
            detach_clause(c);
            c->activity = -1.0;  // tombstone
            removed = true;
        }
        if (removed)
            learnts.erase(remove_if(learnts.begin(), learnts.end(),
                                    [](const unique_ptr<Clause> &c) {
                                        return c->activity < 0;
                                    }),
                          learnts.end());
    }
};

Engine::Engine() : impl(make_unique<Impl>()) {}
Engine::~Engine() = default;

Var Engine::new_var() {
    return impl->new_var();
}

int Engine::num_vars() const {
    return static_cast<int>(impl->assigns.size());
}

int Engine::new_node() {
    impl->adj.emplace_back();
    return impl->num_nodes++;
}

void Engine::add_clause(vector<Lit> lits) {
    Impl &s = *impl;
    s.check_mutable("add_clause");
    for (const Lit &l : lits)
        s.check_var(l.var());
    if (!s.ok)
        return;
    sort(lits.begin(), lits.end(), [](Lit a, Lit b) { return a.x < b.x; });
    vector<Lit> out;
    for (size_t i = 0; i < lits.size(); ++i) {
        if (i + 1 < lits.size() && lits[i + 1].x == (lits[i].x ^ 1))
            return;  // tautology
        if (i > 0 && lits[i] == lits[i - 1])
            continue;
        int8_t v = s.value(lits[i]);
        if (v == 1)
            return;  // satisfied at level 0
        if (v == 0)
            continue;
        out.push_back(lits[i]);
    }
    if (out.empty()) {
        s.ok = false;
        return;
    }
    if (out.size() == 1) {
        s.unchecked_enqueue(out[0], nullptr);
        if (s.propagate() != nullptr)
            s.ok = false;
        return;
    }
    s.clauses.push_back(make_unique<Clause>(Clause{move(out), false, 0.0}));
    s.watch_clause(s.clauses.back().get());
}

void Engine::add_amo(const vector<Lit> &lits) {
    Impl &s = *impl;
    s.check_mutable("add_amo");
    for (const Lit &l : lits)
        s.check_var(l.var());
    s.amo_groups.push_back(lits);
    if (lits.size() <= 8) {
        for (size_t i = 0; i < lits.size(); ++i)
            for (size_t j = i + 1; j < lits.size(); ++j)
                add_clause({~lits[i], ~lits[j]});
        return;
    }
    // Sequential-counter encoding with fresh register variables.
    vector<Var> regs(lits.size() - 1);
    for (auto &r : regs)
        r = new_var();
    add_clause({~lits[0], pos(regs[0])});
    for (size_t i = 1; i + 1 < lits.size(); ++i) {
        add_clause({~lits[i], pos(regs[i])});
        add_clause({neg(regs[i - 1]), pos(regs[i])});
        add_clause({~lits[i], neg(regs[i - 1])});
    }
    add_clause({~lits.back(), neg(regs.back())});
}

void Engine::add_edge(Lit on, int from, int to) {
    Impl &s = *impl;
    s.check_mutable("add_edge");
    s.check_var(on.var());
    if (from < 0 || from >= s.num_nodes || to < 0 || to >= s.num_nodes)
        throw UsageError("engine: edge endpoint is not a registered node");
    int edge_id = static_cast<int>(s.edges.size());
    s.edges.push_back({on, from, to});
    s.edges_of_lit[on.x].push_back(edge_id);
    s.adj[from].push_back({to, edge_id});
    if (s.ok && s.value(on) == 1 && s.check_edges(on) != nullptr)
        s.ok = false;
}

void Engine::set_hint(Var v, int64_t level, optional<bool> phase) {
    Impl &s = *impl;
    s.check_var(v);
    if (s.in_callback)
        s.hint_undo.push_back({s.firing_trail_index, v, s.hint_level[v], s.hint_phase[v]});
    s.hint_level[v] = level;
    s.hint_phase[v] = phase ? (*phase ? 1 : 0) : 2;
    s.hint_push(v);
}

void Engine::clear_hint(Var v) {
    Impl &s = *impl;
    s.check_var(v);
    if (s.in_callback)
        s.hint_undo.push_back({s.firing_trail_index, v, s.hint_level[v], s.hint_phase[v]});
    s.hint_level[v] = 0;
    s.hint_phase[v] = 2;
}

pair<int64_t, optional<bool>> Engine::hint(Var v) const {
    impl->check_var(v);
    optional<bool> phase;
    if (impl->hint_phase[v] != 2)
        phase = impl->hint_phase[v] == 1;
    return {impl->hint_level[v], phase};
}

void Engine::on_assign(Var v, AssignCallback callback) {
    Impl &s = *impl;
    s.check_mutable("on_assign");
    s.check_var(v);
    s.callbacks[v].push_back(move(callback));
}

SolveOutcome Engine::solve(const vector<Lit> &assumptions, optional<uint64_t> conflict_budget) {
    Impl &s = *impl;
    s.check_mutable("solve");
    for (const Lit &l : assumptions)
        s.check_var(l.var());

    SolveOutcome outcome;
    SolveStats before = s.stats;
    auto finish = [&](SolveStatus status) {
        s.cancel_until(0);
        outcome.status = status;
        outcome.stats.conflicts = s.stats.conflicts - before.conflicts;
        outcome.stats.decisions = s.stats.decisions - before.decisions;
        outcome.stats.propagations = s.stats.propagations - before.propagations;
        outcome.stats.restarts = s.stats.restarts - before.restarts;
        return outcome;
    };

    if (!s.ok)
        return finish(SolveStatus::unsat);

    uint64_t conflicts_this_call = 0;
    uint64_t restart_number = 0;
    uint64_t conflicts_until_restart = kRestartBase * luby(restart_number);
    if (s.max_learnts <= 0)
        s.max_learnts = max<double>(100.0, s.clauses.size() / 3.0);

    while (true) {
        Clause *conflict = s.propagate();
        if (conflict != nullptr) {
            ++s.stats.conflicts;
            ++conflicts_this_call;
            if (s.decision_level() == 0) {
                s.ok = false;
                return finish(SolveStatus::unsat);
            }
            if (s.decision_level() <= static_cast<int>(assumptions.size())) {
                // Conflict entirely under the assumption prefix.
                return finish(SolveStatus::unsat);
            }
            vector<Lit> learnt;
            int backtrack_level = 0;
            s.analyze(conflict, learnt, backtrack_level);
            s.cancel_until(max(backtrack_level, 0));
            if (learnt.size() == 1 && s.decision_level() == 0) {
                if (s.value(learnt[0]) == 0) {
                    s.ok = false;
                    return finish(SolveStatus::unsat);
                }
                if (s.value(learnt[0]) == kUndef)
                    s.unchecked_enqueue(learnt[0], nullptr);
            } else {
                s.learnts.push_back(make_unique<Clause>(Clause{move(learnt), true, 0.0}));
                Clause *c = s.learnts.back().get();
                s.bump_clause(*c);
                if (c->lits.size() >= 2)
                    s.watch_clause(c);
                if (s.value(c->lits[0]) == kUndef)
                    s.unchecked_enqueue(c->lits[0], c);
            }
            s.var_inc /= 0.95;
            s.cla_inc /= 0.999;

            if (conflict_budget && conflicts_this_call >= *conflict_budget)
                return finish(SolveStatus::budget_exhausted);
            if (conflicts_this_call >= conflicts_until_restart) {
                ++restart_number;
                ++s.stats.restarts;
                conflicts_until_restart =
                    conflicts_this_call + kRestartBase * luby(restart_number);
                s.cancel_until(min<int>(static_cast<int>(assumptions.size()),
                                        s.decision_level()));
            }
            if (static_cast<double>(s.learnts.size()) >=
                s.max_learnts + static_cast<double>(s.trail.size())) {
                s.reduce_db();
                s.max_learnts *= 1.1;
            }
            continue;
        }

        if (s.decision_level() < static_cast<int>(assumptions.size())) {
            Lit p = assumptions[s.decision_level()];
            if (s.value(p) == 1) {
                s.trail_lim.push_back(static_cast<int>(s.trail.size()));
                continue;
            }
            if (s.value(p) == 0)
                return finish(SolveStatus::unsat);
            s.trail_lim.push_back(static_cast<int>(s.trail.size()));
            s.unchecked_enqueue(p, nullptr);
            continue;
        }

        Var next = s.pick_branch_var();
        if (next == -1) {
            outcome.model.resize(s.assigns.size());
            for (size_t v = 0; v < s.assigns.size(); ++v)
                outcome.model[v] = s.assigns[v] == 1 ? 1 : 0;
            return finish(SolveStatus::sat);
        }
        ++s.stats.decisions;
        s.trail_lim.push_back(static_cast<int>(s.trail.size()));
        s.unchecked_enqueue(Lit::make(next, !s.pick_phase(next)), nullptr);
    }
}

void Engine::dump_dimacs(ostream &out) const {
    const Impl &s = *impl;
    size_t clause_count = s.clauses.size();
    for (size_t v = 0; v < s.assigns.size(); ++v)
        if (s.assigns[v] != kUndef && s.level[v] == 0)
            ++clause_count;
    out << "p cnf " << s.assigns.size() << " " << clause_count << "\n";
    for (const auto &group : s.amo_groups) {
        out << "c amo";
        for (const Lit &l : group)
            out << " " << l.dimacs();
        out << "\n";
    }
    for (const auto &edge : s.edges)
        out << "c edge " << edge.on.dimacs() << " " << edge.from << " " << edge.to << "\n";
    for (size_t v = 0; v < s.assigns.size(); ++v)
        if (s.assigns[v] != kUndef && s.level[v] == 0)
            out << (s.assigns[v] == 1 ? static_cast<int>(v) + 1
                                      : -(static_cast<int>(v) + 1))
                << " 0\n";
    for (const auto &c : s.clauses) {
        for (const Lit &l : c->lits)
            out << l.dimacs() << " ";
        out << "0\n";
    }
}

}  // namespace parplan
