#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "parplan/engine.hpp"
#include "parplan/model.hpp"

using namespace parplan;

namespace {

// Truth-table reference: enumerates all assignments over the given clauses,
// AMO groups, and conditional edges; completely independent of the engine.
struct BruteForce {
    int num_vars = 0;
    std::vector<std::vector<Lit>> clauses;
    std::vector<std::vector<Lit>> amos;
    std::vector<std::tuple<Lit, int, int>> edges;
    int num_nodes = 0;

    bool satisfies(uint32_t assignment, Lit l) const {
        bool value = (assignment >> l.var()) & 1;
        return l.negated() ? !value : value;
    }

    bool model_ok(uint32_t assignment) const {
        for (const auto &clause : clauses) {
            bool sat = false;
            for (Lit l : clause)
                sat = sat || satisfies(assignment, l);
            if (!sat)
                return false;
        }
        for (const auto &amo : amos) {
            int held = 0;
            for (Lit l : amo)
                held += satisfies(assignment, l);
            if (held > 1)
                return false;
        }
        std::vector<std::vector<int>> adj(num_nodes);
        for (const auto &[on, from, to] : edges)
            if (satisfies(assignment, on))
                adj[from].push_back(to);
        std::vector<int> color(num_nodes, 0);
        std::function<bool(int)> has_cycle = [&](int node) {
            color[node] = 1;
            for (int next : adj[node]) {
                if (color[next] == 1)
                    return true;
                if (color[next] == 0 && has_cycle(next))
                    return true;
            }
            color[node] = 2;
            return false;
        };
        for (int node = 0; node < num_nodes; ++node)
            if (color[node] == 0 && has_cycle(node))
                return false;
        return true;
    }

    std::set<uint32_t> all_models(const std::vector<Lit> &assumptions = {}) const {
        std::set<uint32_t> models;
        for (uint32_t assignment = 0; assignment < (1u << num_vars); ++assignment) {
            bool ok = model_ok(assignment);
            for (Lit l : assumptions)
                ok = ok && satisfies(assignment, l);
            if (ok)
                models.insert(assignment);
        }
        return models;
    }
};

}  // namespace

TEST_CASE("unit clause forces its literal") {
    Engine engine;
    Var a = engine.new_var();
    engine.add_clause({pos(a)});
    auto outcome = engine.solve();
    REQUIRE(outcome.status == SolveStatus::sat);
    CHECK(outcome.model_value(a));
}

TEST_CASE("empty store is satisfiable") {
    Engine engine;
    CHECK(engine.solve().status == SolveStatus::sat);
}

TEST_CASE("amo plus forcing clauses is unsatisfiable") {
    Engine engine;
    Var a = engine.new_var(), b = engine.new_var();
    engine.add_amo({pos(a), pos(b)});
    engine.add_clause({pos(a)});
    engine.add_clause({pos(b)});
    CHECK(engine.solve().status == SolveStatus::unsat);
}

TEST_CASE("two-edge cycle with forced activations is unsatisfiable") {
    Engine engine;
    Var x = engine.new_var(), y = engine.new_var();
    int u = engine.new_node(), v = engine.new_node();
    engine.add_edge(pos(x), u, v);
    engine.add_edge(pos(y), v, u);
    engine.add_clause({pos(x)});
    engine.add_clause({pos(y)});
    CHECK(engine.solve().status == SolveStatus::unsat);
}

TEST_CASE("assumption flips verdicts without permanent learning") {
    Engine engine;
    Var q = engine.new_var(), p = engine.new_var();
    engine.add_clause({neg(q), pos(p)});
    engine.add_clause({neg(p)});
    CHECK(engine.solve({pos(q)}).status == SolveStatus::unsat);
    CHECK(engine.solve({neg(q)}).status == SolveStatus::sat);
    CHECK(engine.solve({pos(q)}).status == SolveStatus::unsat);
    CHECK(engine.solve().status == SolveStatus::sat);
}

TEST_CASE("conflict budget reports exhaustion and keeps state reusable") {
    // Pigeonhole PHP(4,3): needs more than one conflict to refute.
    Engine engine;
    const int holes = 3, pigeons = 4;
    std::vector<std::vector<Var>> at(pigeons, std::vector<Var>(holes));
    for (auto &row : at)
        for (auto &v : row)
            v = engine.new_var();
    for (int p = 0; p < pigeons; ++p) {
        std::vector<Lit> clause;
        for (int h = 0; h < holes; ++h)
            clause.push_back(pos(at[p][h]));
        engine.add_clause(clause);
    }
    for (int h = 0; h < holes; ++h)
        for (int p1 = 0; p1 < pigeons; ++p1)
            for (int p2 = p1 + 1; p2 < pigeons; ++p2)
                engine.add_clause({neg(at[p1][h]), neg(at[p2][h])});

    auto limited = engine.solve({}, 1);
    CHECK(limited.status == SolveStatus::budget_exhausted);
    CHECK(limited.stats.conflicts == 1);
    auto full = engine.solve();
    CHECK(full.status == SolveStatus::unsat);
}

TEST_CASE("hints steer the first decision") {
    Engine engine;
    Var a = engine.new_var(), b = engine.new_var();
    engine.add_clause({pos(a), pos(b)});
    engine.set_hint(b, 7, true);
    auto outcome = engine.solve();
    REQUIRE(outcome.status == SolveStatus::sat);
    CHECK(outcome.model_value(b));

    SUBCASE("unset phase falls back to the default policy") {
        Engine fresh;
        Var c = fresh.new_var(), d = fresh.new_var();
        fresh.add_clause({pos(c), pos(d)});
        fresh.set_hint(d, 7, std::nullopt);
        auto second = fresh.solve();
        REQUIRE(second.status == SolveStatus::sat);
        // Default phase is false: the hinted variable is decided first but
        // negatively, so the clause is satisfied through c.
        CHECK(second.model_value(c));
        CHECK_FALSE(second.model_value(d));
    }
}

TEST_CASE("on_assign callbacks fire for decisions and propagations") {
    Engine engine;
    Var a = engine.new_var(), b = engine.new_var(), c = engine.new_var();
    engine.add_clause({pos(a), pos(b), pos(c)});
    int fired = 0;
    engine.on_assign(a, [&](Var, bool value) {
        ++fired;
        engine.set_hint(b, 9, value);
    });
    auto outcome = engine.solve();
    CHECK(outcome.status == SolveStatus::sat);
    CHECK(fired >= 1);
}

TEST_CASE("callbacks may not add clauses") {
    Engine engine;
    Var a = engine.new_var();
    Var b = engine.new_var();
    engine.add_clause({pos(a), pos(b)});
    engine.on_assign(a, [&](Var, bool) { engine.add_clause({pos(b)}); });
    CHECK_THROWS_AS(engine.solve(), UsageError);
}

TEST_CASE("unregistered variables are rejected") {
    Engine engine;
    CHECK_THROWS_AS(engine.add_clause({pos(3)}), UsageError);
    CHECK_THROWS_AS(engine.set_hint(0, 1, true), UsageError);
}

TEST_CASE("model agreement with the truth-table oracle on random stores") {
    std::mt19937 rng(20250810);
    for (int round = 0; round < 300; ++round) {
        BruteForce reference;
        Engine engine;
        reference.num_vars = std::uniform_int_distribution<int>(3, 9)(rng);
        for (int v = 0; v < reference.num_vars; ++v)
            engine.new_var();
        int num_clauses = std::uniform_int_distribution<int>(1, 18)(rng);
        for (int c = 0; c < num_clauses; ++c) {
            int width = std::uniform_int_distribution<int>(1, 3)(rng);
            std::vector<Lit> clause;
            for (int k = 0; k < width; ++k) {
                Var v = std::uniform_int_distribution<int>(0, reference.num_vars - 1)(rng);
                clause.push_back(Lit::make(v, rng() % 2));
            }
            reference.clauses.push_back(clause);
            engine.add_clause(clause);
        }
        if (rng() % 2) {
            std::vector<Lit> amo;
            int width = std::uniform_int_distribution<int>(2, 4)(rng);
            for (int k = 0; k < width; ++k)
                amo.push_back(pos(std::uniform_int_distribution<int>(0, reference.num_vars - 1)(rng)));
            reference.amos.push_back(amo);
            engine.add_amo(amo);
        }
        auto outcome = engine.solve();
        auto models = reference.all_models();
        if (outcome.status == SolveStatus::sat) {
            uint32_t packed = 0;
            for (int v = 0; v < reference.num_vars; ++v)
                packed |= static_cast<uint32_t>(outcome.model[v]) << v;
            CHECK(models.count(packed));
        } else {
            CHECK(models.empty());
        }
    }
}

TEST_CASE("learned clauses never prune models that survive the assumptions") {
    std::mt19937 rng(77);
    for (int round = 0; round < 150; ++round) {
        BruteForce reference;
        Engine engine;
        reference.num_vars = 6;
        for (int v = 0; v < 6; ++v)
            engine.new_var();
        for (int c = 0; c < 12; ++c) {
            int width = std::uniform_int_distribution<int>(1, 3)(rng);
            std::vector<Lit> clause;
            for (int k = 0; k < width; ++k)
                clause.push_back(Lit::make(std::uniform_int_distribution<int>(0, 5)(rng), rng() % 2));
            reference.clauses.push_back(clause);
            engine.add_clause(clause);
        }
        for (int probe = 0; probe < 8; ++probe) {
            std::vector<Lit> assumptions;
            for (int v = 0; v < 3; ++v)
                if (rng() % 2)
                    assumptions.push_back(Lit::make(v, rng() % 2));
            auto outcome = engine.solve(assumptions);
            bool oracle_sat = !reference.all_models(assumptions).empty();
            CHECK((outcome.status == SolveStatus::sat) == oracle_sat);
        }
    }
}

TEST_CASE("acyclicity agrees with explicit cycle checking on random graphs") {
    std::mt19937 rng(4242);
    for (int round = 0; round < 300; ++round) {
        BruteForce reference;
        Engine engine;
        reference.num_vars = std::uniform_int_distribution<int>(2, 6)(rng);
        for (int v = 0; v < reference.num_vars; ++v)
            engine.new_var();
        reference.num_nodes = std::uniform_int_distribution<int>(2, 5)(rng);
        for (int n = 0; n < reference.num_nodes; ++n)
            engine.new_node();
        int num_edges = std::uniform_int_distribution<int>(1, 8)(rng);
        for (int e = 0; e < num_edges; ++e) {
            Lit on = Lit::make(std::uniform_int_distribution<int>(0, reference.num_vars - 1)(rng),
                               rng() % 2);
            int from = std::uniform_int_distribution<int>(0, reference.num_nodes - 1)(rng);
            int to = std::uniform_int_distribution<int>(0, reference.num_nodes - 1)(rng);
            reference.edges.push_back({on, from, to});
            engine.add_edge(on, from, to);
        }
        int num_clauses = std::uniform_int_distribution<int>(0, 6)(rng);
        for (int c = 0; c < num_clauses; ++c) {
            int width = std::uniform_int_distribution<int>(1, 3)(rng);
            std::vector<Lit> clause;
            for (int k = 0; k < width; ++k)
                clause.push_back(Lit::make(std::uniform_int_distribution<int>(0, reference.num_vars - 1)(rng),
                                           rng() % 2));
            reference.clauses.push_back(clause);
            engine.add_clause(clause);
        }
        auto outcome = engine.solve();
        auto models = reference.all_models();
        CHECK((outcome.status == SolveStatus::sat) == !models.empty());
        if (outcome.status == SolveStatus::sat) {
            uint32_t packed = 0;
            for (int v = 0; v < reference.num_vars; ++v)
                packed |= static_cast<uint32_t>(outcome.model[v]) << v;
            CHECK(models.count(packed));
        }
    }
}

TEST_CASE("hints never change the verdict") {
    std::mt19937 rng(555);
    for (int round = 0; round < 200; ++round) {
        std::vector<std::vector<Lit>> clauses;
        int num_vars = 7;
        int num_clauses = std::uniform_int_distribution<int>(4, 20)(rng);
        for (int c = 0; c < num_clauses; ++c) {
            int width = std::uniform_int_distribution<int>(1, 3)(rng);
            std::vector<Lit> clause;
            for (int k = 0; k < width; ++k)
                clause.push_back(Lit::make(std::uniform_int_distribution<int>(0, num_vars - 1)(rng),
                                           rng() % 2));
            clauses.push_back(clause);
        }
        Engine plain, hinted;
        for (int v = 0; v < num_vars; ++v) {
            plain.new_var();
            hinted.new_var();
        }
        for (const auto &clause : clauses) {
            plain.add_clause(clause);
            hinted.add_clause(clause);
        }
        for (int v = 0; v < num_vars; ++v)
            if (rng() % 2)
                hinted.set_hint(v, std::uniform_int_distribution<int>(1, 100)(rng), rng() % 2 == 0);
        CHECK(plain.solve().status == hinted.solve().status);
    }
}

TEST_CASE("sequential-counter amo for wide groups") {
    Engine engine;
    std::vector<Lit> group;
    for (int i = 0; i < 12; ++i)
        group.push_back(pos(engine.new_var()));
    engine.add_amo(group);
    engine.add_clause({group[3]});
    auto outcome = engine.solve();
    REQUIRE(outcome.status == SolveStatus::sat);
    int held = 0;
    for (int i = 0; i < 12; ++i)
        held += outcome.model_value(group[i]);
    CHECK(held == 1);
    engine.add_clause({group[9]});
    CHECK(engine.solve().status == SolveStatus::unsat);
}

TEST_CASE("dimacs dump lists clauses with amo and edge comments") {
    Engine engine;
    Var a = engine.new_var(), b = engine.new_var();
    engine.add_clause({pos(a), neg(b)});
    engine.add_amo({pos(a), pos(b)});
    int u = engine.new_node(), v = engine.new_node();
    engine.add_edge(pos(a), u, v);
    std::ostringstream out;
    engine.dump_dimacs(out);
    std::string text = out.str();
    CHECK(text.find("p cnf 2") != std::string::npos);
    CHECK(text.find("c amo 1 2") != std::string::npos);
    CHECK(text.find("c edge 1 0 1") != std::string::npos);
    CHECK(text.find("1 -2 0") != std::string::npos);
}

TEST_CASE("deep searches with clause minimization stay sound") {
    // Regression: literals dropped by conflict-clause minimization must not
    // leave stale seen marks that corrupt later analyses.
    std::mt19937 rng(1717);
    for (int round = 0; round < 30; ++round) {
        BruteForce reference;
        Engine engine;
        reference.num_vars = 15;
        for (int v = 0; v < reference.num_vars; ++v)
            engine.new_var();
        for (int c = 0; c < 63; ++c) {
            std::vector<Lit> clause;
            for (int k = 0; k < 3; ++k)
                clause.push_back(Lit::make(
                    std::uniform_int_distribution<int>(0, reference.num_vars - 1)(rng),
                    rng() % 2));
            reference.clauses.push_back(clause);
            engine.add_clause(clause);
        }
        bool oracle_sat = !reference.all_models().empty();
        for (int probe = 0; probe < 3; ++probe) {
            auto outcome = engine.solve();
            REQUIRE((outcome.status == SolveStatus::sat) == oracle_sat);
            if (outcome.status == SolveStatus::sat) {
                uint32_t packed = 0;
                for (int v = 0; v < reference.num_vars; ++v)
                    packed |= static_cast<uint32_t>(outcome.model[v]) << v;
                CHECK(reference.model_ok(packed));
            }
        }
    }
}

TEST_CASE("models of large stores satisfy every clause") {
    std::mt19937 rng(2727);
    Engine engine;
    const int num_vars = 60;
    std::vector<std::vector<Lit>> clauses;
    for (int v = 0; v < num_vars; ++v)
        engine.new_var();
    for (int c = 0; c < 240; ++c) {
        std::vector<Lit> clause;
        for (int k = 0; k < 3; ++k)
            clause.push_back(Lit::make(
                std::uniform_int_distribution<int>(0, num_vars - 1)(rng), rng() % 2));
        clauses.push_back(clause);
        engine.add_clause(clause);
    }
    auto outcome = engine.solve();
    if (outcome.status == SolveStatus::sat) {
        for (const auto &clause : clauses) {
            bool satisfied = false;
            for (Lit l : clause)
                satisfied = satisfied || outcome.model_value(l);
            CHECK(satisfied);
        }
    }
}

TEST_CASE("callback hints are restored when the trigger unassigns") {
    Engine engine;
    Var a = engine.new_var(), b = engine.new_var(), c = engine.new_var();
    engine.set_hint(b, 5, true);  // top-level hints are permanent
    // Only the positive branch re-hints; the final level-0 assignment of
    // a=false fires the callback too but leaves b alone.
    engine.on_assign(a, [&](Var, bool value) {
        if (value)
            engine.set_hint(b, 99, false);
    });
    // Make a's positive branch contradictory so search backtracks over it.
    engine.set_hint(a, 100, true);
    engine.add_clause({neg(a), pos(c)});
    engine.add_clause({neg(a), neg(c)});
    engine.add_clause({pos(a), pos(b)});
    auto outcome = engine.solve();
    REQUIRE(outcome.status == SolveStatus::sat);
    CHECK_FALSE(outcome.model_value(a));
    // Solve ends at decision level zero: the callback's hint was undone and
    // the permanent one restored.
    auto [level, phase] = engine.hint(b);
    CHECK(level == 5);
    REQUIRE(phase.has_value());
    CHECK(*phase == true);
}

TEST_CASE("level-0 propagations keep their callback hints while assigned") {
    Engine engine;
    Var a = engine.new_var(), b = engine.new_var();
    engine.on_assign(a, [&](Var, bool value) { engine.set_hint(b, 7, value); });
    engine.add_clause({pos(a)});  // unit: assigned at level 0, never undone
    auto [level, phase] = engine.hint(b);
    CHECK(level == 7);
    REQUIRE(phase.has_value());
    CHECK(*phase == true);
}
