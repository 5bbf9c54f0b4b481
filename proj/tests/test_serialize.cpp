#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "parplan/encoding.hpp"
#include "parplan/serialize.hpp"
#include "test_util.hpp"

using namespace parplan;
using namespace parplan::testing;

namespace {

State t1_s2() {  // state after <a1, a2> in T1
    PlanningTask t1 = make_t1();
    return *apply_sequence(t1, t1.init, {0, 1});
}

}  // namespace

TEST_CASE("forall checker on the T1 examples") {
    PlanningTask t1 = make_t1();
    CHECK(check_forall(t1, t1_s2(), {2, 3}));        // {a3,a4} after a1,a2
    CHECK_FALSE(check_forall(t1, t1.init, {0, 1}));  // {a1,a2} in s0
    CHECK(check_forall(t1, t1.init, {}));            // vacuous
}

TEST_CASE("exists checker certifies {a1,a2} in s0 with witness a1 before a2") {
    PlanningTask t1 = make_t1();
    auto result = check_exists(t1, t1.init, {0, 1});
    REQUIRE(result.ok);
    CHECK(result.witness == std::vector<int>{0, 1});
}

TEST_CASE("exists checker fails on T2 despite the acyclic graph") {
    PlanningTask t2 = make_t2();
    CHECK(invalidation_edges(t2, {0, 1}) ==
          std::vector<std::pair<int, int>>{{0, 1}});  // acyclic
    auto result = check_exists(t2, t2.init, {0, 1});
    CHECK_FALSE(result.ok);  // a2's precondition x1=1 fails in s0
}

TEST_CASE("singleton with holding precondition is exists-serializable") {
    PlanningTask t1 = make_t1();
    auto result = check_exists(t1, t1.init, {0});
    REQUIRE(result.ok);
    CHECK(result.witness == std::vector<int>{0});
}

TEST_CASE("relaxed checker accepts the one-shot T1 plan") {
    PlanningTask t1 = make_t1();
    auto result = check_relaxed(t1, t1.init, {0, 1, 2, 3});
    REQUIRE(result.ok);
    CHECK(result.witness == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("relaxed checker rejects T2's pair and reports the non-ready set") {
    PlanningTask t2 = make_t2();
    auto result = check_relaxed(t2, t2.init, {0, 1});
    CHECK_FALSE(result.ok);
    CHECK(result.non_ready == std::vector<int>{0, 1});
}

TEST_CASE("empty set is serializable under every semantics") {
    PlanningTask t1 = make_t1();
    CHECK(check_forall(t1, t1.init, {}));
    CHECK(check_exists(t1, t1.init, {}).ok);
    CHECK(check_relaxed(t1, t1.init, {}).ok);
    CHECK(check_relaxed(t1, t1.init, {}).witness.empty());
}

TEST_CASE("non-confluent sets are rejected, not errors") {
    PlanningTask task = make_t1();
    Action clash{"clash", {}, {}};
    clash.post.set(0, 0);
    task.actions.push_back(clash);
    CHECK_FALSE(check_forall(task, task.init, {0, 4}));
    CHECK_FALSE(check_exists(task, task.init, {0, 4}).ok);
    CHECK_FALSE(check_relaxed(task, task.init, {0, 4}).ok);
}

TEST_CASE("validate_plan on the T1 example plans") {
    PlanningTask t1 = make_t1();
    SUBCASE("forall plan <{a1},{a2},{a3,a4}> flattens to four actions") {
        StepPlan plan{PlanSemantics::forall, {{0}, {1}, {2, 3}}};
        auto report = validate_plan(t1, plan);
        REQUIRE(report.valid);
        CHECK(report.flattened.size() == 4);
        CHECK(apply_sequence(t1, t1.init, report.flattened).has_value());
    }
    SUBCASE("<{a1,a2},{a3,a4}> is invalid under forall, valid under exists") {
        StepPlan forall_plan{PlanSemantics::forall, {{0, 1}, {2, 3}}};
        auto report = validate_plan(t1, forall_plan);
        CHECK_FALSE(report.valid);
        CHECK(report.failed_step == 1);
        CHECK(report.to_line() == "INVALID step=1 reason=not_serializable");

        StepPlan exists_plan{PlanSemantics::exists, {{0, 1}, {2, 3}}};
        CHECK(validate_plan(t1, exists_plan).valid);
    }
    SUBCASE("empty plan misses the goal") {
        StepPlan plan{PlanSemantics::forall, {}};
        auto report = validate_plan(t1, plan);
        CHECK_FALSE(report.valid);
        CHECK(report.reason == "goal");
    }
    SUBCASE("sequential plans reject wide steps") {
        StepPlan plan{PlanSemantics::sequential, {{0, 1}}};
        auto report = validate_plan(t1, plan);
        CHECK_FALSE(report.valid);
        CHECK(report.reason == "sequential_cardinality");
    }
    SUBCASE("idle steps are allowed") {
        StepPlan plan{PlanSemantics::exists, {{0, 1}, {}, {2, 3}, {}}};
        CHECK(validate_plan(t1, plan).valid);
    }
    SUBCASE("unknown ordinals are structural errors") {
        StepPlan plan{PlanSemantics::exists, {{9}}};
        CHECK_THROWS_AS(validate_plan(t1, plan), InputError);
    }
}

TEST_CASE("oracle on the worked examples") {
    PlanningTask t1 = make_t1();
    PlanningTask t2 = make_t2();
    State s2 = t1_s2();
    CHECK(oracle_serializable(t1, s2, {2, 3}, PlanSemantics::forall));
    CHECK(oracle_serializable(t1, s2, {2, 3}, PlanSemantics::exists));
    CHECK(oracle_serializable(t1, s2, {2, 3}, PlanSemantics::relaxed));
    CHECK_FALSE(oracle_serializable(t1, t1.init, {0, 1}, PlanSemantics::forall));
    CHECK(oracle_serializable(t1, t1.init, {0, 1}, PlanSemantics::exists));
    CHECK(oracle_serializable(t1, t1.init, {0, 1}, PlanSemantics::relaxed));
    CHECK_FALSE(oracle_serializable(t2, t2.init, {0, 1}, PlanSemantics::forall));
    CHECK_FALSE(oracle_serializable(t2, t2.init, {0, 1}, PlanSemantics::exists));
    CHECK_FALSE(oracle_serializable(t2, t2.init, {0, 1}, PlanSemantics::relaxed));
    std::vector<int> too_big = {0, 1, 2, 3, 0, 1, 2, 3, 0};
    CHECK_THROWS_AS(oracle_serializable(t1, t1.init, too_big, PlanSemantics::relaxed),
                    UsageError);
}

TEST_CASE("checkers agree with the permutation oracle on random confluent sets") {
    std::mt19937 rng(1234);
    RandomTaskParams params;
    params.max_fluents = 6;
    params.max_domain = 3;
    params.max_actions = 6;
    int checked = 0;
    while (checked < 3000) {
        PlanningTask task = random_task(rng, params);
        State state = random_state(rng, task);
        std::vector<int> set = random_confluent_set(rng, task, 5);
        ++checked;
        bool oracle_forall = oracle_serializable(task, state, set, PlanSemantics::forall);
        bool oracle_exists = oracle_serializable(task, state, set, PlanSemantics::exists);
        bool oracle_relaxed = oracle_serializable(task, state, set, PlanSemantics::relaxed);
        CHECK(check_forall(task, state, set) == oracle_forall);
        CHECK(check_exists(task, state, set).ok == oracle_exists);
        CHECK(check_exists_fixpoint(task, state, set).ok == oracle_exists);
        CHECK(check_relaxed(task, state, set).ok == oracle_relaxed);
        // Implication chain: forall => exists => relaxed.
        if (oracle_forall)
            CHECK(oracle_exists);
        if (oracle_exists)
            CHECK(oracle_relaxed);
    }
}

TEST_CASE("witnesses replay to the parallel-update state") {
    std::mt19937 rng(321);
    for (int round = 0; round < 2000; ++round) {
        PlanningTask task = random_task(rng);
        State state = random_state(rng, task);
        std::vector<int> set = random_confluent_set(rng, task, 5);
        for (int mode = 0; mode < 2; ++mode) {
            CheckResult result = mode == 0 ? check_exists(task, state, set)
                                           : check_relaxed(task, state, set);
            if (!result.ok)
                continue;
            auto replayed = apply_sequence(task, state, result.witness);
            REQUIRE(replayed.has_value());
            CHECK(*replayed == parallel_update(task, state, set));
        }
    }
}

TEST_CASE("both exists routes agree everywhere") {
    std::mt19937 rng(888);
    for (int round = 0; round < 2000; ++round) {
        PlanningTask task = random_task(rng);
        State state = random_state(rng, task);
        std::vector<int> set = random_confluent_set(rng, task, 6);
        CHECK(check_exists(task, state, set).ok == check_exists_fixpoint(task, state, set).ok);
    }
}
