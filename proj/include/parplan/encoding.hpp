#ifndef PARPLAN_ENCODING_HPP
#define PARPLAN_ENCODING_HPP

#include <optional>
#include <string>
#include <vector>

#include "parplan/engine.hpp"
#include "parplan/model.hpp"

namespace parplan {

/*
  Horizon-indexed propositional compilation of a planning task. Step 0 pins
  the initial state; each further step adds state choice (exactly-one per
  fluent), free occurs variables, postcondition and frame clauses, goal
  clauses guarded by query(t), and mutex groups. The mode decides how
  preconditions and parallel interference are constrained:

    seq         preconditions + at-most-one action per step
    forall      preconditions + interference clauses + single(x,t) machinery
    exists_acyc preconditions + conditional invalidation edges under
                built-in acyclicity
    gc_exists   preconditions only (generator for guess-and-check)
    gc_relaxed  no precondition clauses (checked externally)
*/
enum class EncodingMode { seq, forall, exists_acyc, gc_exists, gc_relaxed };

std::string to_string(EncodingMode mode);

class HorizonEncoding {
public:
    // Encodes step 0 (initial state, query(0), goal guard, mutexes).
    HorizonEncoding(const PlanningTask &task, EncodingMode mode, Engine &engine);

    const PlanningTask &task() const { return task_; }
    EncodingMode mode() const { return mode_; }
    int max_step() const { return max_step_; }

    // Unrolls append-only up to step n; no-op when n <= max_step().
    void extend_to(int n);

    // query(m) true, query(i) false for every other unrolled i.
    std::vector<Lit> query_assumptions(int m) const;

    Var holds_var(int fluent, int value, int step) const;
    Var occurs_var(int action, int step) const;
    Var query_var(int step) const;
    std::optional<Var> single_var(int fluent, int step) const;

    // Appends the forall-step interference block to all existing steps and
    // includes it in every later step (guess-and-check switch strategy).
    void add_forall_constraints();
    bool forall_constraints_added() const { return forall_added_; }

    // Reads occurs atoms of steps 1..m out of a model.
    StepPlan extract_plan(const SolveOutcome &outcome, int m, PlanSemantics tag) const;

    // Exact-assignment nogood over occurs(.,step): some action differs.
    std::vector<Lit> exact_assignment_nogood(const std::vector<int> &actions, int step) const;

private:
    void encode_step(int t);
    void encode_preconditions(int t);
    void encode_forall_interference(int t);
    void encode_exists_edges(int t);

    const PlanningTask &task_;
    EncodingMode mode_;
    Engine &engine_;
    int max_step_ = -1;
    bool forall_added_ = false;

    std::vector<int> holds_base_;                   // per step, var of fact 0
    std::vector<int> fact_offset_;                  // fluent -> offset into a step's holds block
    int facts_per_step_ = 0;
    std::vector<std::vector<Var>> occurs_;          // per step (step 0 empty)
    std::vector<Var> query_;                        // per step
    std::vector<std::vector<std::optional<Var>>> single_;  // per step, per fluent
    std::vector<std::vector<int>> step_nodes_;      // per step, per action; -1 when absent

    // Static task structure shared by all steps.
    std::vector<std::vector<std::vector<int>>> writers_by_value_;  // [fluent][value] -> actions
    std::vector<std::vector<int>> writers_;                        // [fluent] -> actions
    std::vector<std::vector<int>> self_invalidating_;              // [fluent] -> actions
    std::vector<std::pair<int, int>> interference_pairs_;          // forall binary clauses
    std::vector<std::pair<int, int>> invalidation_pairs_;          // exists edges (a, a')
};

// Directed edges a -> a' when a's postcondition invalidates a' precondition;
// restricted to an action set, deduplicated.
std::vector<std::pair<int, int>> invalidation_edges(
    const PlanningTask &task, const std::vector<int> &actions);

}  // namespace parplan

#endif
