#ifndef PARPLAN_SERIALIZE_HPP
#define PARPLAN_SERIALIZE_HPP

#include <string>
#include <vector>

#include "parplan/model.hpp"

namespace parplan {

/*
  Polynomial serializability deciders with witness extraction, the plan
  validator for all four semantics, and a brute-force permutation oracle.
  All iteration order is by ascending action ordinal so witnesses and
  reports are deterministic.
*/

struct CheckResult {
    bool ok = false;
    std::vector<int> witness;    // serialization order when ok
    std::vector<int> non_ready;  // actions stuck in the fixpoint when !ok
};

// Forall-step: preconditions hold, no applied action moves another one's
// needed fluent, self-invalidated fluents have a single writer.
bool check_forall(const PlanningTask &task, const State &state, const std::vector<int> &actions);

// Exists-step via acyclicity of the invalidation graph; witness is the
// ordinal-minimal topological serialization.
CheckResult check_exists(const PlanningTask &task, const State &state, const std::vector<int> &actions);

// Exists-step via the apply/ready least fixpoint (no reachability); agrees
// with check_exists on every input.
CheckResult check_exists_fixpoint(
    const PlanningTask &task, const State &state, const std::vector<int> &actions);

// Relaxed exists-step: preconditions may be established mid-step; worklist
// fixpoint over reach/apply/ready.
CheckResult check_relaxed(const PlanningTask &task, const State &state, const std::vector<int> &actions);

struct ValidationReport {
    bool valid = false;
    int failed_step = 0;     // 1-based; for goal failures, the plan length
    std::string reason;      // machine-readable code
    std::vector<int> flattened;  // witness concatenation when valid
    State final_state;

    std::string to_line() const;
};

ValidationReport validate_plan(const PlanningTask &task, const StepPlan &plan);

// Literal definition-by-enumeration decider; |actions| <= 8.
bool oracle_serializable(const PlanningTask &task, const State &state,
                         const std::vector<int> &actions, PlanSemantics semantics);

}  // namespace parplan

#endif
