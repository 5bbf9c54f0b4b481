#ifndef PARPLAN_MODEL_HPP
#define PARPLAN_MODEL_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace parplan {

/*
  Ground planning model: multivalued fluents, total states, actions given by
  partial pre/post states, and step plans (sequences of action sets with a
  declared serialization semantics). All symbols are interned: fluents,
  values, and actions are addressed by ordinal; external names are kept for
  round-tripping.
*/

class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string &msg) : std::runtime_error(msg) {}
};

class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string &msg) : std::runtime_error(msg) {}
};

struct Fluent {
    std::string name;
    std::vector<std::string> values;  // domain, ordered; non-empty, distinct
};

// Assignments to a subset of fluents, sorted by fluent ordinal.
class PartialState {
    std::vector<std::pair<int, int>> bindings_;
public:
    PartialState() = default;
    explicit PartialState(std::vector<std::pair<int, int>> bindings);

    void set(int fluent, int value);
    std::optional<int> get(int fluent) const;
    bool defines(int fluent) const { return get(fluent).has_value(); }
    bool empty() const { return bindings_.empty(); }
    size_t size() const { return bindings_.size(); }
    const std::vector<std::pair<int, int>> &bindings() const { return bindings_; }

    bool operator==(const PartialState &other) const = default;
};

// Total assignment, one value per fluent, indexed by fluent ordinal.
struct State {
    std::vector<int> values;

    bool operator==(const State &other) const = default;
};

struct Action {
    std::string name;
    PartialState pre;
    PartialState post;  // non-empty (empty-effect actions are rejected at load)
};

struct MutexGroup {
    std::vector<std::pair<int, int>> literals;  // (fluent, value) pairs
};

struct PlanningTask {
    std::vector<Fluent> fluents;
    State init;
    PartialState goal;
    std::vector<Action> actions;
    std::vector<MutexGroup> mutex_groups;

    int fluent_ordinal(const std::string &name) const;
    int action_ordinal(const std::string &name) const;
    int value_ordinal(int fluent, const std::string &value) const;
};

// Checks all structural invariants; throws InputError naming the violation.
void validate_task(const PlanningTask &task);

enum class PlanSemantics { sequential, forall, exists, relaxed };

std::string to_string(PlanSemantics semantics);
std::optional<PlanSemantics> parse_semantics(const std::string &text);

struct StepPlan {
    PlanSemantics semantics = PlanSemantics::sequential;
    // Action ordinals per step, each sorted ascending; empty steps are idle.
    std::vector<std::vector<int>> steps;
};

bool state_satisfies(const State &state, const PartialState &partial);

// Successor state s' with post_a applied and everything else framed, defined
// iff pre_a agrees with s.
std::optional<State> successor(const PlanningTask &task, const State &state, int action);

// Left fold of successor; absent as soon as one step is undefined.
std::optional<State> apply_sequence(
    const PlanningTask &task, const State &state, const std::vector<int> &actions);

bool check_goal(const State &state, const PartialState &goal);

// True iff all pairs in the set agree on shared postcondition fluents.
bool is_confluent(const PlanningTask &task, const std::vector<int> &actions);

// Parallel update: all postconditions applied at once (assumes confluence).
State parallel_update(const PlanningTask &task, const State &state, const std::vector<int> &actions);

}  // namespace parplan

#endif
