#ifndef PARPLAN_ENGINE_HPP
#define PARPLAN_ENGINE_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

namespace parplan {

using Var = int;

// Literal; index = 2*var + sign, sign 1 = negated.
struct Lit {
    int x = -2;

    static Lit make(Var var, bool negated) { return Lit{var * 2 + (negated ? 1 : 0)}; }
    Var var() const { return x >> 1; }
    bool negated() const { return x & 1; }
    Lit operator~() const { return Lit{x ^ 1}; }
    bool operator==(const Lit &other) const = default;
    int dimacs() const { return negated() ? -(var() + 1) : var() + 1; }
};

inline Lit pos(Var v) { return Lit::make(v, false); }
inline Lit neg(Var v) { return Lit::make(v, true); }

enum class SolveStatus { sat, unsat, budget_exhausted };

struct SolveStats {
    uint64_t conflicts = 0;
    uint64_t decisions = 0;
    uint64_t propagations = 0;
    uint64_t restarts = 0;
};

struct SolveOutcome {
    SolveStatus status = SolveStatus::unsat;
    std::vector<uint8_t> model;  // per var, 0/1; only meaningful on sat
    SolveStats stats;

    bool model_value(Var v) const { return model.at(v) != 0; }
    bool model_value(Lit l) const { return model_value(l.var()) != l.negated(); }
};

/*
  Incremental CDCL context. Clauses, at-most-one groups, and conditional
  edges are permanent once added; solving is driven by assumption literals
  and an optional conflict budget. Variables can carry dynamic hint
  levels/phases that steer branching without changing satisfiability, and
  assignment callbacks may adjust hints (undone on backtracking).
*/
class Engine {
public:
    using AssignCallback = std::function<void(Var, bool)>;

    Engine();
    ~Engine();
    Engine(const Engine &) = delete;
    Engine &operator=(const Engine &) = delete;

    Var new_var();
    int num_vars() const;

    // Graph node for conditional edges.
    int new_node();

    // All three may only be called between solve calls (decision level 0).
    void add_clause(std::vector<Lit> lits);
    void add_amo(const std::vector<Lit> &lits);
    void add_edge(Lit on, int from, int to);

    SolveOutcome solve(const std::vector<Lit> &assumptions = {},
                       std::optional<uint64_t> conflict_budget = std::nullopt);

    // level > 0 promotes the variable ahead of activity order; phase unset
    // falls back to the saved-polarity policy.
    void set_hint(Var v, int64_t level, std::optional<bool> phase);
    void clear_hint(Var v);
    std::pair<int64_t, std::optional<bool>> hint(Var v) const;

    void on_assign(Var v, AssignCallback callback);

    void set_seed(uint64_t seed) { seed_ = seed; }

    void dump_dimacs(std::ostream &out) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl;
    uint64_t seed_ = 0;
};

}  // namespace parplan

#endif
