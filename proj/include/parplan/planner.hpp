#ifndef PARPLAN_PLANNER_HPP
#define PARPLAN_PLANNER_HPP

#include <cstdint>
#include <map>
#include <string>
#include <optional>
#include <string>
#include <vector>

#include "parplan/encoding.hpp"
#include "parplan/engine.hpp"
#include "parplan/model.hpp"
#include "parplan/serialize.hpp"

namespace parplan {

enum class Algorithm { S, A, B };

struct PlannerConfig {
    EncodingMode mode = EncodingMode::exists_acyc;
    Algorithm algorithm = Algorithm::B;
    int n = 16;              // A: horizons considered simultaneously
    double gamma = 0.9;      // B: geometric budget decay
    double threshold = 1.0;  // B: run threshold in slice units
    int increment = 5;
    uint64_t slice = 512;    // conflicts per budget slice
    bool heuristic = false;
    int horizon_cap = 200;
    uint64_t seed = 0;
    // gc refinement: switch to the forall block (paper strategy) or add
    // exact-assignment nogoods instead.
    bool gc_switch_to_forall = true;
    std::string dump_dimacs_path;  // when set, dump the final store
};

enum class Verdict { sat, unsat, exhausted, pending };

struct Grant {
    int horizon;
    std::optional<uint64_t> budget;  // nullopt = unlimited
};

/*
  Horizon budget ledger shared by the planner and the synthetic-cost
  simulator. Horizons are multiples of the increment.

    S     one horizon at a time, unlimited budget
    A(n)  round-robin slices over the n smallest unfinished horizons;
          finished horizons are replaced starting with the next round
    B(g)  target ledger: followers of the smallest unfinished horizon h_min
          are owed spent(h_min)*g^i; the largest deficit at or above the
          run threshold is granted its ceiling top-up, otherwise h_min
          advances by one slice
*/
class ScheduleState {
public:
    ScheduleState(const PlannerConfig &config);

    // Next horizon/budget pair; nullopt once every horizon up to the cap is
    // finished (exhaustion).
    std::optional<Grant> next();
    void report(int horizon, Verdict verdict, uint64_t consumed);

    bool done() const { return done_; }
    uint64_t consumed_total() const;
    uint64_t consumed_at(int horizon) const;
    uint64_t last_grant() const { return last_grant_; }
    // Committed allocation of the B ledger: consumed on finished horizons
    // plus the geometric area spent(h_min)/(1-gamma) of the open frontier.
    double ledger_total() const;
    const std::vector<int> &visit_order() const { return visit_order_; }

private:
    std::optional<Grant> grant(int horizon, std::optional<uint64_t> budget);
    int next_unfinished(int from) const;

    PlannerConfig config_;
    bool done_ = false;
    std::map<int, uint64_t> spent_;
    std::map<int, bool> finished_;
    std::vector<int> visit_order_;
    uint64_t last_grant_ = 0;

    // S
    int current_ = 0;
    // A
    std::vector<int> active_;
    std::vector<int> joining_;
    size_t round_pos_ = 0;
    int frontier_ = 0;
};

struct PlannerStats {
    std::vector<std::pair<int, std::string>> verdicts;  // horizon, verdict
    std::map<int, uint64_t> conflicts_per_horizon;
    int horizons_tried = 0;
    int nogoods_added = 0;
    bool switched_to_forall = false;
    int plan_length = -1;
    double wall_ms = 0.0;

    std::string to_key_value_lines() const;
};

struct PlanResult {
    std::optional<StepPlan> plan;
    int horizon = -1;
    std::vector<int> serialization;  // flattened sequential witness
    PlannerStats stats;
};

// Multishot search over one engine context; validates every returned plan.
PlanResult plan(const PlanningTask &task, const PlannerConfig &config);

struct GcFailure {
    int step = 0;               // 1-based
    std::vector<int> non_ready;
    State before;               // predecessor state of the failing step
};

struct GcVerdict {
    bool accept = false;
    std::vector<std::vector<int>> witnesses;  // per step when accepted
    std::vector<GcFailure> fails;
};

// Checks a candidate model's steps with the fixpoint matching the mode
// (exists: invalidation fixpoint; relaxed: reach fixpoint).
GcVerdict guess_and_check_round(
    const PlanningTask &task, const StepPlan &candidate, EncodingMode mode);

// Wires the backward value-propagation heuristic over holds variables of
// steps (from_step, to_step]; assignment of holds(x,v,t) hints
// holds(x,v,t-1) at level 2147483647 - t.
void attach_heuristic(Engine &engine, const HorizonEncoding &encoding,
                      int from_step, int to_step);

// --- Synthetic-cost scheduler simulation -------------------------------

struct CostProfile {
    // horizon -> (units needed, satisfiable?); horizons not listed never
    // finish within any simulated budget.
    std::map<int, std::pair<uint64_t, bool>> costs;
};

struct SimResult {
    bool found = false;
    int horizon = -1;
    uint64_t total_consumed = 0;
    uint64_t final_grant = 0;
    double ledger_total = 0.0;
    std::vector<int> visit_order;
};

// Runs a schedule against scripted per-horizon costs (budget currency =
// abstract units; slice should be 1 for unit-grained traces).
SimResult simulate_schedule(const PlannerConfig &config, const CostProfile &profile,
                            int step_limit = 1000000);

}  // namespace parplan

#endif
