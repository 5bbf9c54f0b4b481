#include "parplan/planner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

using namespace std;

namespace parplan {

ScheduleState::ScheduleState(const PlannerConfig &config) : config_(config) {
    if (config.increment < 1)
        throw UsageError("scheduler: increment must be >= 1");
    if (config.algorithm == Algorithm::A && config.n < 1)
        throw UsageError("scheduler: A(n) needs n >= 1");
    if (config.algorithm == Algorithm::B && !(config.gamma > 0.0 && config.gamma < 1.0))
        throw UsageError("scheduler: B(gamma) needs 0 < gamma < 1");
    if (config.algorithm == Algorithm::A) {
        for (int i = 0; i < config.n; ++i) {
            int h = i * config.increment;
            if (h > config.horizon_cap)
                break;
            active_.push_back(h);
            frontier_ = h;
        }
    }
}

uint64_t ScheduleState::consumed_total() const {
    uint64_t total = 0;
    for (const auto &[h, units] : spent_)
        total += units;
    return total;
}

uint64_t ScheduleState::consumed_at(int horizon) const {
    auto it = spent_.find(horizon);
    return it == spent_.end() ? 0 : it->second;
}

double ScheduleState::ledger_total() const {
    double total = 0.0;
    for (const auto &[h, is_finished] : finished_)
        if (is_finished)
            total += static_cast<double>(consumed_at(h));
    int h_min = next_unfinished(0);
    if (h_min <= config_.horizon_cap && config_.algorithm == Algorithm::B)
        total += static_cast<double>(consumed_at(h_min)) / (1.0 - config_.gamma);
    return total;
}

int ScheduleState::next_unfinished(int from) const {
    int h = from;
    while (h <= config_.horizon_cap) {
        auto it = finished_.find(h);
        if (it == finished_.end() || !it->second)
            return h;
        h += config_.increment;
    }
    return config_.horizon_cap + config_.increment;
}

optional<Grant> ScheduleState::grant(int horizon, optional<uint64_t> budget) {
    last_grant_ = budget ? *budget : 0;
    if (visit_order_.empty() || visit_order_.back() != horizon)
        visit_order_.push_back(horizon);
    return Grant{horizon, budget};
}

optional<Grant> ScheduleState::next() {
    if (done_)
        return nullopt;
    switch (config_.algorithm) {
    case Algorithm::S: {
        current_ = next_unfinished(current_);
        if (current_ > config_.horizon_cap)
            return nullopt;
        return grant(current_, nullopt);
    }
    case Algorithm::A: {
        if (round_pos_ >= active_.size()) {
            for (int h : joining_)
                active_.push_back(h);
            joining_.clear();
            sort(active_.begin(), active_.end());
            round_pos_ = 0;
            if (active_.empty())
                return nullopt;
        }
        return grant(active_[round_pos_], config_.slice);
    }
    case Algorithm::B: {
        int h_min = next_unfinished(0);
        if (h_min > config_.horizon_cap)
            return nullopt;
        double t = static_cast<double>(consumed_at(h_min));
        double threshold_units = config_.threshold * static_cast<double>(config_.slice);
        int best_h = -1;
        double best_deficit = 0.0;
        for (int i = 1;; ++i) {
            double target = t * pow(config_.gamma, i);
            if (target < threshold_units)
                break;
            int h = h_min + i * config_.increment;
            if (h > config_.horizon_cap)
                break;
            auto fin = finished_.find(h);
            if (fin != finished_.end() && fin->second)
                continue;
            double deficit = target - static_cast<double>(consumed_at(h));
            if (deficit >= threshold_units && deficit > best_deficit) {
                best_deficit = deficit;
                best_h = h;
            }
        }
        if (best_h != -1)
            return grant(best_h, static_cast<uint64_t>(ceil(best_deficit)));
        return grant(h_min, config_.slice);
    }
    }
    return nullopt;
}

void ScheduleState::report(int horizon, Verdict verdict, uint64_t consumed) {
    spent_[horizon] += consumed;
    switch (verdict) {
    case Verdict::sat:
        done_ = true;
        break;
    case Verdict::unsat:
        finished_[horizon] = true;
        if (config_.algorithm == Algorithm::A) {
            auto it = find(active_.begin(), active_.end(), horizon);
            if (it != active_.end())
                active_.erase(it);  // round_pos_ now points at the successor
            int next_h = frontier_ + config_.increment;
            if (next_h <= config_.horizon_cap) {
                joining_.push_back(next_h);
                frontier_ = next_h;
            }
        }
        break;
    case Verdict::exhausted:
    case Verdict::pending:
        if (config_.algorithm == Algorithm::A)
            ++round_pos_;
        break;
    }
}

string PlannerStats::to_key_value_lines() const {
    ostringstream out;
    out << "horizons_tried=" << horizons_tried << "\n";
    for (const auto &[h, verdict] : verdicts)
        out << "verdict_" << h << "=" << verdict << "\n";
    for (const auto &[h, conflicts] : conflicts_per_horizon)
        out << "conflicts_" << h << "=" << conflicts << "\n";
    out << "nogoods=" << nogoods_added << "\n";
    out << "forall_switch=" << (switched_to_forall ? 1 : 0) << "\n";
    out << "plan_length=" << plan_length << "\n";
    out << "wall_ms=" << wall_ms << "\n";
    return out.str();
}

GcVerdict guess_and_check_round(
    const PlanningTask &task, const StepPlan &candidate, EncodingMode mode) {
    if (mode != EncodingMode::gc_exists && mode != EncodingMode::gc_relaxed)
        throw UsageError("guess_and_check_round: candidate is not from a gc encoding");
    GcVerdict verdict;
    State state = task.init;
    for (size_t i = 0; i < candidate.steps.size(); ++i) {
        const auto &step = candidate.steps[i];
        if (step.empty()) {
            verdict.witnesses.emplace_back();
            continue;
        }
        CheckResult result = mode == EncodingMode::gc_exists
                                 ? check_exists_fixpoint(task, state, step)
                                 : check_relaxed(task, state, step);
        if (result.ok)
            verdict.witnesses.push_back(move(result.witness));
        else
            verdict.fails.push_back({static_cast<int>(i) + 1, move(result.non_ready), state});
        state = parallel_update(task, state, step);
    }
    verdict.accept = verdict.fails.empty();
    return verdict;
}

void attach_heuristic(Engine &engine, const HorizonEncoding &encoding,
                      int from_step, int to_step) {
    const PlanningTask &task = encoding.task();
    for (int t = max(1, from_step + 1); t <= to_step; ++t) {
        int64_t level = 2147483647LL - t;
        for (size_t x = 0; x < task.fluents.size(); ++x) {
            for (size_t v = 0; v < task.fluents[x].values.size(); ++v) {
                Var watched = encoding.holds_var(static_cast<int>(x), static_cast<int>(v), t);
                Var earlier = encoding.holds_var(static_cast<int>(x), static_cast<int>(v), t - 1);
                engine.on_assign(watched, [&engine, earlier, level](Var, bool value) {
                    engine.set_hint(earlier, level, value);
                });
            }
        }
    }
}

namespace {

Verdict to_verdict(SolveStatus status) {
    switch (status) {
    case SolveStatus::sat: return Verdict::sat;
    case SolveStatus::unsat: return Verdict::unsat;
    case SolveStatus::budget_exhausted: return Verdict::exhausted;
    }
    return Verdict::exhausted;
}

PlanSemantics semantics_of(EncodingMode mode) {
    switch (mode) {
    case EncodingMode::seq: return PlanSemantics::sequential;
    case EncodingMode::forall: return PlanSemantics::forall;
    case EncodingMode::exists_acyc: return PlanSemantics::exists;
    case EncodingMode::gc_exists: return PlanSemantics::exists;
    case EncodingMode::gc_relaxed: return PlanSemantics::relaxed;
    }
    return PlanSemantics::sequential;
}

}  // namespace

PlanResult plan(const PlanningTask &task, const PlannerConfig &config) {
    auto start = chrono::steady_clock::now();
    PlanResult result;

    Engine engine;
    engine.set_seed(config.seed);
    HorizonEncoding encoding(task, config.mode, engine);
    int heuristic_attached_up_to = 0;

    ScheduleState schedule(config);
    while (true) {
        auto grant = schedule.next();
        if (!grant)
            break;  // exhausted up to the cap
        int h = grant->horizon;
        if (h > encoding.max_step()) {
            encoding.extend_to(h);
            if (config.heuristic) {
                attach_heuristic(engine, encoding, heuristic_attached_up_to, h);
                heuristic_attached_up_to = h;
            }
        }

        auto outcome = engine.solve(encoding.query_assumptions(h), grant->budget);
        result.stats.conflicts_per_horizon[h] += outcome.stats.conflicts;
        ++result.stats.horizons_tried;

        if (outcome.status == SolveStatus::sat) {
            PlanSemantics tag = semantics_of(config.mode);
            StepPlan candidate = encoding.extract_plan(outcome, h, tag);

            if (config.mode == EncodingMode::gc_exists ||
                config.mode == EncodingMode::gc_relaxed) {
                GcVerdict verdict = guess_and_check_round(task, candidate, config.mode);
                if (!verdict.accept) {
                    if (config.mode == EncodingMode::gc_exists && config.gc_switch_to_forall) {
                        if (!encoding.forall_constraints_added()) {
                            encoding.add_forall_constraints();
                            result.stats.switched_to_forall = true;
                        }
                    } else {
                        for (const GcFailure &failure : verdict.fails) {
                            auto nogood = encoding.exact_assignment_nogood(
                                candidate.steps[failure.step - 1], failure.step);
                            if (config.mode == EncodingMode::gc_relaxed) {
                                // Relaxed serializability depends on the
                                // predecessor state; the nogood must name it
                                // or it would ban the set under every prefix.
                                for (size_t x = 0; x < task.fluents.size(); ++x)
                                    nogood.push_back(neg(encoding.holds_var(
                                        static_cast<int>(x), failure.before.values[x],
                                        failure.step - 1)));
                            }
                            engine.add_clause(move(nogood));
                            ++result.stats.nogoods_added;
                        }
                    }
                    result.stats.verdicts.push_back({h, "rejected"});
                    schedule.report(h, Verdict::pending, outcome.stats.conflicts);
                    continue;
                }
            }

            ValidationReport report = validate_plan(task, candidate);
            if (!report.valid)
                throw logic_error("planner: extracted plan failed validation at horizon " +
                                  std::to_string(h) + ": " + report.to_line());
            schedule.report(h, Verdict::sat, outcome.stats.conflicts);
            result.stats.verdicts.push_back({h, "sat"});
            result.plan = move(candidate);
            result.horizon = h;
            result.serialization = move(report.flattened);
            result.stats.plan_length = static_cast<int>(result.plan->steps.size());
            break;
        }

        Verdict verdict = to_verdict(outcome.status);
        result.stats.verdicts.push_back(
            {h, verdict == Verdict::unsat ? "unsat" : "budget"});
        schedule.report(h, verdict, outcome.stats.conflicts);
    }

    if (!config.dump_dimacs_path.empty()) {
        ofstream dump(config.dump_dimacs_path);
        if (!dump)
            throw InputError("cannot open dimacs dump path " + config.dump_dimacs_path);
        engine.dump_dimacs(dump);
    }
    result.stats.wall_ms =
        chrono::duration<double, milli>(chrono::steady_clock::now() - start).count();
    return result;
}

SimResult simulate_schedule(const PlannerConfig &config, const CostProfile &profile,
                            int step_limit) {
    ScheduleState schedule(config);
    map<int, uint64_t> spent;
    SimResult sim;
    for (int step = 0; step < step_limit; ++step) {
        auto grant = schedule.next();
        if (!grant)
            break;
        int h = grant->horizon;
        auto it = profile.costs.find(h);
        uint64_t needed = it == profile.costs.end()
                              ? numeric_limits<uint64_t>::max()
                              : it->second.first;
        uint64_t remaining = needed - min(needed, spent[h]);
        uint64_t consumed = grant->budget ? min(*grant->budget, remaining) : remaining;
        spent[h] += consumed;
        if (consumed == remaining && it != profile.costs.end()) {
            bool satisfiable = it->second.second;
            schedule.report(h, satisfiable ? Verdict::sat : Verdict::unsat, consumed);
            if (satisfiable) {
                sim.found = true;
                sim.horizon = h;
                sim.final_grant = grant->budget ? *grant->budget : consumed;
                break;
            }
        } else {
            schedule.report(h, Verdict::exhausted, consumed);
        }
    }
    sim.total_consumed = schedule.consumed_total();
    sim.ledger_total = schedule.ledger_total();
    sim.visit_order = schedule.visit_order();
    return sim;
}

}  // namespace parplan
