#ifndef PARPLAN_CLI_HPP
#define PARPLAN_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "parplan/model.hpp"

namespace parplan {

/*
  Command-line pipeline: translate | normalize | check-syntax | beautify |
  solve | validate. Exit codes: 0 success / plan found / valid plan,
  10 no plan within the horizon cap or invalid plan, 1 usage error,
  2 input error.
*/
int run_cli(const std::vector<std::string> &args, std::istream &in, std::ostream &out,
            std::ostream &err);

// Plan text format: one "step <t>: <action> ..." line per non-idle step;
// action names with whitespace or quotes are double-quoted.
std::string write_plan_text(const PlanningTask &task, const StepPlan &plan);
std::string write_plan_facts(const PlanningTask &task, const StepPlan &plan);
StepPlan read_plan_text(const PlanningTask &task, const std::string &text,
                        PlanSemantics semantics);

}  // namespace parplan

#endif
