#ifndef PARPLAN_FACTS_HPP
#define PARPLAN_FACTS_HPP

#include <string>

#include "parplan/model.hpp"

namespace parplan {

/*
  Textual ground-task interchange over the predicates
    fluent/1 value/2 init/2 goal/2 action/1 prec/3 post/3 mutex/3
  one fact per line, '.'-terminated. Symbols outside [a-z0-9_]+ are written
  double-quoted. '%' starts a comment on read; the writer emits none.
*/

// Canonical serialization: predicates in the order above, facts within each
// predicate by fluent/action ordinal then domain-value order.
std::string write_facts(const PlanningTask &task);

// Inverse of write_facts; accepts any fact order. Throws InputError on
// unknown predicates, dangling references, or a non-total initial state.
PlanningTask read_facts(const std::string &text);

}  // namespace parplan

#endif
