#ifndef PARPLAN_SAS_HPP
#define PARPLAN_SAS_HPP

#include <string>
#include <vector>

#include "parplan/model.hpp"

namespace parplan {

/*
  Parser for Fast Downward's SAS output, version 3 layout (begin_ / end_
  section sentinels). Documents are kept faithful to the file; to_task lowers
  them to the multivalued ground model, rejecting axioms and conditional
  effects.
*/

struct SasVariable {
    std::string name;
    int axiom_layer = -1;
    std::vector<std::string> value_names;
};

struct SasEffect {
    std::vector<std::pair<int, int>> conditions;  // conditional effects (rejected downstream)
    int var = -1;
    int pre = -1;  // -1 = don't care
    int post = -1;
};

struct SasOperator {
    std::string name;
    std::vector<std::pair<int, int>> prevail;
    std::vector<SasEffect> effects;
    int cost = 0;
};

struct SasDocument {
    int version = 0;
    int metric = 0;
    std::vector<SasVariable> variables;
    std::vector<std::vector<std::pair<int, int>>> mutex_groups;
    std::vector<int> initial;
    std::vector<std::pair<int, int>> goal;
    std::vector<SasOperator> operators;
    int axiom_count = 0;
    bool axioms_unsupported = false;  // axiom rules or derived variables present
    std::vector<std::string> warnings;
};

SasDocument parse_sas(const std::string &text);

// Variables become fluents (value symbols are the numeric indices), prevail
// and effect preconditions merge into pre, effect values into post, mutex
// groups carry over. Errors: AxiomsUnsupported, ConditionalEffectUnsupported.
PlanningTask to_task(const SasDocument &doc);

}  // namespace parplan

#endif
