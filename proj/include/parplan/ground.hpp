#ifndef PARPLAN_GROUND_HPP
#define PARPLAN_GROUND_HPP

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "parplan/model.hpp"
#include "parplan/pddl.hpp"

namespace parplan {

/*
  Lowering of a normalized PDDL AST to conjunctive action schemas and their
  instantiation over the typed object universe. Boolean ground atoms become
  two-valued fluents with domain {true,false}; negated conditions map to
  value false.
*/

struct SchemaAtom {
    std::string predicate;
    std::vector<Term> args;
};

struct SchemaLiteral {
    bool positive = true;
    SchemaAtom atom;
};

struct EqualityGuard {
    bool positive = true;  // (= a b) vs (not (= a b))
    Term lhs;
    Term rhs;
};

struct LoweredAction {
    std::string name;
    std::vector<TypedVar> params;
    std::vector<SchemaLiteral> preconditions;         // fluent predicates
    std::vector<SchemaLiteral> static_preconditions;  // moved by static_filter
    std::vector<EqualityGuard> equality_guards;
    std::vector<SchemaLiteral> effects;
};

struct SchemaTask {
    std::vector<std::pair<std::string, std::string>> types;  // (type, parent)
    std::vector<TypedName> objects;                          // constants + problem objects
    std::vector<PredicateDecl> predicates;
    std::vector<LoweredAction> actions;
    std::vector<SchemaAtom> init;  // ground, positive
    std::vector<SchemaLiteral> goal;
    std::set<std::string> static_predicates;  // filled by static_filter
};

// Requires a normalized AST; throws InputError("ResidualConstruct ...") when
// a construct outside the conjunctive fragment survives normalization.
SchemaTask lower_to_schemas(const PddlAst &ast);

// Classifies predicates never occurring in any effect as static and moves
// the matching preconditions aside; identity when nothing is static.
SchemaTask static_filter(SchemaTask task);

struct GroundOptions {
    uint64_t memory_guard = 5'000'000;  // prospective ground action count
    bool relaxed_reachability = false;  // delete-relaxation action pruning
};

// Instantiates schemas over all type-consistent substitutions, pruning
// instances whose static preconditions contradict the initial state.
PlanningTask ground(const SchemaTask &task, const GroundOptions &options = {});

}  // namespace parplan

#endif
