#ifndef PARPLAN_PDDL_HPP
#define PARPLAN_PDDL_HPP

#include <optional>
#include <string>
#include <vector>

#include "parplan/model.hpp"

namespace parplan {

/*
  PDDL frontend: s-expression parser to a typed AST, condition normalization
  (implication elimination, forall -> not-exists-not, negation pushing,
  flattening), pretty-printing, and syntax checking. Symbols are
  case-insensitive and canonicalized to lower case. Constructs outside the
  supported fragment (conditional/quantified effects, derived predicates,
  numeric and durative features) parse with a warning and are rejected when
  lowering to schemas.
*/

struct SourcePos {
    int line = 0;
    int col = 0;
};

struct Term {
    bool is_variable = false;
    std::string name;  // variables without the leading '?'

    bool operator==(const Term &other) const {
        return is_variable == other.is_variable && name == other.name;
    }
};

enum class FormulaKind {
    atom,
    logical_not,
    logical_and,
    logical_or,
    imply,
    forall,
    exists,
    equals,
    when,        // conditional effect; outside the lowered fragment
    unsupported  // raw s-expression kept for printing/diagnostics
};

struct TypedVar {
    std::string name;
    std::string type;  // "object" when omitted

    bool operator==(const TypedVar &other) const = default;
};

struct Formula {
    FormulaKind kind = FormulaKind::atom;
    SourcePos pos;
    std::string predicate;        // atom
    std::vector<Term> args;       // atom / equals (two entries)
    std::vector<TypedVar> params; // forall / exists
    std::vector<Formula> children;
    std::string raw;              // unsupported
};

bool formula_equal(const Formula &a, const Formula &b);  // ignores positions

struct PredicateDecl {
    std::string name;
    std::vector<TypedVar> params;
    SourcePos pos;
};

struct ActionDecl {
    std::string name;
    std::vector<TypedVar> params;
    std::optional<Formula> precondition;
    std::optional<Formula> effect;
    SourcePos pos;
};

struct TypedName {
    std::string name;
    std::string type;

    bool operator==(const TypedName &other) const = default;
};

struct PddlDomain {
    std::string name;
    std::vector<std::string> requirements;
    std::vector<std::string> unsupported_requirements;
    std::vector<std::pair<std::string, std::string>> types;  // (type, parent)
    std::vector<TypedName> constants;
    std::vector<PredicateDecl> predicates;
    std::vector<ActionDecl> actions;
    std::vector<std::string> derived_raw;  // :derived blocks, verbatim
};

struct GroundLiteral {
    bool positive = true;
    std::string predicate;
    std::vector<std::string> args;
    SourcePos pos;
};

struct PddlProblem {
    std::string name;
    std::string domain_name;
    std::vector<TypedName> objects;
    std::vector<GroundLiteral> init;
    std::optional<Formula> goal;
};

struct PddlAst {
    PddlDomain domain;
    PddlProblem problem;
};

bool ast_equal(const PddlAst &a, const PddlAst &b);  // ignores positions

struct Diagnostic {
    std::string file;
    SourcePos pos;
    bool is_error = false;
    std::string message;

    std::string to_string() const;  // file:line:col: severity: message
};

// Throws InputError (with file:line:col) on the first fatal problem;
// unsupported constructs only produce warnings, retrievable via check_syntax.
PddlAst parse_pddl(const std::string &domain_text, const std::string &problem_text,
                   const std::string &domain_file = "domain.pddl",
                   const std::string &problem_file = "problem.pddl");

// Never throws; returns all errors and unsupported-construct warnings.
std::vector<Diagnostic> check_syntax(const std::string &domain_text,
                                     const std::string &problem_text,
                                     const std::string &domain_file = "domain.pddl",
                                     const std::string &problem_file = "problem.pddl");

// Condition formulas: implications eliminated, forall rewritten to
// not-exists-not, negation pushed to atoms (except over surviving exists),
// and/or flattened. Effect formulas only have conjunctions flattened and
// double negations removed. Idempotent.
PddlAst normalize(PddlAst ast);

// Uniform 2-space-indented PDDL; beautify(parse(x)) reparses to an AST
// structurally equal to parse(x).
std::string beautify(const PddlAst &ast);

}  // namespace parplan

#endif
