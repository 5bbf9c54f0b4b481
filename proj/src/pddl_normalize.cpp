#include <sstream>

#include "parplan/pddl.hpp"

using namespace std;

namespace parplan {

namespace {

Formula make_not(Formula inner) {
    Formula f;
    f.kind = FormulaKind::logical_not;
    f.pos = inner.pos;
    f.children.push_back(move(inner));
    return f;
}

// Rewrites implications and universal quantifiers away, top-down.
Formula eliminate(Formula f) {
    switch (f.kind) {
    case FormulaKind::imply: {
        Formula out;
        out.kind = FormulaKind::logical_or;
        out.pos = f.pos;
        out.children.push_back(make_not(eliminate(move(f.children[0]))));
        out.children.push_back(eliminate(move(f.children[1])));
        return out;
    }
    case FormulaKind::forall: {
        Formula inner;
        inner.kind = FormulaKind::exists;
        inner.pos = f.pos;
        inner.params = move(f.params);
        inner.children.push_back(make_not(eliminate(move(f.children[0]))));
        return make_not(move(inner));
    }
    default:
        for (Formula &child : f.children)
            child = eliminate(move(child));
        return f;
    }
}

// Negation-normal form, except negation may stay over exists.
Formula push_negations(Formula f, bool negated) {
    switch (f.kind) {
    case FormulaKind::logical_not:
        return push_negations(move(f.children[0]), !negated);
    case FormulaKind::logical_and:
    case FormulaKind::logical_or: {
        Formula out;
        out.pos = f.pos;
        bool is_and = f.kind == FormulaKind::logical_and;
        out.kind = (is_and != negated) ? FormulaKind::logical_and : FormulaKind::logical_or;
        for (Formula &child : f.children)
            out.children.push_back(push_negations(move(child), negated));
        return out;
    }
    case FormulaKind::exists: {
        Formula out = move(f);
        out.children[0] = push_negations(move(out.children[0]), false);
        return negated ? make_not(move(out)) : move(out);
    }
    case FormulaKind::atom:
    case FormulaKind::equals:
    case FormulaKind::unsupported:
        return negated ? make_not(move(f)) : move(f);
    default:
        // when / residual constructs: normalize children positively.
        for (Formula &child : f.children)
            child = push_negations(move(child), false);
        return negated ? make_not(move(f)) : move(f);
    }
}

Formula flatten(Formula f) {
    for (Formula &child : f.children)
        child = flatten(move(child));
    if (f.kind == FormulaKind::logical_and || f.kind == FormulaKind::logical_or) {
        vector<Formula> merged;
        for (Formula &child : f.children) {
            if (child.kind == f.kind) {
                for (Formula &grand : child.children)
                    merged.push_back(move(grand));
            } else {
                merged.push_back(move(child));
            }
        }
        f.children = move(merged);
        if (f.children.size() == 1)
            return move(f.children[0]);
    }
    return f;
}

Formula normalize_condition(Formula f) {
    return flatten(push_negations(eliminate(move(f)), false));
}

// Effects are not condition formulas: only conjunction flattening and double
// negation removal apply; when/forall survive for the lowering diagnostics.
Formula normalize_effect(Formula f) {
    if (f.kind == FormulaKind::logical_not && f.children[0].kind == FormulaKind::logical_not)
        return normalize_effect(move(f.children[0].children[0]));
    if (f.kind == FormulaKind::when) {
        f.children[0] = normalize_condition(move(f.children[0]));
        f.children[1] = normalize_effect(move(f.children[1]));
        return f;
    }
    for (Formula &child : f.children)
        child = normalize_effect(move(child));
    if (f.kind == FormulaKind::logical_and)
        return flatten(move(f));
    return f;
}

void print_typed_vars(ostream &out, const vector<TypedVar> &vars, bool variables) {
    bool first = true;
    for (size_t i = 0; i < vars.size(); ++i) {
        if (!first)
            out << " ";
        first = false;
        out << (variables ? "?" : "") << vars[i].name;
        bool group_end = i + 1 == vars.size() || vars[i + 1].type != vars[i].type;
        if (group_end)
            out << " - " << vars[i].type;
    }
}

void print_formula(ostream &out, const Formula &f) {
    switch (f.kind) {
    case FormulaKind::atom:
        out << "(" << f.predicate;
        for (const Term &term : f.args)
            out << " " << (term.is_variable ? "?" : "") << term.name;
        out << ")";
        return;
    case FormulaKind::equals:
        out << "(= " << (f.args[0].is_variable ? "?" : "") << f.args[0].name << " "
            << (f.args[1].is_variable ? "?" : "") << f.args[1].name << ")";
        return;
    case FormulaKind::logical_not:
        out << "(not ";
        print_formula(out, f.children[0]);
        out << ")";
        return;
    case FormulaKind::logical_and:
    case FormulaKind::logical_or:
        out << "(" << (f.kind == FormulaKind::logical_and ? "and" : "or");
        for (const Formula &child : f.children) {
            out << " ";
            print_formula(out, child);
        }
        out << ")";
        return;
    case FormulaKind::imply:
        out << "(imply ";
        print_formula(out, f.children[0]);
        out << " ";
        print_formula(out, f.children[1]);
        out << ")";
        return;
    case FormulaKind::forall:
    case FormulaKind::exists:
        out << "(" << (f.kind == FormulaKind::forall ? "forall" : "exists") << " (";
        print_typed_vars(out, f.params, true);
        out << ") ";
        print_formula(out, f.children[0]);
        out << ")";
        return;
    case FormulaKind::when:
        out << "(when ";
        print_formula(out, f.children[0]);
        out << " ";
        print_formula(out, f.children[1]);
        out << ")";
        return;
    case FormulaKind::unsupported:
        out << f.raw;
        return;
    }
}

}  // namespace

PddlAst normalize(PddlAst ast) {
    for (ActionDecl &action : ast.domain.actions) {
        if (action.precondition)
            action.precondition = normalize_condition(move(*action.precondition));
        if (action.effect)
            action.effect = normalize_effect(move(*action.effect));
    }
    if (ast.problem.goal)
        ast.problem.goal = normalize_condition(move(*ast.problem.goal));
    return ast;
}

string beautify(const PddlAst &ast) {
    ostringstream out;
    const PddlDomain &d = ast.domain;
    out << "(define (domain " << d.name << ")\n";
    if (!d.requirements.empty()) {
        out << "  (:requirements";
        for (const string &req : d.requirements)
            out << " " << req;
        out << ")\n";
    }
    if (!d.types.empty()) {
        out << "  (:types";
        for (size_t i = 0; i < d.types.size(); ++i) {
            out << " " << d.types[i].first;
            bool group_end = i + 1 == d.types.size() || d.types[i + 1].second != d.types[i].second;
            if (group_end)
                out << " - " << d.types[i].second;
        }
        out << ")\n";
    }
    if (!d.constants.empty()) {
        out << "  (:constants";
        for (size_t i = 0; i < d.constants.size(); ++i) {
            out << " " << d.constants[i].name;
            bool group_end =
                i + 1 == d.constants.size() || d.constants[i + 1].type != d.constants[i].type;
            if (group_end)
                out << " - " << d.constants[i].type;
        }
        out << ")\n";
    }
    if (!d.predicates.empty()) {
        out << "  (:predicates\n";
        for (const PredicateDecl &p : d.predicates) {
            out << "    (" << p.name;
            if (!p.params.empty()) {
                out << " ";
                print_typed_vars(out, p.params, true);
            }
            out << ")\n";
        }
        out << "  )\n";
    }
    for (const ActionDecl &action : d.actions) {
        out << "  (:action " << action.name << "\n";
        out << "    :parameters (";
        print_typed_vars(out, action.params, true);
        out << ")\n";
        if (action.precondition) {
            out << "    :precondition ";
            print_formula(out, *action.precondition);
            out << "\n";
        }
        if (action.effect) {
            out << "    :effect ";
            print_formula(out, *action.effect);
            out << "\n";
        }
        out << "  )\n";
    }
    for (const string &raw : d.derived_raw)
        out << "  " << raw << "\n";
    out << ")\n";

    const PddlProblem &p = ast.problem;
    out << "(define (problem " << p.name << ")\n";
    out << "  (:domain " << (p.domain_name.empty() ? d.name : p.domain_name) << ")\n";
    if (!p.objects.empty()) {
        out << "  (:objects";
        for (size_t i = 0; i < p.objects.size(); ++i) {
            out << " " << p.objects[i].name;
            bool group_end = i + 1 == p.objects.size() || p.objects[i + 1].type != p.objects[i].type;
            if (group_end)
                out << " - " << p.objects[i].type;
        }
        out << ")\n";
    }
    out << "  (:init\n";
    for (const GroundLiteral &literal : p.init) {
        out << "    ";
        if (!literal.positive)
            out << "(not ";
        out << "(" << literal.predicate;
        for (const string &arg : literal.args)
            out << " " << arg;
        out << ")";
        if (!literal.positive)
            out << ")";
        out << "\n";
    }
    out << "  )\n";
    if (p.goal) {
        out << "  (:goal ";
        print_formula(out, *p.goal);
        out << ")\n";
    }
    out << ")\n";
    return out.str();
}

bool formula_equal(const Formula &a, const Formula &b) {
    if (a.kind != b.kind || a.predicate != b.predicate || a.args != b.args ||
        a.params != b.params || a.raw != b.raw || a.children.size() != b.children.size())
        return false;
    for (size_t i = 0; i < a.children.size(); ++i)
        if (!formula_equal(a.children[i], b.children[i]))
            return false;
    return true;
}

namespace {

bool optional_formula_equal(const optional<Formula> &a, const optional<Formula> &b) {
    if (a.has_value() != b.has_value())
        return false;
    return !a || formula_equal(*a, *b);
}

}  // namespace

bool ast_equal(const PddlAst &a, const PddlAst &b) {
    const PddlDomain &da = a.domain, &db = b.domain;
    if (da.name != db.name || da.requirements != db.requirements ||
        da.types != db.types || da.constants != db.constants ||
        da.derived_raw != db.derived_raw)
        return false;
    if (da.predicates.size() != db.predicates.size() || da.actions.size() != db.actions.size())
        return false;
    for (size_t i = 0; i < da.predicates.size(); ++i)
        if (da.predicates[i].name != db.predicates[i].name ||
            da.predicates[i].params != db.predicates[i].params)
            return false;
    for (size_t i = 0; i < da.actions.size(); ++i) {
        if (da.actions[i].name != db.actions[i].name ||
            da.actions[i].params != db.actions[i].params ||
            !optional_formula_equal(da.actions[i].precondition, db.actions[i].precondition) ||
            !optional_formula_equal(da.actions[i].effect, db.actions[i].effect))
            return false;
    }
    const PddlProblem &pa = a.problem, &pb = b.problem;
    if (pa.name != pb.name || pa.objects != pb.objects ||
        pa.init.size() != pb.init.size() ||
        !optional_formula_equal(pa.goal, pb.goal))
        return false;
    for (size_t i = 0; i < pa.init.size(); ++i)
        if (pa.init[i].positive != pb.init[i].positive ||
            pa.init[i].predicate != pb.init[i].predicate || pa.init[i].args != pb.init[i].args)
            return false;
    return true;
}

}  // namespace parplan
