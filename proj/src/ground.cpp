#include "parplan/ground.hpp"

#include <algorithm>
#include <map>

using namespace std;

namespace parplan {

namespace {

constexpr int kTrue = 0;
constexpr int kFalse = 1;

[[noreturn]] void residual(const string &what, SourcePos pos) {
    throw InputError("ResidualConstruct: " + what + " at " + std::to_string(pos.line) + ":" +
                     std::to_string(pos.col) + " is outside the supported fragment");
}

// Conjunction of (possibly negated) atoms and equality guards.
void lower_condition(const Formula &f, vector<SchemaLiteral> &literals,
                     vector<EqualityGuard> &guards) {
    switch (f.kind) {
    case FormulaKind::logical_and:
        for (const Formula &child : f.children)
            lower_condition(child, literals, guards);
        return;
    case FormulaKind::atom:
        literals.push_back({true, {f.predicate, f.args}});
        return;
    case FormulaKind::equals:
        guards.push_back({true, f.args[0], f.args[1]});
        return;
    case FormulaKind::logical_not: {
        const Formula &inner = f.children[0];
        if (inner.kind == FormulaKind::atom) {
            literals.push_back({false, {inner.predicate, inner.args}});
            return;
        }
        if (inner.kind == FormulaKind::equals) {
            guards.push_back({false, inner.args[0], inner.args[1]});
            return;
        }
        if (inner.kind == FormulaKind::exists)
            residual("negated existential quantifier", f.pos);
        residual("negation of a non-atom", f.pos);
    }
    case FormulaKind::logical_or:
        residual("disjunction", f.pos);
    case FormulaKind::exists:
        residual("existential quantifier", f.pos);
    case FormulaKind::forall:
        residual("universal quantifier", f.pos);
    case FormulaKind::imply:
        residual("implication", f.pos);
    case FormulaKind::when:
        residual("conditional effect", f.pos);
    case FormulaKind::unsupported:
        residual("unsupported construct " + f.raw, f.pos);
    }
}

void lower_effect(const Formula &f, vector<SchemaLiteral> &effects) {
    switch (f.kind) {
    case FormulaKind::logical_and:
        for (const Formula &child : f.children)
            lower_effect(child, effects);
        return;
    case FormulaKind::atom:
        effects.push_back({true, {f.predicate, f.args}});
        return;
    case FormulaKind::logical_not:
        if (f.children[0].kind == FormulaKind::atom) {
            effects.push_back({false, {f.children[0].predicate, f.children[0].args}});
            return;
        }
        residual("negation of a non-atom effect", f.pos);
    case FormulaKind::when:
        residual("conditional effect", f.pos);
    case FormulaKind::forall:
        residual("quantified effect", f.pos);
    case FormulaKind::equals:
        residual("equality in an effect", f.pos);
    default:
        residual("effect construct", f.pos);
    }
}

}  // namespace

SchemaTask lower_to_schemas(const PddlAst &ast) {
    if (!ast.domain.derived_raw.empty())
        throw InputError("ResidualConstruct: derived predicates are outside the supported fragment");
    SchemaTask task;
    task.types = ast.domain.types;
    task.objects = ast.domain.constants;
    task.objects.insert(task.objects.end(), ast.problem.objects.begin(),
                        ast.problem.objects.end());
    task.predicates = ast.domain.predicates;

    for (const ActionDecl &action : ast.domain.actions) {
        LoweredAction lowered;
        lowered.name = action.name;
        lowered.params = action.params;
        if (action.precondition)
            lower_condition(*action.precondition, lowered.preconditions, lowered.equality_guards);
        if (action.effect)
            lower_effect(*action.effect, lowered.effects);
        task.actions.push_back(move(lowered));
    }

    for (const GroundLiteral &literal : ast.problem.init) {
        if (!literal.positive)
            continue;  // closed world; parser already warned
        SchemaAtom atom;
        atom.predicate = literal.predicate;
        for (const string &arg : literal.args)
            atom.args.push_back({false, arg});
        task.init.push_back(move(atom));
    }

    if (ast.problem.goal) {
        vector<EqualityGuard> guards;
        lower_condition(*ast.problem.goal, task.goal, guards);
        for (const EqualityGuard &guard : guards) {
            bool equal = guard.lhs.name == guard.rhs.name;
            if (equal != guard.positive)
                throw InputError("goal contains an unsatisfiable ground equality");
        }
    }
    return task;
}

SchemaTask static_filter(SchemaTask task) {
    set<string> affected;
    for (const LoweredAction &action : task.actions)
        for (const SchemaLiteral &effect : action.effects)
            affected.insert(effect.atom.predicate);
    for (const PredicateDecl &p : task.predicates)
        if (!affected.count(p.name))
            task.static_predicates.insert(p.name);
    if (task.static_predicates.empty())
        return task;
    for (LoweredAction &action : task.actions) {
        vector<SchemaLiteral> dynamic;
        for (SchemaLiteral &literal : action.preconditions) {
            if (task.static_predicates.count(literal.atom.predicate))
                action.static_preconditions.push_back(move(literal));
            else
                dynamic.push_back(move(literal));
        }
        action.preconditions = move(dynamic);
    }
    return task;
}

namespace {

struct Universe {
    map<string, string> parent;                 // type -> parent
    map<string, vector<string>> members;        // type -> objects (declaration order)
    map<string, int> object_index;

    bool is_subtype(const string &type, const string &super) const {
        string cur = type;
        while (true) {
            if (cur == super)
                return true;
            if (cur == "object")
                return false;
            auto it = parent.find(cur);
            cur = it == parent.end() ? "object" : it->second;
        }
    }
};

Universe build_universe(const SchemaTask &task) {
    Universe u;
    for (const auto &[type, parent] : task.types)
        u.parent[type] = parent;
    vector<string> all_types{"object"};
    for (const auto &[type, parent] : task.types)
        if (type != "object")
            all_types.push_back(type);
    for (const TypedName &object : task.objects) {
        // An object belongs to every supertype of its declared type.
        string declared = object.type.empty() ? "object" : object.type;
        for (const string &type : all_types)
            if (u.is_subtype(declared, type))
                u.members[type].push_back(object.name);
        u.object_index[object.name] = static_cast<int>(u.object_index.size());
    }
    return u;
}

string ground_atom_name(const string &predicate, const vector<string> &args) {
    if (args.empty())
        return predicate;
    string name = predicate + "(";
    for (size_t i = 0; i < args.size(); ++i) {
        if (i)
            name += ",";
        name += args[i];
    }
    name += ")";
    return name;
}

string instantiate_atom(const SchemaAtom &atom, const map<string, string> &binding) {
    vector<string> args;
    for (const Term &term : atom.args)
        args.push_back(term.is_variable ? binding.at(term.name) : term.name);
    return ground_atom_name(atom.predicate, args);
}

}  // namespace

PlanningTask ground(const SchemaTask &input, const GroundOptions &options) {
    SchemaTask task = input.static_predicates.empty() ? static_filter(input) : input;
    Universe universe = build_universe(task);

    // Memory guard on the prospective instance count.
    uint64_t prospective = 0;
    for (const LoweredAction &action : task.actions) {
        uint64_t count = 1;
        for (const TypedVar &param : action.params) {
            auto it = universe.members.find(param.type);
            uint64_t size = it == universe.members.end() ? 0 : it->second.size();
            count *= size;
            if (count > options.memory_guard)
                break;
        }
        prospective += count;
        if (prospective > options.memory_guard)
            throw InputError("GroundingTooLarge: more than " + std::to_string(options.memory_guard) +
                             " prospective ground actions (schema '" + action.name + "')");
    }

    set<string> static_init;
    vector<pair<string, vector<string>>> dynamic_init;
    for (const SchemaAtom &atom : task.init) {
        vector<string> args;
        for (const Term &term : atom.args)
            args.push_back(term.name);
        if (task.static_predicates.count(atom.predicate))
            static_init.insert(ground_atom_name(atom.predicate, args));
        else
            dynamic_init.push_back({atom.predicate, args});
    }

    // Enumerate ground actions; collect every referenced atom.
    struct GroundAction {
        string name;
        vector<pair<string, int>> pre;   // (atom, true/false)
        vector<pair<string, int>> post;
    };
    vector<GroundAction> ground_actions;
    set<string> referenced;

    for (const LoweredAction &schema : task.actions) {
        vector<const vector<string> *> pools;
        bool empty_pool = false;
        for (const TypedVar &param : schema.params) {
            auto it = universe.members.find(param.type);
            if (it == universe.members.end() || it->second.empty()) {
                empty_pool = true;
                break;
            }
            pools.push_back(&it->second);
        }
        if (empty_pool)
            continue;  // zero instances; not an error

        vector<size_t> cursor(schema.params.size(), 0);
        while (true) {
            map<string, string> binding;
            vector<string> args;
            for (size_t p = 0; p < schema.params.size(); ++p) {
                binding[schema.params[p].name] = (*pools[p])[cursor[p]];
                args.push_back((*pools[p])[cursor[p]]);
            }

            bool viable = true;
            for (const EqualityGuard &guard : schema.equality_guards) {
                const string &lhs =
                    guard.lhs.is_variable ? binding.at(guard.lhs.name) : guard.lhs.name;
                const string &rhs =
                    guard.rhs.is_variable ? binding.at(guard.rhs.name) : guard.rhs.name;
                if ((lhs == rhs) != guard.positive) {
                    viable = false;
                    break;
                }
            }
            if (viable) {
                for (const SchemaLiteral &literal : schema.static_preconditions) {
                    bool holds = static_init.count(instantiate_atom(literal.atom, binding)) > 0;
                    if (holds != literal.positive) {
                        viable = false;
                        break;
                    }
                }
            }
            if (viable) {
                GroundAction action;
                action.name = ground_atom_name(schema.name, args);
                map<string, int> pre, post;
                for (const SchemaLiteral &literal : schema.preconditions) {
                    string atom = instantiate_atom(literal.atom, binding);
                    int value = literal.positive ? kTrue : kFalse;
                    auto [it, inserted] = pre.insert({atom, value});
                    if (!inserted && it->second != value)
                        viable = false;  // contradictory precondition
                }
                for (const SchemaLiteral &literal : schema.effects) {
                    string atom = instantiate_atom(literal.atom, binding);
                    int value = literal.positive ? kTrue : kFalse;
                    auto [it, inserted] = post.insert({atom, value});
                    if (!inserted && it->second != value)
                        it->second = kTrue;  // add wins over delete (PDDL semantics)
                }
                if (viable && !post.empty()) {
                    for (auto &[atom, value] : pre)
                        action.pre.push_back({atom, value});
                    for (auto &[atom, value] : post)
                        action.post.push_back({atom, value});
                    for (const auto &[atom, value] : action.pre)
                        referenced.insert(atom);
                    for (const auto &[atom, value] : action.post)
                        referenced.insert(atom);
                    ground_actions.push_back(move(action));
                }
            }

            size_t p = 0;
            for (; p < cursor.size(); ++p) {
                if (++cursor[p] < pools[p]->size())
                    break;
                cursor[p] = 0;
            }
            if (p == cursor.size() && !cursor.empty())
                break;
            if (cursor.empty())
                break;
        }
    }

    // Goal and init atoms belong to the universe too. Static goal atoms are
    // kept as (writer-less) fluents so an unsatisfiable goal is reported by
    // search rather than dropped here.
    vector<pair<string, int>> goal_pairs;
    for (const SchemaLiteral &literal : task.goal) {
        vector<string> args;
        for (const Term &term : literal.atom.args)
            args.push_back(term.name);
        string atom = ground_atom_name(literal.atom.predicate, args);
        referenced.insert(atom);
        goal_pairs.push_back({atom, literal.positive ? kTrue : kFalse});
        if (task.static_predicates.count(literal.atom.predicate) && static_init.count(atom))
            dynamic_init.push_back({literal.atom.predicate, args});
    }
    set<string> init_true;
    for (const auto &[predicate, args] : dynamic_init) {
        string atom = ground_atom_name(predicate, args);
        referenced.insert(atom);
        init_true.insert(atom);
    }

    // Deterministic fluent ordering: predicate declaration order, then
    // object-pool substitution order; referenced atoms only.
    PlanningTask result;
    map<string, int> fluent_index;
    auto add_fluent = [&](const string &atom) {
        if (fluent_index.count(atom))
            return;
        fluent_index[atom] = static_cast<int>(result.fluents.size());
        result.fluents.push_back({atom, {"true", "false"}});
    };
    for (const PredicateDecl &predicate : task.predicates) {
        vector<const vector<string> *> pools;
        bool empty_pool = false;
        for (const TypedVar &param : predicate.params) {
            auto it = universe.members.find(param.type);
            if (it == universe.members.end() || it->second.empty()) {
                empty_pool = true;
                break;
            }
            pools.push_back(&it->second);
        }
        if (empty_pool)
            continue;
        vector<size_t> cursor(predicate.params.size(), 0);
        while (true) {
            vector<string> args;
            for (size_t p = 0; p < cursor.size(); ++p)
                args.push_back((*pools[p])[cursor[p]]);
            string atom = ground_atom_name(predicate.name, args);
            if (referenced.count(atom))
                add_fluent(atom);
            size_t p = 0;
            for (; p < cursor.size(); ++p) {
                if (++cursor[p] < pools[p]->size())
                    break;
                cursor[p] = 0;
            }
            if (cursor.empty() || p == cursor.size())
                break;
        }
    }

    result.init.values.assign(result.fluents.size(), kFalse);
    for (const string &atom : init_true) {
        auto it = fluent_index.find(atom);
        if (it != fluent_index.end())
            result.init.values[it->second] = kTrue;
    }
    for (const auto &[atom, value] : goal_pairs)
        result.goal.set(fluent_index.at(atom), value);

    if (options.relaxed_reachability) {
        // Delete relaxation: grow the true-atom set, keep applicable actions.
        set<string> reached = init_true;
        vector<bool> kept(ground_actions.size(), false);
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t i = 0; i < ground_actions.size(); ++i) {
                if (kept[i])
                    continue;
                bool applicable = true;
                for (const auto &[atom, value] : ground_actions[i].pre)
                    if (value == kTrue && !reached.count(atom)) {
                        applicable = false;
                        break;
                    }
                if (!applicable)
                    continue;
                kept[i] = true;
                changed = true;
                for (const auto &[atom, value] : ground_actions[i].post)
                    if (value == kTrue && reached.insert(atom).second)
                        changed = true;
            }
        }
        vector<GroundAction> filtered;
        for (size_t i = 0; i < ground_actions.size(); ++i)
            if (kept[i])
                filtered.push_back(move(ground_actions[i]));
        ground_actions = move(filtered);
    }

    for (const GroundAction &ground_action : ground_actions) {
        Action action;
        action.name = ground_action.name;
        for (const auto &[atom, value] : ground_action.pre)
            action.pre.set(fluent_index.at(atom), value);
        for (const auto &[atom, value] : ground_action.post)
            action.post.set(fluent_index.at(atom), value);
        result.actions.push_back(move(action));
    }

    validate_task(result);
    return result;
}

}  // namespace parplan
