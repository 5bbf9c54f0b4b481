#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "parplan/pddl.hpp"

using namespace std;

namespace parplan {

namespace {

struct SExpr {
    bool is_list = false;
    string text;
    vector<SExpr> items;
    SourcePos pos;
};

string print_sexpr(const SExpr &e) {
    if (!e.is_list)
        return e.text;
    string out = "(";
    for (size_t i = 0; i < e.items.size(); ++i) {
        if (i)
            out += ' ';
        out += print_sexpr(e.items[i]);
    }
    out += ')';
    return out;
}

class Lexer {
public:
    Lexer(const string &text, const string &file) : text_(text), file_(file) {}

    vector<SExpr> parse_all() {
        vector<SExpr> out;
        skip_space();
        while (pos_ < text_.size()) {
            out.push_back(parse_expr());
            skip_space();
        }
        return out;
    }

    [[noreturn]] void fail(SourcePos pos, const string &msg) const {
        throw InputError(file_ + ":" + std::to_string(pos.line) + ":" + std::to_string(pos.col) +
                         ": error: " + msg);
    }

private:
    SourcePos here() const { return {line_, col_}; }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_space() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == ';') {
                while (pos_ < text_.size() && text_[pos_] != '\n')
                    advance();
            } else if (isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    SExpr parse_expr() {
        SourcePos start = here();
        if (text_[pos_] == '(') {
            advance();
            SExpr list;
            list.is_list = true;
            list.pos = start;
            skip_space();
            while (true) {
                if (pos_ >= text_.size())
                    fail(start, "unbalanced parenthesis: '(' is never closed");
                if (text_[pos_] == ')') {
                    advance();
                    return list;
                }
                list.items.push_back(parse_expr());
                skip_space();
            }
        }
        if (text_[pos_] == ')')
            fail(start, "unbalanced parenthesis: unexpected ')'");
        SExpr symbol;
        symbol.pos = start;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ';')
                break;
            symbol.text += static_cast<char>(tolower(static_cast<unsigned char>(c)));
            advance();
        }
        return symbol;
    }

    const string &text_;
    string file_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

const set<string> kSupportedRequirements = {
    ":strips", ":typing", ":negative-preconditions", ":equality"};

const set<string> kNumericHeads = {
    "increase", "decrease", "assign", "scale-up", "scale-down",
    ">=", "<=", ">", "<", "+", "-", "*", "/"};

class Parser {
public:
    Parser(const string &domain_text, const string &problem_text,
           const string &domain_file, const string &problem_file)
        : domain_text_(domain_text), problem_text_(problem_text),
          domain_file_(domain_file), problem_file_(problem_file) {}

    PddlAst parse() {
        parse_domain();
        parse_problem();
        resolve();
        return move(ast_);
    }

    vector<Diagnostic> &diagnostics() { return diagnostics_; }

private:
    void warn(const string &file, SourcePos pos, const string &msg) {
        diagnostics_.push_back({file, pos, false, msg});
    }

    [[noreturn]] void fail(const string &file, SourcePos pos, const string &msg) {
        diagnostics_.push_back({file, pos, true, msg});
        throw InputError(file + ":" + std::to_string(pos.line) + ":" + std::to_string(pos.col) +
                         ": error: " + msg);
    }

    static bool is_keyword(const SExpr &e, const string &kw) {
        return !e.is_list && e.text == kw;
    }

    const SExpr &head_checked(const SExpr &e, const string &file, const string &what) {
        if (!e.is_list || e.items.empty() || e.items[0].is_list)
            fail(file, e.pos, "expected " + what);
        return e.items[0];
    }

    vector<TypedVar> parse_typed_vars(const SExpr &list, const string &file) {
        vector<TypedVar> out;
        size_t group_start = out.size();
        for (size_t i = 0; i < list.items.size(); ++i) {
            const SExpr &item = list.items[i];
            if (!item.is_list && item.text == "-") {
                if (i + 1 >= list.items.size())
                    fail(file, item.pos, "dangling '-' in typed list");
                const SExpr &type_expr = list.items[++i];
                string type = "object";
                if (type_expr.is_list) {
                    warn(file, type_expr.pos, "unsupported: either-types, treating as object");
                } else {
                    type = type_expr.text;
                }
                for (size_t g = group_start; g < out.size(); ++g)
                    out[g].type = type;
                group_start = out.size();
                continue;
            }
            if (item.is_list)
                fail(file, item.pos, "expected a name in typed list");
            string name = item.text;
            if (!name.empty() && name[0] == '?')
                name = name.substr(1);
            out.push_back({name, "object"});
        }
        return out;
    }

    vector<TypedName> parse_typed_names(const SExpr &list, const string &file, size_t from) {
        SExpr slice;
        slice.is_list = true;
        slice.pos = list.pos;
        for (size_t i = from; i < list.items.size(); ++i)
            slice.items.push_back(list.items[i]);
        vector<TypedName> out;
        for (const TypedVar &tv : parse_typed_vars(slice, file))
            out.push_back({tv.name, tv.type});
        return out;
    }

    Term parse_term(const SExpr &e, const string &file) {
        if (e.is_list)
            fail(file, e.pos, "expected a term, got a list");
        if (!e.text.empty() && e.text[0] == '?')
            return {true, e.text.substr(1)};
        return {false, e.text};
    }

    Formula parse_formula(const SExpr &e, const string &file) {
        Formula f;
        f.pos = e.pos;
        if (!e.is_list)
            fail(file, e.pos, "expected a formula, got '" + e.text + "'");
        if (e.items.empty()) {
            // () is an empty conjunction.
            f.kind = FormulaKind::logical_and;
            return f;
        }
        const SExpr &head = e.items[0];
        if (head.is_list)
            fail(file, head.pos, "expected a formula head symbol");
        const string &op = head.text;
        if (op == "and" || op == "or") {
            f.kind = op == "and" ? FormulaKind::logical_and : FormulaKind::logical_or;
            for (size_t i = 1; i < e.items.size(); ++i)
                f.children.push_back(parse_formula(e.items[i], file));
            return f;
        }
        if (op == "not") {
            if (e.items.size() != 2)
                fail(file, e.pos, "'not' takes exactly one formula");
            f.kind = FormulaKind::logical_not;
            f.children.push_back(parse_formula(e.items[1], file));
            return f;
        }
        if (op == "imply") {
            if (e.items.size() != 3)
                fail(file, e.pos, "'imply' takes exactly two formulas");
            f.kind = FormulaKind::imply;
            f.children.push_back(parse_formula(e.items[1], file));
            f.children.push_back(parse_formula(e.items[2], file));
            return f;
        }
        if (op == "forall" || op == "exists") {
            if (e.items.size() != 3 || !e.items[1].is_list)
                fail(file, e.pos, "'" + op + "' takes a variable list and one formula");
            f.kind = op == "forall" ? FormulaKind::forall : FormulaKind::exists;
            f.params = parse_typed_vars(e.items[1], file);
            f.children.push_back(parse_formula(e.items[2], file));
            return f;
        }
        if (op == "when") {
            if (e.items.size() != 3)
                fail(file, e.pos, "'when' takes a condition and an effect");
            warn(file, e.pos, "unsupported: conditional effect");
            f.kind = FormulaKind::when;
            f.children.push_back(parse_formula(e.items[1], file));
            f.children.push_back(parse_formula(e.items[2], file));
            return f;
        }
        if (op == "=") {
            if (e.items.size() != 3)
                fail(file, e.pos, "'=' takes exactly two terms");
            f.kind = FormulaKind::equals;
            f.args.push_back(parse_term(e.items[1], file));
            f.args.push_back(parse_term(e.items[2], file));
            return f;
        }
        if (kNumericHeads.count(op) || op == "preference") {
            warn(file, e.pos, "unsupported: '" + op + "' construct");
            f.kind = FormulaKind::unsupported;
            f.raw = print_sexpr(e);
            return f;
        }
        f.kind = FormulaKind::atom;
        f.predicate = op;
        for (size_t i = 1; i < e.items.size(); ++i)
            f.args.push_back(parse_term(e.items[i], file));
        return f;
    }

    void parse_domain() {
        Lexer lexer(domain_text_, domain_file_);
        vector<SExpr> top = lexer.parse_all();
        if (top.size() != 1 || !top[0].is_list)
            throw InputError(domain_file_ + ":1:1: error: expected a single (define ...) form");
        const SExpr &define = top[0];
        const string &file = domain_file_;
        if (define.items.empty() || !is_keyword(define.items[0], "define"))
            fail(file, define.pos, "expected (define (domain ...) ...)");
        size_t i = 1;
        if (i < define.items.size() && define.items[i].is_list &&
            define.items[i].items.size() == 2 && is_keyword(define.items[i].items[0], "domain")) {
            ast_.domain.name = define.items[i].items[1].text;
            ++i;
        } else {
            fail(file, define.pos, "missing (domain <name>)");
        }
        for (; i < define.items.size(); ++i) {
            const SExpr &section = define.items[i];
            const SExpr &head = head_checked(section, file, "a domain section");
            const string &kw = head.text;
            if (kw == ":requirements") {
                for (size_t k = 1; k < section.items.size(); ++k) {
                    const string &req = section.items[k].text;
                    ast_.domain.requirements.push_back(req);
                    if (!kSupportedRequirements.count(req)) {
                        ast_.domain.unsupported_requirements.push_back(req);
                        warn(file, section.items[k].pos, "unsupported: requirement " + req);
                    }
                }
            } else if (kw == ":types") {
                size_t group_start = ast_.domain.types.size();
                for (size_t k = 1; k < section.items.size(); ++k) {
                    const SExpr &item = section.items[k];
                    if (!item.is_list && item.text == "-") {
                        if (k + 1 >= section.items.size())
                            fail(file, item.pos, "dangling '-' in :types");
                        string parent = section.items[++k].text;
                        for (size_t g = group_start; g < ast_.domain.types.size(); ++g)
                            ast_.domain.types[g].second = parent;
                        group_start = ast_.domain.types.size();
                    } else {
                        ast_.domain.types.push_back({item.text, "object"});
                    }
                }
            } else if (kw == ":constants") {
                auto names = parse_typed_names(section, file, 1);
                ast_.domain.constants.insert(ast_.domain.constants.end(), names.begin(), names.end());
            } else if (kw == ":predicates") {
                for (size_t k = 1; k < section.items.size(); ++k) {
                    const SExpr &decl = section.items[k];
                    const SExpr &name = head_checked(decl, file, "a predicate declaration");
                    PredicateDecl predicate;
                    predicate.name = name.text;
                    predicate.pos = decl.pos;
                    SExpr vars;
                    vars.is_list = true;
                    for (size_t a = 1; a < decl.items.size(); ++a)
                        vars.items.push_back(decl.items[a]);
                    predicate.params = parse_typed_vars(vars, file);
                    ast_.domain.predicates.push_back(move(predicate));
                }
            } else if (kw == ":action") {
                ActionDecl action;
                action.pos = section.pos;
                if (section.items.size() < 2 || section.items[1].is_list)
                    fail(file, section.pos, ":action needs a name");
                action.name = section.items[1].text;
                for (size_t k = 2; k + 1 < section.items.size(); k += 2) {
                    const string &slot = section.items[k].text;
                    const SExpr &value = section.items[k + 1];
                    if (slot == ":parameters") {
                        if (!value.is_list)
                            fail(file, value.pos, ":parameters needs a variable list");
                        action.params = parse_typed_vars(value, file);
                    } else if (slot == ":precondition") {
                        action.precondition = parse_formula(value, file);
                    } else if (slot == ":effect") {
                        action.effect = parse_formula(value, file);
                    } else {
                        warn(file, section.items[k].pos, "unsupported: action slot " + slot);
                    }
                }
                ast_.domain.actions.push_back(move(action));
            } else if (kw == ":derived") {
                warn(file, section.pos, "unsupported: derived predicate");
                ast_.domain.derived_raw.push_back(print_sexpr(section));
            } else if (kw == ":functions") {
                warn(file, section.pos, "unsupported: numeric functions");
            } else {
                warn(file, section.pos, "unsupported: domain section " + kw);
            }
        }
    }

    void parse_problem() {
        Lexer lexer(problem_text_, problem_file_);
        vector<SExpr> top = lexer.parse_all();
        if (top.size() != 1 || !top[0].is_list)
            throw InputError(problem_file_ + ":1:1: error: expected a single (define ...) form");
        const SExpr &define = top[0];
        const string &file = problem_file_;
        if (define.items.empty() || !is_keyword(define.items[0], "define"))
            fail(file, define.pos, "expected (define (problem ...) ...)");
        size_t i = 1;
        if (i < define.items.size() && define.items[i].is_list &&
            define.items[i].items.size() == 2 && is_keyword(define.items[i].items[0], "problem")) {
            ast_.problem.name = define.items[i].items[1].text;
            ++i;
        } else {
            fail(file, define.pos, "missing (problem <name>)");
        }
        for (; i < define.items.size(); ++i) {
            const SExpr &section = define.items[i];
            const SExpr &head = head_checked(section, file, "a problem section");
            const string &kw = head.text;
            if (kw == ":domain") {
                if (section.items.size() != 2)
                    fail(file, section.pos, ":domain needs a name");
                ast_.problem.domain_name = section.items[1].text;
            } else if (kw == ":objects") {
                auto names = parse_typed_names(section, file, 1);
                ast_.problem.objects.insert(ast_.problem.objects.end(), names.begin(), names.end());
            } else if (kw == ":init") {
                for (size_t k = 1; k < section.items.size(); ++k) {
                    const SExpr &lit = section.items[k];
                    if (!lit.is_list || lit.items.empty())
                        fail(file, lit.pos, "expected a ground literal in :init");
                    GroundLiteral literal;
                    literal.pos = lit.pos;
                    const SExpr *atom = &lit;
                    if (is_keyword(lit.items[0], "not")) {
                        if (lit.items.size() != 2 || !lit.items[1].is_list)
                            fail(file, lit.pos, "'not' in :init takes one atom");
                        warn(file, lit.pos, "negative :init literal ignored (closed world)");
                        literal.positive = false;
                        atom = &lit.items[1];
                    }
                    if (is_keyword((*atom).items[0], "="))  {
                        warn(file, lit.pos, "unsupported: numeric fluent initialization ignored");
                        continue;
                    }
                    literal.predicate = atom->items[0].text;
                    for (size_t a = 1; a < atom->items.size(); ++a) {
                        if (atom->items[a].is_list)
                            fail(file, atom->items[a].pos, "expected an object name");
                        literal.args.push_back(atom->items[a].text);
                    }
                    ast_.problem.init.push_back(move(literal));
                }
            } else if (kw == ":goal") {
                if (section.items.size() != 2)
                    fail(file, section.pos, ":goal takes one formula");
                ast_.problem.goal = parse_formula(section.items[1], file);
            } else if (kw == ":metric") {
                warn(file, section.pos, "unsupported: :metric ignored");
            } else {
                warn(file, section.pos, "unsupported: problem section " + kw);
            }
        }
    }

    struct Scope {
        map<string, string> variable_types;
    };

    void resolve_formula(const Formula &f, const string &file, Scope scope, bool in_effect) {
        switch (f.kind) {
        case FormulaKind::atom: {
            const PredicateDecl *decl = nullptr;
            for (const auto &p : ast_.domain.predicates)
                if (p.name == f.predicate)
                    decl = &p;
            if (decl == nullptr)
                fail(file, f.pos, "undeclared predicate '" + f.predicate + "'");
            if (decl->params.size() != f.args.size())
                fail(file, f.pos, "arity mismatch: '" + f.predicate + "' declared with " +
                                      std::to_string(decl->params.size()) + " parameters, used with " +
                                      std::to_string(f.args.size()));
            for (const Term &term : f.args)
                resolve_term(term, file, f.pos, scope);
            return;
        }
        case FormulaKind::equals:
            for (const Term &term : f.args)
                resolve_term(term, file, f.pos, scope);
            return;
        case FormulaKind::forall:
        case FormulaKind::exists:
            for (const TypedVar &tv : f.params)
                scope.variable_types[tv.name] = tv.type;
            resolve_formula(f.children[0], file, scope, in_effect);
            return;
        case FormulaKind::unsupported:
            return;
        default:
            for (const Formula &child : f.children)
                resolve_formula(child, file, scope, in_effect);
            return;
        }
    }

    void resolve_term(const Term &term, const string &file, SourcePos pos, const Scope &scope) {
        if (term.is_variable) {
            if (!scope.variable_types.count(term.name))
                fail(file, pos, "unbound variable '?" + term.name + "'");
            return;
        }
        for (const auto &c : ast_.domain.constants)
            if (c.name == term.name)
                return;
        for (const auto &o : ast_.problem.objects)
            if (o.name == term.name)
                return;
        fail(file, pos, "undeclared object '" + term.name + "'");
    }

    void resolve() {
        set<string> declared_types{"object"};
        for (const auto &[type, parent] : ast_.domain.types)
            declared_types.insert(type);
        for (const auto &[type, parent] : ast_.domain.types)
            if (!declared_types.count(parent))
                fail(domain_file_, {0, 0}, "undeclared parent type '" + parent + "'");
        auto check_typed = [&](const vector<TypedVar> &vars, const string &file, SourcePos pos) {
            for (const auto &tv : vars)
                if (!declared_types.count(tv.type))
                    fail(file, pos, "undeclared type '" + tv.type + "'");
        };
        for (const auto &p : ast_.domain.predicates)
            check_typed(p.params, domain_file_, p.pos);
        for (const auto &c : ast_.domain.constants)
            if (!declared_types.count(c.type))
                fail(domain_file_, {0, 0}, "undeclared type '" + c.type + "'");
        for (const auto &o : ast_.problem.objects)
            if (!declared_types.count(o.type))
                fail(problem_file_, {0, 0}, "undeclared type '" + o.type + "'");

        for (const auto &action : ast_.domain.actions) {
            check_typed(action.params, domain_file_, action.pos);
            Scope scope;
            for (const auto &tv : action.params)
                scope.variable_types[tv.name] = tv.type;
            if (action.precondition)
                resolve_formula(*action.precondition, domain_file_, scope, false);
            if (action.effect)
                resolve_formula(*action.effect, domain_file_, scope, true);
        }
        for (const auto &literal : ast_.problem.init) {
            Formula atom;
            atom.kind = FormulaKind::atom;
            atom.pos = literal.pos;
            atom.predicate = literal.predicate;
            for (const auto &arg : literal.args)
                atom.args.push_back({false, arg});
            resolve_formula(atom, problem_file_, Scope{}, false);
        }
        if (ast_.problem.goal)
            resolve_formula(*ast_.problem.goal, problem_file_, Scope{}, false);
        if (!ast_.problem.domain_name.empty() && ast_.problem.domain_name != ast_.domain.name)
            warn(problem_file_, {0, 0}, "problem references domain '" + ast_.problem.domain_name +
                                            "' but domain is named '" + ast_.domain.name + "'");
    }

    const string &domain_text_;
    const string &problem_text_;
    string domain_file_;
    string problem_file_;
    PddlAst ast_;
    vector<Diagnostic> diagnostics_;
};

}  // namespace

string Diagnostic::to_string() const {
    return file + ":" + std::to_string(pos.line) + ":" + std::to_string(pos.col) + ": " +
           (is_error ? "error" : "warning") + ": " + message;
}

PddlAst parse_pddl(const string &domain_text, const string &problem_text,
                   const string &domain_file, const string &problem_file) {
    Parser parser(domain_text, problem_text, domain_file, problem_file);
    return parser.parse();
}

vector<Diagnostic> check_syntax(const string &domain_text, const string &problem_text,
                                const string &domain_file, const string &problem_file) {
    Parser parser(domain_text, problem_text, domain_file, problem_file);
    try {
        parser.parse();
    } catch (const InputError &error) {
        if (parser.diagnostics().empty() || !parser.diagnostics().back().is_error)
            parser.diagnostics().push_back({domain_file, {0, 0}, true, error.what()});
    }
    return parser.diagnostics();
}

}  // namespace parplan
