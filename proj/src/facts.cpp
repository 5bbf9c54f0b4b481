#include "parplan/facts.hpp"

#include <cctype>
#include <map>
#include <sstream>
#include <vector>

using namespace std;

namespace parplan {

namespace {

bool is_plain_symbol(const string &text) {
    if (text.empty())
        return false;
    for (char c : text)
        if (!(islower(static_cast<unsigned char>(c)) || isdigit(static_cast<unsigned char>(c)) || c == '_'))
            return false;
    return true;
}

string quote(const string &symbol) {
    if (is_plain_symbol(symbol))
        return symbol;
    string out = "\"";
    for (char c : symbol) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

struct Tokenizer {
    const string &text;
    size_t pos = 0;
    int line = 1;

    explicit Tokenizer(const string &text) : text(text) {}

    void skip_space() {
        while (pos < text.size()) {
            char c = text[pos];
            if (c == '%') {
                while (pos < text.size() && text[pos] != '\n')
                    ++pos;
            } else if (isspace(static_cast<unsigned char>(c))) {
                if (c == '\n')
                    ++line;
                ++pos;
            } else {
                break;
            }
        }
    }

    bool eof() {
        skip_space();
        return pos >= text.size();
    }

    [[noreturn]] void fail(const string &msg) const {
        throw InputError("facts:" + std::to_string(line) + ": " + msg);
    }

    char peek() const { return text[pos]; }

    void expect(char c) {
        skip_space();
        if (pos >= text.size() || text[pos] != c)
            fail(string("expected '") + c + "'");
        ++pos;
    }

    string symbol() {
        skip_space();
        if (pos >= text.size())
            fail("unexpected end of input");
        if (text[pos] == '"') {
            ++pos;
            string out;
            while (pos < text.size() && text[pos] != '"') {
                if (text[pos] == '\\' && pos + 1 < text.size())
                    ++pos;
                out += text[pos++];
            }
            if (pos >= text.size())
                fail("unterminated quoted symbol");
            ++pos;
            return out;
        }
        size_t start = pos;
        while (pos < text.size()) {
            char c = text[pos];
            if (islower(static_cast<unsigned char>(c)) || isupper(static_cast<unsigned char>(c)) ||
                isdigit(static_cast<unsigned char>(c)) || c == '_' || c == '-')
                ++pos;
            else
                break;
        }
        if (start == pos)
            fail(string("unexpected character '") + text[pos] + "'");
        return text.substr(start, pos - start);
    }
};

struct Fact {
    string pred;
    vector<string> args;
    int line;
};

}  // namespace

string write_facts(const PlanningTask &task) {
    ostringstream out;
    for (const auto &fluent : task.fluents)
        out << "fluent(" << quote(fluent.name) << ").\n";
    for (const auto &fluent : task.fluents)
        for (const auto &value : fluent.values)
            out << "value(" << quote(fluent.name) << "," << quote(value) << ").\n";
    for (size_t x = 0; x < task.fluents.size(); ++x)
        out << "init(" << quote(task.fluents[x].name) << ","
            << quote(task.fluents[x].values[task.init.values[x]]) << ").\n";
    for (auto [fluent, value] : task.goal.bindings())
        out << "goal(" << quote(task.fluents[fluent].name) << ","
            << quote(task.fluents[fluent].values[value]) << ").\n";
    for (const auto &action : task.actions)
        out << "action(" << quote(action.name) << ").\n";
    for (const auto &action : task.actions)
        for (auto [fluent, value] : action.pre.bindings())
            out << "prec(" << quote(action.name) << "," << quote(task.fluents[fluent].name)
                << "," << quote(task.fluents[fluent].values[value]) << ").\n";
    for (const auto &action : task.actions)
        for (auto [fluent, value] : action.post.bindings())
            out << "post(" << quote(action.name) << "," << quote(task.fluents[fluent].name)
                << "," << quote(task.fluents[fluent].values[value]) << ").\n";
    for (size_t g = 0; g < task.mutex_groups.size(); ++g)
        for (auto [fluent, value] : task.mutex_groups[g].literals)
            out << "mutex(g" << g << "," << quote(task.fluents[fluent].name) << ","
                << quote(task.fluents[fluent].values[value]) << ").\n";
    return out.str();
}

PlanningTask read_facts(const string &text) {
    Tokenizer tok(text);
    vector<Fact> facts;
    while (!tok.eof()) {
        Fact fact;
        fact.line = tok.line;
        fact.pred = tok.symbol();
        tok.expect('(');
        fact.args.push_back(tok.symbol());
        tok.skip_space();
        while (tok.pos < text.size() && tok.peek() == ',') {
            ++tok.pos;
            fact.args.push_back(tok.symbol());
            tok.skip_space();
        }
        tok.expect(')');
        tok.expect('.');
        facts.push_back(move(fact));
    }

    auto arity_check = [&](const Fact &fact, size_t arity) {
        if (fact.args.size() != arity)
            throw InputError("facts:" + std::to_string(fact.line) + ": " + fact.pred + "/" +
                             std::to_string(fact.args.size()) + " should be " + fact.pred + "/" +
                             std::to_string(arity));
    };

    PlanningTask task;
    map<string, int> fluent_index;
    map<string, int> action_index;

    // Declaration passes keep document order, so read(write(t)) == t.
    for (const auto &fact : facts) {
        if (fact.pred == "fluent") {
            arity_check(fact, 1);
            if (fluent_index.count(fact.args[0]))
                throw InputError("facts:" + std::to_string(fact.line) + ": duplicate fluent " + fact.args[0]);
            fluent_index[fact.args[0]] = static_cast<int>(task.fluents.size());
            task.fluents.push_back({fact.args[0], {}});
        }
    }
    for (const auto &fact : facts) {
        if (fact.pred == "value") {
            arity_check(fact, 2);
            auto it = fluent_index.find(fact.args[0]);
            if (it == fluent_index.end())
                throw InputError("facts:" + std::to_string(fact.line) + ": value for undeclared fluent " + fact.args[0]);
            auto &dom = task.fluents[it->second].values;
            for (const auto &existing : dom)
                if (existing == fact.args[1])
                    throw InputError("facts:" + std::to_string(fact.line) + ": duplicate value " +
                                     fact.args[1] + " for " + fact.args[0]);
            dom.push_back(fact.args[1]);
        } else if (fact.pred == "action") {
            arity_check(fact, 1);
            if (action_index.count(fact.args[0]))
                throw InputError("facts:" + std::to_string(fact.line) + ": duplicate action " + fact.args[0]);
            action_index[fact.args[0]] = static_cast<int>(task.actions.size());
            task.actions.push_back({fact.args[0], {}, {}});
        }
    }
    if (task.fluents.empty())
        throw InputError("facts: no fluents declared");

    auto resolve_fluent_value = [&](const Fact &fact, size_t fluent_arg) -> pair<int, int> {
        auto it = fluent_index.find(fact.args[fluent_arg]);
        if (it == fluent_index.end())
            throw InputError("facts:" + std::to_string(fact.line) + ": undeclared fluent " + fact.args[fluent_arg]);
        const auto &dom = task.fluents[it->second].values;
        const string &value = fact.args[fluent_arg + 1];
        for (size_t v = 0; v < dom.size(); ++v)
            if (dom[v] == value)
                return {it->second, static_cast<int>(v)};
        throw InputError("facts:" + std::to_string(fact.line) + ": fluent " + fact.args[fluent_arg] +
                         " has no value " + value);
    };

    vector<int> init(task.fluents.size(), -1);
    map<string, MutexGroup> mutex_by_group;
    vector<string> mutex_group_order;

    for (const auto &fact : facts) {
        if (fact.pred == "fluent" || fact.pred == "value" || fact.pred == "action")
            continue;
        if (fact.pred == "init") {
            arity_check(fact, 2);
            auto [fluent, value] = resolve_fluent_value(fact, 0);
            if (init[fluent] != -1)
                throw InputError("facts:" + std::to_string(fact.line) + ": fluent " +
                                 task.fluents[fluent].name + " initialized twice");
            init[fluent] = value;
        } else if (fact.pred == "goal") {
            arity_check(fact, 2);
            auto [fluent, value] = resolve_fluent_value(fact, 0);
            task.goal.set(fluent, value);
        } else if (fact.pred == "prec" || fact.pred == "post") {
            arity_check(fact, 3);
            auto action_it = action_index.find(fact.args[0]);
            if (action_it == action_index.end())
                throw InputError("facts:" + std::to_string(fact.line) + ": " + fact.pred +
                                 " on undeclared action " + fact.args[0]);
            auto [fluent, value] = resolve_fluent_value(fact, 1);
            Action &action = task.actions[action_it->second];
            (fact.pred == "prec" ? action.pre : action.post).set(fluent, value);
        } else if (fact.pred == "mutex") {
            arity_check(fact, 3);
            auto [fluent, value] = resolve_fluent_value(fact, 1);
            if (!mutex_by_group.count(fact.args[0]))
                mutex_group_order.push_back(fact.args[0]);
            mutex_by_group[fact.args[0]].literals.push_back({fluent, value});
        } else {
            throw InputError("facts:" + std::to_string(fact.line) + ": unknown predicate " + fact.pred);
        }
    }

    for (size_t x = 0; x < init.size(); ++x)
        if (init[x] == -1)
            throw InputError("facts: initial state is not total, fluent " +
                             task.fluents[x].name + " unset");
    task.init.values = move(init);
    for (const auto &group : mutex_group_order)
        task.mutex_groups.push_back(mutex_by_group[group]);

    validate_task(task);
    return task;
}

}  // namespace parplan
