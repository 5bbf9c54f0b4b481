#include "parplan/sas.hpp"

#include <sstream>

using namespace std;

namespace parplan {

namespace {

struct LineReader {
    istringstream in;
    int line_number = 0;
    string current;

    explicit LineReader(const string &text) : in(text) {}

    [[noreturn]] void fail(const string &msg) const {
        throw InputError("sas:" + std::to_string(line_number) + ": " + msg);
    }

    bool next() {
        while (getline(in, current)) {
            ++line_number;
            // Strip trailing carriage returns from DOS-style files.
            while (!current.empty() && (current.back() == '\r' || current.back() == ' '))
                current.pop_back();
            return true;
        }
        return false;
    }

    string line() {
        if (!next())
            fail("unexpected end of file");
        return current;
    }

    int integer() {
        string text = line();
        try {
            size_t used = 0;
            int value = stoi(text, &used);
            if (used != text.size())
                fail("expected an integer, got '" + text + "'");
            return value;
        } catch (const logic_error &) {
            fail("expected an integer, got '" + text + "'");
        }
    }

    void sentinel(const string &expected) {
        string text = line();
        if (text != expected)
            fail("expected '" + expected + "', got '" + text + "'");
    }

    vector<int> integers(int count, const string &what) {
        string text = line();
        istringstream fields(text);
        vector<int> values;
        int v;
        while (fields >> v)
            values.push_back(v);
        if (static_cast<int>(values.size()) != count)
            fail("expected " + std::to_string(count) + " integers for " + what + ", got '" + text + "'");
        return values;
    }
};

void check_fact(const SasDocument &doc, int var, int value, LineReader &reader,
                const string &what, bool allow_dont_care = false) {
    if (var < 0 || var >= static_cast<int>(doc.variables.size()))
        reader.fail(what + ": variable index " + std::to_string(var) + " out of range");
    if (allow_dont_care && value == -1)
        return;
    if (value < 0 || value >= static_cast<int>(doc.variables[var].value_names.size()))
        reader.fail(what + ": value index " + std::to_string(value) + " out of range for variable " +
                    doc.variables[var].name);
}

}  // namespace

SasDocument parse_sas(const string &text) {
    LineReader reader(text);
    SasDocument doc;

    reader.sentinel("begin_version");
    doc.version = reader.integer();
    reader.sentinel("end_version");
    if (doc.version != 3)
        throw InputError("sas: version " + std::to_string(doc.version) +
                         " is not supported (expected version 3)");

    reader.sentinel("begin_metric");
    doc.metric = reader.integer();
    reader.sentinel("end_metric");

    int variable_count = reader.integer();
    for (int i = 0; i < variable_count; ++i) {
        reader.sentinel("begin_variable");
        SasVariable variable;
        variable.name = reader.line();
        variable.axiom_layer = reader.integer();
        int domain_size = reader.integer();
        if (domain_size < 1)
            reader.fail("variable " + variable.name + " has empty domain");
        for (int v = 0; v < domain_size; ++v)
            variable.value_names.push_back(reader.line());
        reader.sentinel("end_variable");
        if (variable.axiom_layer >= 0)
            doc.axioms_unsupported = true;
        doc.variables.push_back(move(variable));
    }

    int mutex_count = reader.integer();
    for (int g = 0; g < mutex_count; ++g) {
        reader.sentinel("begin_mutex_group");
        int size = reader.integer();
        vector<pair<int, int>> group;
        for (int k = 0; k < size; ++k) {
            auto pair = reader.integers(2, "mutex group entry");
            check_fact(doc, pair[0], pair[1], reader, "mutex group");
            group.push_back({pair[0], pair[1]});
        }
        reader.sentinel("end_mutex_group");
        doc.mutex_groups.push_back(move(group));
    }

    reader.sentinel("begin_state");
    for (size_t i = 0; i < doc.variables.size(); ++i) {
        int value = reader.integer();
        check_fact(doc, static_cast<int>(i), value, reader, "initial state");
        doc.initial.push_back(value);
    }
    reader.sentinel("end_state");

    reader.sentinel("begin_goal");
    int goal_count = reader.integer();
    for (int k = 0; k < goal_count; ++k) {
        auto pair = reader.integers(2, "goal entry");
        check_fact(doc, pair[0], pair[1], reader, "goal");
        doc.goal.push_back({pair[0], pair[1]});
    }
    reader.sentinel("end_goal");

    int operator_count = reader.integer();
    for (int o = 0; o < operator_count; ++o) {
        reader.sentinel("begin_operator");
        SasOperator op;
        op.name = reader.line();
        int prevail_count = reader.integer();
        for (int k = 0; k < prevail_count; ++k) {
            auto pair = reader.integers(2, "prevail condition");
            check_fact(doc, pair[0], pair[1], reader, "prevail condition");
            op.prevail.push_back({pair[0], pair[1]});
        }
        int effect_count = reader.integer();
        for (int k = 0; k < effect_count; ++k) {
            string text_line = reader.line();
            istringstream fields(text_line);
            SasEffect effect;
            int condition_count;
            if (!(fields >> condition_count))
                reader.fail("malformed effect line '" + text_line + "'");
            for (int c = 0; c < condition_count; ++c) {
                int var, value;
                if (!(fields >> var >> value))
                    reader.fail("malformed effect condition in '" + text_line + "'");
                check_fact(doc, var, value, reader, "effect condition");
                effect.conditions.push_back({var, value});
            }
            if (!(fields >> effect.var >> effect.pre >> effect.post))
                reader.fail("malformed effect line '" + text_line + "'");
            check_fact(doc, effect.var, effect.pre, reader, "effect", /*allow_dont_care=*/true);
            check_fact(doc, effect.var, effect.post, reader, "effect");
            op.effects.push_back(move(effect));
        }
        op.cost = reader.integer();
        reader.sentinel("end_operator");
        doc.operators.push_back(move(op));
    }

    int axiom_count = reader.integer();
    doc.axiom_count = axiom_count;
    if (axiom_count > 0)
        doc.axioms_unsupported = true;
    for (int a = 0; a < axiom_count; ++a) {
        reader.sentinel("begin_rule");
        while (true) {
            string text_line = reader.line();
            if (text_line == "end_rule")
                break;
        }
    }

    // Anything after the axiom section is preserved as opaque blocks.
    while (reader.next()) {
        if (reader.current.empty())
            continue;
        if (reader.current.rfind("begin_", 0) == 0) {
            string section = reader.current.substr(6);
            doc.warnings.push_back("unknown section '" + section + "' preserved unparsed");
            string end_marker = "end_" + section;
            while (true) {
                if (!reader.next())
                    reader.fail("unterminated section '" + section + "'");
                if (reader.current == end_marker)
                    break;
            }
        } else {
            reader.fail("trailing content '" + reader.current + "'");
        }
    }

    return doc;
}

PlanningTask to_task(const SasDocument &doc) {
    if (doc.axioms_unsupported)
        throw InputError("sas: AxiomsUnsupported: axiom rules / derived variables are out of scope");

    PlanningTask task;
    for (const auto &variable : doc.variables) {
        Fluent fluent;
        fluent.name = variable.name;
        for (size_t v = 0; v < variable.value_names.size(); ++v)
            fluent.values.push_back(std::to_string(v));
        task.fluents.push_back(move(fluent));
    }
    task.init.values = doc.initial;
    for (auto [var, value] : doc.goal)
        task.goal.set(var, value);

    for (const auto &op : doc.operators) {
        Action action;
        action.name = op.name;
        for (auto [var, value] : op.prevail)
            action.pre.set(var, value);
        for (const auto &effect : op.effects) {
            if (!effect.conditions.empty())
                throw InputError("sas: ConditionalEffectUnsupported: operator '" + op.name +
                                 "' has a conditional effect");
            if (effect.pre != -1)
                action.pre.set(effect.var, effect.pre);
            action.post.set(effect.var, effect.post);
        }
        // Operator costs are parsed and ignored; plan length is the objective.
        task.actions.push_back(move(action));
    }

    for (const auto &group : doc.mutex_groups) {
        MutexGroup mutex;
        mutex.literals = group;
        task.mutex_groups.push_back(move(mutex));
    }

    validate_task(task);
    return task;
}

}  // namespace parplan
