#include "parplan/cli.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "parplan/facts.hpp"
#include "parplan/ground.hpp"
#include "parplan/pddl.hpp"
#include "parplan/planner.hpp"
#include "parplan/sas.hpp"
#include "parplan/serialize.hpp"

using namespace std;

namespace parplan {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitNoPlan = 10;

[[noreturn]] void usage_error(const string &msg) {
    throw UsageError(msg);
}

string read_input(const string &path, istream &in) {
    if (path == "-") {
        ostringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
    }
    ifstream file(path, ios::binary);
    if (!file)
        throw InputError("cannot open " + path);
    ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

bool needs_quoting(const string &name) {
    for (char c : name)
        if (isspace(static_cast<unsigned char>(c)) || c == '"')
            return true;
    return name.empty();
}

string quote_name(const string &name) {
    if (!needs_quoting(name))
        return name;
    string out = "\"";
    for (char c : name) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

struct Options {
    string command;
    vector<string> inputs;
    map<string, string> flags;
    bool has(const string &name) const { return flags.count(name) > 0; }
    string get(const string &name, const string &fallback) const {
        auto it = flags.find(name);
        return it == flags.end() ? fallback : it->second;
    }
    int get_int(const string &name, int fallback) const {
        auto it = flags.find(name);
        if (it == flags.end())
            return fallback;
        try {
            return stoi(it->second);
        } catch (const logic_error &) {
            usage_error("--" + name + " expects an integer, got '" + it->second + "'");
        }
    }
    double get_double(const string &name, double fallback) const {
        auto it = flags.find(name);
        if (it == flags.end())
            return fallback;
        try {
            return stod(it->second);
        } catch (const logic_error &) {
            usage_error("--" + name + " expects a number, got '" + it->second + "'");
        }
    }
};

const map<string, bool> kKnownFlags = {
    // flag -> takes a value
    {"encoding", true},   {"algorithm", true}, {"n", true},         {"gamma", true},
    {"increment", true},  {"heuristic", false}, {"horizon-cap", true}, {"slice", true},
    {"seed", true},       {"from", true},      {"semantics", true}, {"output", true},
    {"threshold", true},  {"dump-dimacs", true}, {"relaxed-reachability", false},
    {"memory-guard", true},
};

Options parse_args(const vector<string> &args) {
    Options options;
    if (args.empty())
        usage_error("missing command (translate|normalize|check-syntax|beautify|solve|validate)");
    options.command = args[0];
    for (size_t i = 1; i < args.size(); ++i) {
        const string &arg = args[i];
        if (arg.rfind("--", 0) == 0) {
            string name = arg.substr(2);
            string value;
            auto eq = name.find('=');
            bool has_value = false;
            if (eq != string::npos) {
                value = name.substr(eq + 1);
                name = name.substr(0, eq);
                has_value = true;
            }
            auto it = kKnownFlags.find(name);
            if (it == kKnownFlags.end())
                usage_error("unknown flag --" + name);
            if (it->second && !has_value) {
                if (i + 1 >= args.size())
                    usage_error("--" + name + " expects a value");
                value = args[++i];
            }
            options.flags[name] = value;
        } else {
            options.inputs.push_back(arg);
        }
    }
    return options;
}

enum class InputKind { pddl, sas, facts };

InputKind detect_kind(const Options &options, const vector<string> &texts) {
    string from = options.get("from", "auto");
    if (from == "pddl")
        return InputKind::pddl;
    if (from == "sas")
        return InputKind::sas;
    if (from == "facts")
        return InputKind::facts;
    if (from != "auto")
        usage_error("--from expects pddl|sas|facts, got '" + from + "'");
    if (texts.size() == 2)
        return InputKind::pddl;
    const string &text = texts.at(0);
    size_t i = 0;
    while (i < text.size() && isspace(static_cast<unsigned char>(text[i])))
        ++i;
    if (text.compare(i, 13, "begin_version") == 0)
        return InputKind::sas;
    if (i < text.size() && text[i] == '(')
        return InputKind::pddl;
    return InputKind::facts;
}

PlanningTask load_task(const Options &options, istream &in, vector<string> *warnings) {
    if (options.inputs.empty())
        usage_error(options.command + " needs an input file (or '-' for stdin)");
    vector<string> texts;
    for (const string &path : options.inputs)
        texts.push_back(read_input(path, in));
    InputKind kind = detect_kind(options, texts);
    switch (kind) {
    case InputKind::pddl: {
        if (texts.size() != 2)
            usage_error("PDDL input needs a domain file and a problem file");
        PddlAst ast = parse_pddl(texts[0], texts[1], options.inputs[0], options.inputs[1]);
        SchemaTask schema = static_filter(lower_to_schemas(normalize(move(ast))));
        GroundOptions ground_options;
        ground_options.memory_guard =
            static_cast<uint64_t>(options.get_int("memory-guard", 5'000'000));
        ground_options.relaxed_reachability = options.has("relaxed-reachability");
        return ground(schema, ground_options);
    }
    case InputKind::sas: {
        if (texts.size() != 1)
            usage_error("SAS input is a single file");
        SasDocument doc = parse_sas(texts[0]);
        if (warnings)
            for (const string &w : doc.warnings)
                warnings->push_back(w);
        return to_task(doc);
    }
    case InputKind::facts:
        if (texts.size() != 1)
            usage_error("facts input is a single file");
        return read_facts(texts[0]);
    }
    throw UsageError("unreachable input kind");
}

EncodingMode parse_encoding(const string &name, bool &gc_switch_to_forall) {
    gc_switch_to_forall = true;
    if (name == "seq" || name == "sequential")
        return EncodingMode::seq;
    if (name == "forall")
        return EncodingMode::forall;
    if (name == "exists" || name == "exists-acyc")
        return EncodingMode::exists_acyc;
    if (name == "exists-fixpoint") {
        gc_switch_to_forall = false;  // nogood refinement instead of the switch
        return EncodingMode::gc_exists;
    }
    if (name == "gc")
        return EncodingMode::gc_exists;
    if (name == "relaxed")
        return EncodingMode::gc_relaxed;
    usage_error("--encoding expects seq|forall|exists|exists-fixpoint|gc|relaxed, got '" +
                name + "'");
}

int cmd_translate(const Options &options, istream &in, ostream &out, ostream &err) {
    vector<string> warnings;
    PlanningTask task = load_task(options, in, &warnings);
    for (const string &w : warnings)
        err << "warning: " << w << "\n";
    out << write_facts(task);
    return kExitOk;
}

pair<string, string> read_pddl_pair(const Options &options, istream &in) {
    if (options.inputs.size() != 2)
        usage_error(options.command + " needs a domain file and a problem file");
    return {read_input(options.inputs[0], in), read_input(options.inputs[1], in)};
}

int cmd_normalize(const Options &options, istream &in, ostream &out, ostream &) {
    auto [domain_text, problem_text] = read_pddl_pair(options, in);
    PddlAst ast =
        parse_pddl(domain_text, problem_text, options.inputs[0], options.inputs[1]);
    out << beautify(normalize(move(ast)));
    return kExitOk;
}

int cmd_beautify(const Options &options, istream &in, ostream &out, ostream &) {
    auto [domain_text, problem_text] = read_pddl_pair(options, in);
    PddlAst ast =
        parse_pddl(domain_text, problem_text, options.inputs[0], options.inputs[1]);
    out << beautify(ast);
    return kExitOk;
}

int cmd_check_syntax(const Options &options, istream &in, ostream &out, ostream &) {
    auto [domain_text, problem_text] = read_pddl_pair(options, in);
    auto diagnostics =
        check_syntax(domain_text, problem_text, options.inputs[0], options.inputs[1]);
    bool any_error = false;
    for (const Diagnostic &d : diagnostics) {
        out << d.to_string() << "\n";
        any_error = any_error || d.is_error;
    }
    return any_error ? kExitInput : kExitOk;
}

PlannerConfig planner_config(const Options &options) {
    PlannerConfig config;
    config.mode = parse_encoding(options.get("encoding", "exists"), config.gc_switch_to_forall);
    string algorithm = options.get("algorithm", "B");
    if (algorithm == "S" || algorithm == "s")
        config.algorithm = Algorithm::S;
    else if (algorithm == "A" || algorithm == "a")
        config.algorithm = Algorithm::A;
    else if (algorithm == "B" || algorithm == "b")
        config.algorithm = Algorithm::B;
    else
        usage_error("--algorithm expects S|A|B, got '" + algorithm + "'");
    config.n = options.get_int("n", 16);
    config.gamma = options.get_double("gamma", 0.9);
    config.threshold = options.get_double("threshold", 1.0);
    config.increment = options.get_int("increment", 5);
    config.slice = static_cast<uint64_t>(options.get_int("slice", 512));
    config.heuristic = options.has("heuristic");
    config.horizon_cap = options.get_int("horizon-cap", 200);
    config.seed = static_cast<uint64_t>(options.get_int("seed", 0));
    config.dump_dimacs_path = options.get("dump-dimacs", "");
    if (config.n < 1)
        usage_error("--n must be >= 1");
    if (!(config.gamma > 0.0 && config.gamma < 1.0))
        usage_error("--gamma must lie strictly between 0 and 1");
    if (config.increment < 1)
        usage_error("--increment must be >= 1");
    return config;
}

int cmd_solve(const Options &options, istream &in, ostream &out, ostream &err) {
    PlannerConfig config = planner_config(options);
    vector<string> warnings;
    PlanningTask task = load_task(options, in, &warnings);
    for (const string &w : warnings)
        err << "warning: " << w << "\n";
    PlanResult result = plan(task, config);
    if (!result.plan) {
        out << "exhausted horizon_cap=" << config.horizon_cap << "\n";
        out << result.stats.to_key_value_lines();
        return kExitNoPlan;
    }
    if (options.get("output", "plan") == "facts")
        out << write_plan_facts(task, *result.plan);
    else
        out << write_plan_text(task, *result.plan);
    out << "horizon=" << result.horizon << "\n";
    out << result.stats.to_key_value_lines();
    if (!result.serialization.empty()) {
        out << "serialization=";
        for (size_t i = 0; i < result.serialization.size(); ++i) {
            if (i)
                out << " ";
            out << quote_name(task.actions[result.serialization[i]].name);
        }
        out << "\n";
    }
    return kExitOk;
}

int cmd_validate(const Options &options, istream &in, ostream &out, ostream &err) {
    if (options.inputs.size() < 2)
        usage_error("validate needs a task input and a plan file");
    Options task_options = options;
    task_options.inputs.pop_back();
    vector<string> warnings;
    PlanningTask task = load_task(task_options, in, &warnings);
    for (const string &w : warnings)
        err << "warning: " << w << "\n";
    auto semantics = parse_semantics(options.get("semantics", "sequential"));
    if (!semantics)
        usage_error("--semantics expects sequential|forall|exists|relaxed");
    string plan_text = read_input(options.inputs.back(), in);
    StepPlan plan = read_plan_text(task, plan_text, *semantics);
    ValidationReport report = validate_plan(task, plan);
    out << report.to_line() << "\n";
    if (report.valid && !report.flattened.empty()) {
        out << "serialization=";
        for (size_t i = 0; i < report.flattened.size(); ++i) {
            if (i)
                out << " ";
            out << quote_name(task.actions[report.flattened[i]].name);
        }
        out << "\n";
    }
    return report.valid ? kExitOk : kExitNoPlan;
}

}  // namespace

string write_plan_text(const PlanningTask &task, const StepPlan &plan) {
    ostringstream out;
    for (size_t i = 0; i < plan.steps.size(); ++i) {
        if (plan.steps[i].empty())
            continue;
        out << "step " << (i + 1) << ":";
        for (int action : plan.steps[i])
            out << " " << quote_name(task.actions.at(action).name);
        out << "\n";
    }
    return out.str();
}

string write_plan_facts(const PlanningTask &task, const StepPlan &plan) {
    ostringstream out;
    for (size_t i = 0; i < plan.steps.size(); ++i)
        for (int action : plan.steps[i]) {
            const string &name = task.actions.at(action).name;
            bool plain = !name.empty();
            for (char c : name)
                if (!(islower(static_cast<unsigned char>(c)) ||
                      isdigit(static_cast<unsigned char>(c)) || c == '_'))
                    plain = false;
            out << "occurs(" << (plain ? name : "\"" + name + "\"") << "," << (i + 1) << ").\n";
        }
    return out.str();
}

StepPlan read_plan_text(const PlanningTask &task, const string &text, PlanSemantics semantics) {
    StepPlan plan;
    plan.semantics = semantics;
    map<int, vector<int>> steps;
    int max_step = 0;
    istringstream lines(text);
    string line;
    int line_number = 0;
    while (getline(lines, line)) {
        ++line_number;
        size_t i = 0;
        auto skip_space = [&] {
            while (i < line.size() && isspace(static_cast<unsigned char>(line[i])))
                ++i;
        };
        skip_space();
        if (i >= line.size() || line[i] == '%' || line[i] == '#')
            continue;
        if (line.compare(i, 5, "step ") != 0)
            throw InputError("plan:" + std::to_string(line_number) + ": expected 'step <t>: ...'");
        i += 5;
        size_t used = 0;
        int step = stoi(line.substr(i), &used);
        i += used;
        skip_space();
        if (i >= line.size() || line[i] != ':')
            throw InputError("plan:" + std::to_string(line_number) + ": expected ':' after step index");
        ++i;
        if (step < 1)
            throw InputError("plan:" + std::to_string(line_number) + ": step index must be >= 1");
        vector<int> &actions = steps[step];
        while (true) {
            skip_space();
            if (i >= line.size())
                break;
            string name;
            if (line[i] == '"') {
                ++i;
                while (i < line.size() && line[i] != '"') {
                    if (line[i] == '\\' && i + 1 < line.size())
                        ++i;
                    name += line[i++];
                }
                if (i >= line.size())
                    throw InputError("plan:" + std::to_string(line_number) + ": unterminated quote");
                ++i;
            } else {
                while (i < line.size() && !isspace(static_cast<unsigned char>(line[i])))
                    name += line[i++];
            }
            actions.push_back(task.action_ordinal(name));
        }
        max_step = max(max_step, step);
    }
    plan.steps.assign(max_step, {});
    for (auto &[step, actions] : steps) {
        sort(actions.begin(), actions.end());
        plan.steps[step - 1] = move(actions);
    }
    return plan;
}

int run_cli(const vector<string> &args, istream &in, ostream &out, ostream &err) {
    try {
        Options options = parse_args(args);
        if (options.command == "translate")
            return cmd_translate(options, in, out, err);
        if (options.command == "normalize")
            return cmd_normalize(options, in, out, err);
        if (options.command == "beautify")
            return cmd_beautify(options, in, out, err);
        if (options.command == "check-syntax")
            return cmd_check_syntax(options, in, out, err);
        if (options.command == "solve")
            return cmd_solve(options, in, out, err);
        if (options.command == "validate")
            return cmd_validate(options, in, out, err);
        usage_error("unknown command '" + options.command + "'");
    } catch (const UsageError &error) {
        err << "usage error: " << error.what() << "\n";
        return kExitUsage;
    } catch (const InputError &error) {
        err << "error: " << error.what() << "\n";
        return kExitInput;
    }
}

}  // namespace parplan
