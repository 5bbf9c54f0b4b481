#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "parplan/cli.hpp"
#include "parplan/facts.hpp"
#include "pddl_fixtures.hpp"
#include "test_util.hpp"

using namespace parplan;
using namespace parplan::testing;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int exit_code;
    std::string out;
    std::string err;
};

CliRun run(const std::vector<std::string> &args, const std::string &stdin_text = "") {
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    int code = run_cli(args, in, out, err);
    return {code, out.str(), err.str()};
}

// Wall time is the one legitimately nondeterministic statistics line.
std::string without_wall_time(const std::string &text) {
    std::istringstream in(text);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line))
        if (line.rfind("wall_ms=", 0) != 0)
            out << line << "\n";
    return out.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("parplan_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int counter() {
        static int value = 0;
        return value++;
    }
    std::string file(const std::string &name, const std::string &content) const {
        fs::path p = path / name;
        std::ofstream(p) << content;
        return p.string();
    }
};

}  // namespace

TEST_CASE("translate canonicalizes a facts file") {
    TempDir dir;
    std::string canonical = write_facts(make_t1());
    std::string shuffled = "% comment first\ngoal(x5,1).\n" + canonical;
    auto result = run({"translate", dir.file("t1.lp", shuffled)});
    // goal(x5,1) duplicates an existing fact; set semantics keep one copy.
    CHECK(result.exit_code == 0);
    CHECK(result.out == canonical);
}

TEST_CASE("translate grounds a PDDL pair") {
    TempDir dir;
    auto result = run({"translate", dir.file("d.pddl", kBlocksDomain),
                       dir.file("p.pddl", kBlocks2Problem)});
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("fluent(\"on(a,b)\").") != std::string::npos);
    CHECK(result.out.find("action(\"pickup(a)\").") != std::string::npos);
    CHECK(result.out.find("value(\"on(a,b)\",true).") != std::string::npos);
}

TEST_CASE("translate reads stdin with explicit --from") {
    std::string canonical = write_facts(make_t1());
    auto result = run({"translate", "--from", "facts", "-"}, canonical);
    CHECK(result.exit_code == 0);
    CHECK(result.out == canonical);
}

TEST_CASE("solve prints the two-step exists plan for T1") {
    TempDir dir;
    std::string path = dir.file("t1.lp", write_facts(make_t1()));
    auto result = run({"solve", "--encoding", "exists-acyc", "--algorithm", "B",
                       "--gamma", "0.9", "--increment", "1", "--heuristic", path});
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("step 1: a1 a2\n") != std::string::npos);
    CHECK(result.out.find("step 2: a3 a4\n") != std::string::npos);
    CHECK(result.out.find("horizon=2") != std::string::npos);
    CHECK(result.out.find("plan_length=2") != std::string::npos);
}

TEST_CASE("solve emits occurs facts under --output facts") {
    TempDir dir;
    std::string path = dir.file("t1.lp", write_facts(make_t1()));
    auto result = run({"solve", "--encoding", "exists", "--algorithm", "S",
                       "--increment", "1", "--output", "facts", path});
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("occurs(a1,1).\n") != std::string::npos);
    CHECK(result.out.find("occurs(a4,2).\n") != std::string::npos);
}

TEST_CASE("solve reports exhaustion with exit 10 when capped") {
    TempDir dir;
    std::string path = dir.file("t2.lp", write_facts(make_t2()));
    auto result = run({"solve", "--encoding", "seq", "--algorithm", "S",
                       "--increment", "1", "--horizon-cap", "3", path});
    CHECK(result.exit_code == 10);
    CHECK(result.out.find("exhausted") != std::string::npos);
}

TEST_CASE("pipe compatibility: solving translated facts equals solving the origin") {
    TempDir dir;
    std::string domain = dir.file("d.pddl", kBlocksDomain);
    std::string problem = dir.file("p.pddl", kBlocks2Problem);
    auto translated = run({"translate", domain, problem});
    REQUIRE(translated.exit_code == 0);
    std::string facts_path = dir.file("ground.lp", translated.out);
    std::vector<std::string> base{"solve", "--encoding", "seq", "--algorithm", "S",
                                  "--increment", "1"};
    auto direct = base;
    direct.push_back(domain);
    direct.push_back(problem);
    auto piped = base;
    piped.push_back(facts_path);
    auto direct_result = run(direct);
    auto piped_result = run(piped);
    CHECK(direct_result.exit_code == 0);
    CHECK(without_wall_time(direct_result.out) == without_wall_time(piped_result.out));
}

TEST_CASE("validate accepts the T1 forall plan and rejects the exists-only split") {
    TempDir dir;
    std::string task_path = dir.file("t1.lp", write_facts(make_t1()));
    std::string good = dir.file("good.txt", "step 1: a1\nstep 2: a2\nstep 3: a3 a4\n");
    std::string split = dir.file("split.txt", "step 1: a1 a2\nstep 2: a3 a4\n");

    auto valid = run({"validate", "--semantics", "forall", task_path, good});
    CHECK(valid.exit_code == 0);
    CHECK(valid.out.find("VALID") == 0);
    CHECK(valid.out.find("serialization=a1 a2 a3 a4") != std::string::npos);

    auto invalid = run({"validate", "--semantics", "forall", task_path, split});
    CHECK(invalid.exit_code == 10);
    CHECK(invalid.out.find("INVALID step=1 reason=not_serializable") == 0);

    auto exists_ok = run({"validate", "--semantics", "exists", task_path, split});
    CHECK(exists_ok.exit_code == 0);
}

TEST_CASE("validate reads idle steps and occurs-style gaps") {
    TempDir dir;
    std::string task_path = dir.file("t1.lp", write_facts(make_t1()));
    std::string sparse = dir.file("sparse.txt", "step 2: a1\nstep 4: a2\nstep 5: a3 a4\n");
    auto result = run({"validate", "--semantics", "forall", task_path, sparse});
    CHECK(result.exit_code == 0);
}

TEST_CASE("check-syntax exits 0 on clean input and prints warnings otherwise") {
    TempDir dir;
    auto clean = run({"check-syntax", dir.file("d.pddl", kBlocksDomain),
                      dir.file("p.pddl", kBlocks2Problem)});
    CHECK(clean.exit_code == 0);
    CHECK(clean.out.empty());

    const char *cond_domain = R"((define (domain cond)
      (:requirements :strips)
      (:predicates (p) (q) (w))
      (:action act :parameters () :precondition (p)
               :effect (and (q) (when (p) (w)))))
    )";
    auto warned = run({"check-syntax", dir.file("c.pddl", cond_domain),
                       dir.file("p2.pddl", R"((define (problem x) (:domain cond)
                         (:init (p)) (:goal (q))))")});
    CHECK(warned.exit_code == 0);
    CHECK(warned.out.find("unsupported: conditional effect") != std::string::npos);
}

TEST_CASE("beautify emits reparseable text and normalize rewrites conditions") {
    TempDir dir;
    std::string domain = dir.file("d.pddl", R"((define (domain tidy)
      (:requirements :strips)
      (:predicates (p) (q))
      (:action act :parameters () :precondition (imply (p) (q)) :effect (q))))");
    std::string problem = dir.file("p.pddl",
                                   R"((define (problem t) (:domain tidy) (:init (p)) (:goal (q))))");
    auto pretty = run({"beautify", domain, problem});
    CHECK(pretty.exit_code == 0);
    CHECK(pretty.out.find("(imply (p) (q))") != std::string::npos);
    auto normalized = run({"normalize", domain, problem});
    CHECK(normalized.exit_code == 0);
    CHECK(normalized.out.find("(or (not (p)) (q))") != std::string::npos);
}

TEST_CASE("usage errors exit 1, input errors exit 2") {
    TempDir dir;
    CHECK(run({"frobnicate"}).exit_code == 1);
    CHECK(run({"solve", "--encoding", "bogus",
               dir.file("x.lp", write_facts(make_t2()))}).exit_code == 1);
    CHECK(run({"solve"}).exit_code == 1);
    CHECK(run({"translate", dir.file("bad.lp", "fluent(")}).exit_code == 2);
    CHECK(run({"translate", (dir.path / "missing.lp").string()}).exit_code == 2);
}

TEST_CASE("solve output is deterministic given a seed") {
    TempDir dir;
    std::string path = dir.file("t1.lp", write_facts(make_t1()));
    std::vector<std::string> args{"solve", "--encoding", "forall", "--algorithm", "A",
                                  "--n", "3", "--increment", "1", "--seed", "7", path};
    auto first = run(args);
    auto second = run(args);
    CHECK(first.exit_code == 0);
    CHECK(without_wall_time(first.out) == without_wall_time(second.out));
}

TEST_CASE("sas input is auto-detected") {
    TempDir dir;
    const char *sas = R"(begin_version
3
end_version
begin_metric
0
end_metric
1
begin_variable
switch
-1
2
off
on
end_variable
0
begin_state
0
end_state
begin_goal
1
0 1
end_goal
1
begin_operator
turn-on
0
1
0 0 0 1
1
end_operator
0
)";
    std::string path = dir.file("tiny.sas", sas);
    auto translated = run({"translate", path});
    CHECK(translated.exit_code == 0);
    CHECK(translated.out.find("fluent(switch).") != std::string::npos);
    auto solved = run({"solve", "--encoding", "seq", "--algorithm", "S",
                       "--increment", "1", path});
    CHECK(solved.exit_code == 0);
    CHECK(solved.out.find("step 1: turn-on") != std::string::npos);
}

TEST_CASE("--dump-dimacs writes the constraint store with comments") {
    TempDir dir;
    std::string task_path = dir.file("t1.lp", write_facts(make_t1()));
    std::string dump_path = (dir.path / "store.cnf").string();
    auto result = run({"solve", "--encoding", "exists", "--algorithm", "S", "--increment",
                       "1", "--dump-dimacs", dump_path, task_path});
    CHECK(result.exit_code == 0);
    std::ifstream dump(dump_path);
    REQUIRE(dump.good());
    std::string text((std::istreambuf_iterator<char>(dump)), {});
    CHECK(text.rfind("p cnf", 0) == 0);
    CHECK(text.find("c edge") != std::string::npos);
    CHECK(text.find(" 0\n") != std::string::npos);
}
