// End-to-end tests for the command-line tool. Each case runs the real
// binary in a scratch directory and checks the exit code plus the artifact
// and diagnostic streams.

#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void spit(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

struct TempDir {
    fs::path path;

    TempDir() {
        std::string name = (fs::temp_directory_path() / "ringforge-cli-XXXXXX").string();
        REQUIRE(mkdtemp(name.data()) != nullptr);
        path = name;
    }

    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

// Runs the binary with `dir` as the working directory. `env` is an optional
// VAR=value prefix applied to this invocation only.
RunResult run_cli(const TempDir& dir, const std::string& args, const std::string& env = "") {
    std::string command = "cd '" + dir.path.string() + "' && ";
    if (!env.empty()) command += env + " ";
    command += "'" RINGFORGE_CLI_PATH "' " + args + " > __stdout.txt 2> __stderr.txt";
    const int status = std::system(command.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = slurp(dir.path / "__stdout.txt");
    result.err = slurp(dir.path / "__stderr.txt");
    return result;
}

bool contains(const std::string& text, const std::string& needle) {
    return text.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("gen writes the three task files and rejects unknown keys") {
    TempDir dir;
    const RunResult gen = run_cli(dir, "gen unique-additive-inverse --out task");
    CHECK(gen.exit_code == 0);
    CHECK(contains(gen.out, "domain.pddl"));
    CHECK(contains(gen.out, "problem.pddl"));
    CHECK(contains(gen.out, "display.map"));

    const std::string domain = slurp(dir.path / "task" / "domain.pddl");
    const std::string problem = slurp(dir.path / "task" / "problem.pddl");
    const std::string display = slurp(dir.path / "task" / "display.map");
    CHECK(contains(domain, "(define (domain commutative-ring)"));
    CHECK_FALSE(contains(domain, "oneof"));
    CHECK(contains(problem, "(iszero zero)"));
    CHECK(contains(problem, "(issum zero a b1)"));
    CHECK(contains(problem, "(issum zero a b2)"));
    CHECK(contains(display, "zero = 0"));

    SUBCASE("an unknown key lists the known ones") {
        const RunResult bad = run_cli(dir, "gen no-such-problem");
        CHECK(bad.exit_code == 2);
        CHECK(contains(bad.err, "unknown builtin key 'no-such-problem'"));
        CHECK(contains(bad.err, "unique-additive-inverse"));
    }

    SUBCASE("the nondeterministic variant carries the case-split axiom") {
        const RunResult fond = run_cli(dir, "gen cancellation-law --variant fond --out fond");
        CHECK(fond.exit_code == 0);
        const std::string fond_domain = slurp(dir.path / "fond" / "domain.pddl");
        CHECK(contains(fond_domain, "oneof"));
        CHECK(contains(fond_domain, "integraldom-axiom"));
    }

    SUBCASE("forcing the deterministic variant onto a case-split task fails") {
        const RunResult fod = run_cli(dir, "gen cancellation-law --variant fod");
        CHECK(fod.exit_code == 2);
        CHECK(contains(fod.err, "integraldom-axiom requires the nondeterministic variant"));
    }
}

TEST_CASE("solve, validate, and render round-trip a deterministic builtin") {
    TempDir dir;
    const RunResult solve =
        run_cli(dir, "solve --solver bfs unique-additive-inverse --out uai.plan");
    CHECK(solve.exit_code == 0);
    CHECK(contains(solve.err, "solver=bfs\n"));
    CHECK(contains(solve.err, "outcome=solved\n"));
    CHECK(contains(solve.err, "cost=7\n"));

    const std::string plan = slurp(dir.path / "uai.plan");
    CHECK(contains(plan, "(set-equal-to-self b1)\n"));
    CHECK(plan.rfind("; cost = 7 (unit cost)\n") == plan.size() - 23);

    const RunResult validate = run_cli(dir, "validate unique-additive-inverse --plan uai.plan");
    CHECK(validate.exit_code == 0);
    CHECK(contains(validate.out, "checked: 7 steps\n"));
    CHECK(contains(validate.out, "ok\n"));

    const RunResult render = run_cli(dir, "render unique-additive-inverse --plan uai.plan");
    CHECK(render.exit_code == 0);
    CHECK(contains(render.out, "; goal: b1 = b2\n"));
    CHECK(contains(render.out, "=> b1 = b1\n"));
    CHECK(contains(render.out, "; cost = 7 (unit cost)\n"));

    SUBCASE("omitting --out sends the artifact to stdout") {
        const RunResult direct = run_cli(dir, "solve --solver bfs unique-additive-inverse");
        CHECK(direct.exit_code == 0);
        CHECK(direct.out == plan);
    }

    SUBCASE("the generated files solve to the same plan as the builtin") {
        REQUIRE(run_cli(dir, "gen unique-additive-inverse --out task").exit_code == 0);
        const RunResult from_files = run_cli(
            dir,
            "solve --solver bfs --domain task/domain.pddl --problem task/problem.pddl"
            " --out file.plan");
        CHECK(from_files.exit_code == 0);
        CHECK(slurp(dir.path / "file.plan") == plan);

        const RunResult rendered = run_cli(
            dir,
            "render --domain task/domain.pddl --problem task/problem.pddl --plan file.plan"
            " --display task/display.map");
        CHECK(rendered.exit_code == 0);
        CHECK(contains(rendered.out, "=> b1 = b1 + 0\n"));
    }

    SUBCASE("file input without a display map warns and falls back to object names") {
        REQUIRE(run_cli(dir, "gen unique-additive-inverse --out task").exit_code == 0);
        const RunResult rendered = run_cli(
            dir, "render --domain task/domain.pddl --problem task/problem.pddl --plan uai.plan");
        CHECK(rendered.exit_code == 0);
        CHECK(contains(rendered.err, "no display map"));
        CHECK(contains(rendered.out, "=> b1 = b1 + zero\n"));
    }
}

TEST_CASE("the nondeterministic pipeline solves, validates, and renders the case split") {
    TempDir dir;
    const RunResult solve = run_cli(dir, "solve cancellation-law --out canc.policy");
    CHECK(solve.exit_code == 0);
    CHECK(contains(solve.err, "solver=fond\n"));
    CHECK(contains(solve.err, "closure=by-contradiction\n"));
    CHECK(contains(solve.err, "outcome=solved\n"));
    CHECK(contains(solve.err, "entries=146\n"));

    const RunResult validate =
        run_cli(dir, "validate cancellation-law --policy canc.policy --closure by-contradiction");
    CHECK(validate.exit_code == 0);
    CHECK(contains(validate.out, "census: goal=1 contradiction=2 dead-end=0\n"));
    CHECK(contains(validate.out, "ok\n"));

    const RunResult render = run_cli(dir, "render cancellation-law --policy canc.policy");
    CHECK(render.exit_code == 0);
    CHECK(contains(render.out, "; closure = by-contradiction\n"));
    CHECK(contains(render.out, "Case 1: "));
    CHECK(contains(render.out, "=> contradiction (assumed a nonzero)"));
    CHECK(contains(render.out, "Case 3: a != 0 and (b + (-c)) = 0\n"));

    const RunResult dot = run_cli(dir, "render cancellation-law --policy canc.policy --dot");
    CHECK(dot.exit_code == 0);
    CHECK(dot.out.rfind("digraph policy {\n", 0) == 0);
    CHECK(contains(dot.out, "doubleoctagon"));

    SUBCASE("the strict closure reports the task unsolvable") {
        const RunResult strict = run_cli(dir, "solve --closure strict cancellation-law");
        CHECK(strict.exit_code == 10);
        CHECK(contains(strict.err, "outcome=proven-unsolvable\n"));
    }

    SUBCASE("the deterministic solvers refuse oneof tasks") {
        const RunResult bfs = run_cli(dir, "solve --solver bfs cancellation-law");
        CHECK(bfs.exit_code == 2);
        CHECK(contains(bfs.err, "use the nondeterministic solver"));
    }
}

TEST_CASE("budget limits are honored from flags and the environment") {
    TempDir dir;
    const std::string solve = "solve --solver bfs unique-additive-inverse";

    const RunResult flag = run_cli(dir, solve + " --budget-states 5");
    CHECK(flag.exit_code == 11);
    CHECK(contains(flag.err, "outcome=budget-exhausted\n"));

    const RunResult env = run_cli(dir, solve, "RINGFORGE_BUDGET_STATES=5");
    CHECK(env.exit_code == 11);
    CHECK(contains(env.err, "outcome=budget-exhausted\n"));

    const RunResult override_env =
        run_cli(dir, solve + " --budget-states 1000000", "RINGFORGE_BUDGET_STATES=5");
    CHECK(override_env.exit_code == 0);
    CHECK(contains(override_env.err, "outcome=solved\n"));

    const RunResult bad_env = run_cli(dir, solve, "RINGFORGE_BUDGET_STATES=banana");
    CHECK(bad_env.exit_code == 2);
    CHECK(contains(bad_env.err, "RINGFORGE_BUDGET_STATES must be a positive integer"));

    const RunResult zero_env = run_cli(dir, solve, "RINGFORGE_BUDGET_SECONDS=0");
    CHECK(zero_env.exit_code == 2);
    CHECK(contains(zero_env.err, "RINGFORGE_BUDGET_SECONDS must be a positive number"));
}

TEST_CASE("validate distinguishes an unsatisfied goal from malformed input") {
    TempDir dir;
    REQUIRE(run_cli(dir, "solve --solver bfs unique-additive-inverse --out uai.plan").exit_code ==
            0);

    const std::string plan = slurp(dir.path / "uai.plan");
    const std::size_t last_action = plan.rfind("(associative-addition-axiom");
    REQUIRE(last_action != std::string::npos);
    spit(dir.path / "trunc.plan", plan.substr(0, last_action));

    const RunResult trunc = run_cli(dir, "validate unique-additive-inverse --plan trunc.plan");
    CHECK(trunc.exit_code == 12);
    CHECK(contains(trunc.out, "checked: 6 steps\n"));
    CHECK(contains(trunc.out, "goal-unsatisfied"));
    CHECK(contains(trunc.out, "validation failed: 1 failure(s)\n"));

    spit(dir.path / "garbage.plan", "this is not a plan (((\n");
    const RunResult garbage = run_cli(dir, "validate unique-additive-inverse --plan garbage.plan");
    CHECK(garbage.exit_code == 2);
    CHECK(contains(garbage.err, "error:"));

    const RunResult missing = run_cli(dir, "validate unique-additive-inverse --plan no-such.plan");
    CHECK(missing.exit_code == 2);
    CHECK(contains(missing.err, "cannot read"));

    SUBCASE("a broken plan still renders, with a warning banner") {
        const RunResult render = run_cli(dir, "render unique-additive-inverse --plan trunc.plan");
        CHECK(render.exit_code == 0);
        CHECK(render.out.rfind("; WARNING: input failed validation (1 failure(s));", 0) == 0);
    }
}

TEST_CASE("a goal already satisfied at the start yields the empty plan") {
    TempDir dir;
    spit(dir.path / "domain.pddl",
         "(define (domain tiny)\n"
         "  (:requirements :strips)\n"
         "  (:predicates (p ?x))\n"
         "  (:action keep\n"
         "    :parameters (?x)\n"
         "    :precondition (and (p ?x))\n"
         "    :effect (and (p ?x))))\n");
    spit(dir.path / "problem.pddl",
         "(define (problem trivial-goal)\n"
         "  (:domain tiny)\n"
         "  (:objects a)\n"
         "  (:init (p a))\n"
         "  (:goal (and (p a))))\n");

    const RunResult solve =
        run_cli(dir, "solve --domain domain.pddl --problem problem.pddl --out empty.plan");
    CHECK(solve.exit_code == 0);
    CHECK(contains(solve.err, "solver=bfs\n"));
    CHECK(contains(solve.err, "cost=0\n"));
    CHECK(slurp(dir.path / "empty.plan") == "; cost = 0 (unit cost)\n");

    const RunResult validate =
        run_cli(dir, "validate --domain domain.pddl --problem problem.pddl --plan empty.plan");
    CHECK(validate.exit_code == 0);
    CHECK(contains(validate.out, "checked: 0 steps\n"));

    const RunResult render = run_cli(
        dir, "render --domain domain.pddl --problem problem.pddl --plan empty.plan 2>/dev/null");
    CHECK(render.out ==
          "; problem: trivial-goal\n"
          "; goal: (p a)\n"
          "; cost = 0 (unit cost)\n");
}

TEST_CASE("identical invocations produce byte-identical artifacts") {
    TempDir dir;
    const std::string solve = "solve --solver gbfs neg-one-times-a";
    const RunResult first = run_cli(dir, solve);
    const RunResult second = run_cli(dir, solve);
    CHECK(first.exit_code == 0);
    CHECK(first.out == second.out);

    spit(dir.path / "plan.txt", first.out);
    const std::string render = "render neg-one-times-a --plan plan.txt";
    CHECK(run_cli(dir, render).out == run_cli(dir, render).out);
}

TEST_CASE("bench prints a deterministic table and flags desk-scale failures") {
    TempDir dir;
    const std::string bench = "bench --budget-states 3000 --budget-seconds 10";
    const RunResult first = run_cli(dir, bench);
    CHECK(first.exit_code == 1);
    CHECK(contains(first.out, "key"));
    CHECK(contains(first.out, "outcome"));
    CHECK(contains(first.out, "zero-sum"));
    CHECK(contains(first.out, "cancellation-law"));
    CHECK(contains(first.out, "budget-exhausted"));
    CHECK(contains(first.err, "bench.zero-sum.seconds="));

    const RunResult second = run_cli(dir, bench);
    CHECK(second.out == first.out);
}

TEST_CASE("usage errors exit with code 2 and help exits clean") {
    TempDir dir;
    CHECK(run_cli(dir, "").exit_code == 2);
    CHECK(run_cli(dir, "frobnicate").exit_code == 2);
    CHECK(run_cli(dir, "solve --solver dfs unique-additive-inverse").exit_code == 2);
    CHECK(run_cli(dir, "solve").exit_code == 2);
    CHECK(run_cli(dir, "solve unique-additive-inverse --domain x.pddl").exit_code == 2);

    const RunResult help = run_cli(dir, "--help");
    CHECK(help.exit_code == 0);
    CHECK(contains(help.out, "solve"));

    const RunResult both = run_cli(
        dir, "validate unique-additive-inverse --plan a.plan --policy b.policy");
    CHECK(both.exit_code == 2);
    CHECK(contains(both.err, "exactly one of --plan or --policy"));

    REQUIRE(run_cli(dir, "solve --solver bfs unique-additive-inverse --out uai.plan").exit_code ==
            0);
    const RunResult dot_plan =
        run_cli(dir, "render unique-additive-inverse --plan uai.plan --dot");
    CHECK(dot_plan.exit_code == 2);
    CHECK(contains(dot_plan.err, "give --policy"));
}
