#include "ringforge/planfod.hpp"
#include "ringforge/planfond.hpp"
#include "ringforge/proof.hpp"
#include "ringforge/ringdomain.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

// Command-line front end: gen, solve, validate, render, and bench
// subcommands over the builtin conjecture registry or explicit PDDL
// files. Statistics go to stderr as key=value lines; artifacts go to
// stdout or --out, so pipelines can compose.
//
// Exit codes: 0 success/Solved, 2 usage or parse error,
// 10 ProvenUnsolvable, 11 BudgetExhausted, 12 validation failure.

namespace {

using namespace ringforge;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitUnsolvable = 10;
constexpr int kExitExhausted = 11;
constexpr int kExitInvalid = 12;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
    if (!out) throw UsageError("cannot write " + path);
}

void emit_artifact(const std::string& out_path, const std::string& text) {
    if (out_path.empty())
        std::cout << text;
    else
        write_file(out_path, text);
}

std::string known_keys() {
    std::string keys;
    for (const ringdomain::BuiltinProblem& p : ringdomain::builtin_problems()) {
        if (!keys.empty()) keys += ", ";
        keys += p.key;
    }
    return keys;
}

const ringdomain::BuiltinProblem& find_builtin_or_fail(const std::string& key) {
    const ringdomain::BuiltinProblem* entry = ringdomain::find_builtin(key);
    if (!entry) throw UsageError("unknown builtin key '" + key + "' (known: " + known_keys() + ")");
    return *entry;
}

// Budget precedence: flags beat RINGFORGE_BUDGET_STATES /
// RINGFORGE_BUDGET_SECONDS, which beat the 1e6-state / 120 s defaults.
struct BudgetFlags {
    std::uint64_t states = 0;
    double seconds = 0.0;
    bool states_set = false;
    bool seconds_set = false;
};

void add_budget_flags(CLI::App* cmd, BudgetFlags& flags) {
    cmd->add_option("--budget-states", flags.states, "maximum expanded states")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--budget-seconds", flags.seconds, "maximum wall-clock seconds")
        ->check(CLI::PositiveNumber);
    cmd->callback([cmd, &flags] {
        flags.states_set = cmd->count("--budget-states") > 0;
        flags.seconds_set = cmd->count("--budget-seconds") > 0;
    });
}

planfod::SearchBudget resolve_budget(const BudgetFlags& flags) {
    planfod::SearchBudget budget;
    if (const char* env = std::getenv("RINGFORGE_BUDGET_STATES")) {
        char* end = nullptr;
        unsigned long long value = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0' || value == 0)
            throw UsageError("RINGFORGE_BUDGET_STATES must be a positive integer");
        budget.max_expanded_states = value;
    }
    if (const char* env = std::getenv("RINGFORGE_BUDGET_SECONDS")) {
        char* end = nullptr;
        double value = std::strtod(env, &end);
        if (end == env || *end != '\0' || !(value > 0.0))
            throw UsageError("RINGFORGE_BUDGET_SECONDS must be a positive number");
        budget.max_wall_seconds = value;
    }
    if (flags.states_set) budget.max_expanded_states = flags.states;
    if (flags.seconds_set) budget.max_wall_seconds = flags.seconds;
    return budget;
}

struct TaskInputs {
    std::string key;
    std::string domain_path;
    std::string problem_path;
};

void add_task_inputs(CLI::App* cmd, TaskInputs& inputs) {
    cmd->add_option("key", inputs.key, "builtin conjecture key");
    cmd->add_option("--domain", inputs.domain_path, "domain PDDL file");
    cmd->add_option("--problem", inputs.problem_path, "problem PDDL file");
}

struct LoadedTask {
    pddl::Task task;
    ringdomain::DisplayMap display;
    bool has_display = false;
    std::string solver_hint;
};

LoadedTask load_task(const TaskInputs& inputs) {
    LoadedTask loaded;
    if (!inputs.key.empty()) {
        if (!inputs.domain_path.empty() || !inputs.problem_path.empty())
            throw UsageError("give either a builtin key or --domain/--problem, not both");
        const ringdomain::BuiltinProblem& entry = find_builtin_or_fail(inputs.key);
        ringdomain::BuiltinInstance inst = ringdomain::builtin_problem(inputs.key);
        loaded.task = pddl::Task::make(std::move(inst.domain), std::move(inst.problem));
        loaded.display = std::move(inst.display);
        loaded.has_display = true;
        loaded.solver_hint = entry.solver_hint;
        return loaded;
    }
    if (inputs.domain_path.empty() || inputs.problem_path.empty())
        throw UsageError("need a builtin key or both --domain and --problem");
    pddl::DomainModel domain = pddl::parse_domain(read_file(inputs.domain_path));
    pddl::ProblemModel problem = pddl::parse_problem(read_file(inputs.problem_path), domain);
    loaded.task = pddl::Task::make(std::move(domain), std::move(problem));
    return loaded;
}

const char* outcome_name(planfod::Outcome outcome) {
    switch (outcome) {
        case planfod::Outcome::Solved: return "solved";
        case planfod::Outcome::ProvenUnsolvable: return "proven-unsolvable";
        case planfod::Outcome::BudgetExhausted: return "budget-exhausted";
    }
    return "unknown";
}

int outcome_exit_code(planfod::Outcome outcome) {
    switch (outcome) {
        case planfod::Outcome::Solved: return kExitOk;
        case planfod::Outcome::ProvenUnsolvable: return kExitUnsolvable;
        case planfod::Outcome::BudgetExhausted: return kExitExhausted;
    }
    return kExitUsage;
}

void print_stats(const std::string& solver, const std::string& closure,
                 planfod::Outcome outcome, const planfod::SearchStats& stats, double seconds) {
    std::fprintf(stderr, "solver=%s\n", solver.c_str());
    if (!closure.empty()) std::fprintf(stderr, "closure=%s\n", closure.c_str());
    std::fprintf(stderr, "outcome=%s\n", outcome_name(outcome));
    std::fprintf(stderr, "expanded=%llu\n", static_cast<unsigned long long>(stats.expanded));
    std::fprintf(stderr, "generated=%llu\n", static_cast<unsigned long long>(stats.generated));
    std::fprintf(stderr, "duplicates=%llu\n", static_cast<unsigned long long>(stats.duplicates));
    std::fprintf(stderr, "peak_frontier=%llu\n",
                 static_cast<unsigned long long>(stats.peak_frontier));
    std::fprintf(stderr, "seconds=%.3f\n", seconds);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// gen ----------------------------------------------------------------

struct GenConfig {
    std::string key;
    std::string variant;
    std::string out_dir = ".";
};

int cmd_gen(const GenConfig& cfg) {
    const ringdomain::BuiltinProblem& entry = find_builtin_or_fail(cfg.key);
    ringdomain::DomainOptions options = entry.options;
    if (cfg.variant == "fod") options.variant = ringdomain::Variant::FOD;
    if (cfg.variant == "fond") options.variant = ringdomain::Variant::FOND;

    std::string domain_text = ringdomain::generate_domain_text(options);
    auto [problem, display] =
        ringdomain::build_problem(entry.elements, entry.goal, options, entry.key, entry.extra_init);

    fs::create_directories(cfg.out_dir.empty() ? "." : cfg.out_dir);
    fs::path dir(cfg.out_dir.empty() ? "." : cfg.out_dir);
    fs::path domain_path = dir / "domain.pddl";
    fs::path problem_path = dir / "problem.pddl";
    fs::path display_path = dir / "display.map";
    write_file(domain_path.string(), domain_text);
    write_file(problem_path.string(), pddl::to_pddl(problem));
    write_file(display_path.string(), ringdomain::to_text(display));
    std::cout << domain_path.string() << "\n"
              << problem_path.string() << "\n"
              << display_path.string() << "\n";
    return kExitOk;
}

// solve --------------------------------------------------------------

struct SolveConfig {
    TaskInputs inputs;
    std::string solver;
    std::string closure = "by-contradiction";
    BudgetFlags budget;
    std::string out_path;
};

int cmd_solve(const SolveConfig& cfg) {
    LoadedTask loaded = load_task(cfg.inputs);
    planfod::SearchBudget budget = resolve_budget(cfg.budget);

    std::string solver = cfg.solver;
    if (solver.empty()) solver = loaded.solver_hint;
    if (solver.empty()) solver = loaded.task.deterministic ? "bfs" : "fond";

    auto start = std::chrono::steady_clock::now();
    if (solver == "fond") {
        planfond::ClosureMode mode = planfond::parse_closure_mode(cfg.closure);
        planfond::SolveResult result = planfond::solve_strong(loaded.task, mode, budget);
        print_stats(solver, cfg.closure, result.outcome, result.stats, seconds_since(start));
        if (result.outcome != planfod::Outcome::Solved) return outcome_exit_code(result.outcome);
        std::fprintf(stderr, "entries=%zu\n", result.policy->entries.size());
        emit_artifact(cfg.out_path, planfond::to_text(*result.policy));
        return kExitOk;
    }

    planfod::SearchResult result = solver == "gbfs" ? planfod::solve_gbfs(loaded.task, budget)
                                                    : planfod::solve_bfs(loaded.task, budget);
    print_stats(solver, "", result.outcome, result.stats, seconds_since(start));
    if (result.outcome != planfod::Outcome::Solved) return outcome_exit_code(result.outcome);
    std::fprintf(stderr, "cost=%d\n", result.plan->cost());
    emit_artifact(cfg.out_path, proof::to_text(*result.plan));
    return kExitOk;
}

// validate -----------------------------------------------------------

struct ValidateConfig {
    TaskInputs inputs;
    std::string plan_path;
    std::string policy_path;
    std::string closure;
};

void print_report(const proof::ValidationReport& report, bool policy, const char* unit) {
    std::printf("checked: %zu %s\n", report.steps_checked, unit);
    if (policy)
        std::printf("census: goal=%d contradiction=%d dead-end=%d\n",
                    report.census.goal_reached, report.census.closed_by_contradiction,
                    report.census.dead_end);
    for (const proof::ValidationFailure& failure : report.failures)
        std::printf("failure at %s %zu: %s: %s\n", policy ? "node" : "step", failure.index,
                    proof::failure_reason_name(failure.reason).c_str(), failure.detail.c_str());
    if (report.ok)
        std::printf("ok\n");
    else
        std::printf("validation failed: %zu failure(s)\n", report.failures.size());
}

int cmd_validate(const ValidateConfig& cfg) {
    if (cfg.plan_path.empty() == cfg.policy_path.empty())
        throw UsageError("give exactly one of --plan or --policy");
    LoadedTask loaded = load_task(cfg.inputs);

    if (!cfg.plan_path.empty()) {
        planfod::Plan plan = proof::parse_plan(read_file(cfg.plan_path), loaded.task);
        proof::ValidationReport report = proof::validate_plan(loaded.task, plan);
        print_report(report, false, "steps");
        return report.ok ? kExitOk : kExitInvalid;
    }

    planfond::Policy policy = planfond::parse_policy(read_file(cfg.policy_path), loaded.task);
    planfond::ClosureMode mode =
        cfg.closure.empty() ? policy.closure_mode : planfond::parse_closure_mode(cfg.closure);
    proof::ValidationReport report = proof::validate_policy(loaded.task, policy, mode);
    print_report(report, true, "nodes");
    return report.ok ? kExitOk : kExitInvalid;
}

// render -------------------------------------------------------------

struct RenderConfig {
    TaskInputs inputs;
    std::string plan_path;
    std::string policy_path;
    std::string display_path;
    std::string templates_path;
    std::string out_path;
    bool dot = false;
    bool unicode = false;
    bool raw_atoms = false;
};

int cmd_render(const RenderConfig& cfg) {
    if (cfg.plan_path.empty() == cfg.policy_path.empty())
        throw UsageError("give exactly one of --plan or --policy");
    if (cfg.dot && cfg.policy_path.empty())
        throw UsageError("--dot renders policy execution trees; give --policy");
    LoadedTask loaded = load_task(cfg.inputs);

    if (!cfg.display_path.empty()) {
        loaded.display = ringdomain::parse_display_map(read_file(cfg.display_path));
        loaded.has_display = true;
    }
    if (!loaded.has_display)
        std::fprintf(stderr, "warning: no display map; falling back to raw object names\n");

    proof::TemplateTable custom_templates;
    proof::RenderOptions opts;
    opts.unicode = cfg.unicode;
    opts.raw_atoms = cfg.raw_atoms;
    if (!cfg.templates_path.empty()) {
        custom_templates = proof::parse_templates(read_file(cfg.templates_path));
        opts.templates = &custom_templates;
    }

    std::string banner;
    std::string artifact;
    if (!cfg.plan_path.empty()) {
        planfod::Plan plan = proof::parse_plan(read_file(cfg.plan_path), loaded.task);
        proof::ValidationReport report = proof::validate_plan(loaded.task, plan);
        if (!report.ok)
            banner = "; WARNING: input failed validation (" +
                     std::to_string(report.failures.size()) + " failure(s)); rendering anyway\n";
        artifact = proof::render_proof(loaded.task, plan, loaded.display, opts);
    } else {
        planfond::Policy policy = planfond::parse_policy(read_file(cfg.policy_path), loaded.task);
        proof::ValidationReport report =
            proof::validate_policy(loaded.task, policy, policy.closure_mode);
        planfond::ExecutionTree tree = planfond::execution_tree(policy, loaded.task);
        if (cfg.dot) {
            if (!report.ok)
                std::fprintf(stderr, "warning: input failed validation (%zu failure(s))\n",
                             report.failures.size());
            artifact = proof::export_dot(tree, loaded.display);
        } else {
            if (!report.ok)
                banner = "; WARNING: input failed validation (" +
                         std::to_string(report.failures.size()) +
                         " failure(s)); rendering anyway\n";
            artifact = proof::render_proof(loaded.task, policy, tree, loaded.display, opts);
        }
    }
    emit_artifact(cfg.out_path, banner + artifact);
    return kExitOk;
}

// bench --------------------------------------------------------------

struct BenchConfig {
    BudgetFlags budget;
};

int cmd_bench(const BenchConfig& cfg) {
    planfod::SearchBudget budget = resolve_budget(cfg.budget);
    std::printf("%-28s %-6s %-17s %-17s %7s %10s %-6s\n", "key", "solver", "closure", "outcome",
                "cost", "expanded", "valid");
    bool desk_scale_failure = false;

    for (const ringdomain::BuiltinProblem& entry : ringdomain::builtin_problems()) {
        ringdomain::BuiltinInstance inst = ringdomain::builtin_problem(entry.key);
        pddl::Task task = pddl::Task::make(std::move(inst.domain), std::move(inst.problem));

        std::string closure = "-";
        planfod::Outcome outcome;
        planfod::SearchStats stats;
        std::string cost = "-";
        std::string valid = "-";
        auto start = std::chrono::steady_clock::now();

        if (entry.solver_hint == "fond") {
            closure = "by-contradiction";
            planfond::SolveResult result =
                planfond::solve_strong(task, planfond::ClosureMode::ByContradiction, budget);
            outcome = result.outcome;
            stats = result.stats;
            if (result.policy) {
                cost = std::to_string(result.policy->entries.size());
                proof::ValidationReport report = proof::validate_policy(
                    task, *result.policy, planfond::ClosureMode::ByContradiction);
                valid = report.ok ? "yes" : "no";
            }
        } else {
            planfod::SearchResult result = entry.solver_hint == "gbfs"
                                               ? planfod::solve_gbfs(task, budget)
                                               : planfod::solve_bfs(task, budget);
            outcome = result.outcome;
            stats = result.stats;
            if (result.plan) {
                cost = std::to_string(result.plan->cost());
                proof::ValidationReport report = proof::validate_plan(task, *result.plan);
                valid = report.ok ? "yes" : "no";
            }
        }
        std::fprintf(stderr, "bench.%s.seconds=%.3f\n", entry.key.c_str(),
                     seconds_since(start));
        std::printf("%-28s %-6s %-17s %-17s %7s %10llu %-6s\n", entry.key.c_str(),
                    entry.solver_hint.c_str(), closure.c_str(), outcome_name(outcome),
                    cost.c_str(), static_cast<unsigned long long>(stats.expanded),
                    valid.c_str());
        if (entry.desk_scale && (outcome != planfod::Outcome::Solved || valid != "yes"))
            desk_scale_failure = true;
    }
    return desk_scale_failure ? 1 : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"planning-based prover for elementary ring and integral-domain conjectures"};
    app.require_subcommand(1);

    GenConfig gen;
    CLI::App* gen_cmd =
        app.add_subcommand("gen", "write domain.pddl, problem.pddl, and display.map for a builtin");
    gen_cmd->add_option("key", gen.key, "builtin conjecture key")->required();
    gen_cmd->add_option("--variant", gen.variant, "domain variant override")
        ->check(CLI::IsMember({"fod", "fond"}));
    gen_cmd->add_option("--out", gen.out_dir, "output directory (default .)");

    SolveConfig solve;
    CLI::App* solve_cmd = app.add_subcommand("solve", "search for a plan or policy");
    add_task_inputs(solve_cmd, solve.inputs);
    solve_cmd->add_option("--solver", solve.solver, "bfs, gbfs, or fond")
        ->check(CLI::IsMember({"bfs", "gbfs", "fond"}));
    solve_cmd->add_option("--closure", solve.closure, "strict or by-contradiction (fond)")
        ->check(CLI::IsMember({"strict", "by-contradiction"}));
    add_budget_flags(solve_cmd, solve.budget);
    solve_cmd->add_option("--out", solve.out_path, "artifact path (default stdout)");

    ValidateConfig validate;
    CLI::App* validate_cmd = app.add_subcommand("validate", "check a plan or policy against a task");
    add_task_inputs(validate_cmd, validate.inputs);
    validate_cmd->add_option("--plan", validate.plan_path, "plan file");
    validate_cmd->add_option("--policy", validate.policy_path, "policy file");
    validate_cmd->add_option("--closure", validate.closure, "closure mode override")
        ->check(CLI::IsMember({"strict", "by-contradiction"}));

    RenderConfig render;
    CLI::App* render_cmd = app.add_subcommand("render", "render a proof document or DOT graph");
    add_task_inputs(render_cmd, render.inputs);
    render_cmd->add_option("--plan", render.plan_path, "plan file");
    render_cmd->add_option("--policy", render.policy_path, "policy file");
    render_cmd->add_option("--display", render.display_path, "display map file");
    render_cmd->add_option("--templates", render.templates_path, "consequence template file");
    render_cmd->add_option("--out", render.out_path, "artifact path (default stdout)");
    render_cmd->add_flag("--dot", render.dot, "emit the execution tree as DOT");
    render_cmd->add_flag("--unicode", render.unicode, "print the implication arrow as U+27F9");
    render_cmd->add_flag("--raw-atoms", render.raw_atoms, "show effect atoms instead of templates");

    BenchConfig bench;
    CLI::App* bench_cmd =
        app.add_subcommand("bench", "run every builtin sequentially and print a table");
    add_budget_flags(bench_cmd, bench.budget);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (gen_cmd->parsed()) return cmd_gen(gen);
        if (solve_cmd->parsed()) return cmd_solve(solve);
        if (validate_cmd->parsed()) return cmd_validate(validate);
        if (render_cmd->parsed()) return cmd_render(render);
        if (bench_cmd->parsed()) return cmd_bench(bench);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
    return kExitUsage;
}
