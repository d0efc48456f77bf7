#pragma once

#include "ringforge/pddl.hpp"

// Deterministic-task solvers: optimal breadth-first search and greedy
// best-first search on an additive delete-relaxation heuristic.

namespace ringforge::planfod {

struct Plan {
    std::vector<pddl::GroundAction> steps;

    int cost() const { return static_cast<int>(steps.size()); }
};

struct SearchBudget {
    std::uint64_t max_expanded_states = 1'000'000;
    double max_wall_seconds = 120.0;
};

struct SearchStats {
    std::uint64_t expanded = 0;
    std::uint64_t generated = 0;
    std::uint64_t duplicates = 0;
    std::uint64_t peak_frontier = 0;
};

enum class Outcome { Solved, ProvenUnsolvable, BudgetExhausted };

struct SearchResult {
    Outcome outcome = Outcome::BudgetExhausted;
    std::optional<Plan> plan;  // set iff Solved
    SearchStats stats;
};

// Optimal for unit costs. Throws std::invalid_argument on tasks with
// oneof effects.
SearchResult solve_bfs(const pddl::Task& task, const SearchBudget& budget = {});

// Satisficing: greedy best-first on h_add, FIFO tie-breaking, states
// with unreachable goals pruned. Same determinism and rejection rules
// as solve_bfs.
SearchResult solve_gbfs(const pddl::Task& task, const SearchBudget& budget = {});

// Additive delete-relaxation estimate of the cost to reach every
// positive goal literal; negative goal literals contribute nothing.
// nullopt means unreachable even under the relaxation. Nondeterministic
// effects are accepted here: every branch contributes its adds.
std::optional<std::uint64_t> h_add(const pddl::State& state, const pddl::Task& task);

}  // namespace ringforge::planfod
