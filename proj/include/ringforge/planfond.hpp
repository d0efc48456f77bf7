#pragma once

#include "ringforge/pddl.hpp"
#include "ringforge/planfod.hpp"

#include <unordered_map>

// Nondeterministic-task solver: depth-first AND-OR search for strong
// acyclic policies. A branch can close by reaching the goal or, in
// by-contradiction mode, by deriving the contradiction atom.

namespace ringforge::planfond {

enum class ClosureMode { Strict, ByContradiction };

struct Policy {
    std::unordered_map<pddl::State, pddl::GroundAction, pddl::StateHash> entries;
    pddl::State init_state;
    ClosureMode closure_mode = ClosureMode::ByContradiction;
};

enum class LeafKind { GoalReached, ClosedByContradiction, DeadEnd };

// Exhaustive unfolding of a policy from the initial state; every
// outcome of every chosen action becomes a child.
struct ExecutionTree {
    struct Node {
        pddl::State state;
        std::optional<pddl::GroundAction> action;  // absent at leaves
        std::vector<std::size_t> children;         // one per outcome
        std::optional<LeafKind> leaf;
        int depth = 0;
    };

    std::vector<Node> nodes;  // nodes[0] is the root
};

struct LeafCensus {
    int goal_reached = 0;
    int closed_by_contradiction = 0;
    int dead_end = 0;
};

LeafCensus leaf_census(const ExecutionTree& tree);

struct SolveResult {
    planfod::Outcome outcome = planfod::Outcome::BudgetExhausted;
    std::optional<Policy> policy;  // set iff Solved
    planfod::SearchStats stats;
};

SolveResult solve_strong(const pddl::Task& task, ClosureMode mode,
                         const planfod::SearchBudget& budget = {});

ExecutionTree execution_tree(const Policy& policy, const pddl::Task& task);

std::string closure_mode_name(ClosureMode mode);
ClosureMode parse_closure_mode(std::string_view name);  // throws std::invalid_argument

std::string to_text(const Policy& policy);
Policy parse_policy(std::string_view text, const pddl::Task& task);

}  // namespace ringforge::planfond
