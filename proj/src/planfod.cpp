#include "ringforge/planfod.hpp"

#include "relaxed.hpp"

#include <algorithm>
#include <deque>
#include <queue>
#include <stdexcept>
#include <tuple>
#include <unordered_set>
#include <utility>
#include <vector>

namespace ringforge::planfod {

namespace {

using pddl::GroundAction;
using pddl::GroundAtom;
using pddl::State;
using pddl::Symbol;
using pddl::Task;

using relaxed::Deadline;
using relaxed::EvalLimits;

void require_deterministic(const Task& task) {
    if (!task.deterministic)
        throw std::invalid_argument("task has oneof effects; use the nondeterministic solver");
}

// Search nodes live in a deque so the duplicate set can key on stable
// state addresses instead of storing each state twice.
struct Node {
    State state;
    std::int64_t parent;
    GroundAction action;  // applied in the parent to reach this state
};

struct SeenHash {
    using is_transparent = void;
    std::size_t operator()(const State* s) const { return pddl::StateHash{}(*s); }
    std::size_t operator()(const State& s) const { return pddl::StateHash{}(s); }
};

struct SeenEq {
    using is_transparent = void;
    bool operator()(const State* a, const State* b) const { return *a == *b; }
    bool operator()(const State* a, const State& b) const { return *a == b; }
    bool operator()(const State& a, const State* b) const { return a == *b; }
};

using SeenSet = std::unordered_set<const State*, SeenHash, SeenEq>;

Plan extract_plan(const std::deque<Node>& nodes, std::int64_t parent, const GroundAction& last) {
    std::vector<GroundAction> reversed{last};
    for (std::int64_t i = parent; nodes[i].parent >= 0; i = nodes[i].parent)
        reversed.push_back(nodes[i].action);
    Plan plan;
    plan.steps.assign(reversed.rbegin(), reversed.rend());
    return plan;
}

// Every generated node is retained for plan extraction, so a wide
// search can exhaust memory long before the expansion budget; the
// stored-node cap turns that into a clean exhaustion instead.
std::uint64_t stored_node_cap(const SearchBudget& budget) {
    constexpr std::uint64_t kMax = 0xffffffffffffffffull;
    if (budget.max_expanded_states >= kMax / 2) return kMax;
    return budget.max_expanded_states * 2;
}

}  // namespace

SearchResult solve_bfs(const Task& task, const SearchBudget& budget) {
    require_deterministic(task);
    SearchResult result;
    if (pddl::goal_satisfied(task.init, task)) {
        result.outcome = Outcome::Solved;
        result.plan = Plan{};
        return result;
    }

    Deadline deadline(budget.max_wall_seconds);
    const std::uint64_t node_cap = stored_node_cap(budget);
    std::deque<Node> nodes;
    nodes.push_back(Node{task.init, -1, {}});
    SeenSet seen;
    seen.insert(&nodes.front().state);
    std::deque<std::int64_t> open{0};
    result.stats.generated = 1;
    result.stats.peak_frontier = 1;

    while (!open.empty()) {
        if (result.stats.expanded >= budget.max_expanded_states || deadline.passed()) {
            result.outcome = Outcome::BudgetExhausted;
            return result;
        }
        std::int64_t index = open.front();
        open.pop_front();
        ++result.stats.expanded;

        for (GroundAction& action : pddl::applicable_actions(nodes[index].state, task)) {
            State succ = pddl::apply(nodes[index].state, action);
            ++result.stats.generated;
            if (seen.find(succ) != seen.end()) {
                ++result.stats.duplicates;
                continue;
            }
            if (pddl::goal_satisfied(succ, task)) {
                result.outcome = Outcome::Solved;
                result.plan = extract_plan(nodes, index, action);
                return result;
            }
            nodes.push_back(Node{std::move(succ), index, std::move(action)});
            seen.insert(&nodes.back().state);
            open.push_back(static_cast<std::int64_t>(nodes.size()) - 1);
            result.stats.peak_frontier =
                std::max<std::uint64_t>(result.stats.peak_frontier, open.size());
            if (nodes.size() >= node_cap ||
                ((result.stats.generated & 0xfff) == 0 && deadline.passed())) {
                result.outcome = Outcome::BudgetExhausted;
                return result;
            }
        }
    }
    result.outcome = Outcome::ProvenUnsolvable;
    return result;
}

std::optional<std::uint64_t> h_add(const State& state, const Task& task) {
    relaxed::Evaluator evaluator(task, state);
    return evaluator.evaluate(state);
}

SearchResult solve_gbfs(const Task& task, const SearchBudget& budget) {
    require_deterministic(task);
    SearchResult result;
    if (pddl::goal_satisfied(task.init, task)) {
        result.outcome = Outcome::Solved;
        result.plan = Plan{};
        return result;
    }

    Deadline deadline(budget.max_wall_seconds);
    EvalLimits limits;
    limits.deadline = &deadline;
    limits.max_instances = 4'000'000;
    relaxed::Evaluator evaluator(task, task.init, limits);
    if (!evaluator.valid()) {
        result.outcome = Outcome::BudgetExhausted;
        return result;
    }

    const std::uint64_t node_cap = stored_node_cap(budget);
    std::deque<Node> nodes;
    nodes.push_back(Node{task.init, -1, {}});
    SeenSet seen;
    seen.insert(&nodes.front().state);

    // Nodes are queued under their parent's heuristic value and
    // evaluated when popped, so each expansion costs one evaluation.
    // Equal values pop FIFO.
    using Entry = std::tuple<std::uint64_t, std::uint64_t, std::int64_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> open;
    std::uint64_t sequence = 0;
    open.emplace(0, sequence++, 0);
    result.stats.generated = 1;
    result.stats.peak_frontier = 1;

    while (!open.empty()) {
        if (result.stats.expanded >= budget.max_expanded_states || deadline.passed()) {
            result.outcome = Outcome::BudgetExhausted;
            return result;
        }
        std::int64_t index = std::get<2>(open.top());
        open.pop();

        std::optional<std::uint64_t> h = evaluator.evaluate(nodes[index].state);
        if (!h) continue;  // no plan can pass through this state
        ++result.stats.expanded;

        for (GroundAction& action : pddl::applicable_actions(nodes[index].state, task)) {
            State succ = pddl::apply(nodes[index].state, action);
            ++result.stats.generated;
            if (seen.find(succ) != seen.end()) {
                ++result.stats.duplicates;
                continue;
            }
            if (pddl::goal_satisfied(succ, task)) {
                result.outcome = Outcome::Solved;
                result.plan = extract_plan(nodes, index, action);
                return result;
            }
            nodes.push_back(Node{std::move(succ), index, std::move(action)});
            seen.insert(&nodes.back().state);
            open.emplace(*h, sequence++, static_cast<std::int64_t>(nodes.size()) - 1);
            result.stats.peak_frontier =
                std::max<std::uint64_t>(result.stats.peak_frontier, open.size());
            if (nodes.size() >= node_cap ||
                ((result.stats.generated & 0xfff) == 0 && deadline.passed())) {
                result.outcome = Outcome::BudgetExhausted;
                return result;
            }
        }
    }
    result.outcome = Outcome::ProvenUnsolvable;
    return result;
}

}  // namespace ringforge::planfod
