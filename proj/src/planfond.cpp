#include "ringforge/planfond.hpp"

#include "relaxed.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace ringforge::planfond {

namespace {

using pddl::GroundAction;
using pddl::GroundAtom;
using pddl::GroundLiteral;
using pddl::State;
using pddl::Symbol;
using pddl::Task;

using relaxed::Deadline;

GroundAtom contradiction_atom() {
    GroundAtom atom;
    atom.predicate = Symbol::intern("contradiction");
    return atom;
}

bool tracks_contradiction(const Task& task) {
    const pddl::PredicateDecl* decl = task.domain.find_predicate(Symbol::intern("contradiction"));
    return decl != nullptr && decl->arity() == 0;
}

// Which predicates any effect can add or delete, plus the initial
// atoms; together they identify literals whose truth never changes.
class StaticFacts {
public:
    explicit StaticFacts(const Task& task) {
        for (const pddl::ActionSchema& schema : task.domain.actions) {
            for (const pddl::EffectBranch& branch : schema.effect.branches) {
                note(branch.literals);
                for (const pddl::ConditionalEffect& cond : branch.conditionals) note(cond.body);
            }
        }
        for (const GroundAtom& atom : task.init) init_.insert(atom);
    }

    bool ever_deleted(Symbol predicate) const { return deleted_.count(predicate) != 0; }

    // True when the literal holds in every reachable state.
    bool certain(const GroundLiteral& lit) const {
        if (added_.count(lit.atom.predicate) || deleted_.count(lit.atom.predicate)) return false;
        return (init_.count(lit.atom) != 0) != lit.negated;
    }

private:
    void note(const std::vector<pddl::Literal>& lits) {
        for (const pddl::Literal& lit : lits)
            (lit.negated ? deleted_ : added_).insert(lit.atom.predicate);
    }

    std::unordered_set<Symbol> added_;
    std::unordered_set<Symbol> deleted_;
    std::unordered_set<GroundAtom> init_;
};

// Negated goal atoms whose predicate nothing deletes: once such an
// atom holds, no descendant state can satisfy the goal again.
std::vector<GroundAtom> permanent_goal_blockers(const Task& task, const StaticFacts& facts) {
    std::vector<GroundAtom> blockers;
    for (const GroundLiteral& lit : task.goal)
        if (lit.negated && !facts.ever_deleted(lit.atom.predicate)) blockers.push_back(lit.atom);
    return blockers;
}

// A ground action with an outcome that is certain to add a blocker
// can never be chosen by a policy whose every leaf must avoid it.
bool certainly_blocked(const pddl::ActionSchema& schema, const std::vector<Symbol>& args,
                       const std::vector<GroundAtom>& blockers, const StaticFacts& facts) {
    auto adds_blocker = [&](const std::vector<pddl::Literal>& lits) {
        for (const pddl::Literal& lit : lits) {
            if (lit.negated) continue;
            for (const GroundAtom& blocker : blockers) {
                if (blocker.predicate != lit.atom.predicate) continue;
                if (pddl::substitute(lit.atom, schema.params, args) == blocker) return true;
            }
        }
        return false;
    };

    for (const pddl::EffectBranch& branch : schema.effect.branches) {
        if (adds_blocker(branch.literals)) return true;
        for (const pddl::ConditionalEffect& cond : branch.conditionals) {
            if (!adds_blocker(cond.body)) continue;
            bool fires = true;
            for (const pddl::Literal& lit : cond.condition) {
                GroundLiteral ground{pddl::substitute(lit.atom, schema.params, args), lit.negated};
                if (!facts.certain(ground)) {
                    fires = false;
                    break;
                }
            }
            if (fires) return true;
        }
    }
    return false;
}

constexpr std::size_t kNoDependency = static_cast<std::size_t>(-1);

// Depth-first AND-OR search. A state is solved when some applicable
// action, tried in canonical order, has every outcome solved; an
// outcome that lands back on the current path fails its action, which
// keeps the policy acyclic. Solved states are cached outright: every
// entry is inserted after the entries it steps into, so reuse can
// never close a cycle. A failure is cached only when the exploration
// beneath it never leaned on the path above the state (the lowlink
// rule); other failures are path-dependent and must be retried.
class StrongSearch {
public:
    StrongSearch(const Task& task, const planfod::SearchBudget& budget, const Deadline& deadline,
                 bool close_on_contradiction, std::vector<GroundAtom> blockers)
        : task_(task),
          budget_(budget),
          deadline_(deadline),
          close_on_contradiction_(close_on_contradiction),
          blockers_(std::move(blockers)),
          contradiction_(contradiction_atom()) {}

    bool run() {
        stats_.generated = 1;
        return visit(task_.init).first;
    }

    bool exhausted() const { return exhausted_; }
    const planfod::SearchStats& stats() const { return stats_; }
    std::unordered_map<State, GroundAction, pddl::StateHash> take_entries() {
        return std::move(entries_);
    }

private:
    std::pair<bool, std::size_t> visit(const State& state) {
        if (pddl::goal_satisfied(state, task_)) return {true, kNoDependency};
        if (close_on_contradiction_ && state.contains(contradiction_)) return {true, kNoDependency};
        if (entries_.count(state)) {
            ++stats_.duplicates;
            return {true, kNoDependency};
        }
        if (failed_.count(state)) {
            ++stats_.duplicates;
            return {false, kNoDependency};
        }
        if (!close_on_contradiction_) {
            for (const GroundAtom& blocker : blockers_) {
                if (state.contains(blocker)) {
                    failed_.insert(state);
                    return {false, kNoDependency};
                }
            }
        }
        if (stats_.expanded >= budget_.max_expanded_states || deadline_.passed()) {
            exhausted_ = true;
            return {false, kNoDependency};
        }
        ++stats_.expanded;

        const std::size_t index = on_path_.size();
        on_path_.emplace(state, index);
        stats_.peak_frontier = std::max<std::uint64_t>(stats_.peak_frontier, on_path_.size());

        const GroundAction* chosen = nullptr;
        std::size_t dependency = kNoDependency;
        std::vector<GroundAction> actions = pddl::applicable_actions(state, task_);
        for (const GroundAction& action : actions) {
            bool closed = true;
            for (int k = 0; k < pddl::outcome_count(action); ++k) {
                State next = pddl::apply(state, action, k);
                ++stats_.generated;
                auto cycle = on_path_.find(next);
                if (cycle != on_path_.end()) {
                    ++stats_.duplicates;
                    dependency = std::min(dependency, cycle->second);
                    closed = false;
                    break;
                }
                auto [ok, dep] = visit(next);
                if (exhausted_) {
                    on_path_.erase(state);
                    return {false, kNoDependency};
                }
                if (!ok) {
                    dependency = std::min(dependency, dep);
                    closed = false;
                    break;
                }
            }
            if (closed) {
                chosen = &action;
                break;
            }
        }

        on_path_.erase(state);
        if (chosen) {
            entries_.emplace(state, *chosen);
            return {true, kNoDependency};
        }
        if (dependency >= index) {
            failed_.insert(state);
            return {false, kNoDependency};
        }
        return {false, dependency};
    }

    const Task& task_;
    const planfod::SearchBudget& budget_;
    const Deadline& deadline_;
    const bool close_on_contradiction_;
    const std::vector<GroundAtom> blockers_;
    const GroundAtom contradiction_;

    planfod::SearchStats stats_;
    bool exhausted_ = false;
    std::unordered_map<State, GroundAction, pddl::StateHash> entries_;
    std::unordered_set<State, pddl::StateHash> failed_;
    std::unordered_map<State, std::size_t, pddl::StateHash> on_path_;
};

}  // namespace

SolveResult solve_strong(const Task& task, ClosureMode mode, const planfod::SearchBudget& budget) {
    SolveResult result;
    Deadline deadline(budget.max_wall_seconds);
    const bool closes = mode == ClosureMode::ByContradiction && tracks_contradiction(task);
    StaticFacts facts(task);
    std::vector<GroundAtom> blockers = permanent_goal_blockers(task, facts);

    // Relaxed reachability from the initial state refutes hopeless
    // tasks without touching the exponential AND-OR space. When a
    // blocker exists, actions certain to raise it are dropped first;
    // no policy that must keep every leaf clean can use them, so the
    // thinned closure still covers everything a policy can reach.
    {
        relaxed::EvalLimits limits;
        limits.max_instances = 4'000'000;
        limits.deadline = &deadline;
        relaxed::InstanceFilter filter;
        if (!closes && !blockers.empty())
            filter = [&](const pddl::ActionSchema& schema, const std::vector<Symbol>& args) {
                return certainly_blocked(schema, args, blockers, facts);
            };
        relaxed::Evaluator closure(task, task.init, limits, std::move(filter));
        if (closure.valid()) {
            bool goal_reachable = true;
            for (const GroundLiteral& lit : task.goal)
                if (!lit.negated && !closure.reachable(lit.atom)) goal_reachable = false;
            if (!goal_reachable && !(closes && closure.reachable(contradiction_atom()))) {
                result.outcome = planfod::Outcome::ProvenUnsolvable;
                return result;
            }
        }
    }

    StrongSearch search(task, budget, deadline, closes, std::move(blockers));
    const bool solved = search.run();
    result.stats = search.stats();
    if (search.exhausted()) {
        result.outcome = planfod::Outcome::BudgetExhausted;
        return result;
    }
    if (!solved) {
        result.outcome = planfod::Outcome::ProvenUnsolvable;
        return result;
    }

    Policy policy;
    policy.entries = search.take_entries();
    policy.init_state = task.init;
    policy.closure_mode = mode;
    result.outcome = planfod::Outcome::Solved;
    result.policy = std::move(policy);
    return result;
}

namespace {

struct TreeBuilder {
    ExecutionTree& tree;
    const Policy& policy;
    const Task& task;
    bool close_on_contradiction;
    GroundAtom contradiction;
    std::unordered_set<State, pddl::StateHash> on_path;

    std::size_t build(const State& state, int depth) {
        const std::size_t index = tree.nodes.size();
        tree.nodes.push_back(
            ExecutionTree::Node{state, std::nullopt, {}, std::nullopt, depth});
        if (pddl::goal_satisfied(state, task)) {
            tree.nodes[index].leaf = LeafKind::GoalReached;
            return index;
        }
        if (close_on_contradiction && state.contains(contradiction)) {
            tree.nodes[index].leaf = LeafKind::ClosedByContradiction;
            return index;
        }
        auto entry = policy.entries.find(state);
        if (entry == policy.entries.end()) {
            tree.nodes[index].leaf = LeafKind::DeadEnd;
            return index;
        }
        if (!on_path.insert(state).second)
            throw std::invalid_argument("policy revisits a state; its execution tree is infinite");
        tree.nodes[index].action = entry->second;
        for (int k = 0; k < pddl::outcome_count(entry->second); ++k) {
            const std::size_t child = build(pddl::apply(state, entry->second, k), depth + 1);
            tree.nodes[index].children.push_back(child);
        }
        on_path.erase(state);
        return index;
    }
};

}  // namespace

ExecutionTree execution_tree(const Policy& policy, const Task& task) {
    ExecutionTree tree;
    const bool closes =
        policy.closure_mode == ClosureMode::ByContradiction && tracks_contradiction(task);
    TreeBuilder builder{tree, policy, task, closes, contradiction_atom(), {}};
    builder.build(policy.init_state, 0);
    return tree;
}

LeafCensus leaf_census(const ExecutionTree& tree) {
    LeafCensus census;
    for (const ExecutionTree::Node& node : tree.nodes) {
        if (!node.leaf) continue;
        switch (*node.leaf) {
            case LeafKind::GoalReached: ++census.goal_reached; break;
            case LeafKind::ClosedByContradiction: ++census.closed_by_contradiction; break;
            case LeafKind::DeadEnd: ++census.dead_end; break;
        }
    }
    return census;
}

}  // namespace ringforge::planfond
