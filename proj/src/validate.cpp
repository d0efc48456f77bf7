#include "ringforge/proof.hpp"

#include <algorithm>
#include <set>

// The checks below deliberately re-implement applicability and state
// update over std::set instead of reusing pddl::apply, so the
// validator and the solvers can only agree when both are right.

namespace ringforge::proof {

namespace {

using AtomSet = std::set<pddl::GroundAtom>;

AtomSet to_set(const pddl::State& state) {
    return AtomSet(state.begin(), state.end());
}

bool holds(const AtomSet& atoms, const pddl::GroundLiteral& lit) {
    return (atoms.count(lit.atom) != 0) != lit.negated;
}

bool holds_all(const AtomSet& atoms, const std::vector<pddl::GroundLiteral>& lits) {
    for (const pddl::GroundLiteral& lit : lits)
        if (!holds(atoms, lit)) return false;
    return true;
}

bool applicable(const AtomSet& atoms, const pddl::GroundAction& action) {
    return holds_all(atoms, pddl::instantiate_precondition(action));
}

// Deletes are applied before adds, which makes an atom that appears on
// both sides survive.
AtomSet step(const AtomSet& atoms, const pddl::GroundAction& action, int outcome) {
    pddl::GroundBranch branch = pddl::instantiate_branch(action, outcome);
    std::vector<const pddl::GroundLiteral*> effects;
    for (const pddl::GroundLiteral& lit : branch.literals) effects.push_back(&lit);
    for (const pddl::GroundConditional& ce : branch.conditionals)
        if (holds_all(atoms, ce.condition))
            for (const pddl::GroundLiteral& lit : ce.body) effects.push_back(&lit);

    AtomSet next = atoms;
    for (const pddl::GroundLiteral* lit : effects)
        if (lit->negated) next.erase(lit->atom);
    for (const pddl::GroundLiteral* lit : effects)
        if (!lit->negated) next.insert(lit->atom);
    return next;
}

bool tracks_contradiction(const pddl::Task& task) {
    const pddl::PredicateDecl* decl =
        task.domain.find_predicate(pddl::Symbol::intern("contradiction"));
    return decl != nullptr && decl->arity() == 0;
}

pddl::GroundAtom contradiction_atom() {
    pddl::GroundAtom atom;
    atom.predicate = pddl::Symbol::intern("contradiction");
    return atom;
}

void report_failure(ValidationReport& report, std::size_t index, FailureReason reason,
                    std::string detail) {
    report.ok = false;
    report.failures.push_back(ValidationFailure{index, reason, std::move(detail)});
}

}  // namespace

std::string failure_reason_name(FailureReason reason) {
    switch (reason) {
        case FailureReason::Inapplicable: return "inapplicable";
        case FailureReason::GoalUnsatisfied: return "goal-unsatisfied";
        case FailureReason::DeadEnd: return "dead-end";
        case FailureReason::Cycle: return "cycle";
        case FailureReason::ContradictionDeleted: return "contradiction-deleted";
    }
    return "unknown";
}

ValidationReport validate_plan(const pddl::Task& task, const planfod::Plan& plan) {
    if (!task.deterministic)
        throw std::invalid_argument("validate_plan requires a deterministic task");

    ValidationReport report;
    const bool watch_contradiction = tracks_contradiction(task);
    AtomSet atoms = to_set(task.init);

    for (std::size_t i = 0; i < plan.steps.size(); ++i) {
        const pddl::GroundAction& action = plan.steps[i];
        if (!applicable(atoms, action)) {
            report_failure(report, i, FailureReason::Inapplicable,
                           action.to_text() + " is not applicable");
            return report;
        }
        AtomSet next = step(atoms, action, 0);
        if (watch_contradiction && atoms.count(contradiction_atom()) &&
            !next.count(contradiction_atom()))
            report_failure(report, i, FailureReason::ContradictionDeleted,
                           action.to_text() + " removed the contradiction atom");
        atoms = std::move(next);
        ++report.steps_checked;
    }

    for (const pddl::GroundLiteral& lit : task.goal)
        if (!holds(atoms, lit))
            report_failure(report, plan.steps.size(), FailureReason::GoalUnsatisfied,
                           "final state does not satisfy " + pddl::to_text(lit));
    return report;
}

namespace {

struct PolicyWalk {
    const pddl::Task& task;
    const planfond::Policy& policy;
    planfond::ClosureMode mode;
    bool watch_contradiction;
    ValidationReport report;
    std::vector<AtomSet> path;
    std::size_t next_index = 0;

    void visit(const AtomSet& atoms) {
        std::size_t index = next_index++;
        ++report.steps_checked;

        if (holds_all(atoms, task.goal)) {
            ++report.census.goal_reached;
            return;
        }
        if (mode == planfond::ClosureMode::ByContradiction &&
            atoms.count(contradiction_atom())) {
            ++report.census.closed_by_contradiction;
            return;
        }

        std::vector<pddl::GroundAtom> atom_vec(atoms.begin(), atoms.end());
        auto entry = policy.entries.find(pddl::State(std::move(atom_vec)));
        if (entry == policy.entries.end()) {
            ++report.census.dead_end;
            report_failure(report, index, FailureReason::DeadEnd,
                           "no policy entry for a reachable non-goal state");
            return;
        }
        const pddl::GroundAction& action = entry->second;
        if (!applicable(atoms, action)) {
            report_failure(report, index, FailureReason::Inapplicable,
                           action.to_text() + " is not applicable");
            return;
        }

        path.push_back(atoms);
        for (int outcome = 0; outcome < pddl::outcome_count(action); ++outcome) {
            AtomSet next = step(atoms, action, outcome);
            if (watch_contradiction && atoms.count(contradiction_atom()) &&
                !next.count(contradiction_atom())) {
                report_failure(report, index, FailureReason::ContradictionDeleted,
                               action.to_text() + " removed the contradiction atom");
                continue;
            }
            if (std::find(path.begin(), path.end(), next) != path.end()) {
                report_failure(report, index, FailureReason::Cycle,
                               action.to_text() + " revisits a state on the current path");
                continue;
            }
            visit(next);
        }
        path.pop_back();
    }
};

}  // namespace

ValidationReport validate_policy(const pddl::Task& task, const planfond::Policy& policy,
                                 planfond::ClosureMode mode) {
    PolicyWalk walk{task, policy, mode, tracks_contradiction(task), {}, {}, 0};
    walk.visit(to_set(task.init));
    return std::move(walk.report);
}

}  // namespace ringforge::proof
