#include "ringforge/pddl.hpp"

#include <algorithm>
#include <unordered_set>

namespace ringforge::pddl {

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
    return seed ^ (value + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2));
}

}  // namespace

std::size_t hash_value(const GroundAtom& atom) {
    std::size_t h = atom.predicate.id();
    for (Symbol s : atom.args) h = mix(h, s.id());
    return h;
}

std::size_t hash_value(const State& state) {
    std::size_t h = 0x2545f4914f6cdd1dull;
    for (const auto& a : state.atoms()) h = mix(h, hash_value(a));
    return h;
}

std::string to_text(const GroundAtom& atom) {
    std::string out = "(" + atom.predicate.text();
    for (Symbol s : atom.args) {
        out += ' ';
        out += s.text();
    }
    out += ')';
    return out;
}

std::string to_text(const GroundLiteral& lit) {
    if (!lit.negated) return to_text(lit.atom);
    return "(not " + to_text(lit.atom) + ")";
}

const PredicateDecl* DomainModel::find_predicate(Symbol name) const {
    for (const auto& p : predicates)
        if (p.name == name) return &p;
    return nullptr;
}

const ActionSchema* DomainModel::find_action(Symbol name) const {
    for (const auto& a : actions)
        if (a.name == name) return &a;
    return nullptr;
}

State::State(std::vector<GroundAtom> atoms) : atoms_(std::move(atoms)) {
    std::sort(atoms_.begin(), atoms_.end());
    atoms_.erase(std::unique(atoms_.begin(), atoms_.end()), atoms_.end());
}

bool State::contains(const GroundAtom& atom) const {
    return std::binary_search(atoms_.begin(), atoms_.end(), atom);
}

std::string GroundAction::to_text() const {
    std::string out = "(" + schema->name.text();
    for (Symbol s : args) {
        out += ' ';
        out += s.text();
    }
    out += ')';
    return out;
}

GroundAtom substitute(const Atom& atom, const std::vector<Symbol>& params,
                      const std::vector<Symbol>& args) {
    GroundAtom out;
    out.predicate = atom.predicate;
    out.args.reserve(atom.args.size());
    for (const Term& t : atom.args) {
        if (!t.is_variable) {
            out.args.push_back(t.sym);
            continue;
        }
        auto it = std::find(params.begin(), params.end(), t.sym);
        if (it == params.end())
            throw std::logic_error("unbound variable ?" + t.sym.text() + " in substitution");
        out.args.push_back(args[static_cast<std::size_t>(it - params.begin())]);
    }
    return out;
}

namespace {

GroundLiteral substitute(const Literal& lit, const std::vector<Symbol>& params,
                         const std::vector<Symbol>& args) {
    return GroundLiteral{substitute(lit.atom, params, args), lit.negated};
}

std::vector<GroundLiteral> substitute_all(const std::vector<Literal>& lits,
                                          const std::vector<Symbol>& params,
                                          const std::vector<Symbol>& args) {
    std::vector<GroundLiteral> out;
    out.reserve(lits.size());
    for (const auto& l : lits) out.push_back(substitute(l, params, args));
    return out;
}

}  // namespace

std::vector<GroundLiteral> instantiate_precondition(const GroundAction& action) {
    return substitute_all(action.schema->precondition, action.schema->params, action.args);
}

GroundBranch instantiate_branch(const GroundAction& action, int outcome_index) {
    const EffectTree& effect = action.schema->effect;
    if (outcome_index < 0 || static_cast<std::size_t>(outcome_index) >= effect.branches.size())
        throw std::out_of_range("outcome index " + std::to_string(outcome_index) +
                                " out of range for " + action.schema->name.text());
    const EffectBranch& branch = effect.branches[static_cast<std::size_t>(outcome_index)];
    GroundBranch out;
    out.literals = substitute_all(branch.literals, action.schema->params, action.args);
    out.conditionals.reserve(branch.conditionals.size());
    for (const auto& c : branch.conditionals) {
        GroundConditional gc;
        gc.condition = substitute_all(c.condition, action.schema->params, action.args);
        gc.body = substitute_all(c.body, action.schema->params, action.args);
        out.conditionals.push_back(std::move(gc));
    }
    return out;
}

std::size_t Task::object_rank(Symbol object) const {
    auto it = std::lower_bound(objects_by_name.begin(), objects_by_name.end(), object,
                               symbol_text_less);
    if (it == objects_by_name.end() || *it != object)
        throw std::invalid_argument("unknown object " + object.text());
    return static_cast<std::size_t>(it - objects_by_name.begin());
}

bool Task::is_static(Symbol predicate) const {
    for (Symbol s : static_predicates)
        if (s == predicate) return true;
    return false;
}

Task Task::make(DomainModel domain, ProblemModel problem) {
    if (domain.name != problem.domain_name)
        throw std::invalid_argument("problem " + problem.name.text() + " targets domain " +
                                    problem.domain_name.text() + ", not " + domain.name.text());
    Task task;
    task.domain = std::move(domain);
    task.problem = std::move(problem);
    task.init = State(task.problem.init);
    task.goal = task.problem.goal;

    std::unordered_set<Symbol> dynamic;
    task.deterministic = true;
    for (const auto& a : task.domain.actions) {
        if (a.effect.oneof) task.deterministic = false;
        for (const auto& branch : a.effect.branches) {
            for (const auto& l : branch.literals) dynamic.insert(l.atom.predicate);
            for (const auto& c : branch.conditionals)
                for (const auto& l : c.body) dynamic.insert(l.atom.predicate);
        }
    }
    for (const auto& p : task.domain.predicates)
        if (!dynamic.count(p.name)) task.static_predicates.push_back(p.name);
    std::sort(task.static_predicates.begin(), task.static_predicates.end(), symbol_text_less);

    task.schema_order.resize(task.domain.actions.size());
    for (std::size_t i = 0; i < task.schema_order.size(); ++i) task.schema_order[i] = i;
    std::sort(task.schema_order.begin(), task.schema_order.end(),
              [&](std::size_t a, std::size_t b) {
                  return symbol_text_less(task.domain.actions[a].name,
                                          task.domain.actions[b].name);
              });

    task.objects_by_name = task.problem.objects;
    std::sort(task.objects_by_name.begin(), task.objects_by_name.end(), symbol_text_less);
    return task;
}

ParseError::ParseError(std::string msg, int line_in, int column_in)
    : std::runtime_error(std::to_string(line_in) + ":" + std::to_string(column_in) + ": " + msg),
      line(line_in),
      column(column_in) {}

}  // namespace ringforge::pddl
