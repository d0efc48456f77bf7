#include "ringforge/pddl.hpp"

#include <algorithm>

namespace ringforge::pddl {

namespace {

using Rows = std::vector<const GroundAtom*>;

// Depth-first join over one schema's positive precondition literals,
// visited most-selective (fewest state rows) first. Parameters left
// unbound afterwards range over the whole object universe; negative
// literals are checked once the binding is complete.
class SchemaMatcher {
public:
    SchemaMatcher(const State& state, const Task& task, const ActionSchema& schema,
                  const std::unordered_map<Symbol, Rows>& index)
        : state_(state), task_(task), schema_(schema), index_(index) {}

    void collect(std::vector<GroundAction>& out) {
        for (const Literal& lit : schema_.precondition)
            (lit.negated ? negative_ : positive_).push_back(&lit);
        std::stable_sort(positive_.begin(), positive_.end(),
                         [&](const Literal* a, const Literal* b) {
                             return row_count(a->atom.predicate) < row_count(b->atom.predicate);
                         });
        binding_.assign(schema_.params.size(), Symbol());
        std::size_t before = out.size();
        join(0, out);
        std::sort(out.begin() + before, out.end(),
                  [&](const GroundAction& a, const GroundAction& b) {
                      for (std::size_t i = 0; i < a.args.size(); ++i) {
                          std::size_t ra = task_.object_rank(a.args[i]);
                          std::size_t rb = task_.object_rank(b.args[i]);
                          if (ra != rb) return ra < rb;
                      }
                      return false;
                  });
    }

private:
    std::size_t row_count(Symbol predicate) const {
        auto it = index_.find(predicate);
        return it == index_.end() ? 0 : it->second.size();
    }

    std::optional<std::size_t> param_index(Symbol var) const {
        auto it = std::find(schema_.params.begin(), schema_.params.end(), var);
        if (it == schema_.params.end()) return std::nullopt;
        return static_cast<std::size_t>(it - schema_.params.begin());
    }

    void join(std::size_t lit_index, std::vector<GroundAction>& out) {
        if (lit_index == positive_.size()) {
            enumerate_free(0, out);
            return;
        }
        const Atom& atom = positive_[lit_index]->atom;
        auto it = index_.find(atom.predicate);
        if (it == index_.end()) return;
        for (const GroundAtom* row : it->second) {
            if (row->args.size() != atom.args.size()) continue;
            std::vector<std::size_t> bound;
            if (unify(atom, *row, bound)) join(lit_index + 1, out);
            for (std::size_t p : bound) binding_[p] = Symbol();
        }
    }

    bool unify(const Atom& atom, const GroundAtom& row, std::vector<std::size_t>& bound) {
        for (std::size_t i = 0; i < atom.args.size(); ++i) {
            const Term& t = atom.args[i];
            if (!t.is_variable) {
                if (t.sym != row.args[i]) return false;
                continue;
            }
            std::size_t p = *param_index(t.sym);
            if (binding_[p].valid()) {
                if (binding_[p] != row.args[i]) return false;
            } else {
                binding_[p] = row.args[i];
                bound.push_back(p);
            }
        }
        return true;
    }

    void enumerate_free(std::size_t param, std::vector<GroundAction>& out) {
        while (param < binding_.size() && binding_[param].valid()) ++param;
        if (param == binding_.size()) {
            if (negatives_hold()) out.push_back(GroundAction{&schema_, binding_});
            return;
        }
        for (Symbol obj : task_.objects_by_name) {
            binding_[param] = obj;
            enumerate_free(param + 1, out);
        }
        binding_[param] = Symbol();
    }

    bool negatives_hold() const {
        for (const Literal* lit : negative_) {
            GroundAtom atom;
            atom.predicate = lit->atom.predicate;
            for (const Term& t : lit->atom.args)
                atom.args.push_back(t.is_variable ? binding_[*param_index(t.sym)] : t.sym);
            if (state_.contains(atom)) return false;
        }
        return true;
    }

    const State& state_;
    const Task& task_;
    const ActionSchema& schema_;
    const std::unordered_map<Symbol, Rows>& index_;
    std::vector<const Literal*> positive_;
    std::vector<const Literal*> negative_;
    std::vector<Symbol> binding_;
};

}  // namespace

std::vector<GroundAction> applicable_actions(const State& state, const Task& task) {
    std::unordered_map<Symbol, Rows> index;
    for (const GroundAtom& atom : state) index[atom.predicate].push_back(&atom);

    std::vector<GroundAction> out;
    for (std::size_t idx : task.schema_order) {
        SchemaMatcher matcher(state, task, task.domain.actions[idx], index);
        matcher.collect(out);
    }
    return out;
}

bool is_applicable(const State& state, const GroundAction& action) {
    return satisfies(state, instantiate_precondition(action));
}

int outcome_count(const GroundAction& action) {
    return static_cast<int>(action.schema->effect.branches.size());
}

State apply(const State& state, const GroundAction& action, int outcome_index) {
    GroundBranch branch = instantiate_branch(action, outcome_index);

    std::vector<GroundAtom> adds;
    std::vector<GroundAtom> dels;
    auto collect = [&](const std::vector<GroundLiteral>& lits) {
        for (const GroundLiteral& l : lits) (l.negated ? dels : adds).push_back(l.atom);
    };
    collect(branch.literals);
    for (const GroundConditional& ce : branch.conditionals)
        if (satisfies(state, ce.condition)) collect(ce.body);

    auto in = [](const std::vector<GroundAtom>& v, const GroundAtom& a) {
        return std::find(v.begin(), v.end(), a) != v.end();
    };

    std::vector<GroundAtom> atoms;
    atoms.reserve(state.size() + adds.size());
    for (const GroundAtom& a : state)
        if (!in(dels, a) || in(adds, a)) atoms.push_back(a);
    for (const GroundAtom& a : adds) atoms.push_back(a);
    return State(std::move(atoms));
}

bool satisfies(const State& state, const std::vector<GroundLiteral>& literals) {
    for (const GroundLiteral& l : literals)
        if (state.contains(l.atom) == l.negated) return false;
    return true;
}

bool goal_satisfied(const State& state, const Task& task) {
    return satisfies(state, task.goal);
}

GroundingReport ground_all(const Task& task, std::uint64_t limit) {
    GroundingReport report;
    for (std::size_t idx : task.schema_order) {
        const ActionSchema& schema = task.domain.actions[idx];
        std::vector<Symbol> binding(schema.params.size());
        // Odometer over the text-sorted object universe, rightmost digit fastest.
        std::vector<std::size_t> digits(schema.params.size(), 0);
        const std::size_t n = task.objects_by_name.size();
        if (n == 0 && !schema.params.empty()) continue;
        while (true) {
            if (report.enumerated == limit) {
                report.capped = true;
                return report;
            }
            for (std::size_t i = 0; i < digits.size(); ++i)
                binding[i] = task.objects_by_name[digits[i]];
            report.actions.push_back(GroundAction{&schema, binding});
            ++report.enumerated;
            std::size_t i = digits.size();
            while (i > 0) {
                if (++digits[i - 1] < n) break;
                digits[i - 1] = 0;
                --i;
            }
            if (i == 0) break;
        }
    }
    return report;
}

}  // namespace ringforge::pddl
