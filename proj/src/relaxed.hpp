#pragma once

#include "ringforge/pddl.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

// Shared between the solvers; not part of the public headers.

namespace ringforge::relaxed {

using Clock = std::chrono::steady_clock;

class Deadline {
public:
    explicit Deadline(double seconds)
        : end_(Clock::now() +
               std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds))) {}

    bool passed() const { return Clock::now() >= end_; }

private:
    Clock::time_point end_;
};

struct EvalLimits {
    std::uint64_t max_instances = 0xffffffffffffffffull;
    const Deadline* deadline = nullptr;
};

// Returns true to drop a ground instance from the relaxation entirely.
using InstanceFilter =
    std::function<bool(const pddl::ActionSchema&, const std::vector<pddl::Symbol>&)>;

constexpr std::uint32_t kInfinity = 0xffffffffu;

// Delete relaxation of a task, grounded once against the relaxed
// reachability closure of a seed state. Grounding enumerates each
// supporting binding exactly once by firing it when its newest
// precondition atom enters the closure (semi-naive evaluation), so
// saturation-heavy domains pay the join cost once, not per sweep.
// evaluate() then runs a counter-based uniform-cost pass over the
// materialized instances per queried state.
//
// Sound for any state whose atoms are contained in the closure of the
// seed; real execution only ever deletes, so seeding with the task
// init covers every state a forward search can reach.
class Evaluator {
public:
    Evaluator(const pddl::Task& task, const pddl::State& seed, const EvalLimits& limits = {},
              InstanceFilter filter = {})
        : objects_(task.objects_by_name), filter_(std::move(filter)) {
        compile(task);
        ground(seed, limits);
        if (!valid_) return;
        build_watchers();
        resolve_goal(task);
    }

    // False when grounding hit the instance cap or the deadline; the
    // evaluator is unusable and the caller should report exhaustion.
    bool valid() const { return valid_; }

    std::uint64_t instance_count() const { return counter_template_.size(); }

    // Membership in the grounded closure: unreachable atoms were never
    // interned, so absence proves unreachability from the seed.
    bool reachable(const pddl::GroundAtom& atom) const { return atom_ids_.count(atom) != 0; }

    std::optional<std::uint64_t> evaluate(const pddl::State& state) {
        if (goal_missing_) return std::nullopt;
        if (goal_ids_.empty()) return 0;

        cost_.assign(atoms_.size(), kInfinity);
        counters_ = counter_template_;
        for (std::vector<std::uint32_t>& bucket : buckets_) bucket.clear();

        for (const pddl::GroundAtom& atom : state) {
            auto it = atom_ids_.find(atom);
            if (it != atom_ids_.end()) relax(it->second, 0);
        }
        for (std::uint32_t inst : free_instances_)
            for (std::uint32_t k = add_offsets_[inst]; k < add_offsets_[inst + 1]; ++k)
                relax(adds_[k], 1);

        std::size_t open_goals = goal_ids_.size();
        bool done = false;
        for (std::uint32_t bucket = 0; !done && bucket < buckets_.size(); ++bucket) {
            for (std::size_t i = 0; i < buckets_[bucket].size(); ++i) {
                std::uint32_t atom = buckets_[bucket][i];
                if (cost_[atom] != bucket) continue;  // superseded entry
                if (goal_mark_[atom] && --open_goals == 0) {
                    done = true;
                    break;
                }
                for (std::uint32_t w = watch_offsets_[atom]; w < watch_offsets_[atom + 1]; ++w) {
                    std::uint32_t inst = watchers_[w];
                    if (--counters_[inst] == 0) {
                        // every precondition is finalized once the counter
                        // drains, so the sum reads settled costs
                        std::uint32_t base = 1;
                        for (std::uint32_t k = pre_offsets_[inst]; k < pre_offsets_[inst + 1]; ++k)
                            base += cost_[pres_[k]];
                        for (std::uint32_t k = add_offsets_[inst]; k < add_offsets_[inst + 1]; ++k)
                            relax(adds_[k], base);
                    }
                }
            }
        }

        std::uint64_t total = 0;
        for (std::uint32_t goal : goal_ids_) {
            if (cost_[goal] == kInfinity) return std::nullopt;
            total += cost_[goal];
        }
        return total;
    }

private:
    struct CompiledArg {
        bool is_var = false;
        std::uint32_t var = 0;
        pddl::Symbol constant;
    };

    struct CompiledLiteral {
        pddl::Symbol predicate;
        std::vector<CompiledArg> args;
    };

    struct CompiledSchema {
        const pddl::ActionSchema* source = nullptr;
        std::uint32_t params = 0;
        std::vector<CompiledLiteral> pres;  // positive preconditions only
        std::vector<CompiledLiteral> adds;
    };

    void compile(const pddl::Task& task) {
        auto compile_atom = [](const pddl::ActionSchema& schema, const pddl::Atom& atom) {
            CompiledLiteral lit;
            lit.predicate = atom.predicate;
            for (const pddl::Term& term : atom.args) {
                CompiledArg arg;
                if (term.is_variable) {
                    arg.is_var = true;
                    auto at = std::find(schema.params.begin(), schema.params.end(), term.sym);
                    arg.var = static_cast<std::uint32_t>(at - schema.params.begin());
                } else {
                    arg.constant = term.sym;
                }
                lit.args.push_back(arg);
            }
            return lit;
        };

        for (std::size_t index : task.schema_order) {
            const pddl::ActionSchema& schema = task.domain.actions[index];
            CompiledSchema cs;
            cs.source = &schema;
            cs.params = static_cast<std::uint32_t>(schema.params.size());
            for (const pddl::Literal& lit : schema.precondition)
                if (!lit.negated) cs.pres.push_back(compile_atom(schema, lit.atom));
            for (const pddl::EffectBranch& branch : schema.effect.branches) {
                for (const pddl::Literal& lit : branch.literals)
                    if (!lit.negated) cs.adds.push_back(compile_atom(schema, lit.atom));
                for (const pddl::ConditionalEffect& cond : branch.conditionals)
                    for (const pddl::Literal& lit : cond.body)
                        if (!lit.negated) cs.adds.push_back(compile_atom(schema, lit.atom));
            }
            if (!cs.adds.empty()) schemas_.push_back(std::move(cs));
        }

        std::size_t depth = 0;
        for (const CompiledSchema& cs : schemas_) depth = std::max(depth, cs.pres.size());
        bound_scratch_.assign(depth + 1, {});
    }

    std::uint32_t intern(const pddl::GroundAtom& atom, std::deque<std::uint32_t>& pending) {
        auto [it, inserted] = atom_ids_.emplace(atom, static_cast<std::uint32_t>(atoms_.size()));
        if (inserted) {
            atoms_.push_back(atom);
            tables_[atom.predicate].push_back(it->second);
            pending.push_back(it->second);
        }
        return it->second;
    }

    bool unify(const CompiledLiteral& lit, const pddl::GroundAtom& atom,
               std::vector<pddl::Symbol>& binding, std::vector<std::uint32_t>& bound) {
        std::size_t undo = bound.size();
        for (std::size_t i = 0; i < lit.args.size(); ++i) {
            const CompiledArg& arg = lit.args[i];
            pddl::Symbol value = atom.args[i];
            if (!arg.is_var) {
                if (arg.constant != value) {
                    unbind(binding, bound, undo);
                    return false;
                }
            } else if (!binding[arg.var].valid()) {
                binding[arg.var] = value;
                bound.push_back(arg.var);
            } else if (binding[arg.var] != value) {
                unbind(binding, bound, undo);
                return false;
            }
        }
        return true;
    }

    static void unbind(std::vector<pddl::Symbol>& binding, std::vector<std::uint32_t>& bound,
                       std::size_t undo) {
        while (bound.size() > undo) {
            binding[bound.back()] = pddl::Symbol();
            bound.pop_back();
        }
    }

    pddl::GroundAtom substitute(const CompiledLiteral& lit,
                                const std::vector<pddl::Symbol>& binding) const {
        pddl::GroundAtom atom;
        atom.predicate = lit.predicate;
        for (const CompiledArg& arg : lit.args)
            atom.args.push_back(arg.is_var ? binding[arg.var] : arg.constant);
        return atom;
    }

    // Ground every relaxed action instance supported by the closure.
    // Each binding fires exactly once: when the highest-id atom among
    // its preconditions is processed, through the first literal
    // position holding that atom.
    void ground(const pddl::State& seed, const EvalLimits& limits) {
        std::deque<std::uint32_t> pending;
        for (const pddl::GroundAtom& atom : seed) intern(atom, pending);

        for (CompiledSchema& cs : schemas_)
            if (cs.pres.empty()) {
                std::vector<pddl::Symbol> binding(cs.params);
                enumerate_free(cs, binding, 0, true, pending, limits);
            }

        // Zero-precondition instances fire at cost one in every
        // evaluation, so no supported instance can improve on their
        // adds; dropping those adds elsewhere shrinks the watch lists.
        free_adds_.assign(atoms_.size(), 0);
        for (std::uint32_t inst : free_instances_)
            for (std::uint32_t k = add_offsets_[inst]; k < add_offsets_[inst + 1]; ++k)
                free_adds_[adds_[k]] = 1;

        while (!pending.empty()) {
            if (!valid_) return;
            std::uint32_t trigger = pending.front();
            pending.pop_front();
            const pddl::GroundAtom atom = atoms_[trigger];  // intern() may reallocate atoms_
            for (CompiledSchema& cs : schemas_) {
                for (std::size_t i = 0; i < cs.pres.size(); ++i) {
                    if (cs.pres[i].predicate != atom.predicate) continue;
                    std::vector<pddl::Symbol> binding(cs.params);
                    std::vector<std::uint32_t>& bound = bound_scratch_.back();
                    bound.clear();
                    if (!unify(cs.pres[i], atom, binding, bound)) continue;
                    pre_ids_.assign(cs.pres.size(), trigger);
                    join(cs, 0, i, trigger, binding, pending, limits);
                    unbind(binding, bound, 0);
                    if (!valid_) return;
                }
            }
        }
    }

    void join(CompiledSchema& cs, std::size_t index, std::size_t trigger_pos,
              std::uint32_t trigger, std::vector<pddl::Symbol>& binding,
              std::deque<std::uint32_t>& pending, const EvalLimits& limits) {
        if (!valid_) return;
        if (index == cs.pres.size()) {
            bool canonical = false;
            for (std::size_t i = 0; i < cs.pres.size(); ++i) {
                if (pre_ids_[i] == trigger) {
                    canonical = i == trigger_pos;
                    break;
                }
            }
            if (canonical) enumerate_free(cs, binding, 0, false, pending, limits);
            return;
        }
        if (index == trigger_pos) {
            join(cs, index + 1, trigger_pos, trigger, binding, pending, limits);
            return;
        }
        auto table = tables_.find(cs.pres[index].predicate);
        if (table == tables_.end()) return;
        for (std::size_t k = 0; k < table->second.size(); ++k) {
            std::uint32_t id = table->second[k];  // fire() may grow the table
            if (id > trigger) break;  // ids append in insertion order
            std::vector<std::uint32_t>& bound = bound_scratch_[index];
            bound.clear();
            if (!unify(cs.pres[index], atoms_[id], binding, bound)) continue;
            pre_ids_[index] = id;
            join(cs, index + 1, trigger_pos, trigger, binding, pending, limits);
            unbind(binding, bound, 0);
            if (!valid_) return;
        }
    }

    void enumerate_free(CompiledSchema& cs, std::vector<pddl::Symbol>& binding,
                        std::uint32_t param, bool zero_pre, std::deque<std::uint32_t>& pending,
                        const EvalLimits& limits) {
        if (!valid_) return;
        if (param == cs.params) {
            fire(cs, binding, zero_pre, pending, limits);
            return;
        }
        if (binding[param].valid()) {
            enumerate_free(cs, binding, param + 1, zero_pre, pending, limits);
            return;
        }
        for (pddl::Symbol object : objects_) {
            binding[param] = object;
            enumerate_free(cs, binding, param + 1, zero_pre, pending, limits);
            if (!valid_) break;
        }
        binding[param] = pddl::Symbol();
    }

    void fire(CompiledSchema& cs, const std::vector<pddl::Symbol>& binding, bool zero_pre,
              std::deque<std::uint32_t>& pending, const EvalLimits& limits) {
        if (limits.deadline && (++fired_ & 0x1fff) == 0 && limits.deadline->passed()) {
            valid_ = false;
            return;
        }
        if (filter_ && filter_(*cs.source, binding)) return;

        scratch_pres_.clear();
        if (!zero_pre) {
            scratch_pres_.assign(pre_ids_.begin(), pre_ids_.begin() + cs.pres.size());
            std::sort(scratch_pres_.begin(), scratch_pres_.end());
            scratch_pres_.erase(std::unique(scratch_pres_.begin(), scratch_pres_.end()),
                                scratch_pres_.end());
        }

        scratch_adds_.clear();
        for (const CompiledLiteral& lit : cs.adds) {
            std::uint32_t id = intern(substitute(lit, binding), pending);
            if (!zero_pre && id < free_adds_.size() && free_adds_[id])
                continue;  // a zero-precondition instance already covers it
            if (std::binary_search(scratch_pres_.begin(), scratch_pres_.end(), id))
                continue;  // cannot beat the cost of its own support
            scratch_adds_.push_back(id);
        }
        if (scratch_adds_.empty()) return;

        if (counter_template_.size() >= limits.max_instances) {
            valid_ = false;
            return;
        }
        counter_template_.push_back(static_cast<std::uint16_t>(scratch_pres_.size()));
        pres_.insert(pres_.end(), scratch_pres_.begin(), scratch_pres_.end());
        pre_offsets_.push_back(static_cast<std::uint32_t>(pres_.size()));
        adds_.insert(adds_.end(), scratch_adds_.begin(), scratch_adds_.end());
        add_offsets_.push_back(static_cast<std::uint32_t>(adds_.size()));
        if (zero_pre)
            free_instances_.push_back(static_cast<std::uint32_t>(counter_template_.size()) - 1);
    }

    void build_watchers() {
        watch_offsets_.assign(atoms_.size() + 1, 0);
        for (std::uint32_t id : pres_) ++watch_offsets_[id + 1];
        for (std::size_t i = 1; i < watch_offsets_.size(); ++i)
            watch_offsets_[i] += watch_offsets_[i - 1];
        watchers_.resize(pres_.size());
        std::vector<std::uint32_t> cursor(watch_offsets_.begin(), watch_offsets_.end() - 1);
        for (std::uint32_t inst = 0; inst < counter_template_.size(); ++inst)
            for (std::uint32_t k = pre_offsets_[inst]; k < pre_offsets_[inst + 1]; ++k)
                watchers_[cursor[pres_[k]]++] = inst;
    }

    void resolve_goal(const pddl::Task& task) {
        goal_mark_.assign(atoms_.size(), 0);
        for (const pddl::GroundLiteral& lit : task.goal) {
            if (lit.negated) continue;
            auto it = atom_ids_.find(lit.atom);
            if (it == atom_ids_.end()) {
                goal_missing_ = true;
                return;
            }
            if (!goal_mark_[it->second]) {
                goal_mark_[it->second] = 1;
                goal_ids_.push_back(it->second);
            }
        }
    }

    void relax(std::uint32_t atom, std::uint32_t value) {
        if (value >= cost_[atom]) return;
        cost_[atom] = value;
        if (value >= buckets_.size()) buckets_.resize(value + 1);
        buckets_[value].push_back(atom);
    }

    bool valid_ = true;
    bool goal_missing_ = false;
    std::uint64_t fired_ = 0;

    std::vector<CompiledSchema> schemas_;
    std::vector<pddl::Symbol> objects_;
    InstanceFilter filter_;

    std::unordered_map<pddl::GroundAtom, std::uint32_t> atom_ids_;
    std::vector<pddl::GroundAtom> atoms_;
    std::unordered_map<pddl::Symbol, std::vector<std::uint32_t>> tables_;

    std::vector<std::uint32_t> pre_ids_;  // per-literal match during one join
    std::vector<std::vector<std::uint32_t>> bound_scratch_;  // per join depth, last for the trigger
    std::vector<std::uint32_t> scratch_pres_;
    std::vector<std::uint32_t> scratch_adds_;

    std::vector<std::uint16_t> counter_template_;
    std::vector<std::uint32_t> pre_offsets_{0};
    std::vector<std::uint32_t> pres_;
    std::vector<std::uint32_t> add_offsets_{0};
    std::vector<std::uint32_t> adds_;
    std::vector<std::uint32_t> free_instances_;  // instances with no preconditions
    std::vector<std::uint8_t> free_adds_;        // atoms covered by those instances

    std::vector<std::uint32_t> watch_offsets_;
    std::vector<std::uint32_t> watchers_;
    std::vector<std::uint32_t> goal_ids_;
    std::vector<std::uint8_t> goal_mark_;

    std::vector<std::uint32_t> cost_;
    std::vector<std::uint16_t> counters_;
    std::vector<std::vector<std::uint32_t>> buckets_;
};

}  // namespace ringforge::relaxed
