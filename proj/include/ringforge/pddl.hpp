#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

// Core PDDL subset: s-expression domains/problems with conjunctive
// preconditions (negation allowed), conjunctive effects, conditional
// effects, and top-level oneof nondeterminism. No typing, no
// quantifiers, no numeric fluents; all actions have unit cost.

namespace ringforge::pddl {

// Interned lowercase identifier. Ids are process-local; every ordering
// that matters to output is done on the text, not the id.
class Symbol {
public:
    Symbol() = default;

    static Symbol intern(std::string_view text);
    static std::optional<Symbol> lookup(std::string_view text);

    const std::string& text() const;
    std::uint32_t id() const { return id_; }
    bool valid() const { return id_ != kInvalid; }

    friend bool operator==(Symbol a, Symbol b) = default;
    friend auto operator<=>(Symbol a, Symbol b) = default;

private:
    static constexpr std::uint32_t kInvalid = 0xffffffffu;
    explicit Symbol(std::uint32_t id) : id_(id) {}
    std::uint32_t id_ = kInvalid;
};

// Orders symbols by their text, not their intern id.
bool symbol_text_less(Symbol a, Symbol b);

struct Term {
    Symbol sym;
    bool is_variable = false;

    friend bool operator==(const Term&, const Term&) = default;
};

struct Atom {
    Symbol predicate;
    std::vector<Term> args;

    friend bool operator==(const Atom&, const Atom&) = default;
};

struct Literal {
    Atom atom;
    bool negated = false;

    friend bool operator==(const Literal&, const Literal&) = default;
};

struct GroundAtom {
    Symbol predicate;
    std::vector<Symbol> args;

    friend bool operator==(const GroundAtom&, const GroundAtom&) = default;
    friend auto operator<=>(const GroundAtom&, const GroundAtom&) = default;
};

struct GroundLiteral {
    GroundAtom atom;
    bool negated = false;

    friend bool operator==(const GroundLiteral&, const GroundLiteral&) = default;
};

std::size_t hash_value(const GroundAtom& atom);
std::string to_text(const GroundAtom& atom);
std::string to_text(const GroundLiteral& lit);

// Effects in normal form: a list of branches (one unless oneof), each a
// conjunction of add/delete literals plus conditional effects whose
// conditions are evaluated against the pre-state.
struct ConditionalEffect {
    std::vector<Literal> condition;
    std::vector<Literal> body;

    friend bool operator==(const ConditionalEffect&, const ConditionalEffect&) = default;
};

struct EffectBranch {
    std::vector<Literal> literals;
    std::vector<ConditionalEffect> conditionals;

    friend bool operator==(const EffectBranch&, const EffectBranch&) = default;
};

struct EffectTree {
    bool oneof = false;
    std::vector<EffectBranch> branches;  // size 1 when !oneof

    friend bool operator==(const EffectTree&, const EffectTree&) = default;
};

struct ActionSchema {
    Symbol name;
    std::vector<Symbol> params;
    std::vector<Literal> precondition;
    EffectTree effect;

    bool deterministic() const { return !effect.oneof; }

    friend bool operator==(const ActionSchema&, const ActionSchema&) = default;
};

struct PredicateDecl {
    Symbol name;
    std::vector<Symbol> params;  // cosmetic; equality is on name and arity

    std::size_t arity() const { return params.size(); }

    friend bool operator==(const PredicateDecl& a, const PredicateDecl& b) {
        return a.name == b.name && a.params.size() == b.params.size();
    }
};

struct DomainModel {
    Symbol name;
    std::vector<std::string> requirements;  // recorded, otherwise ignored
    std::vector<PredicateDecl> predicates;
    std::vector<ActionSchema> actions;

    const PredicateDecl* find_predicate(Symbol name) const;
    const ActionSchema* find_action(Symbol name) const;

    friend bool operator==(const DomainModel& a, const DomainModel& b) {
        return a.name == b.name && a.predicates == b.predicates && a.actions == b.actions;
    }
};

struct ProblemModel {
    Symbol name;
    Symbol domain_name;
    std::vector<Symbol> objects;
    std::vector<GroundAtom> init;
    std::vector<GroundLiteral> goal;

    friend bool operator==(const ProblemModel&, const ProblemModel&) = default;
};

// Canonical set of ground atoms, sorted and deduplicated by intern id.
class State {
public:
    State() = default;
    explicit State(std::vector<GroundAtom> atoms);

    bool contains(const GroundAtom& atom) const;
    bool empty() const { return atoms_.empty(); }
    std::size_t size() const { return atoms_.size(); }
    const std::vector<GroundAtom>& atoms() const { return atoms_; }

    auto begin() const { return atoms_.begin(); }
    auto end() const { return atoms_.end(); }

    friend bool operator==(const State&, const State&) = default;

private:
    std::vector<GroundAtom> atoms_;
};

std::size_t hash_value(const State& state);

struct StateHash {
    std::size_t operator()(const State& s) const { return hash_value(s); }
};

struct GroundAction {
    const ActionSchema* schema = nullptr;
    std::vector<Symbol> args;

    Symbol name() const { return schema->name; }
    std::string to_text() const;

    friend bool operator==(const GroundAction& a, const GroundAction& b) {
        return a.schema == b.schema && a.args == b.args;
    }
};

struct GroundConditional {
    std::vector<GroundLiteral> condition;
    std::vector<GroundLiteral> body;
};

struct GroundBranch {
    std::vector<GroundLiteral> literals;
    std::vector<GroundConditional> conditionals;
};

std::vector<GroundLiteral> instantiate_precondition(const GroundAction& action);
GroundBranch instantiate_branch(const GroundAction& action, int outcome_index);
GroundAtom substitute(const Atom& atom, const std::vector<Symbol>& params,
                      const std::vector<Symbol>& args);

// A paired domain and problem with the derived tables the solvers use.
struct Task {
    DomainModel domain;
    ProblemModel problem;

    State init;
    std::vector<GroundLiteral> goal;
    std::vector<Symbol> static_predicates;   // never touched by any effect; text-sorted
    std::vector<std::size_t> schema_order;   // indices into domain.actions, name-sorted
    std::vector<Symbol> objects_by_name;     // object universe, text-sorted
    bool deterministic = true;

    std::size_t object_rank(Symbol object) const;
    bool is_static(Symbol predicate) const;

    static Task make(DomainModel domain, ProblemModel problem);
};

struct ParseError : std::runtime_error {
    ParseError(std::string msg, int line, int column);
    int line;
    int column;
};

DomainModel parse_domain(std::string_view text);
ProblemModel parse_problem(std::string_view text, const DomainModel& domain);

std::string to_pddl(const ActionSchema& schema);
std::string to_pddl(const DomainModel& domain);
std::string to_pddl(const ProblemModel& problem);

// Ground actions applicable in `state`, ordered by schema name and then
// by binding (object names, position by position). Matching joins
// precondition literals starting from the most selective one;
// parameters no literal constrains range over the whole object universe.
std::vector<GroundAction> applicable_actions(const State& state, const Task& task);

bool is_applicable(const State& state, const GroundAction& action);
int outcome_count(const GroundAction& action);

// Successor state for one outcome. Conditional effects read the
// pre-state; an atom both added and deleted stays (add wins).
State apply(const State& state, const GroundAction& action, int outcome_index = 0);

bool satisfies(const State& state, const std::vector<GroundLiteral>& literals);
bool goal_satisfied(const State& state, const Task& task);

// Diagnostic only: every binding of every schema, capped at `limit`.
// Solvers never ground exhaustively.
struct GroundingReport {
    std::vector<GroundAction> actions;
    std::uint64_t enumerated = 0;
    bool capped = false;
};
GroundingReport ground_all(const Task& task, std::uint64_t limit);

}  // namespace ringforge::pddl

template <>
struct std::hash<ringforge::pddl::Symbol> {
    std::size_t operator()(ringforge::pddl::Symbol s) const noexcept {
        return std::hash<std::uint32_t>{}(s.id());
    }
};

template <>
struct std::hash<ringforge::pddl::GroundAtom> {
    std::size_t operator()(const ringforge::pddl::GroundAtom& a) const noexcept {
        return ringforge::pddl::hash_value(a);
    }
};
