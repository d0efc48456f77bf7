#pragma once

#include "ringforge/pddl.hpp"

#include <map>

// Generator for the commutative-ring and integral-domain planning
// domains: ring axioms and derived rewriting steps as action schemas,
// plus problem assembly from ring-element declarations and a registry
// of builtin conjectures.

namespace ringforge::ringdomain {

enum class Variant { FOD, FOND };

struct DomainOptions {
    Variant variant = Variant::FOD;
    bool allow_zero_prod = false;  // emit (allowzeroprod) into init
    std::optional<std::vector<std::string>> action_subset;
};

// One ring element and the facts its declaration contributes to init.
// An undeclared element carries no other facts; inverse declarations
// assert isadditiveinverse in both argument orders.
struct RingElementDecl {
    pddl::Symbol name;
    std::string display;

    bool zero = false;
    bool multiplicative_identity = false;
    bool undeclared = false;
    bool assumed_nonzero = false;
    bool assumed_zero = false;
    std::vector<std::pair<pddl::Symbol, pddl::Symbol>> product_of;  // isprod(name, a, b)
    std::vector<std::pair<pddl::Symbol, pddl::Symbol>> sum_of;      // issum(name, a, b)
    std::vector<pddl::Symbol> additive_inverse_of;  // isadditiveinverse(x, name) + mirror
};

struct TextLess {
    bool operator()(pddl::Symbol a, pddl::Symbol b) const { return symbol_text_less(a, b); }
};

// Object name -> algebraic expression, used when rendering proofs.
class DisplayMap {
public:
    void set(pddl::Symbol name, std::string display);
    const std::string& display(pddl::Symbol name) const;  // falls back to the name itself
    const std::map<pddl::Symbol, std::string, TextLess>& entries() const { return entries_; }

private:
    std::map<pddl::Symbol, std::string, TextLess> entries_;
};

std::string to_text(const DisplayMap& map);
DisplayMap parse_display_map(std::string_view text);

// Full domain as PDDL text / parsed model. The deterministic variant
// has 28 schemas; the nondeterministic one adds integraldom-axiom and
// a contradiction guard on set-zero.
std::string generate_domain_text(const DomainOptions& options);
pddl::DomainModel generate_domain(const DomainOptions& options);

const std::vector<std::string>& known_action_names(Variant variant);

std::pair<pddl::ProblemModel, DisplayMap> build_problem(
    const std::vector<RingElementDecl>& elements, std::vector<pddl::GroundLiteral> goal,
    const DomainOptions& options, std::string_view problem_name = "conjecture",
    std::vector<pddl::GroundAtom> extra_init = {});

struct BuiltinProblem {
    std::string key;
    std::string note;
    DomainOptions options;
    std::vector<RingElementDecl> elements;
    std::vector<pddl::GroundLiteral> goal;
    std::vector<pddl::GroundAtom> extra_init;
    std::optional<int> expected_plan_cost;
    std::string solver_hint;       // bfs | gbfs | fond
    bool desk_scale = true;        // false: expected to exhaust sensible budgets
};

struct BuiltinInstance {
    pddl::DomainModel domain;
    pddl::ProblemModel problem;
    DisplayMap display;
    DomainOptions options;
    std::optional<int> expected_plan_cost;
};

const std::vector<BuiltinProblem>& builtin_problems();
const BuiltinProblem* find_builtin(std::string_view key);     // nullptr when unknown
BuiltinInstance builtin_problem(std::string_view key);        // throws on unknown key

}  // namespace ringforge::ringdomain
