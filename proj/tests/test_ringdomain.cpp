#include "doctest.h"
#include "ringforge/ringdomain.hpp"

#include <set>

using namespace ringforge;
using ringdomain::DomainOptions;
using ringdomain::Variant;

namespace {

const char* kFodNames[] = {
    "addition-axiom", "multiplication-axiom", "associative-addition-axiom", "zero-axiom",
    "additive-inverse-axiom", "commutative-addition-axiom", "associative-multiplication-axiom",
    "multiplicative-identity-axiom", "distributivity-axiom-v1", "distributivity-axiom-v2",
    "swap-equal", "set-equal-to-self", "set-equal-by-transitivity",
    "add-zero", "set-zero", "set-zero-prod",
    "set-sum", "replace-sum", "swap-sum", "set-equal-by-sum",
    "add-element-to-both-sides-of-equality",
    "set-prod", "replace-prod", "swap-prod", "set-equal-by-prod",
    "multipy-element-both-sides-of-equality",
    "reduce-additive-inverse", "factor-out-neg",
};

std::string atom_text(const pddl::GroundAtom& a) { return pddl::to_text(a); }

}  // namespace

TEST_CASE("deterministic domain has the full 28-action, 11-predicate vocabulary") {
    pddl::DomainModel d = ringdomain::generate_domain({});
    CHECK(d.name.text() == "commutative-ring");
    CHECK(d.predicates.size() == 11);
    REQUIRE(d.actions.size() == 28);
    for (std::size_t i = 0; i < 28; ++i) {
        CHECK(d.actions[i].name.text() == kFodNames[i]);
        CHECK(d.actions[i].deterministic());
    }
    const pddl::ActionSchema* set_zero = d.find_action(pddl::Symbol::intern("set-zero"));
    REQUIRE(set_zero != nullptr);
    CHECK(set_zero->effect.branches[0].conditionals.empty());
}

TEST_CASE("nondeterministic domain adds the case split and the set-zero guard") {
    DomainOptions options;
    options.variant = Variant::FOND;
    pddl::DomainModel d = ringdomain::generate_domain(options);
    CHECK(d.name.text() == "integral-domain");
    REQUIRE(d.actions.size() == 29);
    CHECK(d.predicates.size() == 11);

    const pddl::ActionSchema* split = d.find_action(pddl::Symbol::intern("integraldom-axiom"));
    REQUIRE(split != nullptr);
    CHECK(split->effect.oneof);
    REQUIRE(split->effect.branches.size() == 3);
    for (const pddl::EffectBranch& b : split->effect.branches)
        CHECK(b.conditionals.size() == 2);

    const pddl::ActionSchema* set_zero = d.find_action(pddl::Symbol::intern("set-zero"));
    REQUIRE(set_zero != nullptr);
    REQUIRE(set_zero->effect.branches[0].conditionals.size() == 1);
    const pddl::ConditionalEffect& guard = set_zero->effect.branches[0].conditionals[0];
    CHECK(guard.condition[0].atom.predicate.text() == "assumenonzero");
    CHECK(guard.body[0].atom.predicate.text() == "contradiction");
}

TEST_CASE("action subsets filter generation and reject unknown names") {
    DomainOptions one;
    one.action_subset = std::vector<std::string>{"set-equal-to-self"};
    pddl::DomainModel d = ringdomain::generate_domain(one);
    REQUIRE(d.actions.size() == 1);
    CHECK(d.actions[0].name.text() == "set-equal-to-self");

    DomainOptions bogus;
    bogus.action_subset = std::vector<std::string>{"spin-left"};
    CHECK_THROWS_AS(ringdomain::generate_domain(bogus), std::invalid_argument);

    DomainOptions fod_split;
    fod_split.action_subset = std::vector<std::string>{"integraldom-axiom"};
    CHECK_THROWS_AS(ringdomain::generate_domain(fod_split), std::invalid_argument);

    DomainOptions fond_split;
    fond_split.variant = Variant::FOND;
    fond_split.action_subset = std::vector<std::string>{"integraldom-axiom", "set-zero"};
    CHECK(ringdomain::generate_domain(fond_split).actions.size() == 2);
}

TEST_CASE("generated text is byte-stable and reparses to an equal model") {
    for (Variant variant : {Variant::FOD, Variant::FOND}) {
        DomainOptions options;
        options.variant = variant;
        std::string text = ringdomain::generate_domain_text(options);
        CHECK(text == ringdomain::generate_domain_text(options));
        pddl::DomainModel d = pddl::parse_domain(text);
        CHECK(pddl::parse_domain(pddl::to_pddl(d)) == d);
    }
}

TEST_CASE("static safety: effect vocabulary stays within the allowed adders") {
    for (Variant variant : {Variant::FOD, Variant::FOND}) {
        DomainOptions options;
        options.variant = variant;
        pddl::DomainModel d = ringdomain::generate_domain(options);
        const std::set<std::string> iszero_adders = {"set-zero", "set-zero-prod",
                                                     "integraldom-axiom"};
        for (const pddl::ActionSchema& a : d.actions) {
            auto scan = [&](const std::vector<pddl::Literal>& lits) {
                for (const pddl::Literal& lit : lits) {
                    std::string pred = lit.atom.predicate.text();
                    CHECK(pred != "allowzeroprod");
                    CHECK(pred != "ismultidentity");
                    CHECK(pred != "assumenonzero");
                    CHECK(pred != "assumezero");
                    if (pred == "contradiction") CHECK_FALSE(lit.negated);
                    if (pred == "undeclared") CHECK(lit.negated);
                    if (pred == "iszero" && !lit.negated)
                        CHECK(iszero_adders.count(a.name.text()) == 1);
                    if (pred == "isadditiveinverse" && !lit.negated)
                        CHECK(a.name.text() == "factor-out-neg");
                }
            };
            for (const pddl::EffectBranch& b : a.effect.branches) {
                scan(b.literals);
                for (const pddl::ConditionalEffect& ce : b.conditionals) scan(ce.body);
            }
        }
    }
}

TEST_CASE("problem assembly emits roles in declaration order") {
    ringdomain::RingElementDecl zero;
    zero.name = pddl::Symbol::intern("zero");
    zero.display = "0";
    zero.zero = true;
    zero.sum_of = {{pddl::Symbol::intern("a"), pddl::Symbol::intern("b1")}};
    ringdomain::RingElementDecl a;
    a.name = pddl::Symbol::intern("a");
    a.display = "a";
    ringdomain::RingElementDecl b1;
    b1.name = pddl::Symbol::intern("b1");
    b1.display = "b1";
    b1.additive_inverse_of = {pddl::Symbol::intern("a")};

    auto [problem, display] = ringdomain::build_problem({a, b1, zero}, {}, {});
    REQUIRE(problem.objects.size() == 3);
    CHECK(problem.objects[0].text() == "a");
    REQUIRE(problem.init.size() == 4);
    CHECK(atom_text(problem.init[0]) == "(isadditiveinverse a b1)");
    CHECK(atom_text(problem.init[1]) == "(isadditiveinverse b1 a)");
    CHECK(atom_text(problem.init[2]) == "(iszero zero)");
    CHECK(atom_text(problem.init[3]) == "(issum zero a b1)");
    CHECK(display.display(pddl::Symbol::intern("b1")) == "b1");
    CHECK(display.display(pddl::Symbol::intern("missing")) == "missing");
}

TEST_CASE("problem assembly rejects invalid declarations") {
    auto decl = [](const char* name) {
        ringdomain::RingElementDecl e;
        e.name = pddl::Symbol::intern(name);
        e.display = name;
        return e;
    };

    CHECK_THROWS_AS(ringdomain::build_problem({decl("a"), decl("a")}, {}, {}),
                    std::invalid_argument);

    ringdomain::RingElementDecl undeclared_with_facts = decl("x");
    undeclared_with_facts.undeclared = true;
    undeclared_with_facts.zero = true;
    CHECK_THROWS_AS(ringdomain::build_problem({undeclared_with_facts}, {}, {}),
                    std::invalid_argument);

    pddl::GroundLiteral goal;
    goal.atom.predicate = pddl::Symbol::intern("equal");
    goal.atom.args = {pddl::Symbol::intern("a"), pddl::Symbol::intern("ghost")};
    CHECK_THROWS_AS(ringdomain::build_problem({decl("a")}, {goal}, {}),
                    std::invalid_argument);

    pddl::GroundLiteral bad_pred;
    bad_pred.atom.predicate = pddl::Symbol::intern("divides");
    bad_pred.atom.args = {pddl::Symbol::intern("a")};
    CHECK_THROWS_AS(ringdomain::build_problem({decl("a")}, {bad_pred}, {}),
                    std::invalid_argument);

    ringdomain::RingElementDecl dangling = decl("p");
    dangling.product_of = {{pddl::Symbol::intern("a"), pddl::Symbol::intern("ghost")}};
    CHECK_THROWS_AS(ringdomain::build_problem({decl("a"), dangling}, {}, {}),
                    std::invalid_argument);
}

TEST_CASE("builtin registry covers the benchmark set") {
    std::set<std::string> keys;
    for (const auto& p : ringdomain::builtin_problems()) keys.insert(p.key);
    for (const char* key : {"zero-sum", "unique-additive-inverse", "a-times-zero",
                            "neg-one-times-a", "neg-one-times-a-undeclared",
                            "zero-diff-implies-equal", "cancellation-law"})
        CHECK(keys.count(key) == 1);

    CHECK(ringdomain::find_builtin("nope") == nullptr);
    CHECK_THROWS_AS(ringdomain::builtin_problem("nope"), std::out_of_range);
}

TEST_CASE("unique-additive-inverse builtin matches its statement") {
    auto inst = ringdomain::builtin_problem("unique-additive-inverse");
    CHECK(inst.expected_plan_cost == 7);
    REQUIRE(inst.problem.objects.size() == 4);
    REQUIRE(inst.problem.init.size() == 3);
    CHECK(atom_text(inst.problem.init[0]) == "(iszero zero)");
    CHECK(atom_text(inst.problem.init[1]) == "(issum zero a b1)");
    CHECK(atom_text(inst.problem.init[2]) == "(issum zero a b2)");
    REQUIRE(inst.problem.goal.size() == 1);
    CHECK(pddl::to_text(inst.problem.goal[0]) == "(equal b1 b2)");
    pddl::Task task = pddl::Task::make(inst.domain, inst.problem);
    CHECK(task.deterministic);
}

TEST_CASE("a-times-zero builtin declares the undeclared helper last") {
    auto inst = ringdomain::builtin_problem("a-times-zero");
    CHECK(inst.expected_plan_cost == 9);
    std::vector<std::string> init;
    for (const auto& atom : inst.problem.init) init.push_back(atom_text(atom));
    CHECK(init == std::vector<std::string>{
                      "(iszero z)",
                      "(isprod az a z)",
                      "(isprod minaz mina z)",
                      "(isadditiveinverse az minaz)",
                      "(isadditiveinverse minaz az)",
                      "(undeclared x)",
                  });
    CHECK(inst.display.display(pddl::Symbol::intern("minaz")) == "(-(a * 0))");
}

TEST_CASE("neg-one-times-a builtin enables zero products") {
    auto inst = ringdomain::builtin_problem("neg-one-times-a");
    CHECK(inst.expected_plan_cost == 14);
    CHECK(inst.options.allow_zero_prod);
    bool has_flag = false;
    for (const auto& atom : inst.problem.init)
        if (atom_text(atom) == "(allowzeroprod)") has_flag = true;
    CHECK(has_flag);
    bool has_both_prods = false;
    int zerotimesa_prods = 0;
    for (const auto& atom : inst.problem.init)
        if (atom_text(atom) == "(isprod zerotimesa zero a)" ||
            atom_text(atom) == "(isprod zerotimesa a zero)")
            ++zerotimesa_prods;
    has_both_prods = zerotimesa_prods == 2;
    CHECK(has_both_prods);

    auto hard = ringdomain::builtin_problem("neg-one-times-a-undeclared");
    CHECK_FALSE(hard.expected_plan_cost.has_value());
    CHECK_FALSE(ringdomain::find_builtin("neg-one-times-a-undeclared")->desk_scale);
    bool has_undeclared = false;
    for (const auto& atom : hard.problem.init)
        if (atom_text(atom) == "(undeclared x)") has_undeclared = true;
    CHECK(has_undeclared);
}

TEST_CASE("cancellation-law builtin is the reduced nondeterministic task") {
    auto inst = ringdomain::builtin_problem("cancellation-law");
    CHECK(inst.options.variant == Variant::FOND);
    CHECK(inst.domain.actions.size() == 9);
    REQUIRE(inst.problem.goal.size() == 2);
    CHECK(pddl::to_text(inst.problem.goal[0]) == "(equal b c)");
    CHECK(pddl::to_text(inst.problem.goal[1]) == "(not (contradiction))");
    bool hypothesis = false;
    for (const auto& atom : inst.problem.init)
        if (atom_text(atom) == "(equal ab ac)") hypothesis = true;
    CHECK(hypothesis);
    pddl::Task task = pddl::Task::make(inst.domain, inst.problem);
    CHECK_FALSE(task.deterministic);
}

TEST_CASE("display maps round-trip through their text form") {
    ringdomain::DisplayMap map;
    map.set(pddl::Symbol::intern("az"), "(a * 0)");
    map.set(pddl::Symbol::intern("minaz"), "(-(a * 0))");
    std::string text = ringdomain::to_text(map);
    ringdomain::DisplayMap back = ringdomain::parse_display_map(text);
    CHECK(back.entries() == map.entries());

    ringdomain::DisplayMap commented = ringdomain::parse_display_map(
        "# comment\n\n  az =  (a * 0) \n");
    CHECK(commented.display(pddl::Symbol::intern("az")) == "(a * 0)");

    CHECK_THROWS_AS(ringdomain::parse_display_map("az (a * 0)\n"), pddl::ParseError);
    CHECK_THROWS_AS(ringdomain::parse_display_map("= (a * 0)\n"), pddl::ParseError);
    CHECK_THROWS_AS(ringdomain::parse_display_map("az =\n"), pddl::ParseError);
}
