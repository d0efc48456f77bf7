#include "doctest.h"
#include "ringforge/pddl.hpp"
#include "support/minigen.hpp"
#include "support/oracles.hpp"

#include <random>

using namespace ringforge;

namespace {

pddl::Task make_task(const char* domain_text, const char* problem_text) {
    pddl::DomainModel d = pddl::parse_domain(domain_text);
    pddl::ProblemModel p = pddl::parse_problem(problem_text, d);
    return pddl::Task::make(std::move(d), std::move(p));
}

pddl::GroundAtom ga(const char* pred, std::initializer_list<const char*> args) {
    pddl::GroundAtom atom;
    atom.predicate = pddl::Symbol::intern(pred);
    for (const char* a : args) atom.args.push_back(pddl::Symbol::intern(a));
    return atom;
}

std::vector<std::string> action_texts(const std::vector<pddl::GroundAction>& actions) {
    std::vector<std::string> out;
    for (const auto& a : actions) out.push_back(a.to_text());
    return out;
}

}  // namespace

TEST_CASE("task construction derives static predicates and orderings") {
    pddl::Task task = make_task(
        "(define (domain t) (:predicates (p ?x) (q ?x) (r ?x) (s ?x))"
        " (:action b-act :parameters (?x) :precondition (q ?x) :effect (and (p ?x)))"
        " (:action a-act :parameters (?x) :precondition (p ?x)"
        "  :effect (and (when (r ?x) (not (s ?x))))))",
        "(define (problem tp) (:domain t) (:objects zebra apple mango)"
        " (:init (q zebra)) (:goal (and (p zebra))))");

    CHECK(task.deterministic);
    CHECK(task.is_static(pddl::Symbol::intern("q")));
    CHECK(task.is_static(pddl::Symbol::intern("r")));
    CHECK_FALSE(task.is_static(pddl::Symbol::intern("p")));
    CHECK_FALSE(task.is_static(pddl::Symbol::intern("s")));

    REQUIRE(task.schema_order.size() == 2);
    CHECK(task.domain.actions[task.schema_order[0]].name.text() == "a-act");
    CHECK(task.domain.actions[task.schema_order[1]].name.text() == "b-act");

    REQUIRE(task.objects_by_name.size() == 3);
    CHECK(task.objects_by_name[0].text() == "apple");
    CHECK(task.object_rank(pddl::Symbol::intern("zebra")) == 2);
    CHECK_THROWS_AS(task.object_rank(pddl::Symbol::intern("banana")), std::invalid_argument);
}

TEST_CASE("unconstrained parameters range over the object universe") {
    pddl::Task task = make_task(
        "(define (domain t) (:predicates (iszero ?a) (equal ?a ?b))"
        " (:action set-equal-to-self :parameters (?a) :precondition ()"
        "  :effect (and (equal ?a ?a))))",
        "(define (problem tp) (:domain t) (:objects z a)"
        " (:init (iszero z)) (:goal (and (equal a a))))");

    auto actions = pddl::applicable_actions(task.init, task);
    CHECK(action_texts(actions) ==
          std::vector<std::string>{"(set-equal-to-self a)", "(set-equal-to-self z)"});
}

TEST_CASE("joins bind shared variables across precondition literals") {
    pddl::Task task = make_task(
        "(define (domain t) (:predicates (iszero ?a) (issum ?s ?a ?b) (equal ?a ?b))"
        " (:action zero-axiom :parameters (?s ?a ?z)"
        "  :precondition (and (iszero ?z) (issum ?s ?a ?z)) :effect (and (equal ?s ?a))))",
        "(define (problem tp) (:domain t) (:objects z a b s1)"
        " (:init (iszero z) (issum s1 a z) (issum s1 b a) (issum z z z))"
        " (:goal (and (equal s1 a))))");

    auto actions = pddl::applicable_actions(task.init, task);
    CHECK(action_texts(actions) ==
          std::vector<std::string>{"(zero-axiom s1 a z)", "(zero-axiom z z z)"});
}

TEST_CASE("negative preconditions filter complete bindings") {
    pddl::Task task = make_task(
        "(define (domain t) (:predicates (p ?x) (blocked ?x) (q ?x))"
        " (:action go :parameters (?x) :precondition (and (p ?x) (not (blocked ?x)))"
        "  :effect (and (q ?x))))",
        "(define (problem tp) (:domain t) (:objects a b c)"
        " (:init (p a) (p b) (blocked b)) (:goal (and (q a))))");

    auto actions = pddl::applicable_actions(task.init, task);
    CHECK(action_texts(actions) == std::vector<std::string>{"(go a)"});
}

TEST_CASE("constants in preconditions unify like fixed terms") {
    pddl::Task task = make_task(
        "(define (domain t) (:predicates (edge ?a ?b) (mark ?x))"
        " (:action from-hub :parameters (?x) :precondition (edge hub ?x)"
        "  :effect (and (mark ?x))))",
        "(define (problem tp) (:domain t) (:objects hub a b)"
        " (:init (edge hub a) (edge b hub)) (:goal (and (mark a))))");

    auto actions = pddl::applicable_actions(task.init, task);
    CHECK(action_texts(actions) == std::vector<std::string>{"(from-hub a)"});
}

TEST_CASE("apply adds, deletes, and lets add win over delete") {
    pddl::Task task = make_task(
        "(define (domain t) (:predicates (p ?x) (q ?x) (keep ?x))"
        " (:action flip :parameters (?x) :precondition (p ?x)"
        "  :effect (and (q ?x) (not (p ?x))))"
        " (:action both :parameters (?x) :precondition ()"
        "  :effect (and (keep ?x) (not (keep ?x)))))",
        "(define (problem tp) (:domain t) (:objects a) (:init (p a) (keep a))"
        " (:goal (and (q a))))");

    const pddl::ActionSchema* flip = task.domain.find_action(pddl::Symbol::intern("flip"));
    const pddl::ActionSchema* both = task.domain.find_action(pddl::Symbol::intern("both"));
    pddl::GroundAction flip_a{flip, {pddl::Symbol::intern("a")}};
    pddl::GroundAction both_a{both, {pddl::Symbol::intern("a")}};

    pddl::State s1 = pddl::apply(task.init, flip_a);
    CHECK(s1.contains(ga("q", {"a"})));
    CHECK_FALSE(s1.contains(ga("p", {"a"})));
    CHECK(s1.contains(ga("keep", {"a"})));

    pddl::State s2 = pddl::apply(task.init, both_a);
    CHECK(s2 == task.init);
}

TEST_CASE("conditional effects read the pre-state") {
    pddl::Task task = make_task(
        "(define (domain t) (:predicates (p ?x) (q ?x) (r ?x))"
        " (:action chain :parameters (?x) :precondition ()"
        "  :effect (and (p ?x) (when (p ?x) (q ?x))))"
        " (:action observe :parameters (?x) :precondition ()"
        "  :effect (and (not (p ?x)) (when (p ?x) (r ?x)))))",
        "(define (problem tp) (:domain t) (:objects a) (:init) (:goal (and)))");

    pddl::Symbol a = pddl::Symbol::intern("a");
    const pddl::ActionSchema* chain = task.domain.find_action(pddl::Symbol::intern("chain"));
    const pddl::ActionSchema* observe = task.domain.find_action(pddl::Symbol::intern("observe"));

    pddl::State empty;
    pddl::State after_chain = pddl::apply(empty, pddl::GroundAction{chain, {a}});
    CHECK(after_chain.contains(ga("p", {"a"})));
    CHECK_FALSE(after_chain.contains(ga("q", {"a"})));

    pddl::State with_p({ga("p", {"a"})});
    pddl::State after_observe = pddl::apply(with_p, pddl::GroundAction{observe, {a}});
    CHECK_FALSE(after_observe.contains(ga("p", {"a"})));
    CHECK(after_observe.contains(ga("r", {"a"})));
}

TEST_CASE("oneof branches select by outcome index") {
    pddl::Task task = make_task(
        "(define (domain t) (:predicates (p ?x) (q ?x))"
        " (:action toss :parameters (?x) :precondition ()"
        "  :effect (oneof (and (p ?x)) (and (q ?x)))))",
        "(define (problem tp) (:domain t) (:objects a) (:init) (:goal (and)))");

    CHECK_FALSE(task.deterministic);
    const pddl::ActionSchema* toss = task.domain.find_action(pddl::Symbol::intern("toss"));
    pddl::GroundAction g{toss, {pddl::Symbol::intern("a")}};
    CHECK(pddl::outcome_count(g) == 2);

    pddl::State empty;
    CHECK(pddl::apply(empty, g, 0).contains(ga("p", {"a"})));
    CHECK(pddl::apply(empty, g, 1).contains(ga("q", {"a"})));
    CHECK_THROWS_AS(pddl::apply(empty, g, 2), std::out_of_range);
}

TEST_CASE("goal satisfaction handles positive and negative literals") {
    pddl::Task task = make_task(
        "(define (domain t) (:predicates (equal ?a ?b) (contradiction))"
        " (:action noop :parameters () :precondition () :effect (and (contradiction))))",
        "(define (problem tp) (:domain t) (:objects b c) (:init)"
        " (:goal (and (equal b c) (not (contradiction)))))");

    pddl::State no;
    CHECK_FALSE(pddl::goal_satisfied(no, task));
    pddl::State yes({ga("equal", {"b", "c"})});
    CHECK(pddl::goal_satisfied(yes, task));
    pddl::State spoiled({ga("equal", {"b", "c"}), ga("contradiction", {})});
    CHECK_FALSE(pddl::goal_satisfied(spoiled, task));
}

TEST_CASE("frame property: state change stays within the selected branch") {
    std::mt19937 rng(20240817);
    minigen::Options opt;
    opt.allow_oneof = true;
    for (int round = 0; round < 50; ++round) {
        pddl::Task task = minigen::random_task(rng, opt);
        pddl::State state = task.init;
        for (int step = 0; step < 4; ++step) {
            auto actions = pddl::applicable_actions(state, task);
            if (actions.empty()) break;
            const pddl::GroundAction& action = actions[step % actions.size()];
            for (int outcome = 0; outcome < pddl::outcome_count(action); ++outcome) {
                pddl::State next = pddl::apply(state, action, outcome);
                pddl::GroundBranch branch = pddl::instantiate_branch(action, outcome);
                std::vector<pddl::GroundAtom> mentioned;
                for (const auto& l : branch.literals) mentioned.push_back(l.atom);
                for (const auto& ce : branch.conditionals)
                    for (const auto& l : ce.body) mentioned.push_back(l.atom);
                for (const auto& atom : next)
                    if (!state.contains(atom))
                        CHECK(std::find(mentioned.begin(), mentioned.end(), atom) !=
                              mentioned.end());
                for (const auto& atom : state)
                    if (!next.contains(atom))
                        CHECK(std::find(mentioned.begin(), mentioned.end(), atom) !=
                              mentioned.end());
            }
            state = pddl::apply(state, action, 0);
        }
    }
}

TEST_CASE("lazy join matches brute force on random mini-tasks") {
    std::mt19937 rng(987654321);
    minigen::Options opt;
    opt.allow_oneof = true;
    int compared = 0;
    for (int round = 0; round < 120; ++round) {
        pddl::Task task = minigen::random_task(rng, opt);
        pddl::State state = task.init;
        for (int step = 0; step < 3; ++step) {
            auto fast = pddl::applicable_actions(state, task);
            auto slow = oracles::brute_force_applicable(state, task);
            REQUIRE(action_texts(fast) == action_texts(slow));
            ++compared;
            if (fast.empty()) break;
            state = pddl::apply(state, fast[compared % fast.size()], 0);
        }
    }
    CHECK(compared >= 120);
}

TEST_CASE("random models survive a serialize/reparse round-trip") {
    std::mt19937 rng(1357924680);
    minigen::Options opt;
    opt.allow_oneof = true;
    for (int round = 0; round < 60; ++round) {
        pddl::Task task = minigen::random_task(rng, opt);
        CHECK(pddl::parse_domain(pddl::to_pddl(task.domain)) == task.domain);
        CHECK(pddl::parse_problem(pddl::to_pddl(task.problem), task.domain) == task.problem);
    }
}

TEST_CASE("applicable_actions is deterministic across repeated calls") {
    std::mt19937 rng(24681012);
    for (int round = 0; round < 20; ++round) {
        pddl::Task task = minigen::random_task(rng);
        auto first = pddl::applicable_actions(task.init, task);
        auto second = pddl::applicable_actions(task.init, task);
        CHECK(action_texts(first) == action_texts(second));
    }
}

TEST_CASE("exhaustive grounding enumerates and caps") {
    pddl::Task task = make_task(
        "(define (domain t) (:predicates (p ?x ?y))"
        " (:action a2 :parameters (?x ?y) :precondition () :effect (and (p ?x ?y)))"
        " (:action a1 :parameters (?x) :precondition () :effect (and (p ?x ?x))))",
        "(define (problem tp) (:domain t) (:objects a b c) (:init) (:goal (and)))");

    pddl::GroundingReport all = pddl::ground_all(task, 1000);
    CHECK_FALSE(all.capped);
    CHECK(all.enumerated == 3 + 9);
    REQUIRE(all.actions.size() == 12);
    CHECK(all.actions.front().to_text() == "(a1 a)");
    CHECK(all.actions.back().to_text() == "(a2 c c)");

    pddl::GroundingReport capped = pddl::ground_all(task, 5);
    CHECK(capped.capped);
    CHECK(capped.enumerated == 5);
    CHECK(capped.actions.size() == 5);
}
