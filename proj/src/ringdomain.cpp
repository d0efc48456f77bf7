#include "ringforge/ringdomain.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace ringforge::ringdomain {

namespace {

struct ActionText {
    const char* name;
    int section;
    const char* text;
    const char* fond_text = nullptr;  // set when the FOND variant differs
    bool fond_only = false;
};

const char* const kSectionBanners[] = {
    "  ; SECTION 0: AXIOMS",
    "  ; SECTION 1: EQUALITY OPERATIONS",
    "  ; SECTION 2: ZERO OPERATIONS",
    "  ; SECTION 3: SUM OPERATIONS",
    "  ; SECTION 4: PRODUCT OPERATIONS",
    "  ; SECTION 5: ADDITIVE INVERSE OPERATIONS",
    "  ; SECTION 6: INTEGRAL DOMAIN CASE SPLIT",
};

const ActionText kActions[] = {
    {"addition-axiom", 0, R"(  (:action addition-axiom
    :parameters (?c ?a ?b)
    :precondition (and
      (undeclared ?c))
    :effect (and
      (issum ?c ?a ?b)
      (not (undeclared ?c)))))"},

    {"multiplication-axiom", 0, R"(  (:action multiplication-axiom
    :parameters (?c ?a ?b)
    :precondition (and
      (undeclared ?c))
    :effect (and
      (isprod ?c ?a ?b)
      (not (undeclared ?c)))))"},

    {"associative-addition-axiom", 0, R"(  (:action associative-addition-axiom
    :parameters (?s1 ?s2 ?xy ?yz ?x ?y ?z)
    :precondition (and
      (issum ?xy ?x ?y)
      (issum ?yz ?y ?z)
      (issum ?s1 ?xy ?z)
      (issum ?s2 ?x ?yz))
    :effect (and
      (equal ?s1 ?s2))))"},

    {"zero-axiom", 0, R"(  (:action zero-axiom
    :parameters (?s ?a ?z)
    :precondition (and
      (iszero ?z)
      (issum ?s ?a ?z))
    :effect (and
      (equal ?s ?a))))"},

    {"additive-inverse-axiom", 0, R"(  (:action additive-inverse-axiom
    :parameters (?z ?a ?mina)
    :precondition (and
      (iszero ?z)
      (isadditiveinverse ?a ?mina))
    :effect (and
      (issum ?z ?a ?mina))))"},

    {"commutative-addition-axiom", 0, R"(  (:action commutative-addition-axiom
    :parameters (?aplusb ?bplusa ?a ?b)
    :precondition (and
      (issum ?aplusb ?a ?b)
      (issum ?bplusa ?b ?a))
    :effect (and
      (equal ?aplusb ?bplusa))))"},

    {"associative-multiplication-axiom", 0, R"(  (:action associative-multiplication-axiom
    :parameters (?p1 ?p2 ?xy ?yz ?x ?y ?z)
    :precondition (and
      (isprod ?xy ?x ?y)
      (isprod ?yz ?y ?z)
      (isprod ?p1 ?xy ?z)
      (isprod ?p2 ?x ?yz))
    :effect (and
      (equal ?p1 ?p2))))"},

    {"multiplicative-identity-axiom", 0, R"(  (:action multiplicative-identity-axiom
    :parameters (?a ?i)
    :precondition (and
      (ismultidentity ?i))
    :effect (and
      (isprod ?a ?a ?i))))"},

    {"distributivity-axiom-v1", 0, R"(  (:action distributivity-axiom-v1
    :parameters (?p ?s ?bc ?ab ?ac ?a ?b ?c)
    :precondition (and
      (issum ?bc ?b ?c)
      (isprod ?p ?a ?bc)
      (isprod ?ab ?a ?b)
      (isprod ?ac ?a ?c)
      (issum ?s ?ab ?ac))
    :effect (and
      (equal ?p ?s))))"},

    {"distributivity-axiom-v2", 0, R"(  (:action distributivity-axiom-v2
    :parameters (?p ?s ?ab ?ac ?bc ?a ?b ?c)
    :precondition (and
      (issum ?ab ?a ?b)
      (isprod ?p ?ab ?c)
      (isprod ?ac ?a ?c)
      (isprod ?bc ?b ?c)
      (issum ?s ?ac ?bc))
    :effect (and
      (equal ?s ?p))))"},

    {"swap-equal", 1, R"(  (:action swap-equal
    :parameters (?a ?b)
    :precondition (and
      (equal ?a ?b))
    :effect (and
      (equal ?b ?a))))"},

    {"set-equal-to-self", 1, R"(  (:action set-equal-to-self
    :parameters (?a)
    :precondition ()
    :effect (and
      (equal ?a ?a))))"},

    {"set-equal-by-transitivity", 1, R"(  (:action set-equal-by-transitivity
    :parameters (?a ?b ?c)
    :precondition (and
      (equal ?a ?b)
      (equal ?b ?c))
    :effect (and
      (equal ?a ?c))))"},

    {"add-zero", 2, R"(  (:action add-zero
    :parameters (?s ?a ?z)
    :precondition (and
      (iszero ?z)
      (equal ?s ?a))
    :effect (and
      (issum ?s ?a ?z))))"},

    {"set-zero", 2, R"(  (:action set-zero
    :parameters (?a ?z)
    :precondition (and
      (iszero ?z)
      (equal ?a ?z))
    :effect (and
      (iszero ?a))))",
     R"(  (:action set-zero
    :parameters (?a ?z)
    :precondition (and
      (iszero ?z)
      (equal ?a ?z))
    :effect (and
      (iszero ?a)
      (when
        (assumenonzero ?a)
        (contradiction)))))"},

    {"set-zero-prod", 2, R"(  (:action set-zero-prod
    :parameters (?p ?a ?z)
    :precondition (and
      (allowzeroprod)
      (iszero ?z)
      (isprod ?p ?a ?z))
    :effect (and
      (iszero ?p)
      (equal ?p ?z))))"},

    {"set-sum", 3, R"(  (:action set-sum
    :parameters (?s ?x ?a ?b)
    :precondition (and
      (equal ?s ?x)
      (issum ?x ?a ?b))
    :effect (and
      (issum ?s ?a ?b))))"},

    {"replace-sum", 3, R"(  (:action replace-sum
    :parameters (?s ?a ?b ?a2)
    :precondition (and
      (issum ?s ?a ?b)
      (equal ?a ?a2))
    :effect (and
      (issum ?s ?a2 ?b))))"},

    {"swap-sum", 3, R"(  (:action swap-sum
    :parameters (?s ?a ?b)
    :precondition (and
      (issum ?s ?a ?b))
    :effect (and
      (issum ?s ?b ?a))))"},

    {"set-equal-by-sum", 3, R"(  (:action set-equal-by-sum
    :parameters (?s1 ?s2 ?a ?b)
    :precondition (and
      (issum ?s1 ?a ?b)
      (issum ?s2 ?a ?b))
    :effect (and
      (equal ?s1 ?s2))))"},

    {"add-element-to-both-sides-of-equality", 3,
     R"(  (:action add-element-to-both-sides-of-equality
    :parameters (?s1 ?s2 ?a ?b ?c)
    :precondition (and
      (equal ?a ?b)
      (issum ?s1 ?a ?c)
      (issum ?s2 ?b ?c))
    :effect (and
      (equal ?s1 ?s2))))"},

    {"set-prod", 4, R"(  (:action set-prod
    :parameters (?p ?x ?a ?b)
    :precondition (and
      (equal ?p ?x)
      (isprod ?x ?a ?b))
    :effect (and
      (isprod ?p ?a ?b))))"},

    {"replace-prod", 4, R"(  (:action replace-prod
    :parameters (?p ?a ?b ?a2)
    :precondition (and
      (isprod ?p ?a ?b)
      (equal ?a ?a2))
    :effect (and
      (isprod ?p ?a2 ?b))))"},

    {"swap-prod", 4, R"(  (:action swap-prod
    :parameters (?p ?a ?b)
    :precondition (and
      (isprod ?p ?a ?b))
    :effect (and
      (isprod ?p ?b ?a))))"},

    {"set-equal-by-prod", 4, R"(  (:action set-equal-by-prod
    :parameters (?p1 ?p2 ?a ?b)
    :precondition (and
      (isprod ?p1 ?a ?b)
      (isprod ?p2 ?a ?b))
    :effect (and
      (equal ?p1 ?p2))))"},

    {"multipy-element-both-sides-of-equality", 4,
     R"(  (:action multipy-element-both-sides-of-equality
    :parameters (?p1 ?p2 ?a ?b ?c)
    :precondition (and
      (equal ?a ?b)
      (isprod ?p1 ?a ?c)
      (isprod ?p2 ?b ?c))
    :effect (and
      (equal ?p1 ?p2))))"},

    {"reduce-additive-inverse", 5, R"(  (:action reduce-additive-inverse
    :parameters (?x ?c ?s ?b ?minc)
    :precondition (and
      (issum ?x ?c ?s)
      (issum ?s ?b ?minc)
      (isadditiveinverse ?minc ?c))
    :effect (and
      (equal ?x ?b))))"},

    {"factor-out-neg", 5, R"(  (:action factor-out-neg
    :parameters (?p ?minp ?a ?b ?mina)
    :precondition (and
      (isprod ?p ?a ?b)
      (isadditiveinverse ?a ?mina)
      (isprod ?minp ?mina ?b))
    :effect (and
      (isadditiveinverse ?p ?minp))))"},

    {"integraldom-axiom", 6, nullptr, R"(  (:action integraldom-axiom
    :parameters (?ab ?a ?b)
    :precondition (and
      (isprod ?ab ?a ?b)
      (iszero ?ab))
    :effect (oneof
      (and
        (when
          (assumenonzero ?a)
          (contradiction))
        (iszero ?a)
        (when
          (assumenonzero ?b)
          (contradiction))
        (iszero ?b))
      (and
        (when
          (assumenonzero ?a)
          (contradiction))
        (iszero ?a)
        (when
          (assumezero ?b)
          (contradiction))
        (not (iszero ?b)))
      (and
        (when
          (assumezero ?a)
          (contradiction))
        (not (iszero ?a))
        (when
          (assumenonzero ?b)
          (contradiction))
        (iszero ?b)))))",
     true},
};

const char* kPredicatesBlock = R"(  (:predicates
    (equal ?a ?b)
    (issum ?a ?b ?c)
    (iszero ?z)
    (isprod ?ab ?a ?b)
    (isadditiveinverse ?a ?addinva)
    (ismultidentity ?i)
    (assumenonzero ?a)
    (assumezero ?a)
    (undeclared ?a)
    (allowzeroprod)
    (contradiction)))";

}  // namespace

const std::vector<std::string>& known_action_names(Variant variant) {
    static const std::vector<std::string> fod = [] {
        std::vector<std::string> names;
        for (const ActionText& a : kActions)
            if (!a.fond_only) names.push_back(a.name);
        return names;
    }();
    static const std::vector<std::string> fond = [] {
        std::vector<std::string> names;
        for (const ActionText& a : kActions) names.push_back(a.name);
        return names;
    }();
    return variant == Variant::FOD ? fod : fond;
}

std::string generate_domain_text(const DomainOptions& options) {
    const bool fond = options.variant == Variant::FOND;
    if (options.action_subset) {
        const auto& known = known_action_names(options.variant);
        for (const std::string& name : *options.action_subset)
            if (std::find(known.begin(), known.end(), name) == known.end())
                throw std::invalid_argument(fond || name != "integraldom-axiom"
                                                ? "unknown action name: " + name
                                                : "integraldom-axiom requires the "
                                                  "nondeterministic variant");
    }
    auto included = [&](const char* name) {
        if (!options.action_subset) return true;
        return std::find(options.action_subset->begin(), options.action_subset->end(), name) !=
               options.action_subset->end();
    };

    std::string out;
    out += fond ? "; Integral-domain axioms and rewriting steps, with a oneof case\n"
                  "; split and contradiction tracking for assumption-based closure.\n"
                : "; Commutative-ring axioms and rewriting steps. Deterministic:\n"
                  "; every action has a single outcome.\n";
    out += "(define (domain ";
    out += fond ? "integral-domain" : "commutative-ring";
    out += ")\n  (:requirements :strips :negative-preconditions";
    if (fond) out += " :conditional-effects :non-deterministic";
    out += ")\n";
    out += kPredicatesBlock;
    out += "\n";

    int last_section = -1;
    for (const ActionText& action : kActions) {
        if (action.fond_only && !fond) continue;
        if (!included(action.name)) continue;
        const char* text = (fond && action.fond_text) ? action.fond_text : action.text;
        if (action.section != last_section) {
            out += "\n";
            out += kSectionBanners[action.section];
            out += "\n";
            last_section = action.section;
        } else {
            out += "\n";
        }
        out += text;
        out += "\n";
    }
    out += ")\n";
    return out;
}

pddl::DomainModel generate_domain(const DomainOptions& options) {
    return pddl::parse_domain(generate_domain_text(options));
}

void DisplayMap::set(pddl::Symbol name, std::string display) {
    entries_[name] = std::move(display);
}

const std::string& DisplayMap::display(pddl::Symbol name) const {
    auto it = entries_.find(name);
    return it == entries_.end() ? name.text() : it->second;
}

std::string to_text(const DisplayMap& map) {
    std::string out = "# object display expressions\n";
    for (const auto& [name, display] : map.entries())
        out += name.text() + " = " + display + "\n";
    return out;
}

DisplayMap parse_display_map(std::string_view text) {
    DisplayMap map;
    int line_no = 0;
    std::istringstream in{std::string(text)};
    for (std::string line; std::getline(in, line);) {
        ++line_no;
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos || line[start] == '#') continue;
        std::size_t eq = line.find('=', start);
        if (eq == std::string::npos)
            throw pddl::ParseError("expected NAME = EXPRESSION", line_no, 1);
        std::string name = line.substr(start, eq - start);
        name.erase(name.find_last_not_of(" \t") + 1);
        if (name.empty()) throw pddl::ParseError("missing object name", line_no, 1);
        std::string display = line.substr(eq + 1);
        display.erase(0, display.find_first_not_of(" \t"));
        display.erase(display.find_last_not_of(" \t\r") + 1);
        if (display.empty()) throw pddl::ParseError("missing display expression", line_no, 1);
        for (char c : name)
            if (std::isspace(static_cast<unsigned char>(c)))
                throw pddl::ParseError("object names cannot contain spaces", line_no, 1);
        map.set(pddl::Symbol::intern(name), std::move(display));
    }
    return map;
}

std::pair<pddl::ProblemModel, DisplayMap> build_problem(
    const std::vector<RingElementDecl>& elements, std::vector<pddl::GroundLiteral> goal,
    const DomainOptions& options, std::string_view problem_name,
    std::vector<pddl::GroundAtom> extra_init) {
    std::set<pddl::Symbol> names;
    for (const RingElementDecl& e : elements)
        if (!names.insert(e.name).second)
            throw std::invalid_argument("duplicate element name: " + e.name.text());

    auto check_ref = [&](pddl::Symbol ref, const char* what) {
        if (!names.count(ref))
            throw std::invalid_argument(std::string(what) + " references undeclared element " +
                                        ref.text());
    };

    pddl::ProblemModel problem;
    problem.name = pddl::Symbol::intern(problem_name);
    problem.domain_name = pddl::Symbol::intern(
        options.variant == Variant::FOND ? "integral-domain" : "commutative-ring");

    DisplayMap display;
    auto atom = [](const char* pred, std::initializer_list<pddl::Symbol> args) {
        pddl::GroundAtom a;
        a.predicate = pddl::Symbol::intern(pred);
        a.args.assign(args.begin(), args.end());
        return a;
    };

    for (const RingElementDecl& e : elements) {
        if (e.display.empty())
            throw std::invalid_argument("element " + e.name.text() + " has an empty display");
        bool structural = e.zero || e.multiplicative_identity || e.assumed_nonzero ||
                          e.assumed_zero || !e.product_of.empty() || !e.sum_of.empty() ||
                          !e.additive_inverse_of.empty();
        if (e.undeclared && structural)
            throw std::invalid_argument("undeclared element " + e.name.text() +
                                        " cannot carry other facts");
        problem.objects.push_back(e.name);
        display.set(e.name, e.display);

        if (e.zero) problem.init.push_back(atom("iszero", {e.name}));
        if (e.multiplicative_identity) problem.init.push_back(atom("ismultidentity", {e.name}));
        if (e.assumed_nonzero) problem.init.push_back(atom("assumenonzero", {e.name}));
        if (e.assumed_zero) problem.init.push_back(atom("assumezero", {e.name}));
        if (e.undeclared) problem.init.push_back(atom("undeclared", {e.name}));
        for (const auto& [a, b] : e.product_of) {
            check_ref(a, "product");
            check_ref(b, "product");
            problem.init.push_back(atom("isprod", {e.name, a, b}));
        }
        for (const auto& [a, b] : e.sum_of) {
            check_ref(a, "sum");
            check_ref(b, "sum");
            problem.init.push_back(atom("issum", {e.name, a, b}));
        }
        for (pddl::Symbol x : e.additive_inverse_of) {
            check_ref(x, "inverse");
            problem.init.push_back(atom("isadditiveinverse", {x, e.name}));
            problem.init.push_back(atom("isadditiveinverse", {e.name, x}));
        }
    }

    if (options.allow_zero_prod) problem.init.push_back(atom("allowzeroprod", {}));
    for (pddl::GroundAtom& a : extra_init) {
        for (pddl::Symbol arg : a.args) check_ref(arg, "init atom");
        problem.init.push_back(std::move(a));
    }

    pddl::DomainModel domain = generate_domain(options);
    for (const pddl::GroundLiteral& lit : goal) {
        const pddl::PredicateDecl* decl = domain.find_predicate(lit.atom.predicate);
        if (!decl || decl->arity() != lit.atom.args.size())
            throw std::invalid_argument("goal uses unknown predicate " +
                                        lit.atom.predicate.text() + "/" +
                                        std::to_string(lit.atom.args.size()));
        for (pddl::Symbol arg : lit.atom.args) check_ref(arg, "goal");
    }
    problem.goal = std::move(goal);
    return {std::move(problem), std::move(display)};
}

namespace {

pddl::Symbol sym(const char* text) { return pddl::Symbol::intern(text); }

RingElementDecl elem(const char* name, const char* display) {
    RingElementDecl e;
    e.name = sym(name);
    e.display = display;
    return e;
}

pddl::GroundLiteral lit(const char* pred, std::initializer_list<const char*> args,
                        bool negated = false) {
    pddl::GroundLiteral l;
    l.atom.predicate = sym(pred);
    for (const char* a : args) l.atom.args.push_back(sym(a));
    l.negated = negated;
    return l;
}

std::vector<BuiltinProblem> make_builtins() {
    std::vector<BuiltinProblem> all;

    {
        BuiltinProblem p;
        p.key = "zero-sum";
        p.note = "0 = 0 + 0: the zero element is a sum of itself with itself";
        p.solver_hint = "bfs";
        RingElementDecl zero = elem("zero", "0");
        zero.zero = true;
        p.elements = {zero};
        p.goal = {lit("issum", {"zero", "zero", "zero"})};
        all.push_back(std::move(p));
    }

    {
        BuiltinProblem p;
        p.key = "unique-additive-inverse";
        p.note = "if a + b1 = 0 and a + b2 = 0 then b1 = b2";
        p.expected_plan_cost = 7;
        p.solver_hint = "bfs";
        RingElementDecl a = elem("a", "a");
        RingElementDecl b1 = elem("b1", "b1");
        RingElementDecl b2 = elem("b2", "b2");
        RingElementDecl zero = elem("zero", "0");
        zero.zero = true;
        zero.sum_of = {{sym("a"), sym("b1")}, {sym("a"), sym("b2")}};
        p.elements = {a, b1, b2, zero};
        p.goal = {lit("equal", {"b1", "b2"})};
        all.push_back(std::move(p));
    }

    {
        BuiltinProblem p;
        p.key = "a-times-zero";
        p.note = "a * 0 = 0, using one undeclared helper element";
        p.expected_plan_cost = 9;
        p.solver_hint = "gbfs";
        RingElementDecl z = elem("z", "0");
        z.zero = true;
        RingElementDecl a = elem("a", "a");
        RingElementDecl mina = elem("mina", "(-a)");
        RingElementDecl az = elem("az", "(a * 0)");
        az.product_of = {{sym("a"), sym("z")}};
        RingElementDecl minaz = elem("minaz", "(-(a * 0))");
        minaz.product_of = {{sym("mina"), sym("z")}};
        minaz.additive_inverse_of = {sym("az")};
        RingElementDecl x = elem("x", "x");
        x.undeclared = true;
        p.elements = {z, a, mina, az, minaz, x};
        p.goal = {lit("equal", {"az", "z"})};
        all.push_back(std::move(p));
    }

    auto neg_one_elements = [](bool with_helper_sum) {
        std::vector<RingElementDecl> elements;
        RingElementDecl zero = elem("zero", "0");
        zero.zero = true;
        RingElementDecl a = elem("a", "a");
        RingElementDecl one = elem("one", "1");
        one.multiplicative_identity = true;
        RingElementDecl mina = elem("mina", "(-a)");
        mina.additive_inverse_of = {sym("a")};
        RingElementDecl minone = elem("minone", "(-1)");
        minone.additive_inverse_of = {sym("one")};
        RingElementDecl itimesa = elem("itimesa", "(1 * a)");
        itimesa.product_of = {{sym("one"), sym("a")}};
        RingElementDecl minonea = elem("minonea", "((-1) * a)");
        minonea.product_of = {{sym("minone"), sym("a")}};
        minonea.additive_inverse_of = {sym("itimesa")};
        RingElementDecl zerotimesa = elem("zerotimesa", "(0 * a)");
        zerotimesa.product_of = {{sym("zero"), sym("a")}, {sym("a"), sym("zero")}};
        elements = {zero, a, one, mina, minone, itimesa, minonea, zerotimesa};
        if (with_helper_sum) {
            RingElementDecl itapmia = elem("itapmia", "((1 * a) + ((-1) * a))");
            itapmia.sum_of = {{sym("itimesa"), sym("minonea")}};
            elements.push_back(itapmia);
        } else {
            RingElementDecl x = elem("x", "x");
            x.undeclared = true;
            elements.push_back(x);
        }
        return elements;
    };

    {
        BuiltinProblem p;
        p.key = "neg-one-times-a";
        p.note = "(-1) * a = -a, with the helper element (1*a) + ((-1)*a) declared";
        p.expected_plan_cost = 14;
        p.solver_hint = "gbfs";
        p.options.allow_zero_prod = true;
        p.elements = neg_one_elements(true);
        p.goal = {lit("equal", {"minonea", "mina"})};
        all.push_back(std::move(p));
    }

    {
        BuiltinProblem p;
        p.key = "neg-one-times-a-undeclared";
        p.note = "(-1) * a = -a with the helper element left undeclared; known to "
                 "exhaust desk-scale budgets";
        p.solver_hint = "gbfs";
        p.desk_scale = false;
        p.options.allow_zero_prod = true;
        p.elements = neg_one_elements(false);
        p.goal = {lit("equal", {"minonea", "mina"})};
        all.push_back(std::move(p));
    }

    {
        BuiltinProblem p;
        p.key = "zero-diff-implies-equal";
        p.note = "if a + (-b) = 0 then a = b";
        p.solver_hint = "bfs";
        RingElementDecl zero = elem("zero", "0");
        zero.zero = true;
        zero.sum_of = {{sym("a"), sym("minb")}};
        RingElementDecl a = elem("a", "a");
        RingElementDecl b = elem("b", "b");
        RingElementDecl minb = elem("minb", "(-b)");
        minb.additive_inverse_of = {sym("b")};
        p.elements = {zero, a, b, minb};
        p.goal = {lit("equal", {"a", "b"})};
        all.push_back(std::move(p));
    }

    {
        BuiltinProblem p;
        p.key = "cancellation-law";
        p.note = "in an integral domain, a != 0 and ab = ac imply b = c";
        p.solver_hint = "fond";
        p.options.variant = Variant::FOND;
        p.options.action_subset = std::vector<std::string>{
            "set-equal-to-self",
            "distributivity-axiom-v1",
            "additive-inverse-axiom",
            "add-element-to-both-sides-of-equality",
            "set-zero",
            "integraldom-axiom",
            "add-zero",
            "reduce-additive-inverse",
            "swap-equal",
        };
        RingElementDecl z = elem("z", "0");
        z.zero = true;
        RingElementDecl a = elem("a", "a");
        a.assumed_nonzero = true;
        RingElementDecl b = elem("b", "b");
        RingElementDecl c = elem("c", "c");
        RingElementDecl minc = elem("minc", "(-c)");
        minc.additive_inverse_of = {sym("c")};
        RingElementDecl ab = elem("ab", "(a * b)");
        ab.product_of = {{sym("a"), sym("b")}};
        RingElementDecl ac = elem("ac", "(a * c)");
        ac.product_of = {{sym("a"), sym("c")}};
        RingElementDecl minac = elem("minac", "(-(a * c))");
        minac.product_of = {{sym("a"), sym("minc")}};
        minac.additive_inverse_of = {sym("ac")};
        RingElementDecl bminc = elem("bminc", "(b + (-c))");
        bminc.sum_of = {{sym("b"), sym("minc")}};
        RingElementDecl abminc = elem("abminc", "(a * (b + (-c)))");
        abminc.product_of = {{sym("a"), sym("bminc")}};
        RingElementDecl abmac = elem("abmac", "((a * b) + (-(a * c)))");
        abmac.sum_of = {{sym("ab"), sym("minac")}};
        p.elements = {z, a, b, c, minc, ab, ac, minac, bminc, abminc, abmac};
        pddl::GroundAtom hypothesis;
        hypothesis.predicate = sym("equal");
        hypothesis.args = {sym("ab"), sym("ac")};
        p.extra_init = {hypothesis};
        p.goal = {lit("equal", {"b", "c"}), lit("contradiction", {}, true)};
        all.push_back(std::move(p));
    }

    return all;
}

}  // namespace

const std::vector<BuiltinProblem>& builtin_problems() {
    static const std::vector<BuiltinProblem> all = make_builtins();
    return all;
}

const BuiltinProblem* find_builtin(std::string_view key) {
    for (const BuiltinProblem& p : builtin_problems())
        if (p.key == key) return &p;
    return nullptr;
}

BuiltinInstance builtin_problem(std::string_view key) {
    const BuiltinProblem* entry = find_builtin(key);
    if (!entry) throw std::out_of_range("unknown builtin problem: " + std::string(key));
    BuiltinInstance inst;
    inst.options = entry->options;
    inst.expected_plan_cost = entry->expected_plan_cost;
    inst.domain = generate_domain(entry->options);
    auto [problem, display] =
        build_problem(entry->elements, entry->goal, entry->options, entry->key,
                      entry->extra_init);
    inst.problem = std::move(problem);
    inst.display = std::move(display);
    return inst;
}

}  // namespace ringforge::ringdomain
