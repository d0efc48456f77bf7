#include "ringforge/proof.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

// Proof rendering. Each action line is followed by its consequence in
// display algebra, produced from a per-schema template; `oneof`
// branches open "Case k:" sections the way the policy listings in the
// literature do. Execution trees can also be exported as DOT.

namespace ringforge::proof {

namespace {

constexpr const char* kAsciiArrow = "=>";
constexpr const char* kUnicodeArrow = "⟹";  // LONG RIGHTWARDS DOUBLE ARROW

// Shipped consequence templates for the ring domains. Kept in the
// parse_templates text format so a custom table can start from a copy.
constexpr const char* kDefaultTemplatesText = R"(# consequence templates: {?param} expands to the display expression
# of the object bound to that parameter
addition-axiom: {?c} = {?a} + {?b}
multiplication-axiom: {?c} = {?a} * {?b}
associative-addition-axiom: ({?x} + {?y}) + {?z} = {?x} + ({?y} + {?z})
zero-axiom: {?s} = {?a}
additive-inverse-axiom: {?z} = {?a} + {?mina}
commutative-addition-axiom: {?aplusb} = {?bplusa} (commutativity of addition)
associative-multiplication-axiom: ({?x} * {?y}) * {?z} = {?x} * ({?y} * {?z})
multiplicative-identity-axiom: {?a} = {?a} * {?i}
distributivity-axiom-v1: {?a} * ({?b} + {?c}) = {?ab} + {?ac}
distributivity-axiom-v2: ({?a} + {?b}) * {?c} = {?ac} + {?bc}
swap-equal: {?b} = {?a}
set-equal-to-self: {?a} = {?a}
set-equal-by-transitivity: {?a} = {?c} (transitivity)
add-zero: {?s} = {?a} + {?z}
set-zero: {?a} = 0
set-zero-prod: {?p} = 0
set-sum: {?s} = {?a} + {?b}
replace-sum: {?s} = {?a2} + {?b}
swap-sum: {?s} = {?b} + {?a}
set-equal-by-sum: {?s1} = {?s2}
add-element-to-both-sides-of-equality: {?a} + {?c} = {?b} + {?c}
set-prod: {?p} = {?a} * {?b}
replace-prod: {?p} = {?a2} * {?b}
swap-prod: {?p} = {?b} * {?a}
set-equal-by-prod: {?p1} = {?p2}
multipy-element-both-sides-of-equality: {?a} * {?c} = {?b} * {?c}
reduce-additive-inverse: {?x} = {?b}
factor-out-neg: -({?p}) = {?minp}
integraldom-axiom: {?ab} = 0 => {?a} = 0 or {?b} = 0
)";

struct Names {
    pddl::Symbol equal = pddl::Symbol::intern("equal");
    pddl::Symbol iszero = pddl::Symbol::intern("iszero");
    pddl::Symbol issum = pddl::Symbol::intern("issum");
    pddl::Symbol isprod = pddl::Symbol::intern("isprod");
    pddl::Symbol contradiction = pddl::Symbol::intern("contradiction");
    pddl::Symbol assumenonzero = pddl::Symbol::intern("assumenonzero");
    pddl::Symbol assumezero = pddl::Symbol::intern("assumezero");
};

const Names& names() {
    static const Names n;
    return n;
}

std::string instantiate_template(const std::string& text, const pddl::GroundAction& action,
                                 const ringdomain::DisplayMap& display) {
    const std::vector<pddl::Symbol>& params = action.schema->params;
    std::string out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t open = text.find("{?", pos);
        if (open == std::string::npos) {
            out.append(text, pos, std::string::npos);
            break;
        }
        std::size_t close = text.find('}', open);
        if (close == std::string::npos) {
            out.append(text, pos, std::string::npos);
            break;
        }
        out.append(text, pos, open - pos);
        std::string name = text.substr(open + 2, close - open - 2);
        std::size_t index = 0;
        while (index < params.size() && params[index].text() != name) ++index;
        if (index < params.size() && index < action.args.size())
            out += display.display(action.args[index]);
        else
            out.append(text, open, close + 1 - open);  // unbound placeholder stays visible
        pos = close + 1;
    }
    return out;
}

std::string pretty_atom(const pddl::GroundAtom& atom, const ringdomain::DisplayMap& display) {
    const Names& n = names();
    auto arg = [&](std::size_t i) { return display.display(atom.args[i]); };
    if (atom.predicate == n.equal && atom.args.size() == 2) return arg(0) + " = " + arg(1);
    if (atom.predicate == n.iszero && atom.args.size() == 1) return arg(0) + " = 0";
    if (atom.predicate == n.issum && atom.args.size() == 3)
        return arg(0) + " = " + arg(1) + " + " + arg(2);
    if (atom.predicate == n.isprod && atom.args.size() == 3)
        return arg(0) + " = " + arg(1) + " * " + arg(2);
    if (atom.predicate == n.contradiction && atom.args.empty()) return "contradiction";
    return pddl::to_text(atom);
}

std::string pretty_literal(const pddl::GroundLiteral& lit, const ringdomain::DisplayMap& display) {
    if (!lit.negated) return pretty_atom(lit.atom, display);
    const Names& n = names();
    auto arg = [&](std::size_t i) { return display.display(lit.atom.args[i]); };
    if (lit.atom.predicate == n.equal && lit.atom.args.size() == 2)
        return arg(0) + " != " + arg(1);
    if (lit.atom.predicate == n.iszero && lit.atom.args.size() == 1) return arg(0) + " != 0";
    if (lit.atom.predicate == n.contradiction && lit.atom.args.empty()) return "no contradiction";
    return "not " + pretty_atom(lit.atom, display);
}

std::string pretty_goal(const std::vector<pddl::GroundLiteral>& goal,
                        const ringdomain::DisplayMap& display) {
    if (goal.empty()) return "nothing to prove";
    std::string out;
    for (std::size_t i = 0; i < goal.size(); ++i) {
        if (i) out += " and ";
        out += pretty_literal(goal[i], display);
    }
    return out;
}

bool salient(const pddl::GroundAtom& atom) {
    const Names& n = names();
    return atom.predicate == n.equal || atom.predicate == n.iszero ||
           atom.predicate == n.contradiction;
}

// The effect literals that actually take hold when `action` fires in
// `pre`, with the conditionals that triggered kept for the
// contradiction annotation.
struct AppliedEffects {
    std::vector<pddl::GroundLiteral> effects;
    std::vector<pddl::GroundConditional> fired_conditionals;
};

AppliedEffects apply_effects(const pddl::State& pre, const pddl::GroundAction& action,
                             int outcome) {
    pddl::GroundBranch branch = pddl::instantiate_branch(action, outcome);
    AppliedEffects applied;
    applied.effects = std::move(branch.literals);
    for (pddl::GroundConditional& cond : branch.conditionals) {
        if (!pddl::satisfies(pre, cond.condition)) continue;
        applied.effects.insert(applied.effects.end(), cond.body.begin(), cond.body.end());
        applied.fired_conditionals.push_back(std::move(cond));
    }
    return applied;
}

bool adds(const std::vector<pddl::GroundLiteral>& effects, pddl::Symbol predicate) {
    for (const pddl::GroundLiteral& lit : effects)
        if (!lit.negated && lit.atom.predicate == predicate) return true;
    return false;
}

// " => contradiction (assumed a nonzero)" when the step newly derives
// the contradiction, empty otherwise.
std::string contradiction_tail(const AppliedEffects& applied, const pddl::State& pre,
                               const ringdomain::DisplayMap& display) {
    const Names& n = names();
    if (!adds(applied.effects, n.contradiction)) return "";
    pddl::GroundAtom mark;
    mark.predicate = n.contradiction;
    if (pre.contains(mark)) return "";

    std::string reasons;
    for (const pddl::GroundConditional& cond : applied.fired_conditionals) {
        if (!adds(cond.body, n.contradiction)) continue;
        std::string clause;
        for (const pddl::GroundLiteral& lit : cond.condition) {
            if (!clause.empty()) clause += " and ";
            if (!lit.negated && lit.atom.predicate == n.assumenonzero && lit.atom.args.size() == 1)
                clause += "assumed " + display.display(lit.atom.args[0]) + " nonzero";
            else if (!lit.negated && lit.atom.predicate == n.assumezero &&
                     lit.atom.args.size() == 1)
                clause += "assumed " + display.display(lit.atom.args[0]) + " zero";
            else
                clause += pretty_literal(lit, display);
        }
        if (clause.empty()) continue;
        if (!reasons.empty()) reasons += "; ";
        reasons += clause;
    }
    std::string tail = " => contradiction";
    if (!reasons.empty()) tail += " (" + reasons + ")";
    return tail;
}

std::string raw_effects_text(const std::vector<pddl::GroundLiteral>& effects) {
    if (effects.empty()) return "no effect";
    std::string out;
    for (std::size_t i = 0; i < effects.size(); ++i) {
        if (i) out += ' ';
        out += pddl::to_text(effects[i]);
    }
    return out;
}

std::string case_text(const AppliedEffects& applied, const ringdomain::DisplayMap& display) {
    std::string out;
    for (const pddl::GroundLiteral& lit : applied.effects) {
        if (!salient(lit.atom)) continue;
        if (lit.atom.predicate == names().contradiction) continue;  // the tail covers it
        if (!out.empty()) out += " and ";
        out += pretty_literal(lit, display);
    }
    if (out.empty()) {
        for (const pddl::GroundLiteral& lit : applied.effects) {
            if (!out.empty()) out += " and ";
            out += pretty_literal(lit, display);
        }
    }
    return out.empty() ? "no effect" : out;
}

struct LineSink {
    std::string out;
    bool unicode = false;

    void line(std::string text) {
        if (unicode) {
            for (std::size_t pos = text.find(kAsciiArrow); pos != std::string::npos;
                 pos = text.find(kAsciiArrow, pos))
                text.replace(pos, 2, kUnicodeArrow);
        }
        out += text;
        out += '\n';
    }
};

struct PolicyRenderer {
    const planfond::ExecutionTree& tree;
    const ringdomain::DisplayMap& display;
    const RenderOptions& opts;
    const TemplateTable& templates;
    LineSink sink;
    std::size_t actions = 0;

    std::string consequence(const pddl::GroundAction& action) const {
        const std::string* text = templates.find(action.name());
        return text ? instantiate_template(*text, action, display) : action.to_text();
    }

    void walk(std::size_t index, const std::string& indent) {
        const planfond::ExecutionTree::Node& node = tree.nodes[index];
        if (node.leaf) {
            if (*node.leaf == planfond::LeafKind::DeadEnd)
                sink.line(indent + "=> dead end (no policy entry for this state)");
            return;
        }
        const pddl::GroundAction& action = *node.action;
        ++actions;
        sink.line(indent + action.to_text());

        bool branching = node.children.size() > 1;
        if (opts.raw_atoms) {
            if (branching)
                sink.line(indent + "=> oneof with " + std::to_string(node.children.size()) +
                          " outcomes");
            else
                sink.line(indent + "=> " +
                          raw_effects_text(apply_effects(node.state, action, 0).effects));
        } else {
            std::string line = indent + "=> " + consequence(action);
            if (!branching) line += contradiction_tail(apply_effects(node.state, action, 0),
                                                       node.state, display);
            sink.line(line);
        }

        if (!branching) {
            if (!node.children.empty()) walk(node.children[0], indent);
            return;
        }
        for (std::size_t k = 0; k < node.children.size(); ++k) {
            AppliedEffects applied = apply_effects(node.state, action, static_cast<int>(k));
            std::string line = indent + "Case " + std::to_string(k + 1) + ": ";
            if (opts.raw_atoms) {
                line += raw_effects_text(applied.effects);
            } else {
                line += case_text(applied, display);
                line += contradiction_tail(applied, node.state, display);
            }
            sink.line(line);
            walk(node.children[k], indent + "  ");
        }
    }
};

const TemplateTable& resolve_templates(const RenderOptions& opts) {
    return opts.templates ? *opts.templates : default_templates();
}

std::string escape_dot(const std::string& text) {
    std::string out;
    for (char c : text) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

}  // namespace

void TemplateTable::set(pddl::Symbol action, std::string text) {
    entries_[action] = std::move(text);
}

const std::string* TemplateTable::find(pddl::Symbol action) const {
    auto it = entries_.find(action);
    return it == entries_.end() ? nullptr : &it->second;
}

const TemplateTable& default_templates() {
    static const TemplateTable table = parse_templates(kDefaultTemplatesText);
    return table;
}

TemplateTable parse_templates(std::string_view text) {
    TemplateTable table;
    int line_no = 0;
    std::istringstream in{std::string(text)};
    for (std::string line; std::getline(in, line);) {
        ++line_no;
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos || line[start] == '#') continue;
        std::size_t colon = line.find(':', start);
        if (colon == std::string::npos)
            throw pddl::ParseError("expected ACTION-NAME: TEMPLATE", line_no, 1);
        std::string name = line.substr(start, colon - start);
        name.erase(name.find_last_not_of(" \t") + 1);
        if (name.empty()) throw pddl::ParseError("missing action name", line_no, 1);
        for (char c : name)
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_')
                throw pddl::ParseError("invalid action name character", line_no,
                                       static_cast<int>(start) + 1);
        std::string body = line.substr(colon + 1);
        body.erase(0, body.find_first_not_of(" \t"));
        body.erase(body.find_last_not_of(" \t\r") + 1);
        if (body.empty()) throw pddl::ParseError("missing template text", line_no, 1);
        table.set(pddl::Symbol::intern(name), std::move(body));
    }
    return table;
}

std::string render_proof(const pddl::Task& task, const planfod::Plan& plan,
                         const ringdomain::DisplayMap& display, const RenderOptions& opts) {
    const TemplateTable& templates = resolve_templates(opts);
    LineSink sink{std::string(), opts.unicode};
    sink.line("; problem: " + task.problem.name.text());
    sink.line("; goal: " + pretty_goal(task.goal, display));

    pddl::State state = task.init;
    for (const pddl::GroundAction& step : plan.steps) {
        sink.line(step.to_text());
        AppliedEffects applied = apply_effects(state, step, 0);
        if (opts.raw_atoms) {
            sink.line("=> " + raw_effects_text(applied.effects));
        } else {
            const std::string* text = templates.find(step.name());
            std::string line = "=> " + (text ? instantiate_template(*text, step, display)
                                             : step.to_text());
            line += contradiction_tail(applied, state, display);
            sink.line(line);
        }
        state = pddl::apply(state, step);
    }
    sink.line("; cost = " + std::to_string(plan.cost()) + " (unit cost)");
    return std::move(sink.out);
}

std::string render_proof(const pddl::Task& task, const planfond::Policy& policy,
                         const planfond::ExecutionTree& tree,
                         const ringdomain::DisplayMap& display, const RenderOptions& opts) {
    PolicyRenderer renderer{tree, display, opts, resolve_templates(opts),
                            LineSink{std::string(), opts.unicode}};
    renderer.sink.line("; problem: " + task.problem.name.text());
    renderer.sink.line("; goal: " + pretty_goal(task.goal, display));
    renderer.sink.line("; closure = " + planfond::closure_mode_name(policy.closure_mode));
    if (!tree.nodes.empty()) renderer.walk(0, "");
    renderer.sink.line("; cost = " + std::to_string(renderer.actions) + " actions (unit cost)");
    return std::move(renderer.sink.out);
}

std::string export_dot(const planfond::ExecutionTree& tree,
                       const ringdomain::DisplayMap& display) {
    std::string out = "digraph policy {\n";
    out += "  rankdir=TB;\n";
    out += "  node [shape=box, fontname=\"monospace\"];\n";
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
        const planfond::ExecutionTree::Node& node = tree.nodes[i];
        std::vector<std::string> atoms;
        for (const pddl::GroundAtom& atom : node.state)
            if (salient(atom)) atoms.push_back(pretty_atom(atom, display));
        std::sort(atoms.begin(), atoms.end());
        std::string label;
        for (const std::string& atom : atoms) {
            if (!label.empty()) label += "\\n";
            label += escape_dot(atom);
        }
        if (label.empty()) label = "(no salient atoms)";
        out += "  n" + std::to_string(i) + " [label=\"" + label + "\"";
        if (node.leaf) {
            switch (*node.leaf) {
                case planfond::LeafKind::GoalReached: out += ", shape=doubleoctagon"; break;
                case planfond::LeafKind::ClosedByContradiction: out += ", shape=octagon"; break;
                case planfond::LeafKind::DeadEnd: out += ", shape=diamond"; break;
            }
        }
        out += "];\n";
    }
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
        const planfond::ExecutionTree::Node& node = tree.nodes[i];
        for (std::size_t k = 0; k < node.children.size(); ++k)
            out += "  n" + std::to_string(i) + " -> n" + std::to_string(node.children[k]) +
                   " [label=\"" + escape_dot(node.action->to_text()) + " #" +
                   std::to_string(k) + "\"];\n";
    }
    out += "}\n";
    return out;
}

}  // namespace ringforge::proof
