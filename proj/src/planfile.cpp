#include "ringforge/planfond.hpp"
#include "ringforge/proof.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

// Text round-trip for plans and policies. Plans are one action per
// line plus a trailing cost comment; policies are state/action blocks
// in a deterministic order under a closure-mode header.

namespace ringforge {

namespace {

struct LineScanner {
    std::istringstream in;
    int line_no = 0;

    explicit LineScanner(std::string_view text) : in{std::string(text)} {}

    // Returns the next line that still has content once comments and
    // surrounding blanks are stripped.
    std::optional<std::string> next() {
        for (std::string line; std::getline(in, line);) {
            ++line_no;
            std::size_t cut = line.find(';');
            if (cut != std::string::npos) line.resize(cut);
            cut = line.find('#');
            if (cut != std::string::npos) line.resize(cut);
            std::size_t start = line.find_first_not_of(" \t\r");
            if (start == std::string::npos) continue;
            std::size_t stop = line.find_last_not_of(" \t\r");
            return line.substr(start, stop - start + 1);
        }
        return std::nullopt;
    }
};

std::vector<std::string> split_words(const std::string& text) {
    std::vector<std::string> words;
    std::string word;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!word.empty()) words.push_back(std::move(word));
            word.clear();
        } else {
            word += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        }
    }
    if (!word.empty()) words.push_back(std::move(word));
    return words;
}

pddl::GroundAction parse_action_text(const std::string& body, const pddl::Task& task,
                                     int line_no) {
    auto words = split_words(body);
    if (words.empty()) throw pddl::ParseError("empty action", line_no, 1);
    pddl::GroundAction action;
    action.schema = task.domain.find_action(pddl::Symbol::intern(words[0]));
    if (!action.schema)
        throw pddl::ParseError("unknown action " + words[0], line_no, 1);
    if (words.size() - 1 != action.schema->params.size())
        throw pddl::ParseError("action " + words[0] + " takes " +
                                   std::to_string(action.schema->params.size()) +
                                   " arguments, got " + std::to_string(words.size() - 1),
                               line_no, 1);
    for (std::size_t i = 1; i < words.size(); ++i) {
        pddl::Symbol obj = pddl::Symbol::intern(words[i]);
        if (std::find(task.problem.objects.begin(), task.problem.objects.end(), obj) ==
            task.problem.objects.end())
            throw pddl::ParseError("unknown object " + words[i], line_no, 1);
        action.args.push_back(obj);
    }
    return action;
}

// Expects "(...)" and returns the interior.
std::string strip_parens(const std::string& text, int line_no) {
    if (text.size() < 2 || text.front() != '(' || text.back() != ')')
        throw pddl::ParseError("expected a parenthesized form, got '" + text + "'", line_no, 1);
    return text.substr(1, text.size() - 2);
}

pddl::GroundAtom parse_atom_text(const std::string& form, const pddl::Task& task, int line_no) {
    auto words = split_words(form);
    if (words.empty()) throw pddl::ParseError("empty atom", line_no, 1);
    pddl::GroundAtom atom;
    atom.predicate = pddl::Symbol::intern(words[0]);
    const pddl::PredicateDecl* decl = task.domain.find_predicate(atom.predicate);
    if (!decl) throw pddl::ParseError("unknown predicate " + words[0], line_no, 1);
    if (words.size() - 1 != decl->arity())
        throw pddl::ParseError("predicate " + words[0] + " takes " +
                                   std::to_string(decl->arity()) + " arguments",
                               line_no, 1);
    for (std::size_t i = 1; i < words.size(); ++i)
        atom.args.push_back(pddl::Symbol::intern(words[i]));
    return atom;
}

std::string state_to_text(const pddl::State& state) {
    std::vector<std::string> atoms;
    for (const pddl::GroundAtom& atom : state) atoms.push_back(pddl::to_text(atom));
    std::sort(atoms.begin(), atoms.end());
    std::string out = "{";
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (i) out += ' ';
        out += atoms[i];
    }
    out += '}';
    return out;
}

}  // namespace

namespace proof {

std::string to_text(const planfod::Plan& plan) {
    std::string out;
    for (const pddl::GroundAction& step : plan.steps) {
        out += step.to_text();
        out += '\n';
    }
    out += "; cost = " + std::to_string(plan.cost()) + " (unit cost)\n";
    return out;
}

planfod::Plan parse_plan(std::string_view text, const pddl::Task& task) {
    planfod::Plan plan;
    LineScanner scanner(text);
    while (auto line = scanner.next()) {
        std::string body = strip_parens(*line, scanner.line_no);
        plan.steps.push_back(parse_action_text(body, task, scanner.line_no));
    }
    return plan;
}

}  // namespace proof

namespace planfond {

std::string closure_mode_name(ClosureMode mode) {
    return mode == ClosureMode::Strict ? "strict" : "by-contradiction";
}

ClosureMode parse_closure_mode(std::string_view name) {
    if (name == "strict") return ClosureMode::Strict;
    if (name == "by-contradiction") return ClosureMode::ByContradiction;
    throw std::invalid_argument("unknown closure mode: " + std::string(name));
}

std::string to_text(const Policy& policy) {
    std::string out = "; closure = " + closure_mode_name(policy.closure_mode) + "\n";

    std::vector<std::pair<std::string, const pddl::GroundAction*>> blocks;
    for (const auto& [state, action] : policy.entries)
        blocks.emplace_back(state_to_text(state), &action);
    std::sort(blocks.begin(), blocks.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    for (const auto& [state_text, action] : blocks) {
        out += "state: " + state_text + "\n";
        out += "action: " + action->to_text() + "\n";
    }
    return out;
}

Policy parse_policy(std::string_view text, const pddl::Task& task) {
    Policy policy;
    policy.init_state = task.init;

    // The closure header is a comment, so scan for it before the
    // comment-stripping pass.
    std::istringstream head{std::string(text)};
    for (std::string line; std::getline(head, line);) {
        std::size_t at = line.find("closure =");
        if (at == std::string::npos) continue;
        std::string value = line.substr(at + 9);
        value.erase(0, value.find_first_not_of(" \t"));
        value.erase(value.find_last_not_of(" \t\r") + 1);
        policy.closure_mode = parse_closure_mode(value);
        break;
    }

    LineScanner scanner(text);
    std::optional<pddl::State> pending;
    while (auto line = scanner.next()) {
        if (line->rfind("state:", 0) == 0) {
            if (pending)
                throw pddl::ParseError("state without an action", scanner.line_no, 1);
            std::string body = line->substr(6);
            body.erase(0, body.find_first_not_of(" \t"));
            if (body.size() < 2 || body.front() != '{' || body.back() != '}')
                throw pddl::ParseError("expected {atom ...}", scanner.line_no, 1);
            std::vector<pddl::GroundAtom> atoms;
            std::string interior = body.substr(1, body.size() - 2);
            std::size_t pos = 0;
            while ((pos = interior.find('(', pos)) != std::string::npos) {
                std::size_t end = interior.find(')', pos);
                if (end == std::string::npos)
                    throw pddl::ParseError("unterminated atom", scanner.line_no, 1);
                atoms.push_back(parse_atom_text(interior.substr(pos + 1, end - pos - 1), task,
                                                scanner.line_no));
                pos = end + 1;
            }
            pending = pddl::State(std::move(atoms));
        } else if (line->rfind("action:", 0) == 0) {
            if (!pending)
                throw pddl::ParseError("action without a state", scanner.line_no, 1);
            std::string body = line->substr(7);
            body.erase(0, body.find_first_not_of(" \t"));
            pddl::GroundAction action =
                parse_action_text(strip_parens(body, scanner.line_no), task, scanner.line_no);
            policy.entries.emplace(std::move(*pending), std::move(action));
            pending.reset();
        } else {
            throw pddl::ParseError("expected 'state:' or 'action:' line", scanner.line_no, 1);
        }
    }
    if (pending) throw pddl::ParseError("state without an action at end of file", scanner.line_no, 1);
    return policy;
}

}  // namespace planfond

}  // namespace ringforge
