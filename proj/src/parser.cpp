#include "ringforge/pddl.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

namespace ringforge::pddl {

namespace {

struct Node {
    // A node is either one token or a parenthesized list.
    std::string token;
    std::vector<Node> items;
    bool is_list = false;
    int line = 0;
    int column = 0;

    bool is_token(std::string_view t) const { return !is_list && token == t; }
};

class Reader {
public:
    explicit Reader(std::string_view text) : text_(text) {}

    std::vector<Node> read_all() {
        std::vector<Node> out;
        skip_blank();
        while (!at_end()) {
            out.push_back(read_node());
            skip_blank();
        }
        return out;
    }

private:
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    void skip_blank() {
        while (!at_end()) {
            char c = peek();
            if (c == ';') {
                while (!at_end() && peek() != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                return;
            }
        }
    }

    Node read_node() {
        skip_blank();
        if (at_end()) throw ParseError("unexpected end of input", line_, column_);
        int line = line_, column = column_;
        if (peek() == ')') throw ParseError("unexpected ')'", line, column);
        if (peek() == '(') {
            advance();
            Node list;
            list.is_list = true;
            list.line = line;
            list.column = column;
            skip_blank();
            while (!at_end() && peek() != ')') {
                list.items.push_back(read_node());
                skip_blank();
            }
            if (at_end()) throw ParseError("missing ')' for '(' opened here", line, column);
            advance();  // consume ')'
            return list;
        }
        Node tok;
        tok.line = line;
        tok.column = column;
        while (!at_end() && !std::isspace(static_cast<unsigned char>(peek())) && peek() != '(' &&
               peek() != ')' && peek() != ';') {
            tok.token += static_cast<char>(std::tolower(static_cast<unsigned char>(peek())));
            advance();
        }
        return tok;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

[[noreturn]] void fail(const Node& at, const std::string& msg) {
    throw ParseError(msg, at.line, at.column);
}

bool valid_name(std::string_view s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') return false;
    return true;
}

Symbol name_symbol(const Node& n, const char* what) {
    if (n.is_list) fail(n, std::string("expected ") + what + ", got a list");
    if (n.token == "-") fail(n, "typed lists are not supported");
    if (!valid_name(n.token))
        fail(n, std::string("invalid ") + what + " '" + n.token + "'");
    return Symbol::intern(n.token);
}

// Predicate name -> arity, from declarations and from usage.
class ArityTable {
public:
    void declare(Symbol name, std::size_t arity, const Node& at) {
        auto [it, fresh] = arity_.emplace(name, arity);
        if (!fresh && it->second != arity)
            fail(at, "arity conflict for predicate " + name.text() + ": declared with " +
                         std::to_string(it->second) + " and " + std::to_string(arity) +
                         " arguments");
        declared_.insert(name);
    }

    void use(Symbol name, std::size_t arity, const Node& at) {
        auto [it, fresh] = arity_.emplace(name, arity);
        if (!fresh && it->second != arity)
            fail(at, "arity conflict for predicate " + name.text() + ": used with " +
                         std::to_string(arity) + " arguments, expected " +
                         std::to_string(it->second));
        if (!declared_.count(name)) inferred_.push_back(name);
    }

    bool known(Symbol name) const { return arity_.count(name) != 0; }
    std::size_t arity(Symbol name) const { return arity_.at(name); }
    const std::vector<Symbol>& inferred() const { return inferred_; }

private:
    std::unordered_map<Symbol, std::size_t> arity_;
    std::unordered_set<Symbol> declared_;
    std::vector<Symbol> inferred_;
};

struct SchemaContext {
    const std::vector<Symbol>& params;
    ArityTable& arities;
    Symbol action;
};

Atom parse_atom(const Node& n, SchemaContext& ctx, const char* where) {
    if (!n.is_list || n.items.empty())
        fail(n, std::string("expected an atom in ") + where);
    Atom atom;
    atom.predicate = name_symbol(n.items[0], "predicate name");
    for (std::size_t i = 1; i < n.items.size(); ++i) {
        const Node& arg = n.items[i];
        if (arg.is_list) fail(arg, "atom arguments must be symbols");
        if (arg.token.size() > 1 && arg.token[0] == '?') {
            Symbol v = Symbol::intern(arg.token.substr(1));
            if (std::find(ctx.params.begin(), ctx.params.end(), v) == ctx.params.end())
                fail(arg, "variable ?" + v.text() + " of action " + ctx.action.text() +
                              " is not a parameter");
            atom.args.push_back(Term{v, true});
        } else {
            atom.args.push_back(Term{name_symbol(arg, "constant"), false});
        }
    }
    ctx.arities.use(atom.predicate, atom.args.size(), n);
    return atom;
}

Literal parse_literal(const Node& n, SchemaContext& ctx, const char* where) {
    if (n.is_list && !n.items.empty() && n.items[0].is_token("not")) {
        if (n.items.size() != 2) fail(n, "'not' takes exactly one atom");
        return Literal{parse_atom(n.items[1], ctx, where), true};
    }
    return Literal{parse_atom(n, ctx, where), false};
}

// Accepts (), (and ...), a bare literal, or a bare (not ...).
std::vector<Literal> parse_literal_list(const Node& n, SchemaContext& ctx, const char* where) {
    std::vector<Literal> out;
    if (!n.is_list) fail(n, std::string("expected ") + where);
    if (n.items.empty()) return out;
    if (n.items[0].is_token("and")) {
        for (std::size_t i = 1; i < n.items.size(); ++i)
            out.push_back(parse_literal(n.items[i], ctx, where));
        return out;
    }
    out.push_back(parse_literal(n, ctx, where));
    return out;
}

void reject_nested_effect_forms(const Node& n) {
    if (!n.is_list || n.items.empty()) return;
    if (n.items[0].is_token("when") || n.items[0].is_token("oneof"))
        fail(n, "conditional effect bodies may contain only add and delete literals");
    if (n.items[0].is_token("and"))
        for (const Node& item : n.items) reject_nested_effect_forms(item);
}

ConditionalEffect parse_when(const Node& n, SchemaContext& ctx) {
    if (n.items.size() != 3) fail(n, "'when' takes a condition and an effect");
    ConditionalEffect ce;
    ce.condition = parse_literal_list(n.items[1], ctx, "conditional effect condition");
    reject_nested_effect_forms(n.items[2]);
    ce.body = parse_literal_list(n.items[2], ctx, "conditional effect body");
    return ce;
}

EffectBranch parse_effect_branch(const Node& n, SchemaContext& ctx) {
    EffectBranch branch;
    if (!n.is_list) fail(n, "expected an effect");
    std::vector<const Node*> items;
    if (!n.items.empty() && n.items[0].is_token("and")) {
        for (std::size_t i = 1; i < n.items.size(); ++i) items.push_back(&n.items[i]);
    } else if (!n.items.empty()) {
        items.push_back(&n);
    }
    for (const Node* item : items) {
        if (item->is_list && !item->items.empty() && item->items[0].is_token("oneof"))
            fail(*item, "oneof is only allowed at the top level of an effect");
        if (item->is_list && !item->items.empty() && item->items[0].is_token("when"))
            branch.conditionals.push_back(parse_when(*item, ctx));
        else
            branch.literals.push_back(parse_literal(*item, ctx, "effect"));
    }
    return branch;
}

EffectTree parse_effect(const Node& n, SchemaContext& ctx) {
    EffectTree tree;
    if (n.is_list && !n.items.empty() && n.items[0].is_token("oneof")) {
        tree.oneof = true;
        if (n.items.size() < 2) fail(n, "oneof needs at least one branch");
        for (std::size_t i = 1; i < n.items.size(); ++i)
            tree.branches.push_back(parse_effect_branch(n.items[i], ctx));
        return tree;
    }
    tree.branches.push_back(parse_effect_branch(n, ctx));
    return tree;
}

ActionSchema parse_action(const Node& n, ArityTable& arities) {
    ActionSchema schema;
    if (n.items.size() < 2) fail(n, ":action needs a name");
    schema.name = name_symbol(n.items[1], "action name");

    const Node* params = nullptr;
    const Node* precondition = nullptr;
    const Node* effect = nullptr;
    for (std::size_t i = 2; i < n.items.size(); i += 2) {
        const Node& key = n.items[i];
        if (key.is_list || key.token.empty() || key.token[0] != ':')
            fail(key, "expected :parameters, :precondition or :effect");
        if (i + 1 >= n.items.size()) fail(key, "missing value after " + key.token);
        const Node& value = n.items[i + 1];
        if (key.token == ":parameters")
            params = &value;
        else if (key.token == ":precondition")
            precondition = &value;
        else if (key.token == ":effect")
            effect = &value;
        else
            fail(key, "unknown action section " + key.token);
    }
    if (!params) fail(n, "action " + schema.name.text() + " has no :parameters");
    if (!effect) fail(n, "action " + schema.name.text() + " has no :effect");

    if (!params->is_list) fail(*params, ":parameters must be a list");
    for (const Node& p : params->items) {
        if (!p.is_list && p.token == "-") fail(p, "typed lists are not supported");
        if (p.is_list || p.token.size() < 2 || p.token[0] != '?')
            fail(p, "parameters must be ?variables");
        Symbol v = Symbol::intern(p.token.substr(1));
        if (std::find(schema.params.begin(), schema.params.end(), v) != schema.params.end())
            fail(p, "duplicate parameter ?" + v.text());
        schema.params.push_back(v);
    }

    SchemaContext ctx{schema.params, arities, schema.name};
    if (precondition) schema.precondition = parse_literal_list(*precondition, ctx, "precondition");
    schema.effect = parse_effect(*effect, ctx);
    return schema;
}

const Node& expect_define(const std::vector<Node>& top, const char* kind) {
    if (top.size() != 1 || !top[0].is_list || top[0].items.empty() ||
        !top[0].items[0].is_token("define")) {
        Node dummy;
        const Node& at = top.empty() ? dummy : top[0];
        throw ParseError(std::string("expected a single (define (") + kind + " ...) ...) form",
                         at.line ? at.line : 1, at.column ? at.column : 1);
    }
    return top[0];
}

}  // namespace

DomainModel parse_domain(std::string_view text) {
    Reader reader(text);
    auto top = reader.read_all();
    const Node& define = expect_define(top, "domain");

    DomainModel domain;
    if (define.items.size() < 2 || !define.items[1].is_list || define.items[1].items.size() != 2 ||
        !define.items[1].items[0].is_token("domain"))
        fail(define, "expected (domain NAME) after define");
    domain.name = name_symbol(define.items[1].items[1], "domain name");

    ArityTable arities;
    std::vector<PredicateDecl> declared;
    std::vector<ActionSchema> actions;
    for (std::size_t i = 2; i < define.items.size(); ++i) {
        const Node& section = define.items[i];
        if (!section.is_list || section.items.empty() || section.items[0].is_list)
            fail(section, "expected a (:...) section");
        const std::string& head = section.items[0].token;
        if (head == ":requirements") {
            for (std::size_t j = 1; j < section.items.size(); ++j) {
                if (section.items[j].is_list) fail(section.items[j], "bad requirement");
                domain.requirements.push_back(section.items[j].token);
            }
        } else if (head == ":predicates") {
            for (std::size_t j = 1; j < section.items.size(); ++j) {
                const Node& p = section.items[j];
                if (!p.is_list || p.items.empty()) fail(p, "expected (name ?args...)");
                PredicateDecl decl;
                decl.name = name_symbol(p.items[0], "predicate name");
                for (std::size_t k = 1; k < p.items.size(); ++k) {
                    const Node& arg = p.items[k];
                    if (!arg.is_list && arg.token == "-")
                        fail(arg, "typed lists are not supported");
                    if (arg.is_list || arg.token.size() < 2 || arg.token[0] != '?')
                        fail(arg, "predicate arguments must be ?variables");
                    decl.params.push_back(Symbol::intern(arg.token.substr(1)));
                }
                arities.declare(decl.name, decl.params.size(), p);
                declared.push_back(std::move(decl));
            }
        } else if (head == ":action") {
            actions.push_back(parse_action(section, arities));
        } else {
            fail(section, "unknown domain section " + head);
        }
    }

    for (const auto& a : actions)
        for (const auto& b : actions)
            if (&a != &b && a.name == b.name)
                throw ParseError("duplicate action name " + a.name.text(), 1, 1);

    domain.predicates = std::move(declared);
    for (Symbol name : arities.inferred()) {
        // Predicates used without a declaration are added with synthetic
        // argument names so the model always declares what it uses.
        PredicateDecl decl;
        decl.name = name;
        for (std::size_t i = 0; i < arities.arity(name); ++i)
            decl.params.push_back(Symbol::intern("x" + std::to_string(i + 1)));
        domain.predicates.push_back(std::move(decl));
    }
    domain.actions = std::move(actions);
    return domain;
}

namespace {

GroundAtom parse_ground_atom(const Node& n, const DomainModel& domain,
                             const std::unordered_set<Symbol>& objects, const char* where) {
    if (!n.is_list || n.items.empty()) fail(n, std::string("expected an atom in ") + where);
    GroundAtom atom;
    atom.predicate = name_symbol(n.items[0], "predicate name");
    const PredicateDecl* decl = domain.find_predicate(atom.predicate);
    if (!decl)
        fail(n, "unknown predicate " + atom.predicate.text());
    for (std::size_t i = 1; i < n.items.size(); ++i) {
        const Node& arg = n.items[i];
        if (arg.is_list) fail(arg, "atom arguments must be symbols");
        if (!arg.token.empty() && arg.token[0] == '?')
            fail(arg, std::string(where) + " atoms must be ground");
        Symbol obj = name_symbol(arg, "object name");
        if (!objects.count(obj)) fail(arg, "object " + obj.text() + " is not declared");
        atom.args.push_back(obj);
    }
    if (atom.args.size() != decl->arity())
        fail(n, "arity conflict for predicate " + atom.predicate.text() + ": used with " +
                    std::to_string(atom.args.size()) + " arguments, expected " +
                    std::to_string(decl->arity()));
    return atom;
}

}  // namespace

ProblemModel parse_problem(std::string_view text, const DomainModel& domain) {
    Reader reader(text);
    auto top = reader.read_all();
    const Node& define = expect_define(top, "problem");

    ProblemModel problem;
    if (define.items.size() < 2 || !define.items[1].is_list || define.items[1].items.size() != 2 ||
        !define.items[1].items[0].is_token("problem"))
        fail(define, "expected (problem NAME) after define");
    problem.name = name_symbol(define.items[1].items[1], "problem name");

    std::unordered_set<Symbol> objects;
    bool saw_domain = false;
    for (std::size_t i = 2; i < define.items.size(); ++i) {
        const Node& section = define.items[i];
        if (!section.is_list || section.items.empty() || section.items[0].is_list)
            fail(section, "expected a (:...) section");
        const std::string& head = section.items[0].token;
        if (head == ":domain") {
            if (section.items.size() != 2) fail(section, ":domain takes one name");
            problem.domain_name = name_symbol(section.items[1], "domain name");
            saw_domain = true;
            if (problem.domain_name != domain.name)
                fail(section.items[1], "problem requires domain " + problem.domain_name.text() +
                                           " but " + domain.name.text() + " was provided");
        } else if (head == ":objects") {
            for (std::size_t j = 1; j < section.items.size(); ++j) {
                if (!section.items[j].is_list && section.items[j].token == "-")
                    fail(section.items[j], "typed lists are not supported");
                Symbol obj = name_symbol(section.items[j], "object name");
                if (objects.count(obj)) fail(section.items[j], "duplicate object " + obj.text());
                objects.insert(obj);
                problem.objects.push_back(obj);
            }
        } else if (head == ":init") {
            for (std::size_t j = 1; j < section.items.size(); ++j) {
                const Node& item = section.items[j];
                if (item.is_list && !item.items.empty() && item.items[0].is_token("not"))
                    fail(item, ":init lists positive ground atoms only");
                problem.init.push_back(parse_ground_atom(item, domain, objects, ":init"));
            }
        } else if (head == ":goal") {
            if (section.items.size() != 2) fail(section, ":goal takes one formula");
            const Node& goal = section.items[1];
            if (!goal.is_list) fail(goal, "expected a goal formula");
            std::vector<const Node*> literals;
            if (!goal.items.empty() && goal.items[0].is_token("and")) {
                for (std::size_t j = 1; j < goal.items.size(); ++j)
                    literals.push_back(&goal.items[j]);
            } else if (!goal.items.empty()) {
                literals.push_back(&goal);
            }
            for (const Node* lit : literals) {
                bool negated = lit->is_list && !lit->items.empty() && lit->items[0].is_token("not");
                const Node* atom = lit;
                if (negated) {
                    if (lit->items.size() != 2) fail(*lit, "'not' takes exactly one atom");
                    atom = &lit->items[1];
                }
                problem.goal.push_back(GroundLiteral{
                    parse_ground_atom(*atom, domain, objects, ":goal"), negated});
            }
        } else {
            fail(section, "unknown problem section " + head);
        }
    }
    if (!saw_domain) fail(define, "problem has no :domain section");
    return problem;
}

}  // namespace ringforge::pddl
