#include "ringforge/pddl.hpp"

namespace ringforge::pddl {

namespace {

void write_atom(std::string& out, const Atom& atom) {
    out += '(';
    out += atom.predicate.text();
    for (const Term& t : atom.args) {
        out += ' ';
        if (t.is_variable) out += '?';
        out += t.sym.text();
    }
    out += ')';
}

void write_literal(std::string& out, const Literal& lit) {
    if (lit.negated) out += "(not ";
    write_atom(out, lit.atom);
    if (lit.negated) out += ')';
}

void write_conjunction(std::string& out, const std::vector<Literal>& lits) {
    if (lits.empty()) {
        out += "()";
        return;
    }
    out += "(and";
    for (const Literal& l : lits) {
        out += ' ';
        write_literal(out, l);
    }
    out += ')';
}

void write_branch(std::string& out, const EffectBranch& branch) {
    out += "(and";
    for (const Literal& l : branch.literals) {
        out += ' ';
        write_literal(out, l);
    }
    for (const ConditionalEffect& ce : branch.conditionals) {
        out += " (when ";
        write_conjunction(out, ce.condition);
        out += ' ';
        write_conjunction(out, ce.body);
        out += ')';
    }
    out += ')';
}

}  // namespace

std::string to_pddl(const ActionSchema& schema) {
    std::string out = "  (:action " + schema.name.text() + "\n    :parameters (";
    for (std::size_t i = 0; i < schema.params.size(); ++i) {
        if (i) out += ' ';
        out += '?';
        out += schema.params[i].text();
    }
    out += ")\n    :precondition ";
    write_conjunction(out, schema.precondition);
    out += "\n    :effect ";
    if (schema.effect.oneof) {
        out += "(oneof";
        for (const EffectBranch& b : schema.effect.branches) {
            out += "\n      ";
            write_branch(out, b);
        }
        out += ')';
    } else {
        write_branch(out, schema.effect.branches.front());
    }
    out += ")\n";
    return out;
}

std::string to_pddl(const DomainModel& domain) {
    std::string out = "(define (domain " + domain.name.text() + ")\n";
    if (!domain.requirements.empty()) {
        out += "  (:requirements";
        for (const std::string& r : domain.requirements) {
            out += ' ';
            out += r;
        }
        out += ")\n";
    }
    out += "  (:predicates";
    for (const PredicateDecl& p : domain.predicates) {
        out += "\n    (" + p.name.text();
        for (Symbol arg : p.params) out += " ?" + arg.text();
        out += ')';
    }
    out += ")\n";
    for (const ActionSchema& a : domain.actions) {
        out += '\n';
        out += to_pddl(a);
    }
    out += ")\n";
    return out;
}

std::string to_pddl(const ProblemModel& problem) {
    std::string out = "(define (problem " + problem.name.text() + ")\n";
    out += "  (:domain " + problem.domain_name.text() + ")\n";
    out += "  (:objects";
    for (Symbol obj : problem.objects) out += ' ' + obj.text();
    out += ")\n";
    out += "  (:init";
    for (const GroundAtom& atom : problem.init) out += "\n    " + to_text(atom);
    out += ")\n";
    out += "  (:goal (and";
    for (const GroundLiteral& lit : problem.goal) out += ' ' + to_text(lit);
    out += ")))\n";
    return out;
}

}  // namespace ringforge::pddl
