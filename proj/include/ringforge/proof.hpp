#pragma once

#include "ringforge/pddl.hpp"
#include "ringforge/planfod.hpp"
#include "ringforge/planfond.hpp"
#include "ringforge/ringdomain.hpp"

#include <map>

// Independent plan/policy validation and proof rendering. The
// validator keeps its own applicability and state-update code so a
// solver bug cannot certify its own output.

namespace ringforge::proof {

enum class FailureReason {
    Inapplicable,
    GoalUnsatisfied,
    DeadEnd,
    Cycle,
    ContradictionDeleted,
};

std::string failure_reason_name(FailureReason reason);

struct ValidationFailure {
    std::size_t index = 0;  // plan step or tree node
    FailureReason reason;
    std::string detail;
};

struct ValidationReport {
    bool ok = true;
    std::vector<ValidationFailure> failures;
    std::size_t steps_checked = 0;
    planfond::LeafCensus census;  // meaningful for policy validation
};

ValidationReport validate_plan(const pddl::Task& task, const planfod::Plan& plan);
ValidationReport validate_policy(const pddl::Task& task, const planfond::Policy& policy,
                                 planfond::ClosureMode mode);

// Per-schema consequence templates: `{?param}` expands to the display
// expression of the object bound to that parameter.
class TemplateTable {
public:
    void set(pddl::Symbol action, std::string text);
    const std::string* find(pddl::Symbol action) const;

private:
    std::map<pddl::Symbol, std::string, ringdomain::TextLess> entries_;
};

const TemplateTable& default_templates();
TemplateTable parse_templates(std::string_view text);

struct RenderOptions {
    bool unicode = false;    // print the implication arrow as U+27F9
    bool raw_atoms = false;  // show effect atoms instead of templates
    const TemplateTable* templates = nullptr;  // defaults when null
};

std::string render_proof(const pddl::Task& task, const planfod::Plan& plan,
                         const ringdomain::DisplayMap& display, const RenderOptions& opts = {});
std::string render_proof(const pddl::Task& task, const planfond::Policy& policy,
                         const planfond::ExecutionTree& tree,
                         const ringdomain::DisplayMap& display, const RenderOptions& opts = {});

std::string export_dot(const planfond::ExecutionTree& tree,
                       const ringdomain::DisplayMap& display);

std::string to_text(const planfod::Plan& plan);
planfod::Plan parse_plan(std::string_view text, const pddl::Task& task);

}  // namespace ringforge::proof
