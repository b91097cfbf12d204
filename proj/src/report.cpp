#include "ldwb/report.hpp"

namespace ldwb {

using nlohmann::json;

json certificate_to_json(const EquivCertificate& cert)
{
    json steps = json::array();
    for (const auto& s : cert.steps) {
        steps.push_back({{"pos", s.step.position},
                         {"dir", s.step.direction == Direction::Expand ? "expand" : "contract"}});
    }
    return json{{"steps", std::move(steps)}};
}

EquivCertificate certificate_from_json(const json& doc, const Term& lhs)
{
    if (!doc.is_object() || !doc.contains("steps") || !doc["steps"].is_array()) {
        throw FormatError("certificate needs a \"steps\" array");
    }
    EquivCertificate cert;
    Term current = lhs;
    for (const auto& entry : doc["steps"]) {
        if (!entry.is_object() || !entry.contains("pos") || !entry["pos"].is_string() ||
            !entry.contains("dir") || !entry["dir"].is_string()) {
            throw FormatError("certificate step needs string \"pos\" and \"dir\"");
        }
        ExpansionStep step{entry["pos"].get<std::string>(), Direction::Expand};
        const auto dir = entry["dir"].get<std::string>();
        if (dir == "contract") {
            step.direction = Direction::Contract;
        } else if (dir != "expand") {
            throw FormatError("unknown step direction \"" + dir + "\"");
        }
        auto next = apply_step(current, step);
        if (!next) {
            throw FormatError("step " + std::to_string(cert.steps.size()) + " (" + dir + " at \"" +
                              step.position + "\") does not apply");
        }
        current = *next;
        cert.steps.push_back({std::move(step), std::move(*next)});
    }
    return cert;
}

json refutation_to_json(const RefutationReason& reason)
{
    return std::visit(
        [](const auto& r) -> json {
            using R = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<R, LeafInvariant>) {
                return {{"kind", "LeafInvariant"},
                        {"side", r.side == Side::Left ? "left" : "right"},
                        {"lhs", r.lhs.name},
                        {"rhs", r.rhs.name}};
            } else if constexpr (std::is_same_v<R, RightSpine>) {
                return {{"kind", "RightSpine"},
                        {"lhs_length", r.lhs_length},
                        {"rhs_length", r.rhs_length}};
            } else {
                json assignment = json::object();
                for (const auto& [name, value] : r.assignment) {
                    assignment[name] = value;
                }
                return {{"kind", "TableEval"},
                        {"n", r.n},
                        {"renaming", r.uniform ? "uniform" : "assignment"},
                        {"assignment", std::move(assignment)},
                        {"lhs_value", r.lhs_value},
                        {"rhs_value", r.rhs_value}};
            }
        },
        reason);
}

json verdict_to_json(const Verdict& verdict)
{
    json out{{"verdict", std::string(verdict_name(verdict))}};
    if (const auto* eq = std::get_if<Equal>(&verdict)) {
        out["certificate"] = certificate_to_json(eq->certificate);
    } else if (const auto* d = std::get_if<Distinct>(&verdict)) {
        out["reason"] = refutation_to_json(d->reason);
    } else {
        const auto& spent = std::get<Unknown>(verdict).spent;
        out["spent"] = {{"lhs_terms", spent.lhs_terms},
                        {"rhs_terms", spent.rhs_terms},
                        {"depth", spent.depth},
                        {"stop", spent.stop}};
    }
    return out;
}

json budget_to_json(const SearchBudget& budget)
{
    return {{"max_frontier_terms", budget.max_frontier_terms},
            {"max_term_size", budget.max_term_size},
            {"max_depth", budget.max_depth}};
}

json classification_to_json(const Term& lhs, const Term& rhs, const Classification& c)
{
    json out{{"lhs", render_term(lhs)},
             {"rhs", render_term(rhs)},
             {"verdict", std::string(kind_name(c.kind))},
             {"rule", c.rule},
             {"color_rule", "right-operand"},
             {"free_verdict", c.free_verdict}};
    if (!c.rho_verdict.empty()) {
        out["rho_verdict"] = c.rho_verdict;
    }
    if (c.certificate) {
        out["certificate"] = certificate_to_json(*c.certificate);
    }
    if (c.refutation) {
        if (const auto* cm = std::get_if<ColorMismatch>(&*c.refutation)) {
            out["reason"] = {{"kind", "ColorMismatch"},
                             {"lhs_color", std::string(color_name(cm->lhs))},
                             {"rhs_color", std::string(color_name(cm->rhs))}};
        } else {
            const auto& rho = std::get<RhoRefutation>(*c.refutation);
            out["reason"] = {{"kind", "RhoRefutation"},
                             {"rho_lhs", render_term(rho.rho_lhs)},
                             {"rho_rhs", render_term(rho.rho_rhs)},
                             {"monogenic", refutation_to_json(rho.monogenic)}};
        }
    }
    return out;
}

json evidence_to_json(const EqualityEvidence& evidence)
{
    if (const auto* cert = std::get_if<EquivCertificate>(&evidence)) {
        return {{"certificate", certificate_to_json(*cert)}};
    }
    return {{"magma_value", std::get<MagmaValue>(evidence).value}};
}

namespace {

json render_all(const std::vector<Term>& terms)
{
    json out = json::array();
    for (const auto& t : terms) {
        out.push_back(render_term(t));
    }
    return out;
}

}  // namespace

json witness_to_json(const DivisibilityWitness& w)
{
    return {{"lower", render_term(w.lower)},
            {"upper", render_term(w.upper)},
            {"divisors", render_all(w.divisors)},
            {"evidence", evidence_to_json(w.evidence)}};
}

json violation_to_json(const QuasiFreeViolation& v)
{
    return {{"context", render_all(v.context)},
            {"x", v.x.name},
            {"y", v.y.name},
            {"tail_x", render_all(v.tail_x)},
            {"tail_y", render_all(v.tail_y)},
            {"evidence", evidence_to_json(v.evidence)}};
}

json bounds_to_json(const SearchBounds& bounds)
{
    return {{"max_divisor_size", bounds.max_divisor_size},
            {"max_chain", bounds.max_chain},
            {"max_seed_size", bounds.max_seed_size}};
}

json bounds_to_json(const QuasiFreeBounds& bounds)
{
    return {{"max_context", bounds.max_context},
            {"max_tail", bounds.max_tail},
            {"max_component_size", bounds.max_component_size}};
}

}  // namespace ldwb
