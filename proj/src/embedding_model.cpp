#include "ldwb/embedding_model.hpp"

#include <algorithm>

#include "json.hpp"

namespace ldwb {

std::string_view color_name(Color c) { return c == Color::Proper ? "proper" : "nonproper"; }

std::string_view kind_name(VerdictKind k)
{
    switch (k) {
    case VerdictKind::Equal:
        return "Equal";
    case VerdictKind::Distinct:
        return "Distinct";
    default:
        return "Unknown";
    }
}

ColoredSignature::ColoredSignature(Signature base, std::vector<Color> colors)
    : base_(std::move(base)), colors_(std::move(colors))
{
    if (colors_.size() != base_.size()) {
        throw InvalidSignature("every generator needs exactly one color");
    }
}

ColoredSignature ColoredSignature::flagship()
{
    return ColoredSignature(Signature::from_names({"j", "k"}), {Color::Proper, Color::NonProper});
}

ColoredSignature ColoredSignature::from_json(std::string_view text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidSignature(std::string("signature file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("generators") || !doc["generators"].is_array()) {
        throw InvalidSignature("signature file needs a \"generators\" array");
    }
    std::vector<std::string> names;
    std::vector<Color> colors;
    for (const auto& entry : doc["generators"]) {
        if (!entry.is_object() || !entry.contains("name") || !entry["name"].is_string()) {
            throw InvalidSignature("each generator needs a string \"name\"");
        }
        names.push_back(entry["name"].get<std::string>());
        const std::string color = entry.value("color", std::string("proper"));
        if (color == "proper") {
            colors.push_back(Color::Proper);
        } else if (color == "nonproper") {
            colors.push_back(Color::NonProper);
        } else {
            throw InvalidSignature("unknown color \"" + color + "\" for generator '" +
                                   names.back() + "'");
        }
    }
    return ColoredSignature(Signature::from_names(names), std::move(colors));
}

std::string ColoredSignature::to_json() const
{
    nlohmann::json gens = nlohmann::json::array();
    for (std::size_t i = 0; i < base_.size(); ++i) {
        gens.push_back({{"name", base_.generators()[i].name},
                        {"color", std::string(color_name(colors_[i]))}});
    }
    return nlohmann::json{{"generators", std::move(gens)}}.dump();
}

Color ColoredSignature::color(const Generator& g) const
{
    const auto& gens = base_.generators();
    const auto it = std::find(gens.begin(), gens.end(), g);
    if (it == gens.end()) {
        throw UnknownGenerator(0, g.name);
    }
    return colors_[static_cast<std::size_t>(it - gens.begin())];
}

Color color_of(const Term& t, const ColoredSignature& sig) { return sig.color(rightmost_leaf(t)); }

Term apply_rho(const Term& t, const RhoMap& rho)
{
    const Term target = Term::leaf(rho.target);
    return substitute_leaves(t, [&](const Generator&) { return target; });
}

Classification classify_pair(const Term& lhs, const Term& rhs, const ColoredSignature& sig,
                             const SearchBudget& budget, const RefutationOptions& options)
{
    Classification out;
    auto free = decide_equiv(lhs, rhs, sig.base(), budget, options);
    out.free_verdict = verdict_name(free);
    if (auto* eq = std::get_if<Equal>(&free)) {
        out.kind = VerdictKind::Equal;
        out.certificate = std::move(eq->certificate);
        out.rule = "ld-certificate";
        return out;
    }

    const RhoMap rho;
    Term rl = apply_rho(lhs, rho);
    Term rr = apply_rho(rhs, rho);
    auto mono = decide_equiv(rl, rr, budget, options);
    out.rho_verdict = verdict_name(mono);
    if (auto* d = std::get_if<Distinct>(&mono)) {
        out.kind = VerdictKind::Distinct;
        out.refutation = RhoRefutation{std::move(rl), std::move(rr), std::move(d->reason)};
        out.rule = "rho-refutation";
        return out;
    }

    const Color cl = color_of(lhs, sig);
    const Color cr = color_of(rhs, sig);
    if (cl != cr) {
        out.kind = VerdictKind::Distinct;
        out.refutation = ColorMismatch{cl, cr};
        out.rule = "color-mismatch";
        return out;
    }

    out.kind = VerdictKind::Unknown;
    out.rule = "none";
    return out;
}

bool check_classification(const Term& lhs, const Term& rhs, const ColoredSignature& sig,
                          const Classification& c)
{
    switch (c.kind) {
    case VerdictKind::Equal:
        return c.certificate && !c.refutation && check_certificate(lhs, rhs, *c.certificate);
    case VerdictKind::Distinct:
        if (!c.refutation || c.certificate) {
            return false;
        }
        if (const auto* cm = std::get_if<ColorMismatch>(&*c.refutation)) {
            return color_of(lhs, sig) == cm->lhs && color_of(rhs, sig) == cm->rhs &&
                   cm->lhs != cm->rhs;
        } else {
            const auto& rho = std::get<RhoRefutation>(*c.refutation);
            const RhoMap map;
            return apply_rho(lhs, map) == rho.rho_lhs && apply_rho(rhs, map) == rho.rho_rhs &&
                   check_refutation(rho.rho_lhs, rho.rho_rhs, rho.monogenic);
        }
    default:
        return !c.certificate && !c.refutation;
    }
}

Membership membership_obstruction(const Term& t, const Generator& g, const ColoredSignature& sig)
{
    return color_of(t, sig) != sig.color(g) ? Membership::Obstructed : Membership::NoObstruction;
}

std::vector<Classification> batch_classify(const std::vector<std::pair<Term, Term>>& pairs,
                                           const ColoredSignature& sig,
                                           const SearchBudget& budget,
                                           const RefutationOptions& options)
{
    std::vector<Classification> out;
    out.reserve(pairs.size());
    for (const auto& [lhs, rhs] : pairs) {
        out.push_back(classify_pair(lhs, rhs, sig, budget, options));
    }
    return out;
}

}  // namespace ldwb
