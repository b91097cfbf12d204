#include "doctest.h"

#include "ldwb/embedding_model.hpp"
#include "ldwb/report.hpp"
#include "support.hpp"

using namespace ldwb;

namespace {

const ColoredSignature& flagship()
{
    static const ColoredSignature sig = ColoredSignature::flagship();
    return sig;
}

Term J(std::string_view text)
{
    return parse_term(text, flagship().base());
}

}  // namespace

TEST_CASE("colors follow the rightmost leaf")
{
    CHECK(color_of(J("j*k"), flagship()) == Color::NonProper);
    CHECK(color_of(J("k*j"), flagship()) == Color::Proper);
    CHECK(color_of(J("j"), flagship()) == Color::Proper);
    CHECK(color_of(J("(j*k)*(j*j)"), flagship()) == Color::Proper);
}

TEST_CASE("rho renames every leaf")
{
    const RhoMap rho;
    CHECK(render_term(apply_rho(J("j*k"), rho)) == "(x*x)");
    CHECK(render_term(apply_rho(J("j"), rho)) == "x");
    CHECK(render_term(apply_rho(J("((j*k)*j)"), rho)) == "((x*x)*x)");
}

TEST_CASE("flagship classifications")
{
    const Classification a = classify_pair(J("j*k"), J("k*j"), flagship());
    CHECK(a.kind == VerdictKind::Distinct);
    CHECK(a.rule == "color-mismatch");
    REQUIRE(a.refutation.has_value());
    CHECK(std::holds_alternative<ColorMismatch>(*a.refutation));

    const Classification b = classify_pair(J("j*k"), J("j"), flagship());
    CHECK(b.kind == VerdictKind::Distinct);
    CHECK(b.rule == "rho-refutation");
    REQUIRE(b.refutation.has_value());
    const auto& rho = std::get<RhoRefutation>(*b.refutation);
    CHECK(render_term(rho.rho_lhs) == "(x*x)");
    CHECK(render_term(rho.rho_rhs) == "x");

    const Classification c = classify_pair(J("j*k"), J("k*k"), flagship());
    CHECK(c.kind == VerdictKind::Unknown);
    CHECK_FALSE(c.certificate.has_value());
    CHECK_FALSE(c.refutation.has_value());

    const Classification d = classify_pair(J("j*(k*k)"), J("(j*k)*(j*k)"), flagship());
    CHECK(d.kind == VerdictKind::Equal);
    REQUIRE(d.certificate.has_value());

    for (const auto& [l, r, cl] : {std::tuple{"j*k", "k*j", &a}, std::tuple{"j*k", "j", &b},
                                   std::tuple{"j*k", "k*k", &c},
                                   std::tuple{"j*(k*k)", "(j*k)*(j*k)", &d}}) {
        CHECK(check_classification(J(l), J(r), flagship(), *cl));
    }
}

TEST_CASE("forged classifications are rejected")
{
    Classification forged = classify_pair(J("j*k"), J("k*j"), flagship());
    CHECK_FALSE(check_classification(J("j*k"), J("k*k"), flagship(), forged));
    forged.certificate = EquivCertificate{};
    CHECK_FALSE(check_classification(J("j*k"), J("k*j"), flagship(), forged));
}

TEST_CASE("membership obstructions")
{
    const Generator j = flagship().base().at("j");
    CHECK(membership_obstruction(J("k"), j, flagship()) == Membership::Obstructed);
    CHECK(membership_obstruction(J("j"), j, flagship()) == Membership::NoObstruction);
    CHECK(membership_obstruction(J("k*j"), j, flagship()) == Membership::NoObstruction);
}

TEST_CASE("signature files")
{
    const auto sig = ColoredSignature::from_json(
        R"({"generators":[{"name":"a","color":"nonproper"},{"name":"b"}]})");
    CHECK(sig.base().size() == 2);
    CHECK(sig.color(sig.base().at("a")) == Color::NonProper);
    CHECK(sig.color(sig.base().at("b")) == Color::Proper);
    CHECK(ColoredSignature::from_json(sig.to_json()).to_json() == sig.to_json());
    CHECK_THROWS_AS(ColoredSignature::from_json("not json"), InvalidSignature);
    CHECK_THROWS_AS(ColoredSignature::from_json(R"({"generators":[]})"), InvalidSignature);
    CHECK_THROWS_AS(ColoredSignature::from_json(R"({"generators":[{"name":"a","color":"red"}]})"),
                    InvalidSignature);
    CHECK_THROWS_AS(ColoredSignature(Signature::from_names({"a"}), {}), InvalidSignature);
}

TEST_CASE("batch classification")
{
    CHECK(batch_classify({}, flagship()).empty());

    std::mt19937_64 rng(5);
    const auto& gens = flagship().base().generators();
    std::vector<std::pair<Term, Term>> pairs;
    for (int i = 0; i < 100; ++i) {
        const Term t = test::random_term_up_to(rng, gens, 8);
        if (i % 2 == 0) {
            pairs.emplace_back(t, random_expansion_walk(t, 3, static_cast<std::uint64_t>(i)));
        } else {
            pairs.emplace_back(t, test::random_term_up_to(rng, gens, 8));
        }
    }
    const auto results = batch_classify(pairs, flagship());
    REQUIRE(results.size() == pairs.size());
    std::size_t equal = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& c = results[i];
        CHECK_FALSE((c.certificate.has_value() && c.refutation.has_value()));
        CHECK(check_classification(pairs[i].first, pairs[i].second, flagship(), c));
        if (c.kind == VerdictKind::Equal) {
            ++equal;
            CHECK(c.rho_verdict != "Distinct");
        }
    }
    CHECK(equal >= 50);
}

TEST_CASE("rho commutes with expansion steps")
{
    std::mt19937_64 rng(6);
    const RhoMap rho;
    const auto& gens = flagship().base().generators();
    for (int i = 0; i < 1000; ++i) {
        const Term t = test::random_term_up_to(rng, gens, 10);
        const Term image = apply_rho(t, rho);
        if (!t.is_leaf()) {
            CHECK(image == Term::app(apply_rho(t.left(), rho), apply_rho(t.right(), rho)));
        }
        for (const auto& [r, step] : expand_once(t)) {
            const auto stepped = apply_step(image, step);
            REQUIRE(stepped.has_value());
            CHECK(*stepped == apply_rho(r, rho));
        }
    }
}

TEST_CASE("classification report is stable")
{
    const Term l = J("j*k");
    const Term r = J("j");
    const auto first = classification_to_json(l, r, classify_pair(l, r, flagship())).dump();
    const auto second = classification_to_json(l, r, classify_pair(l, r, flagship())).dump();
    CHECK(first == second);
    CHECK(first.find("\"rule\":\"rho-refutation\"") != std::string::npos);
}
