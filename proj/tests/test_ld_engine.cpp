#include "doctest.h"

#include <set>

#include "ldwb/ld_engine.hpp"
#include "support.hpp"

using namespace ldwb;
using ldwb::test::P;

namespace {

std::set<std::string> rendered(const std::vector<std::pair<Term, ExpansionStep>>& results)
{
    std::set<std::string> out;
    for (const auto& r : results) {
        out.insert(render_term(r.first));
    }
    return out;
}

}  // namespace

TEST_CASE("paths and replacement")
{
    const Term t = P("x1*(x2*x3)");
    CHECK(render_term(*subterm_at(t, "")) == "(x1*(x2*x3))");
    CHECK(render_term(*subterm_at(t, "RL")) == "x2");
    CHECK_FALSE(subterm_at(t, "LL").has_value());
    CHECK_FALSE(subterm_at(t, "X").has_value());
    const Signature x4 = infer_signature("x4");
    CHECK(render_term(replace_at(t, "RR", Term::leaf(x4.generators()[0]))) == "(x1*(x2*x4))");
}

TEST_CASE("one-step expansion")
{
    const auto single = expand_once(P("x1*(x1*x1)"));
    REQUIRE(single.size() == 1);
    CHECK(render_term(single[0].first) == "((x1*x1)*(x1*x1))");
    CHECK(single[0].second == ExpansionStep{"", Direction::Expand});

    CHECK(expand_once(P("x1")).empty());
    CHECK(expand_once(P("(x1*x2)*x3")).empty());

    const Term t = P("x1*(x2*(x3*x3))");
    const auto two = rendered(expand_once(t));
    CHECK(two == std::set<std::string>{"((x1*x2)*(x1*(x3*x3)))", "(x1*((x2*x3)*(x2*x3)))"});
    CHECK(two == test::expansions_by_pattern(t));
}

TEST_CASE("expansion matches the pattern oracle on random terms")
{
    std::mt19937_64 rng(3);
    const Signature sig = Signature::from_names({"a", "b"});
    for (int i = 0; i < 1500; ++i) {
        const Term t = test::random_term_up_to(rng, sig.generators(), 14);
        REQUIRE(rendered(expand_once(t)) == test::expansions_by_pattern(t));
    }
}

TEST_CASE("contraction inverts expansion")
{
    std::mt19937_64 rng(4);
    const Signature sig = Signature::from_names({"a", "b"});
    for (int i = 0; i < 500; ++i) {
        const Term t = test::random_term_up_to(rng, sig.generators(), 10);
        for (const auto& [r, step] : expand_once(t)) {
            const auto back = apply_step(r, ExpansionStep{step.position, Direction::Contract});
            REQUIRE(back.has_value());
            CHECK(*back == t);
            bool listed = false;
            for (const auto& [c, cstep] : contract_once(r)) {
                listed = listed || (c == t && cstep.position == step.position);
            }
            CHECK(listed);
        }
    }
    CHECK_FALSE(apply_step(P("(a*b)*(b*a)"), ExpansionStep{"", Direction::Contract}).has_value());
}

TEST_CASE("decide_equiv examples")
{
    const Verdict v1 = decide_equiv(P("x1*(x1*x1)"), P("(x1*x1)*(x1*x1)"));
    REQUIRE(is_equal(v1));
    CHECK(std::get<Equal>(v1).certificate.steps.size() == 1);

    const Verdict v2 = decide_equiv(P("x1"), P("x1"));
    REQUIRE(is_equal(v2));
    CHECK(std::get<Equal>(v2).certificate.steps.empty());

    const Verdict v3 = decide_equiv(P("x1"), P("x1*x1"));
    REQUIRE(is_distinct(v3));
    CHECK(check_refutation(P("x1"), P("x1*x1"), std::get<Distinct>(v3).reason));

    const Signature jk = Signature::from_names({"j", "k"});
    const Term lhs = P("j*(k*k)", jk);
    const Term rhs = P("(j*k)*(j*k)", jk);
    const Verdict v4 = decide_equiv(lhs, rhs, jk);
    REQUIRE(is_equal(v4));
    CHECK(check_certificate(lhs, rhs, std::get<Equal>(v4).certificate));
}

TEST_CASE("A_1 evaluation separates x1 and x1*x1")
{
    const Term lhs = P("x1");
    const Term rhs = P("x1*x1");
    // Leaf and spine invariants would fire first; evaluate the table directly.
    const TableEval reason{1, true, Assignment{{"x1", 1}}, 1, 2};
    CHECK(check_refutation(lhs, rhs, reason));
    const TableEval wrong{1, true, Assignment{{"x1", 1}}, 1, 1};
    CHECK_FALSE(check_refutation(lhs, rhs, wrong));
}

TEST_CASE("refutation reasons")
{
    const auto leaf = refute(P("a*b"), P("b*b"));
    REQUIRE(leaf.has_value());
    REQUIRE(std::holds_alternative<LeafInvariant>(*leaf));
    CHECK(std::get<LeafInvariant>(*leaf).side == Side::Left);

    const auto right = refute(P("a*b"), P("a*a"));
    REQUIRE(right.has_value());
    CHECK(std::get<LeafInvariant>(*right).side == Side::Right);

    const auto spine = refute(P("x*(x*x)"), P("x*x"));
    REQUIRE(spine.has_value());
    CHECK(std::holds_alternative<RightSpine>(*spine));
    CHECK(right_spine_length(P("x*(x*x)")) == 2);
    CHECK(right_spine_length(P("(x*x)*(x*x)")) == 2);

    // Same leaves and spine; only a Laver table tells them apart.
    const auto table = refute(P("(x*x)*x"), P("x*x"));
    REQUIRE(table.has_value());
    REQUIRE(std::holds_alternative<TableEval>(*table));
    CHECK(check_refutation(P("(x*x)*x"), P("x*x"), *table));

    CHECK_FALSE(refute(P("x*(x*x)"), P("(x*x)*(x*x)")).has_value());
}

TEST_CASE("certificate checking")
{
    const Term lhs = P("x1*(x1*x1)");
    const Term rhs = P("(x1*x1)*(x1*x1)");
    const EquivCertificate good{{CertificateStep{ExpansionStep{"", Direction::Expand}, rhs}}};
    CHECK(check_certificate(lhs, rhs, good));
    CHECK_FALSE(check_certificate(lhs, rhs, EquivCertificate{}));
    const EquivCertificate bad_pos{{CertificateStep{ExpansionStep{"RRR", Direction::Expand}, rhs}}};
    CHECK_FALSE(check_certificate(lhs, rhs, bad_pos));
    const EquivCertificate wrong_result{{CertificateStep{ExpansionStep{"", Direction::Expand}, lhs}}};
    CHECK_FALSE(check_certificate(lhs, rhs, wrong_result));
}

TEST_CASE("random walks")
{
    const Term t = P("x1*(x2*(x3*x3))");
    CHECK(random_expansion_walk(t, 0, 99) == t);
    CHECK(render_term(random_expansion_walk(P("x1*(x1*x1)"), 1, 5)) == "((x1*x1)*(x1*x1))");
    const auto options = test::expansions_by_pattern(t);
    std::set<std::string> seen;
    for (std::uint64_t seed = 0; seed < 32; ++seed) {
        const Term w = random_expansion_walk(t, 1, seed);
        CHECK(options.count(render_term(w)) == 1);
        CHECK(w == random_expansion_walk(t, 1, seed));
        seen.insert(render_term(w));
    }
    CHECK(seen.size() == 2);
    CHECK(random_expansion_walk(P("x"), 5, 1) == P("x"));
}

TEST_CASE("budget exhaustion yields Unknown")
{
    const Term t = P("x1*(x2*(x3*(x4*x5)))");
    const Term w = P("((((x1*x2)*x1)*((x1*x2)*x3))*(((x1*x2)*x1)*((x1*x2)*(x4*x5))))");
    SearchBudget tiny;
    tiny.max_frontier_terms = 10;
    const Verdict v = decide_equiv(t, w, tiny);
    REQUIRE(is_unknown(v));
    CHECK(is_equal(decide_equiv(t, w)));
}

TEST_CASE("signature check")
{
    const Signature jk = Signature::from_names({"j", "k"});
    const Signature other = Signature::from_names({"j", "q"});
    CHECK_THROWS_AS(decide_equiv(P("j*q", other), P("j", other), jk), InvalidSignature);
}

TEST_CASE("walk equivalence with sound verdicts")
{
    std::mt19937_64 rng(21);
    const Signature sig = Signature::from_names({"a", "b", "c"});
    for (int i = 0; i < 200; ++i) {
        const Term t = test::random_term_up_to(rng, sig.generators(), 10);
        const Term w = random_expansion_walk(t, 4, static_cast<std::uint64_t>(i));
        CHECK_FALSE(refute(t, w).has_value());
        const Verdict v = decide_equiv(w, t);
        REQUIRE(is_equal(v));
        CHECK(check_certificate(w, t, std::get<Equal>(v).certificate));
    }
}

TEST_CASE("every Distinct replays")
{
    std::mt19937_64 rng(22);
    const Signature sig = Signature::from_names({"a", "b"});
    for (int i = 0; i < 300; ++i) {
        const Term a = test::random_term_up_to(rng, sig.generators(), 7);
        const Term b = test::random_term_up_to(rng, sig.generators(), 7);
        if (const auto reason = refute(a, b)) {
            CHECK(check_refutation(a, b, *reason));
        }
    }
}
