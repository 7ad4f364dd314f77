#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ellischub/bottsamelson.hpp"

using namespace ellsc;

namespace {

Monomial mvar(const std::string& n, int semantic = 1) { return Monomial::var(n, 2 * semantic); }

}  // namespace

TEST_CASE("fixed point enumeration") {
    RootDatum d = RootDatum::builtin("a2");
    auto pts = bs_fixed_points(d, {1, 2});
    CHECK(pts.size() == 4);
    for (const auto& pt : pts) {
        WeylElement expect = d.identity();
        for (size_t j = 0; j < pt.eps.size(); ++j)
            if (pt.eps[j]) expect = expect.times_simple(j == 0 ? 1 : 2);
        CHECK(pt.image == expect);
    }
    CHECK_THROWS_AS(bs_fixed_points(d, {1, 1}), UsageError);
}

TEST_CASE("tangent characters and boundary multiplicities of the word (1,2)") {
    RootDatum d = RootDatum::builtin("a2");
    auto pts = bs_fixed_points(d, {1, 2});
    // mask 1 = eps (1,0)
    const BSFixedPoint& pt = pts[1];
    REQUIRE(pt.eps == std::vector<int>{1, 0});
    CHECK(pt.image == d.simple_reflection(1));
    // position 1: (L_1)^{-1} at the identity prefix = z1/z2
    CHECK(pt.tangent_chars[0] == mvar("z1") * mvar("z2", -1));
    // position 2: (L_2) at prefix s_1 = z^{-s_1(alpha_2)} = z3/z1
    CHECK(pt.tangent_chars[1] == mvar("z3") * mvar("z1", -1));
    // multiplicity exponents: beta_1_vee = s_2(alpha_1_vee) = (1,0,-1),
    // beta_2_vee = alpha_2_vee
    CHECK(pt.boundary_mults[0] == mvar("mu3") * mvar("mu1", -1));
    CHECK(pt.boundary_mults[1] == mvar("mu3") * mvar("mu2", -1));
}

TEST_CASE("local class of the word (1,2) at eps (1,0)") {
    RootDatum d = RootDatum::builtin("a2");
    FactoredExpr got = bs_local_class(d, {1, 2}, {1, 0});

    Term want;
    want.push(delta_atom(mvar("z1") * mvar("z2", -1), mvar("h")));
    want.push(delta_atom(mvar("z3") * mvar("z1", -1), mvar("mu3") * mvar("mu2", -1)));
    CHECK(expr_structural_equal(got, FactoredExpr::from_term(want)));

    auto pts = bs_fixed_points(d, {1, 2});
    CHECK(expr_structural_equal(got, bs_local_class_from_point(pts[1])));
}

TEST_CASE("recursion and fixed point data agree structurally") {
    for (const char* name : {"a2", "c2"}) {
        RootDatum d = RootDatum::builtin(name);
        std::vector<std::vector<int>> words;
        if (std::string(name) == "a2")
            words = {{1}, {2}, {1, 2}, {2, 1}, {1, 2, 1}, {2, 1, 2}};
        else
            words = {{1, 2}, {2, 1}, {1, 2, 1}, {1, 2, 1, 2}, {2, 1, 2, 1}};
        for (const auto& word : words) {
            auto pts = bs_fixed_points(d, word);
            for (const auto& pt : pts) {
                FactoredExpr a = bs_local_class(d, word, pt.eps);
                FactoredExpr b = bs_local_class_from_point(pt);
                CHECK(expr_structural_equal(a, b));
            }
        }
    }
}

TEST_CASE("klt local class") {
    std::vector<Monomial> chars{mvar("x1"), mvar("x2")};
    std::vector<Monomial> mults{mvar("a1"), mvar("a2")};
    FactoredExpr e = local_klt_class(chars, mults);
    REQUIRE(e.terms.size() == 1);
    CHECK(e.terms[0].atoms.size() == 2);
    CHECK(e.terms[0].atoms[0].b == mvar("h") * mvar("a1", -1));

    CHECK_THROWS_AS(local_klt_class(chars, {mvar("a1")}), UsageError);
    CHECK_THROWS_AS(local_klt_class({mvar("x1")}, {mvar("h")}), DomainError);
}

TEST_CASE("blow-up identity for klt classes") {
    Monomial x1 = mvar("x1"), x2 = mvar("x2"), a1 = mvar("a1"), a2 = mvar("a2"), h = mvar("h");
    FactoredExpr lhs = local_klt_class({x1, x2}, {a1, a2});
    FactoredExpr rhs = expr_add(local_klt_class({x1, x2 / x1}, {a1 * a2 / h, a2}),
                                local_klt_class({x2, x1 / x2}, {a1 * a2 / h, a1}));
    EqualityConfig cfg;
    cfg.order = 6;
    cfg.points = 5;
    CHECK(expr_equal(lhs, rhs, cfg));
}
