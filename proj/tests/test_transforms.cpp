#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <ellischub/transforms.hpp>
#include <ellischub/weightfn.hpp>

using namespace ellsc;

namespace {

Monomial mv(const std::string& s) { return Monomial::var(s); }

LinearForm lf(std::initializer_list<std::pair<std::string, long>> entries) {
    LinearForm r;
    for (const auto& [v, k] : entries) r.add(v, k);
    return r;
}

FactoredExpr term_expr(const std::vector<Atom>& atoms) {
    Term t;
    for (const auto& a : atoms) t.push(a);
    return FactoredExpr::from_term(t);
}

bool all_pass(const std::vector<TransformCheck>& v) {
    bool ok = true;
    for (const auto& c : v) {
        if (!c.pass) {
            MESSAGE("failed: " << c.label);
            ok = false;
        }
    }
    return ok;
}

}  // namespace

TEST_CASE("monomials read as integer rows") {
    LinearForm row = linear_form_of(mv("h") * mv("mu2") / mv("mu1"));
    CHECK(row == lf({{"h", 1}, {"mu2", 1}, {"mu1", -1}}));
    CHECK(linear_form_of(Monomial()).zero());
    CHECK_THROWS_AS(linear_form_of(Monomial::var("x", 1)), LatticeViolation);
}

TEST_CASE("transformation ledger of single atoms") {
    QuadraticForm th = form_of_expression(term_expr({theta_atom(mv("x"))}));
    QuadraticForm th_want;
    th_want.add("x", "x", 1);
    CHECK(th == th_want);

    QuadraticForm de = form_of_expression(term_expr({delta_atom(mv("a"), mv("b"))}));
    QuadraticForm de_want;
    de_want.add("a", "b", 2);
    CHECK(de == de_want);

    CHECK(form_of_expression(term_expr({theta_prime_one_atom(5)})).zero());

    QuadraticForm inv = form_of_expression(term_expr({theta_atom(mv("x") / mv("y"), -2)}));
    QuadraticForm inv_want;
    inv_want.add("x", "x", -2);
    inv_want.add("y", "y", -2);
    inv_want.add("x", "y", 4);
    CHECK(inv == inv_want);

    CHECK_THROWS_AS(form_of_expression(term_expr({mono_atom(mv("x"))})), DomainError);
    CHECK_THROWS_AS(form_of_expression(term_expr({one_minus_atom(mv("x"))})), DomainError);
    CHECK_THROWS_AS(form_of_expression(FactoredExpr()), UsageError);
    CHECK_THROWS_AS(
        form_of_expression(expr_add(term_expr({theta_atom(mv("x"))}),
                                    term_expr({theta_atom(mv("y"))}))),
        SummandMismatch);
}

TEST_CASE("frozen fixed-point forms on two and three letters") {
    const RootDatum& D2 = RootDatum::builtin("a1");
    QuadraticForm m_s1_id = m_form(D2.simple_reflection(1), D2.identity());
    CHECK(m_s1_id == product_form(lf({{"z2", 1}, {"z1", -1}}), lf({{"mu2", 1}, {"mu1", -1}})));

    QuadraticForm m_s1_s1 = m_form(D2.simple_reflection(1), D2.simple_reflection(1));
    CHECK(m_s1_s1 == product_form(h_linear(), lf({{"z1", 1}, {"z2", -1}})));

    const RootDatum& D3 = RootDatum::builtin("a2");
    WeylElement id = D3.identity();
    QuadraticForm m_w0_id = m_form(D3.longest_element(), id);
    CHECK(m_w0_id == product_form(lf({{"z3", 1}, {"z1", -1}}), lf({{"mu3", 1}, {"mu1", -1}})));

    WeylElement s1s2 = D3.from_word({1, 2});
    QuadraticForm mid = product_form(lf({{"z2", 1}, {"z1", -1}}), lf({{"mu3", 1}, {"mu1", -1}})) +
                        product_form(lf({{"z3", 1}, {"z2", -1}}), lf({{"mu3", 1}, {"mu2", -1}}));
    CHECK(m_form(s1s2, id) == mid);
    QuadraticForm mid_s1 =
        product_form(h_linear(), lf({{"z1", 1}, {"z2", -1}})) +
        product_form(lf({{"z3", 1}, {"z1", -1}}), lf({{"mu3", 1}, {"mu2", -1}}));
    CHECK(m_form(s1s2, D3.simple_reflection(1)) == mid_s1);

    CHECK_THROWS_AS(m_form(id, D3.simple_reflection(1)), UsageError);
}

TEST_CASE("explicit reduced words reproduce the canonical recursion") {
    const RootDatum& D = RootDatum::builtin("a2");
    WeylElement w0 = D.longest_element();
    for (const auto& word : D.all_reduced_words(w0))
        for (int s = 0; s < D.group_order(); ++s)
            CHECK(m_form_via_word(D, word, D.element(s)) == m_form(w0, D.element(s)));
    CHECK_THROWS_AS(m_form_via_word(D, {1, 1}, D.identity()), UsageError);
}

TEST_CASE("frozen closed forms of the weight functions on two letters") {
    LinearForm z1g = lf({{"z1", 1}, {"g1", -1}});
    LinearForm z2g = lf({{"z2", 1}, {"g1", -1}});

    QuadraticForm q12 = product_form(z1g, lf({{"h", 1}, {"mu2", 1}, {"mu1", -1}})).scaled(2) +
                        product_form(z1g, z1g) + product_form(z2g, z2g);
    CHECK(q_form(std::vector<int>{1, 2}) == q12);

    QuadraticForm q21 = product_form(h_linear(), z1g).scaled(2) +
                        product_form(z2g, lf({{"mu2", 1}, {"mu1", -1}})).scaled(2) +
                        product_form(z1g, z1g) + product_form(z2g, z2g);
    CHECK(q_form(std::vector<int>{2, 1}) == q21);

    CHECK_THROWS_AS(q_form(std::vector<int>{1, 1}), UsageError);
    CHECK_THROWS_AS(q_form(RootDatum::builtin("c2").identity()), DomainError);
}

TEST_CASE("weight functions transform by their closed form") {
    for (std::vector<int> line :
         {std::vector<int>{1, 2}, {2, 1}, {1, 2, 3}, {2, 1, 3}, {3, 1, 2}, {3, 2, 1}})
        CHECK(form_of_expression(modified_weight_function(line).expr) == q_form(line));
}

TEST_CASE("both summands of the long-element class carry one form") {
    Monomial z1 = mv("z1"), z2 = mv("z2"), z3 = mv("z3");
    Monomial m1 = mv("mu1"), m2 = mv("mu2"), m3 = mv("mu3"), h = mv("h");
    Term a1;
    a1.push(delta_atom(z2 / z1, m3 / m2));
    a1.push(delta_atom(z3 / z2, m3 / m1));
    a1.push(delta_atom(z2 / z1, m2 / m1));
    Term a2;
    a2.push(delta_atom(z1 / z2, h));
    a2.push(delta_atom(z3 / z1, m3 / m1));
    a2.push(delta_atom(z2 / z1, h));
    FactoredExpr both = expr_add(FactoredExpr::from_term(a1), FactoredExpr::from_term(a2));

    const RootDatum& D = RootDatum::builtin("a2");
    QuadraticForm f = form_of_expression(both);  // no mismatch thrown
    CHECK(f == m_form(D.longest_element(), D.identity()).scaled(2));
}

TEST_CASE("restricted closed form splits into the fixed-point form and Euler rows") {
    const RootDatum& D = RootDatum::builtin("a1");
    std::map<std::string, LinearForm> collapse{{"g1", lf({{"z2", 1}})}};
    QuadraticForm lhs = substitute(q_form(std::vector<int>{2, 1}), collapse);
    LinearForm zd = lf({{"z1", 1}, {"z2", -1}});
    CHECK(lhs - product_form(zd, zd) == product_form(h_linear(), zd).scaled(2));
    CHECK(lhs - product_form(zd, zd) ==
          m_form(D.simple_reflection(1), D.simple_reflection(1)).scaled(2));
}

TEST_CASE("divided differences of the fixed-point forms") {
    for (const char* name : {"a2", "c2"}) {
        const RootDatum& D = RootDatum::builtin(name);
        std::vector<IVec> roots;
        for (const auto& b : D.positive_roots()) {
            roots.push_back(b);
            IVec nb = b;
            for (auto& x : nb) x = -x;
            roots.push_back(nb);
        }
        for (int i = 0; i < D.group_order(); ++i) {
            WeylElement w = D.element(i);
            for (int s = 0; s < D.group_order(); ++s) {
                WeylElement sigma = D.element(s);
                if (!bruhat_leq(sigma, w)) continue;
                QuadraticForm M = m_form(w, sigma);
                for (const auto& beta : roots) {
                    LinearForm want =
                        z_linear(sigma.act_weight(beta)) - z_linear(w.act_weight(beta));
                    CHECK(divided_difference_form(D, beta, M) == want);
                }
            }
        }
    }
}

TEST_CASE("divided difference pairing values and antisymmetry") {
    const RootDatum& D = RootDatum::builtin("a2");
    LinearForm zrow = lf({{"z1", 1}});
    for (int a = 1; a <= 2; ++a) {
        QuadraticForm f = product_form(mu_linear(D.simple_coroot(a)), zrow);
        for (int b = 1; b <= 2; ++b) {
            long pair = RootDatum::pairing(D.simple_root(a), D.simple_coroot(b));
            CHECK(divided_difference_form(D, D.simple_root(b), f) == zrow.scaled(pair));
        }
    }

    QuadraticForm f;  // a fixed but unstructured integer form over mu and z rows
    f.add("mu1", "z1", 3);
    f.add("mu2", "z2", -2);
    f.add("mu1", "mu2", 1);
    f.add("z1", "z1", 4);
    IVec beta = D.simple_root(1);
    IVec nbeta = beta;
    for (auto& x : nbeta) x = -x;
    CHECK(divided_difference_form(D, nbeta, f) == -divided_difference_form(D, beta, f));
    CHECK_THROWS_AS(divided_difference_form(D, IVec{5, 0, 0}, f), UsageError);
}

TEST_CASE("quasi-period factors match the ledger rows") {
    Monomial z1 = mv("z1"), g1 = mv("g1"), m1 = mv("mu1"), m2 = mv("mu2"), h = mv("h");
    Term t;
    t.push(theta_prime_one_atom(-1));
    t.push(theta_atom(h * z1 / g1));
    t.push(theta_atom(z1 / g1, -1));
    t.push(delta_atom(z1 / g1, h * m2 / m1));
    QuadraticForm f = form_of_term(t);
    for (const std::string v : {"z1", "g1", "mu1", "mu2", "h"}) {
        QuasiPeriodFactor want = predicted_quasi_period(f, v);
        QuasiPeriodFactor got = term_quasi_period(t, v);
        CHECK(want.sign == got.sign);
        CHECK(want.multiplier == got.multiplier);
        CHECK(want.qshift_doubled == got.qshift_doubled);
    }
}

TEST_CASE("theorem battery on the built-in data") {
    CHECK(all_pass(check_transform_theorems(RootDatum::builtin("a1"))));
    CHECK(all_pass(check_transform_theorems(RootDatum::builtin("a2"))));
    CHECK(all_pass(check_transform_theorems(RootDatum::builtin("c2"))));
}
