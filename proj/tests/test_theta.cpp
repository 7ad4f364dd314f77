#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ellischub/theta.hpp"

using namespace ellsc;

namespace {

EvalPoint point(std::initializer_list<std::pair<std::string, Rational>> sqrts) {
    EvalPoint p;
    for (const auto& [v, s] : sqrts) p.sqrtval[v] = s;
    return p;
}

Monomial mv(const std::string& n, int semantic = 1) { return Monomial::var(n, 2 * semantic); }

// q^{1/2} * theta(q x), expanded directly from the triple product with the
// argument shifted before any series machinery runs.  Used as an independent
// oracle for the quasi-periodicity factors.
QSeries half_shifted_theta(const Rational& sqrt_x, int order) {
    Rational x = sqrt_x * sqrt_x;
    QSeries s = QSeries::constant(-Rational(1) / sqrt_x, order);
    if (order >= 1) s.c[1] = sqrt_x;
    for (auto& c : s.c) c *= (1 - Rational(1) / x);
    for (int m = 2; m <= order; ++m) qs_mul_linear_factor(s, x, m);
    for (int n = 1; n <= order; ++n) qs_mul_linear_factor(s, Rational(Rational(1) / x), n);
    return s;
}

}  // namespace

TEST_CASE("theta series frozen values") {
    EvalPoint p = point({{"a", rat(2)}});  // a = 4
    QSeries th = theta_series(mv("a"), p, 1);
    CHECK(th.c[0] == rat(3, 2));
    CHECK(th.c[1] == rat(-51, 8));
}

TEST_CASE("theta at the unit argument vanishes identically") {
    EvalPoint p;
    QSeries th = theta_series(Monomial{}, p, 5);
    for (const auto& c : th.c) CHECK(rat_is_zero(c));
}

TEST_CASE("theta prime at one") {
    QSeries tp = theta_prime_one_series(3);
    CHECK(tp.c == std::vector<Rational>{rat(1), rat(-2), rat(-1), rat(2)});
}

TEST_CASE("theta requires integer lattice arguments") {
    EvalPoint p = point({{"h", rat(3, 2)}});
    CHECK_THROWS_AS(theta_series(Monomial::var("h", 1), p, 2), LatticeViolation);
}

TEST_CASE("delta series frozen values") {
    EvalPoint p = point({{"a", rat(2)}, {"b", rat(3)}});  // a = 4, b = 9
    QSeries d = delta_series(mv("a"), mv("b"), p, 2);
    CHECK(d.c[0] == rat(35, 24));
    CHECK(d.c[1] == rat(-1295, 36));
    // q^2 coefficient 1/144 + 1/324 - 144 - 324 from the closed form below
    CHECK(d.c[2] == rat(-606515, 1296));
}

TEST_CASE("delta low-order coefficients match the closed forms") {
    // q^0: (1 - 1/(ab)) / ((1-1/a)(1-1/b));  q^1: 1/(ab) - ab;
    // q^2: 1/(a^2 b) + 1/(a b^2) - a^2 b - a b^2
    std::mt19937_64 rng(99);
    std::set<std::string> vars{"a", "b"};
    int done = 0, guard = 0;
    while (done < 5 && guard++ < 200) {
        EvalPoint p = sample_point(vars, rng);
        Rational a = p.value("a"), b = p.value("b");
        if (a == 1 || b == 1 || a * b == 1) continue;
        QSeries d = delta_series(mv("a"), mv("b"), p, 2);
        Rational ai = Rational(1) / a, bi = Rational(1) / b;
        CHECK(d.c[0] == (1 - ai * bi) / ((1 - ai) * (1 - bi)));
        CHECK(d.c[1] == ai * bi - a * b);
        CHECK(d.c[2] == ai * ai * bi + ai * bi * bi - a * a * b - a * b * b);
        ++done;
    }
    CHECK(done == 5);
}

TEST_CASE("delta pole behaviour") {
    EvalPoint p = point({{"a", rat(2)}, {"b", rat(1, 2)}});  // ab = 1: numerator zero is fine
    QSeries fine = delta_series(mv("a"), mv("b"), p, 2);
    for (const auto& c : fine.c) CHECK(rat_is_zero(c));

    EvalPoint punit = point({{"a", rat(2)}, {"b", rat(2)}});
    // delta(a/b, ...) with a = b makes theta(a/b) vanish in the denominator
    Monomial ratio = mv("a") * mv("b", -1);
    CHECK_THROWS_AS(delta_series(ratio, mv("a"), punit, 2), PoleAtEvaluation);
}

TEST_CASE("delta symmetry and inversion antisymmetry") {
    FactoredExpr dab = FactoredExpr::from_term([] {
        Term t;
        t.push(delta_atom(mv("a"), mv("b")));
        return t;
    }());
    FactoredExpr dba = FactoredExpr::from_term([] {
        Term t;
        t.push(delta_atom(mv("b"), mv("a")));
        return t;
    }());
    FactoredExpr dinv = FactoredExpr::from_term([] {
        Term t;
        t.coeff = rat(-1);
        t.push(delta_atom(mv("a", -1), mv("b", -1)));
        return t;
    }());
    EqualityConfig cfg;
    cfg.order = 4;
    cfg.points = 3;
    CHECK(expr_equal(dab, dba, cfg));
    CHECK(expr_equal(dab, dinv, cfg));
    CHECK_FALSE(expr_equal(dab, expr_scale(rat(2), dba), cfg));
}

TEST_CASE("trisecant identity for theta") {
    auto prod4 = [](Monomial m1, Monomial m2, Monomial m3, Monomial m4) {
        Term t;
        t.push(theta_atom(m1));
        t.push(theta_atom(m2));
        t.push(theta_atom(m3));
        t.push(theta_atom(m4));
        return FactoredExpr::from_term(t);
    };
    Monomial a = mv("a"), b = mv("b"), c = mv("c"), d = mv("d");
    FactoredExpr lhs = prod4(a * c, a / c, b * d, b / d);
    FactoredExpr rhs = expr_add(prod4(a * b, a / b, c * d, c / d),
                                prod4(a * d, a / d, b * c, b / c));
    EqualityConfig cfg;
    cfg.order = 6;
    cfg.points = 5;
    cfg.seed = 20240001ull;
    CHECK(expr_equal(lhs, rhs, cfg));
}

TEST_CASE("quasi-periodicity against a shifted-product oracle") {
    std::mt19937_64 rng(4242);
    std::set<std::string> vars{"x"};
    const int order = 6;
    for (int trial = 0; trial < 5; ++trial) {
        EvalPoint p = sample_point(vars, rng);
        // q^{1/2} theta(q x) = -x^{-1} theta(x)
        QSeries lhs = half_shifted_theta(p.sqrtval.at("x"), order);
        QSeries rhs =
            qs_scale(Rational(-Rational(1) / p.value("x")), theta_series(mv("x"), p, order));
        CHECK(qs_equal(lhs, rhs));
    }

    QuasiPeriodFactor f = quasi_period_factor(theta_atom(mv("x")), "x");
    CHECK(f.sign == -1);
    CHECK(f.multiplier == mv("x", -1));
    CHECK(f.qshift_doubled == -1);
}

TEST_CASE("delta quasi-periodicity in the first slot") {
    // delta(q a, b) = b^{-1} delta(a, b)
    std::mt19937_64 rng(777);
    std::set<std::string> vars{"a", "b"};
    const int order = 6;
    int done = 0, guard = 0;
    while (done < 5 && guard++ < 200) {
        EvalPoint p = sample_point(vars, rng);
        Rational a = p.value("a"), b = p.value("b");
        if (a == 1 || b == 1 || a * b == 1) continue;
        // q^{1/2} theta(q a b) and q^{1/2} theta(q a): the half-powers cancel in delta
        QSeries t_ab = half_shifted_theta(p.sqrtval.at("a") * p.sqrtval.at("b"), order);
        QSeries t_a = half_shifted_theta(p.sqrtval.at("a"), order);
        QSeries lhs = qs_mul(qs_mul(t_ab, theta_prime_one_series(order)),
                             qs_invert(qs_mul(t_a, theta_series(mv("b"), p, order))));
        QSeries rhs = qs_scale(Rational(Rational(1) / b), delta_series(mv("a"), mv("b"), p, order));
        CHECK(qs_equal(lhs, rhs));
        ++done;
    }
    CHECK(done == 5);

    QuasiPeriodFactor f = quasi_period_factor(delta_atom(mv("a"), mv("b")), "a");
    CHECK(f.sign == 1);
    CHECK(f.multiplier == mv("b", -1));
    CHECK(f.qshift_doubled == 0);

    QuasiPeriodFactor g = quasi_period_factor(delta_atom(mv("a") * mv("c"), mv("a") * mv("d")), "a");
    CHECK(g.sign == 1);
    CHECK(g.multiplier == (mv("a") * mv("c")).inverse() * (mv("a") * mv("d")).inverse());
    CHECK(g.qshift_doubled == -2);

    QuasiPeriodFactor tp = quasi_period_factor(theta_prime_one_atom(), "a");
    CHECK(tp.sign == 1);
    CHECK(tp.multiplier.trivial());
    CHECK(tp.qshift_doubled == 0);

    CHECK_THROWS_AS(quasi_period_factor(one_minus_atom(mv("a")), "a"), DomainError);
}

TEST_CASE("expression JSON round-trip is bit-exact") {
    Term t1;
    t1.coeff = rat(-35, 24);
    t1.push(theta_atom(mv("z1") * mv("z2", -1), 2));
    t1.push(delta_atom(mv("z1"), Monomial::var("h", 1) * mv("mu1"), -1));
    t1.push(theta_prime_one_atom(3));
    Term t2;
    t2.push(mono_atom(Monomial::var("h", -3)));
    t2.push(one_minus_atom(mv("z2")));
    FactoredExpr e;
    e.terms = {t1, t2};

    nlohmann::json j = expr_to_json(e);
    FactoredExpr back = expr_from_json(j);
    CHECK(expr_structural_equal(e, back));
    CHECK(expr_canonical_dump(e) == expr_canonical_dump(back));

    FactoredExpr zero = FactoredExpr::zero();
    CHECK(expr_from_json(expr_to_json(zero)).structurally_zero());
    CHECK_THROWS_AS(expr_from_json(nlohmann::json::object()), UsageError);
}

TEST_CASE("atom merge keeps terms canonical") {
    Term t;
    t.push(theta_atom(mv("a"), 2));
    t.push(delta_atom(mv("a"), mv("b")));
    t.push(theta_atom(mv("a"), -2));
    CHECK(t.atoms.size() == 1);
    CHECK(t.atoms[0].kind == AtomKind::Delta);

    // delta slots are positional: delta(a,b) and delta(b,a) do not merge
    Term s;
    s.push(delta_atom(mv("a"), mv("b")));
    s.push(delta_atom(mv("b"), mv("a")));
    CHECK(s.atoms.size() == 2);
}

TEST_CASE("locus evaluation certifies pole cancellation") {
    Monomial ratio = mv("z1") * mv("z2", -1);
    Monomial h = mv("h");

    // theta(z1/z2) delta(z1/z2, h) = theta(h z1/z2) theta'(1) / theta(h) stays
    // finite as z2 -> z1 and tends to theta'(1)
    Term lt;
    lt.push(theta_atom(ratio));
    lt.push(delta_atom(ratio, h));
    FactoredExpr lhs = FactoredExpr::from_term(lt);
    Term rt;
    rt.push(theta_prime_one_atom());
    FactoredExpr rhs = FactoredExpr::from_term(rt);

    EqualityConfig cfg;
    cfg.order = 3;
    cfg.points = 2;
    std::vector<std::pair<std::string, std::string>> collide{{"z1", "z2"}};
    CHECK(expr_equal_on_locus(lhs, rhs, collide, cfg));

    // a bare delta(z1/z2, h) has a genuine pole on the locus: even compared
    // against itself the check must refuse
    FactoredExpr bare = FactoredExpr::from_term([&] {
        Term t;
        t.push(delta_atom(ratio, h));
        return t;
    }());
    CHECK_FALSE(expr_equal_on_locus(bare, bare, collide, cfg));

    // off the locus the two sides differ
    CHECK_FALSE(expr_equal(lhs, rhs, cfg));
}

TEST_CASE("fnv1a64 known vectors") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
    CHECK(fnv1a64("foobar") == 0x85944171f73967e8ull);
}
