#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "ellischub/evalpoint.hpp"
#include "ellischub/monomial.hpp"
#include "ellischub/qseries.hpp"

namespace ellsc {

// Multiplicative building blocks of the expressions this library manipulates:
//   Theta(m)       theta(m) = (m^{1/2} - m^{-1/2}) prod_{n>=1} (1-q^n m)(1-q^n/m)
//   ThetaPrimeOne  theta'(1) = prod_{n>=1} (1-q^n)^2
//   Delta(a,b)     theta(ab) theta'(1) / (theta(a) theta(b))
//   Mono(m)        the bare monomial m (q-independent factor)
//   OneMinus(m)    1 - m (q-independent; used by degeneration limits)
// Delta arguments are kept in the order given; delta is symmetric as a
// function but the two slots mean different things to callers.
enum class AtomKind { Theta, ThetaPrimeOne, Delta, Mono, OneMinus };

struct Atom {
    AtomKind kind = AtomKind::Theta;
    Monomial a, b;  // b used by Delta only
    int power = 1;

    std::tuple<int, const Monomial&, const Monomial&> key() const {
        return {static_cast<int>(kind), a, b};
    }
    bool same_base(const Atom& o) const {
        return kind == o.kind && a == o.a && b == o.b;
    }
};

inline Atom theta_atom(const Monomial& m, int power = 1) {
    return Atom{AtomKind::Theta, m, Monomial{}, power};
}
inline Atom theta_prime_one_atom(int power = 1) {
    return Atom{AtomKind::ThetaPrimeOne, Monomial{}, Monomial{}, power};
}
inline Atom delta_atom(const Monomial& a, const Monomial& b, int power = 1) {
    return Atom{AtomKind::Delta, a, b, power};
}
inline Atom mono_atom(const Monomial& m, int power = 1) {
    return Atom{AtomKind::Mono, m, Monomial{}, power};
}
inline Atom one_minus_atom(const Monomial& m, int power = 1) {
    return Atom{AtomKind::OneMinus, m, Monomial{}, power};
}

// One product of atoms with a rational coefficient.  Atoms are kept sorted by
// (kind, arguments) and merged by adding powers, so structural comparison of
// terms is meaningful.
struct Term {
    Rational coeff = Rational(1);
    std::vector<Atom> atoms;

    void push(Atom at) {
        if (at.power == 0) return;
        auto it = atoms.begin();
        while (it != atoms.end() && it->key() < at.key()) ++it;
        if (it != atoms.end() && it->same_base(at)) {
            it->power += at.power;
            if (it->power == 0) atoms.erase(it);
        } else {
            atoms.insert(it, std::move(at));
        }
    }

    Term times(const Term& o) const {
        Term r = *this;
        r.coeff *= o.coeff;
        for (const auto& at : o.atoms) r.push(at);
        return r;
    }
};

// A finite sum of terms.  No cross-term simplification is ever attempted;
// semantic equality is decided by exact evaluation (expr_equal).
struct FactoredExpr {
    std::vector<Term> terms;

    static FactoredExpr zero() { return {}; }
    static FactoredExpr one() {
        FactoredExpr e;
        e.terms.emplace_back();
        return e;
    }
    static FactoredExpr from_term(Term t) {
        FactoredExpr e;
        if (!rat_is_zero(t.coeff)) e.terms.push_back(std::move(t));
        return e;
    }

    bool structurally_zero() const { return terms.empty(); }
};

FactoredExpr expr_add(const FactoredExpr& a, const FactoredExpr& b);
FactoredExpr expr_neg(const FactoredExpr& a);
FactoredExpr expr_sub(const FactoredExpr& a, const FactoredExpr& b);
FactoredExpr expr_scale(const Rational& s, const FactoredExpr& a);
FactoredExpr expr_mul_term(const FactoredExpr& a, const Term& t);
FactoredExpr expr_mul(const FactoredExpr& a, const FactoredExpr& b);
// Applies a variable-to-monomial substitution to every atom argument.
FactoredExpr expr_subst(const FactoredExpr& a, const std::map<std::string, Monomial>& table);
FactoredExpr expr_rename(const FactoredExpr& a, const std::map<std::string, std::string>& table);
// All variable names occurring in the expression.
void collect_vars(const FactoredExpr& a, std::set<std::string>& out);
// Structural equality up to term order (atoms inside terms are already canonical).
bool expr_structural_equal(const FactoredExpr& a, const FactoredExpr& b);
std::string expr_str(const FactoredExpr& a);

// --- q-series evaluation ---------------------------------------------------

// Square root of the monomial's value; the monomial must lie in the integer
// lattice (all doubled exponents even), otherwise the square root is not a
// monomial in the stored square roots.
template <class F>
F eval_monomial_sqrt(const Monomial& m, const PointT<F>& p) {
    F acc = FieldOps<F>::from_rat(Rational(1));
    for (const auto& [v, d] : m.exponents()) {
        if (d % 2 != 0)
            throw LatticeViolation("theta argument off the integer lattice: " + m.str());
        auto it = p.sqrtval.find(v);
        if (it == p.sqrtval.end()) throw UsageError("evaluation point missing variable " + v);
        acc = acc * FieldOps<F>::pow(it->second, d / 2);
    }
    return acc;
}

// In-place multiply by (1 - c q^n), truncating at s.order.
template <class F>
void qs_mul_linear_factor(SeriesT<F>& s, const F& c, int n) {
    for (int i = s.order; i >= n; --i) s.c[i] = s.c[i] - c * s.c[i - n];
}

template <class F>
SeriesT<F> theta_series_t(const Monomial& m, const PointT<F>& p, int order) {
    if (order < 0) throw UsageError("negative q-series order");
    F vh = eval_monomial_sqrt(m, p);
    F x = vh * vh;
    F xinv = FieldOps<F>::inv(x);
    SeriesT<F> s = SeriesT<F>::constant(vh - FieldOps<F>::inv(vh), order);
    for (int n = 1; n <= order; ++n) {
        qs_mul_linear_factor(s, x, n);
        qs_mul_linear_factor(s, xinv, n);
    }
    return s;
}

template <class F>
SeriesT<F> theta_prime_one_series_t(int order) {
    if (order < 0) throw UsageError("negative q-series order");
    F one = FieldOps<F>::from_rat(Rational(1));
    SeriesT<F> s = SeriesT<F>::constant(one, order);
    for (int n = 1; n <= order; ++n) {
        qs_mul_linear_factor(s, one, n);
        qs_mul_linear_factor(s, one, n);
    }
    return s;
}

template <class F>
SeriesT<F> delta_series_t(const Monomial& a, const Monomial& b, const PointT<F>& p, int order) {
    SeriesT<F> num = qs_mul(theta_series_t(a * b, p, order), theta_prime_one_series_t<F>(order));
    SeriesT<F> den = qs_mul(theta_series_t(a, p, order), theta_series_t(b, p, order));
    return qs_mul(num, qs_invert(den));
}

template <class F>
SeriesT<F> atom_series_t(const Atom& at, const PointT<F>& p, int order) {
    SeriesT<F> base;
    switch (at.kind) {
        case AtomKind::Theta:
            base = theta_series_t(at.a, p, order);
            break;
        case AtomKind::ThetaPrimeOne:
            base = theta_prime_one_series_t<F>(order);
            break;
        case AtomKind::Delta:
            base = delta_series_t(at.a, at.b, p, order);
            break;
        case AtomKind::Mono:
            base = SeriesT<F>::constant(eval_monomial_t(at.a, p), order);
            break;
        case AtomKind::OneMinus:
            base = SeriesT<F>::constant(
                FieldOps<F>::from_rat(Rational(1)) - eval_monomial_t(at.a, p), order);
            break;
    }
    int pw = at.power;
    if (pw < 0) {
        base = qs_invert(base);
        pw = -pw;
    }
    SeriesT<F> acc = base;
    for (int i = 1; i < pw; ++i) acc = qs_mul(acc, base);
    return acc;
}

template <class F>
SeriesT<F> expr_eval_t(const FactoredExpr& e, const PointT<F>& p, int order) {
    SeriesT<F> total = SeriesT<F>::constant(FieldOps<F>::from_rat(Rational(0)), order);
    for (const auto& t : e.terms) {
        SeriesT<F> prod = SeriesT<F>::constant(FieldOps<F>::from_rat(t.coeff), order);
        for (const auto& at : t.atoms) prod = qs_mul(prod, atom_series_t(at, p, order));
        total = qs_add(total, prod);
    }
    return total;
}

QSeries theta_series(const Monomial& m, const EvalPoint& p, int order);
QSeries theta_prime_one_series(int order);
QSeries delta_series(const Monomial& a, const Monomial& b, const EvalPoint& p, int order);
QSeries expr_eval(const FactoredExpr& e, const EvalPoint& p, int order);

// --- randomized exact equality ----------------------------------------------

struct EqualityConfig {
    int order = 4;
    int points = 3;
    std::uint64_t seed = 20240001ull;
    int max_resamples = 100;
};

// Exact q-series agreement at `points` random points; resamples on poles.
bool expr_equal(const FactoredExpr& a, const FactoredExpr& b, const EqualityConfig& cfg);
bool expr_is_zero(const FactoredExpr& a, const EqualityConfig& cfg);

// Equality on the locus value(second) = value(first) for each listed pair,
// realized as value(second) = value(first) * (1 + eta) with eta an exact
// perturbation series.  Certifies that each side is pole-free on the locus
// (eta^{<0} coefficients vanish) and that the eta^0 parts agree.
bool expr_equal_on_locus(const FactoredExpr& a, const FactoredExpr& b,
                         const std::vector<std::pair<std::string, std::string>>& collide,
                         const EqualityConfig& cfg);

// --- quasi-periodicity -------------------------------------------------------

// Effect of var -> q * var on a single atom:
//   shifted value = sign * q^{qshift} * eval(multiplier) * original value,
// with qshift stored doubled (theta picks up half-integer q-powers).
struct QuasiPeriodFactor {
    int sign = 1;               // +1 or -1
    Monomial multiplier;
    int qshift_doubled = 0;
};
QuasiPeriodFactor quasi_period_factor(const Atom& at, const std::string& var);

// --- serialization -----------------------------------------------------------

nlohmann::json expr_to_json(const FactoredExpr& e);
FactoredExpr expr_from_json(const nlohmann::json& j);
std::string expr_canonical_dump(const FactoredExpr& e);

std::uint64_t fnv1a64(const std::string& data);

}  // namespace ellsc
