#pragma once

#include <set>

#include "ellischub/ellclasses.hpp"

namespace ellsc {

// Additive linear form over the same variable names the monomials use.  A
// monomial prod v^{e_v} is read additively as sum e_v * v; half-integral
// exponents have no integral row and are rejected.
struct LinearForm {
    std::map<std::string, long> c;

    void add(const std::string& v, long k);
    long at(const std::string& v) const;
    bool zero() const { return c.empty(); }
    bool operator==(const LinearForm& o) const { return c == o.c; }
    LinearForm operator+(const LinearForm& o) const;
    LinearForm operator-(const LinearForm& o) const;
    LinearForm operator-() const;
    LinearForm scaled(long k) const;
    std::string str() const;
};

LinearForm linear_form_of(const Monomial& m);

// Integer quadratic polynomial keyed by unordered variable pairs: c[{v,u}] is
// the coefficient of v*u, diagonal keys hold the coefficient of v^2.  As a
// symmetric matrix M this means M_vv = c[{v,v}] and M_vu = c[{v,u}]/2, which
// keeps every entry of the transformation ledger integral.
struct QuadraticForm {
    std::map<std::pair<std::string, std::string>, long> c;

    void add(const std::string& v, const std::string& u, long k);
    long at(const std::string& v, const std::string& u) const;
    bool zero() const { return c.empty(); }
    bool operator==(const QuadraticForm& o) const { return c == o.c; }
    QuadraticForm operator+(const QuadraticForm& o) const;
    QuadraticForm operator-(const QuadraticForm& o) const;
    QuadraticForm scaled(long k) const;
    std::string str() const;
    std::set<std::string> vars() const;
};

// the polynomial a*b
QuadraticForm product_form(const LinearForm& a, const LinearForm& b);

// Transformation ledger: theta(m) contributes (row of m)^2, delta(a, b)
// contributes 2 a b, theta'(1) contributes nothing; plain monomial and 1 - m
// factors are not sections and are rejected.  Every term of an expression must
// contribute the same form; a mismatch is reported with both offenders.
QuadraticForm form_of_term(const Term& t);
QuadraticForm form_of_expression(const FactoredExpr& e);

// variable-by-linear-form substitution; unmapped variables stay themselves
QuadraticForm substitute(const QuadraticForm& f,
                         const std::map<std::string, LinearForm>& sub);

// rows of the root functionals: z_alpha from a weight vector, mu_alpha from a
// coroot vector (minus the row of the corresponding nu monomial), and h
LinearForm z_linear(const IVec& weight);
LinearForm mu_linear(const IVec& coweight);
LinearForm h_linear();

// the reflection action on the mu block of a form
QuadraticForm act_mu_form(const WeylElement& w, const QuadraticForm& f);

// Fixed-point transformation form: M(id, id) = 0 and, peeling a simple
// reflection off omega, M picks up mu_alpha z_{sigma(alpha)} when sigma stays
// below the shorter element and -h z_{sigma(alpha)} when sigma s_alpha does.
// When both branches apply they are computed and compared.
QuadraticForm m_form(const WeylElement& omega, const WeylElement& sigma);
// the same recursion along an explicit reduced word for omega
QuadraticForm m_form_via_word(const RootDatum& D, const std::vector<int>& word,
                              const WeylElement& sigma);

// closed transformation form of the modified weight function (gamma, z, mu, h)
QuadraticForm q_form(const std::vector<int>& omega);
QuadraticForm q_form(const WeylElement& omega);

// d_beta(f) = (f - f o s_beta) / mu_beta, exact on the forms produced by the
// recursion; beta may be any root of the datum
LinearForm divided_difference_form(const RootDatum& D, const IVec& beta,
                                   const QuadraticForm& f);

// quasi-periodicity of a single-term expression under var -> q var: the factor
// predicted by the form's row versus the product of the per-atom factors
QuasiPeriodFactor predicted_quasi_period(const QuadraticForm& f, const std::string& var);
QuasiPeriodFactor term_quasi_period(const Term& t, const std::string& var);

struct TransformCheck {
    std::string label;
    bool pass = false;
};

// Theorem battery over one datum: branch coherence and reduced-word
// independence of the recursion, the simple-step length formula, the smooth
// diagonal value, agreement with the forms of the Bott-Samelson classes, and
// (permutation data within the weight-function cap) the closed Q form, its
// differences, its restriction to fixed points, and the quasi-period ledger.
std::vector<TransformCheck> check_transform_theorems(const RootDatum& D);

}  // namespace ellsc
