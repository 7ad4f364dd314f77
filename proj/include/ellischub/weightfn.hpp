#pragma once

#include "ellischub/ellclasses.hpp"

namespace ellsc {

// Sorted initial-segment data of a one-line permutation (1-based slots):
//   level_value(w,k,a)      a-th smallest element of {w(1),...,w(k)}
//   level_position(w,k,a)   the j <= k with w(j) = level_value(w,k,a)
//   level_indicator(w,k,a)  1 when w(k+1) < level_value(w,k,a), else 0
int level_value(const std::vector<int>& omega, int k, int a);
int level_position(const std::vector<int>& omega, int k, int a);
int level_indicator(const std::vector<int>& omega, int k, int a);

// Weight functions live over the variable sorts (t<k>_<a>, z_a, mu_a, h);
// the modified presentation renames every t-level variable t<k>_<a> to g_a.
struct WeightFunction {
    int n = 0;
    std::vector<int> omega;  // one-line permutation
    FactoredExpr expr;
    bool modified = false;
};

inline constexpr int kWeightSizeCap = 4;

// Symmetrization formula: prod_{k<n} k! terms, each a product of the three-case
// boundary factors and the within-level delta pairs, against the global
// theta(h)/theta'(1) prefactor and the level denominators.  The boundary
// factors are stored with the theta(x) delta(x,m) product already cancelled to
// theta'(1) theta(x m) / theta(m), which keeps every term finite under the
// variable collapses of the modified and restricted presentations.
WeightFunction weight_function(const std::vector<int>& omega, int n_cap = kWeightSizeCap);
WeightFunction weight_function(const WeylElement& omega, int n_cap = kWeightSizeCap);

// t<k>_<a> -> g_a rename; idempotent on already-modified functions.
WeightFunction modify(const WeightFunction& wf);
WeightFunction modified_weight_function(const std::vector<int>& omega, int n_cap = kWeightSizeCap);
WeightFunction modified_weight_function(const WeylElement& omega, int n_cap = kWeightSizeCap);

// Division by prod delta(mu_i/mu_j, h) over pairs i < j with omega(i) > omega(j);
// this is the normalization making both recursions below case-free.
WeightFunction normalized_weight_function(const std::vector<int>& omega, int n_cap = kWeightSizeCap);
WeightFunction normalized_weight_function(const WeylElement& omega, int n_cap = kWeightSizeCap);

// Terms containing a vanished factor (a trivial theta argument to a positive
// power) are removed; a trivial theta argument to a negative power or a
// trivial delta argument is a genuine pole and throws.
FactoredExpr drop_vanishing_terms(const FactoredExpr& e);

// g_a -> z_{sigma(a)} on a modified-presentation expression, with vanished
// terms dropped.
FactoredExpr restrict_gamma(const FactoredExpr& e, const WeylElement& sigma);
// Fixed-point restriction of the weight function of omega at sigma.
FactoredExpr restrict_weight_function(const WeylElement& omega, const WeylElement& sigma);

// z-free constant of the holomorphicity axioms.
FactoredExpr psi_constant(const std::vector<int>& omega);
FactoredExpr psi_constant(const WeylElement& omega);

// Closed diagonal restriction: prod_{i<j} theta(z_{w(j)}/z_{w(i)}) times
// delta(z_{w(j)}/z_{w(i)}, h) over the inversions of w.
FactoredExpr diagonal_weight_formula(const WeylElement& omega);

// prod_{i<j} theta(g_j/g_i)
FactoredExpr euler_class_gamma(int n);

// Structural normal form: every delta atom is expanded into its theta
// definition and every theta argument is oriented by flipping x -> 1/x (an odd
// sign) when the leading exponent is negative; identical atom products are
// then merged by adding coefficients.  Two expressions built from the same
// factors in different shapes become literally equal, with no theta identity
// beyond oddness used.
FactoredExpr expand_deltas(const FactoredExpr& e);
FactoredExpr theta_normal_form(const FactoredExpr& e);

struct AxiomCheckResult {
    std::string axiom;
    std::string status;  // "pass", "fail", or "not checked here"
    std::string note;
};
// Evaluation-backed runs of the testable axioms for one omega: GKM relations
// on each collision locus z_{sigma(k)} = z_{sigma(k+1)}, the diagonal
// normalization, and Bruhat triangularity.  Holomorphicity, transformation,
// and support are reported unchecked; transformation is covered by the
// quadratic-form module.
std::vector<AxiomCheckResult> check_weight_axioms(const WeylElement& omega, const EqualityConfig& cfg);

struct WeightCheck {
    std::string label;
    bool pass = false;
};

// Recursion battery at size n: the length-increasing left step, the R-matrix
// relation in both length cases, the case-free normalized R-matrix relation,
// the case-free normalized Bott-Samelson relation on every fixed-point
// restriction, and (n = 2 only) the counterexample showing the latter fails
// before restriction.
std::vector<WeightCheck> verify_weight_recursions(int n, const EqualityConfig& cfg);

// restrict(omega, sigma) == E_sigma(X_omega) * euler_elliptic(sigma) for the
// requested omegas (all of S_n when the list is empty).
std::vector<WeightCheck> verify_identification(int n, const std::vector<std::vector<int>>& omegas,
                                               const EqualityConfig& cfg);

// The gamma-lift recursion of the hecke module applied to
// wwh_id / euler_gamma reproduces, after restriction, the weight function
// restrictions divided by the elliptic Euler class.
std::vector<WeightCheck> verify_chat_descent(int n, const EqualityConfig& cfg);

// Term-by-term structural comparison (theta normal form) of the restricted
// weight functions against the recursion route along the canonical
// (lexicographically least) reduced word, for GL_3.  Observational: callers
// report the outcomes rather than asserting them.
std::vector<WeightCheck> verify_lex_structural();

}  // namespace ellsc
