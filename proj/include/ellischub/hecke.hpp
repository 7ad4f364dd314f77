#pragma once

#include "ellischub/ellclasses.hpp"

#include <functional>
#include <map>
#include <optional>

namespace ellsc {

// --- elliptic operators on W-indexed tuples ----------------------------------

// C_k, the one-letter recursion step read as an operator:
//   (C_k f)_sigma = delta((L_k)_sigma, nu_k) s_k^mu f_sigma
//                 + delta((L_k)_sigma, h)    s_k^mu f_{sigma s_k}
inline ClassVector apply_C(const ClassVector& f, int k) { return schubert_step(f, k); }

// componentwise multiplication by a fixed expression
ClassVector scale_components(const ClassVector& f, const FactoredExpr& m);

// componentwise multiplication by kappa_k = delta(h, nu_k) delta(h, 1/nu_k)
ClassVector apply_kappa(const ClassVector& f, int k);

// Lift of C_k to expressions in the gamma variables (type A only):
//   Chat_k(f) = delta(g_{k+1}/g_k, nu_k) s_k^mu f + delta(g_{k+1}/g_k, h) s_k^g s_k^mu f
// where s_k^g swaps g_k and g_{k+1}.  Restriction g_i -> z_{sigma(i)} turns
// s_k^g into the component swap sigma -> sigma s_k, so Chat_k descends to C_k.
FactoredExpr apply_Chat(const RootDatum& D, const FactoredExpr& f, int k);

// swap of g_k and g_{k+1}
FactoredExpr gamma_swap(const FactoredExpr& f, int k);

// --- degenerate operator families ---------------------------------------------

// Components of the degenerate sorts are exact evaluation procedures; operator
// identities are checked pointwise on random points.
using NumFn = std::function<Rational(const EvalPoint&)>;

struct NumTuple {
    const RootDatum* D = nullptr;
    std::vector<NumFn> comp;
};

enum class DegKind { D, A, B, Cq0, Ctilde };

struct DegenerateOp {
    DegKind kind = DegKind::D;
    int k = 1;
    // b-values per simple index (integer parts of <lambda, alpha_j_vee>).
    // Required for Ctilde, rejected otherwise.  Composing Ctilde with itself
    // evaluates the inner factor at the reflected weight, so the caller
    // supplies b_k(s_k lambda) = -1 - b_k(lambda) for the inner application.
    std::optional<std::map<int, long>> alcove;
};

//   D_k    : (f_sigma + f_{sigma s_k}) / c1                        (additive z)
//   A_k    : f_sigma / c1 + ((1 + c1)/c1) f_{sigma s_k}            (additive z)
//   B_k    : ((1+y)L/(1-L)) f_sigma + ((1+yL)/(1-L)) f_{sigma s_k},  L = (L_k)_sigma^{-1}
//   Cq0_k  : (F id + G s^gamma) s_k^mu,  F = (1-L/nu)/((1-L)(1-1/nu)),
//            G = (1-L/h)/((1-L)(1-1/h))
//   Ctilde : as Cq0 with F = (1/L)^{-b_k-1}/(1-L)
// where c1 = additive first Chern class of L_k at sigma.
NumTuple apply_degenerate(const DegenerateOp& op, const NumTuple& f);

// evaluation point with the mu square roots replaced by their s_k images
EvalPoint twist_mu_point(const RootDatum& D, int k, const EvalPoint& p);

// additive first Chern class of L_k at sigma: -sum_i sigma(alpha_k)_i z_i
Rational chern_additive(const WeylElement& sigma, int k, const EvalPoint& p);

// --- relation verifier ---------------------------------------------------------

struct RelationCheck {
    std::string relation;
    std::string datum;
    std::uint64_t trial_seed = 0;
    bool pass = false;
};

// kind in {C, Chat, D, A, B, Cq0, Ctilde}.  Runs the square relations of the
// family and, where they hold as operator identities, braid relations, on
// `trials` random tuples (or random expressions for Chat).
std::vector<RelationCheck> verify_relations(const std::string& kind, const RootDatum& D,
                                            const std::string& label, int trials,
                                            std::uint64_t seed);

nlohmann::json relations_to_json(const std::vector<RelationCheck>& checks);

}  // namespace ellsc
