#pragma once

#include "ellischub/bottsamelson.hpp"

namespace ellsc {

// Tuple of localized classes, one expression per Weyl group element
// (component i restricts to the fixed point indexed i in the datum's tables).
struct ClassVector {
    const RootDatum* D = nullptr;
    std::vector<FactoredExpr> comp;

    const FactoredExpr& at(const WeylElement& sigma) const { return comp.at(sigma.idx); }
    FactoredExpr& at(const WeylElement& sigma) { return comp.at(sigma.idx); }
};

ClassVector identity_class_vector(const RootDatum& D);

// One-letter extension step shared by the Schubert recursion: from the tuple
// of X_{omega'} to the tuple of X_{omega' s_k} (length must go up).
ClassVector schubert_step(const ClassVector& prev, int k);

// Localized classes of the Schubert variety X_omega along the canonical word
// of omega (right extension steps).
ClassVector schubert_classes_bs(const RootDatum& D, const WeylElement& omega);

// Same classes as localization sums over Bott-Samelson fixed points of an
// arbitrary reduced word.
ClassVector schubert_classes_pushforward(const RootDatum& D, const std::vector<int>& word);

// Same classes by the R-matrix recursion (left extension steps); structurally
// different from the other two routes.
ClassVector schubert_classes_rmatrix(const RootDatum& D, const WeylElement& omega);

// kappa(nu) = delta(h, nu) delta(h, 1/nu)
FactoredExpr kappa_expr(const Monomial& nu);

// Both sides of the length-decreasing R-matrix relation at sigma:
//   delta(zeta_k, m) E_sigma(X_omega) + s_k^z( delta(zeta_k, h) E_{s_k sigma}(X_omega) )
//   = kappa(m) E_sigma(X_{s_k omega}),     m = coroot mu-monomial of omega^{-1}(alpha_k_vee)
// with zeta_k = z^{-alpha_k}; ell(s_k omega) < ell(omega) required.
std::pair<FactoredExpr, FactoredExpr> rmatrix_down_sides(const ClassVector& full,
                                                         const ClassVector& shorter,
                                                         const WeylElement& omega, int k,
                                                         const WeylElement& sigma);

// prod_{alpha > 0} theta(z^{-sigma(alpha)})
FactoredExpr euler_class_elliptic(const RootDatum& D, const WeylElement& sigma);
// prod_{alpha > 0} (1 - z^{sigma(alpha)})
FactoredExpr euler_class_k(const RootDatum& D, const WeylElement& sigma);
// prod_{alpha in Sigma_+ with omega^{-1}(alpha) < 0} delta(z^alpha, h)
FactoredExpr diagonal_class(const RootDatum& D, const WeylElement& omega);

// multiplier turning E(X_omega) into the rescaled class: the inverse of
// prod delta(h^{<lambda, alpha_vee>}, h) over alpha in Sigma_+ with
// omega(alpha) < 0, in the mu-monomial encoding
Term rescale_multiplier(const RootDatum& D, const WeylElement& omega);

// q -> 0 limit of delta(x, nu) as a q-independent expression:
//   (1 - 1/(x nu)) / ((1 - 1/x)(1 - 1/nu))
FactoredExpr q_zero_limit_factor(const Monomial& x, const Monomial& nu);

// --- golden tables -----------------------------------------------------------

struct TableEntry {
    std::vector<int> omega_word;  // canonical words
    std::vector<int> sigma_word;
    FactoredExpr expr;
};

struct LocalClassTable {
    std::string group;
    std::vector<TableEntry> entries;  // sorted by (len, word) of omega then sigma
};

// Full table of E_sigma(X_omega) over sigma <= omega, by the canonical-word
// recursion.
LocalClassTable emit_table(const RootDatum& D, const std::string& group);

nlohmann::json table_to_json(const LocalClassTable& t);
LocalClassTable table_from_json(const nlohmann::json& j);
LocalClassTable load_table(const std::string& path);
// checksum over the canonical dump of the entries array
std::string table_checksum(const LocalClassTable& t);

struct TableDiff {
    std::vector<std::string> missing;    // in golden, not computed
    std::vector<std::string> extra;      // computed, not in golden
    std::vector<std::string> unequal;    // value mismatch
    bool clean() const { return missing.empty() && extra.empty() && unequal.empty(); }
};
TableDiff diff_tables(const RootDatum& D, const LocalClassTable& computed,
                      const LocalClassTable& golden, const EqualityConfig& cfg);

}  // namespace ellsc
