#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "ellischub/theta.hpp"

namespace ellsc {

using IVec = std::vector<long>;
using IMat = std::vector<std::vector<long>>;  // row-major; (M v)_i = sum_j M[i][j] v_j

class RootDatum;

// Handle to an element of the (finite) Weyl group of a RootDatum.  Cheap to
// copy; all group data lives in the datum's tables.
struct WeylElement {
    const RootDatum* D = nullptr;
    int idx = 0;

    int length() const;
    bool is_identity() const { return idx == 0; }
    const std::vector<int>& canonical_word() const;
    WeylElement operator*(const WeylElement& o) const;
    WeylElement inverse() const;
    WeylElement times_simple(int k) const;   // this * s_k
    WeylElement simple_times(int k) const;   // s_k * this
    IVec act_weight(const IVec& v) const;
    IVec act_coweight(const IVec& v) const;
    bool operator==(const WeylElement& o) const { return D == o.D && idx == o.idx; }
    bool operator!=(const WeylElement& o) const { return !(*this == o); }
};

// Root datum given by simple roots and coroots in a common ambient lattice.
// The Weyl group is enumerated eagerly at construction (finite type only).
class RootDatum {
  public:
    static RootDatum from_json(const nlohmann::json& j);
    // built-in names: a1, a2, a3, a4 (general linear data of sizes 2..5 in
    // their permutation representation) and c2 (the symplectic rank-2 datum
    // with long simple root (0,2) and coroot (0,1))
    static RootDatum builtin(const std::string& name);

    int rank() const { return static_cast<int>(alpha_.size()); }
    int dim() const { return dim_; }
    // simple indices are 1-based throughout
    const IVec& simple_root(int k) const { return alpha_.at(k - 1); }
    const IVec& simple_coroot(int k) const { return alphav_.at(k - 1); }
    const std::vector<IVec>& positive_roots() const { return pos_roots_; }
    const std::vector<IVec>& positive_coroots() const { return pos_coroots_; }
    // index of the coroot paired with a given positive root
    const IVec& coroot_of_positive(const IVec& root) const;

    static long pairing(const IVec& weight, const IVec& coweight);

    int group_order() const { return static_cast<int>(elems_.size()); }
    WeylElement identity() const { return {this, 0}; }
    WeylElement simple_reflection(int k) const { return {this, simple_idx_.at(k - 1)}; }
    WeylElement element(int idx) const { return {this, idx}; }
    WeylElement from_word(const std::vector<int>& word) const;
    WeylElement longest_element() const { return {this, w0_}; }
    // reflection s_beta for a positive root beta
    WeylElement reflection(const IVec& beta) const;

    bool is_reduced_word(const std::vector<int>& word) const;
    std::vector<std::vector<int>> all_reduced_words(const WeylElement& w) const;

    // true whenever the weight action matrices are permutation matrices
    bool is_permutation_type() const;
    std::vector<int> one_line(const WeylElement& w) const;  // 1-based images
    WeylElement from_one_line(const std::vector<int>& perm) const;

  private:
    friend struct WeylElement;
    friend bool bruhat_leq(const WeylElement&, const WeylElement&);
    friend bool bruhat_leq_oracle(const WeylElement&, const WeylElement&);

    struct Elem {
        IMat wmat, cmat;
        int len = 0;
        std::vector<int> rmul, lmul;  // index of this*s_k, s_k*this (0-based on k-1)
        int inv = 0;
        std::vector<int> word;  // canonical (lexicographically least reduced) word
    };

    void build(std::vector<IVec> alpha, std::vector<IVec> alphav);
    int idx_of_matrix(const IMat& m) const;

    int dim_ = 0;
    std::vector<IVec> alpha_, alphav_;
    std::vector<IVec> pos_roots_, pos_coroots_;
    std::vector<Elem> elems_;
    std::vector<int> simple_idx_;
    int w0_ = 0;
    std::map<IMat, int> by_matrix_;
    mutable std::vector<signed char> bruhat_memo_;
    mutable std::vector<signed char> bruhat_oracle_memo_;
};

bool bruhat_leq(const WeylElement& sigma, const WeylElement& omega);
// independent check: sigma <= omega iff omega is reachable from sigma by
// right-multiplying reflections that increase length
bool bruhat_leq_oracle(const WeylElement& sigma, const WeylElement& omega);

// --- monomials attached to a datum -------------------------------------------

Monomial z_monomial(const IVec& weight);
Monomial mu_monomial(const IVec& covector);
// mu-monomial encoding h^{<lambda, v>} for a coweight v: prod_i mu_i^{-v_i}
Monomial coroot_mu_monomial(const IVec& coweight);
// restriction of the k-th tautological line bundle to the fixed point sigma:
// z^{-sigma(alpha_k)}
Monomial line_bundle_char(const WeylElement& sigma, int k);
// nu_k = coroot_mu_monomial(alpha_k_vee)
Monomial nu_monomial(const RootDatum& D, int k);

// substitutions realizing the Weyl action on variables; z exponent vectors
// transform by the weight action, mu exponent vectors by the coweight action
std::map<std::string, Monomial> z_subst(const WeylElement& w);
std::map<std::string, Monomial> mu_subst(const WeylElement& w);
FactoredExpr act_z(const WeylElement& w, const FactoredExpr& e);
FactoredExpr act_mu(const WeylElement& w, const FactoredExpr& e);

}  // namespace ellsc
