#include "ellischub/rootdata.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace ellsc {

namespace {

constexpr int kClosureCap = 10000;
constexpr int kGroupCap = 40000;

IMat identity_mat(int n) {
    IMat m(n, IVec(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

IMat mat_mul(const IMat& a, const IMat& b) {
    int n = static_cast<int>(a.size());
    IMat r(n, IVec(n, 0));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            long aik = a[i][k];
            if (aik == 0) continue;
            for (int j = 0; j < n; ++j) r[i][j] += aik * b[k][j];
        }
    return r;
}

IVec mat_apply(const IMat& m, const IVec& v) {
    int n = static_cast<int>(m.size());
    IVec r(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r[i] += m[i][j] * v[j];
    return r;
}

// reflection in (root, coroot): weights  c -> c - <c, coroot> root
//                               coweights v -> v - <root, v> coroot
IMat reflection_wmat(const IVec& root, const IVec& coroot) {
    int n = static_cast<int>(root.size());
    IMat m = identity_mat(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] -= root[i] * coroot[j];
    return m;
}

// coordinates of v in the basis given by the columns of basis (linearly
// independent); empty result if v is outside the span or coordinates are not
// unique.  Exact rational elimination.
std::vector<Rational> coords_in_basis(const std::vector<IVec>& basis, const IVec& v) {
    int dim = static_cast<int>(v.size());
    int r = static_cast<int>(basis.size());
    std::vector<std::vector<Rational>> m(dim, std::vector<Rational>(r + 1));
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < r; ++j) m[i][j] = Rational(basis[j][i]);
        m[i][r] = Rational(v[i]);
    }
    int row = 0;
    std::vector<int> pivot_of_col(r, -1);
    for (int col = 0; col < r && row < dim; ++col) {
        int pr = -1;
        for (int i = row; i < dim; ++i)
            if (!rat_is_zero(m[i][col])) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        std::swap(m[row], m[pr]);
        Rational inv = Rational(1) / m[row][col];
        for (int j = col; j <= r; ++j) m[row][j] *= inv;
        for (int i = 0; i < dim; ++i) {
            if (i == row || rat_is_zero(m[i][col])) continue;
            Rational f = m[i][col];
            for (int j = col; j <= r; ++j) m[i][j] -= f * m[row][j];
        }
        pivot_of_col[col] = row;
        ++row;
    }
    std::vector<Rational> out(r, Rational(0));
    for (int col = 0; col < r; ++col) {
        if (pivot_of_col[col] < 0) return {};  // basis not independent
        out[col] = m[pivot_of_col[col]][r];
    }
    // consistency: rows past the pivots must have zero rhs
    for (int i = row; i < dim; ++i)
        if (!rat_is_zero(m[i][r])) return {};
    return out;
}

}  // namespace

long RootDatum::pairing(const IVec& weight, const IVec& coweight) {
    if (weight.size() != coweight.size()) throw UsageError("pairing of mismatched vectors");
    long s = 0;
    for (size_t i = 0; i < weight.size(); ++i) s += weight[i] * coweight[i];
    return s;
}

void RootDatum::build(std::vector<IVec> alpha, std::vector<IVec> alphav) {
    if (alpha.empty() || alpha.size() != alphav.size())
        throw UsageError("root datum needs matching nonempty simple root/coroot lists");
    dim_ = static_cast<int>(alpha[0].size());
    for (const auto& v : alpha)
        if (static_cast<int>(v.size()) != dim_) throw UsageError("inconsistent root dimensions");
    for (const auto& v : alphav)
        if (static_cast<int>(v.size()) != dim_) throw UsageError("inconsistent coroot dimensions");
    alpha_ = std::move(alpha);
    alphav_ = std::move(alphav);
    int r = rank();

    // Cartan matrix sanity
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) {
            long c = pairing(alpha_[j], alphav_[i]);  // <alpha_j, alpha_i_vee>
            if (i == j && c != 2) throw DomainError("simple pairing <alpha_i, alpha_i_vee> != 2");
            if (i != j && c > 0) throw DomainError("positive off-diagonal Cartan entry");
            if (i != j) {
                long ct = pairing(alpha_[i], alphav_[j]);
                if ((c == 0) != (ct == 0)) throw DomainError("asymmetric Cartan zero pattern");
            }
        }
    }

    // reflection closure of the simple (root, coroot) pairs
    std::set<std::pair<IVec, IVec>> seen;
    std::deque<std::pair<IVec, IVec>> todo;
    for (int i = 0; i < r; ++i) {
        seen.insert({alpha_[i], alphav_[i]});
        todo.push_back({alpha_[i], alphav_[i]});
    }
    while (!todo.empty()) {
        auto [root, coroot] = todo.front();
        todo.pop_front();
        for (int k = 0; k < r; ++k) {
            long cr = pairing(root, alphav_[k]);
            long cc = pairing(alpha_[k], coroot);
            IVec nr = root, nc = coroot;
            for (int i = 0; i < dim_; ++i) {
                nr[i] -= cr * alpha_[k][i];
                nc[i] -= cc * alphav_[k][i];
            }
            if (seen.insert({nr, nc}).second) {
                if (static_cast<int>(seen.size()) > kClosureCap)
                    throw DomainError("root system is not finite (closure cap exceeded)");
                todo.push_back({nr, nc});
            }
        }
    }
    for (const auto& [root, coroot] : seen) {
        std::vector<Rational> c = coords_in_basis(alpha_, root);
        if (c.empty()) throw InternalError("root outside the simple span");
        bool nonneg = true, nonpos = true;
        for (const auto& x : c) {
            if (x < 0) nonneg = false;
            if (x > 0) nonpos = false;
        }
        if (nonneg == nonpos) throw DomainError("root neither positive nor negative");
        if (nonneg) {
            pos_roots_.push_back(root);
            pos_coroots_.push_back(coroot);
        }
    }

    // Weyl group enumeration by right multiplication
    std::vector<IMat> refl_w(r), refl_c(r);
    for (int k = 0; k < r; ++k) {
        refl_w[k] = reflection_wmat(alpha_[k], alphav_[k]);
        refl_c[k] = reflection_wmat(alphav_[k], alpha_[k]);
    }
    elems_.clear();
    by_matrix_.clear();
    Elem id;
    id.wmat = identity_mat(dim_);
    id.cmat = identity_mat(dim_);
    id.len = 0;
    elems_.push_back(id);
    by_matrix_[elems_[0].wmat] = 0;
    std::deque<int> queue{0};
    while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        elems_[cur].rmul.assign(r, -1);
        for (int k = 0; k < r; ++k) {
            IMat nw = mat_mul(elems_[cur].wmat, refl_w[k]);
            auto it = by_matrix_.find(nw);
            if (it != by_matrix_.end()) {
                elems_[cur].rmul[k] = it->second;
                continue;
            }
            Elem e;
            e.wmat = std::move(nw);
            e.cmat = mat_mul(elems_[cur].cmat, refl_c[k]);
            e.len = elems_[cur].len + 1;
            int nidx = static_cast<int>(elems_.size());
            if (nidx >= kGroupCap) throw DomainError("Weyl group too large");
            by_matrix_[e.wmat] = nidx;
            elems_.push_back(std::move(e));
            elems_[cur].rmul[k] = nidx;
            queue.push_back(nidx);
        }
    }
    int n = group_order();
    simple_idx_.assign(r, -1);
    for (int k = 0; k < r; ++k) simple_idx_[k] = elems_[0].rmul[k];

    // left multiplication, inverses, longest element
    for (int i = 0; i < n; ++i) {
        elems_[i].lmul.assign(r, -1);
        for (int k = 0; k < r; ++k)
            elems_[i].lmul[k] = idx_of_matrix(mat_mul(elems_[simple_idx_[k]].wmat, elems_[i].wmat));
        if (elems_[i].len > elems_[w0_].len) w0_ = i;
    }
    // canonical words (lexicographically least reduced word, built greedily
    // from least left descents)
    for (int i = 0; i < n; ++i) {
        std::vector<int> word;
        int cur = i;
        while (elems_[cur].len > 0) {
            for (int k = 0; k < r; ++k) {
                int lk = elems_[cur].lmul[k];
                if (elems_[lk].len < elems_[cur].len) {
                    word.push_back(k + 1);
                    cur = lk;
                    break;
                }
            }
        }
        elems_[i].word = std::move(word);
    }
    for (int i = 0; i < n; ++i) {
        const auto& w = elems_[i].word;
        int cur = 0;
        for (auto it = w.rbegin(); it != w.rend(); ++it) cur = elems_[cur].rmul[*it - 1];
        elems_[i].inv = cur;
        if (elems_[elems_[i].inv].len != elems_[i].len) throw InternalError("inverse length");
    }

    // length must equal the inversion count over positive roots
    for (int i = 0; i < n; ++i) {
        int invs = 0;
        for (const auto& beta : pos_roots_) {
            IVec img = mat_apply(elems_[i].wmat, beta);
            std::vector<Rational> c = coords_in_basis(alpha_, img);
            if (c.empty()) throw InternalError("image root outside simple span");
            bool nonneg = true;
            for (const auto& x : c)
                if (x < 0) nonneg = false;
            if (!nonneg) ++invs;
        }
        if (invs != elems_[i].len) throw InternalError("length differs from inversion count");
    }

    bruhat_memo_.assign(static_cast<size_t>(n) * n, -1);
    bruhat_oracle_memo_.clear();
}

int RootDatum::idx_of_matrix(const IMat& m) const {
    auto it = by_matrix_.find(m);
    if (it == by_matrix_.end()) throw InternalError("matrix not in the Weyl group");
    return it->second;
}

RootDatum RootDatum::from_json(const nlohmann::json& j) {
    if (!j.contains("simple_roots") || !j.contains("simple_coroots"))
        throw UsageError("root datum JSON needs simple_roots and simple_coroots");
    std::vector<IVec> a = j["simple_roots"].get<std::vector<IVec>>();
    std::vector<IVec> av = j["simple_coroots"].get<std::vector<IVec>>();
    RootDatum d;
    d.build(std::move(a), std::move(av));
    return d;
}

RootDatum RootDatum::builtin(const std::string& name) {
    auto gl = [](int n) {
        std::vector<IVec> a;
        for (int k = 0; k + 1 < n; ++k) {
            IVec v(n, 0);
            v[k] = 1;
            v[k + 1] = -1;
            a.push_back(v);
        }
        RootDatum d;
        d.build(a, a);
        return d;
    };
    if (name == "a1") return gl(2);
    if (name == "a2") return gl(3);
    if (name == "a3") return gl(4);
    if (name == "a4") return gl(5);
    if (name == "c2") {
        RootDatum d;
        d.build({{1, -1}, {0, 2}}, {{1, -1}, {0, 1}});
        return d;
    }
    throw UsageError("unknown built-in root datum: " + name);
}

const IVec& RootDatum::coroot_of_positive(const IVec& root) const {
    for (size_t i = 0; i < pos_roots_.size(); ++i)
        if (pos_roots_[i] == root) return pos_coroots_[i];
    throw UsageError("not a positive root");
}

WeylElement RootDatum::from_word(const std::vector<int>& word) const {
    int cur = 0;
    for (int k : word) {
        if (k < 1 || k > rank()) throw UsageError("word letter out of range");
        cur = elems_[cur].rmul[k - 1];
    }
    return {this, cur};
}

WeylElement RootDatum::reflection(const IVec& beta) const {
    const IVec& betav = coroot_of_positive(beta);
    return {this, idx_of_matrix(reflection_wmat(beta, betav))};
}

bool RootDatum::is_reduced_word(const std::vector<int>& word) const {
    return from_word(word).length() == static_cast<int>(word.size());
}

std::vector<std::vector<int>> RootDatum::all_reduced_words(const WeylElement& w) const {
    if (w.is_identity()) return {{}};
    std::vector<std::vector<int>> out;
    for (int k = 1; k <= rank(); ++k) {
        WeylElement shorter = w.times_simple(k);
        if (shorter.length() == w.length() - 1)
            for (auto& u : all_reduced_words(shorter)) {
                u.push_back(k);
                out.push_back(std::move(u));
            }
    }
    return out;
}

bool RootDatum::is_permutation_type() const {
    for (const auto& e : elems_)
        for (const auto& row : e.wmat)
            for (long x : row)
                if (x != 0 && x != 1) return false;
    return true;
}

std::vector<int> RootDatum::one_line(const WeylElement& w) const {
    const IMat& m = elems_[w.idx].wmat;
    std::vector<int> perm(dim_, 0);
    for (int i = 0; i < dim_; ++i) {
        int hits = 0;
        for (int j = 0; j < dim_; ++j) {
            if (m[j][i] == 1) {
                perm[i] = j + 1;
                ++hits;
            } else if (m[j][i] != 0) {
                throw DomainError("element is not a permutation matrix");
            }
        }
        if (hits != 1) throw DomainError("element is not a permutation matrix");
    }
    return perm;
}

WeylElement RootDatum::from_one_line(const std::vector<int>& perm) const {
    if (static_cast<int>(perm.size()) != dim_) throw UsageError("one-line length mismatch");
    IMat m(dim_, IVec(dim_, 0));
    for (int i = 0; i < dim_; ++i) {
        if (perm[i] < 1 || perm[i] > dim_) throw UsageError("bad one-line entry");
        m[perm[i] - 1][i] = 1;
    }
    return {this, idx_of_matrix(m)};
}

int WeylElement::length() const { return D->elems_[idx].len; }

const std::vector<int>& WeylElement::canonical_word() const { return D->elems_[idx].word; }

WeylElement WeylElement::operator*(const WeylElement& o) const {
    if (D != o.D) throw UsageError("mixing Weyl groups");
    int cur = idx;
    for (int k : o.canonical_word()) cur = D->elems_[cur].rmul[k - 1];
    return {D, cur};
}

WeylElement WeylElement::inverse() const { return {D, D->elems_[idx].inv}; }

WeylElement WeylElement::times_simple(int k) const { return {D, D->elems_[idx].rmul.at(k - 1)}; }

WeylElement WeylElement::simple_times(int k) const { return {D, D->elems_[idx].lmul.at(k - 1)}; }

IVec WeylElement::act_weight(const IVec& v) const { return mat_apply(D->elems_[idx].wmat, v); }

IVec WeylElement::act_coweight(const IVec& v) const { return mat_apply(D->elems_[idx].cmat, v); }

bool bruhat_leq(const WeylElement& sigma, const WeylElement& omega) {
    if (sigma.D != omega.D) throw UsageError("mixing Weyl groups");
    const RootDatum* D = sigma.D;
    int n = D->group_order();
    signed char& memo = D->bruhat_memo_[static_cast<size_t>(sigma.idx) * n + omega.idx];
    if (memo >= 0) return memo == 1;
    bool res;
    if (sigma.is_identity()) {
        res = true;
    } else if (omega.is_identity() || sigma.length() > omega.length()) {
        res = false;
    } else {
        // lifting property along the least left descent of omega
        int k = omega.canonical_word().front();
        WeylElement om = omega.simple_times(k);
        WeylElement sm = sigma.simple_times(k);
        res = sm.length() < sigma.length() ? bruhat_leq(sm, om) : bruhat_leq(sigma, om);
    }
    memo = res ? 1 : 0;
    return res;
}

bool bruhat_leq_oracle(const WeylElement& sigma, const WeylElement& omega) {
    if (sigma.D != omega.D) throw UsageError("mixing Weyl groups");
    const RootDatum* D = sigma.D;
    int n = D->group_order();
    if (D->bruhat_oracle_memo_.empty()) {
        // reachability through length-increasing reflection multiplications
        std::vector<WeylElement> refl;
        for (const auto& beta : D->positive_roots()) refl.push_back(D->reflection(beta));
        std::vector<signed char>& memo = D->bruhat_oracle_memo_;
        memo.assign(static_cast<size_t>(n) * n, 0);
        for (int i = 0; i < n; ++i) memo[static_cast<size_t>(i) * n + i] = 1;
        // process by decreasing length so all longer targets are final
        std::vector<int> order(n);
        for (int i = 0; i < n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            return D->element(a).length() > D->element(b).length();
        });
        for (int src : order) {
            WeylElement x = D->element(src);
            for (const auto& t : refl) {
                WeylElement y = x * t;
                if (y.length() <= x.length()) continue;
                for (int tgt = 0; tgt < n; ++tgt)
                    if (memo[static_cast<size_t>(y.idx) * n + tgt])
                        memo[static_cast<size_t>(src) * n + tgt] = 1;
            }
        }
    }
    return D->bruhat_oracle_memo_[static_cast<size_t>(sigma.idx) * n + omega.idx] == 1;
}

Monomial z_monomial(const IVec& weight) {
    Monomial m;
    for (size_t i = 0; i < weight.size(); ++i)
        m.mul_var(zname(static_cast<int>(i) + 1), static_cast<int>(2 * weight[i]));
    return m;
}

Monomial mu_monomial(const IVec& covector) {
    Monomial m;
    for (size_t i = 0; i < covector.size(); ++i)
        m.mul_var(muname(static_cast<int>(i) + 1), static_cast<int>(2 * covector[i]));
    return m;
}

Monomial coroot_mu_monomial(const IVec& coweight) {
    IVec neg = coweight;
    for (auto& x : neg) x = -x;
    return mu_monomial(neg);
}

Monomial line_bundle_char(const WeylElement& sigma, int k) {
    IVec img = sigma.act_weight(sigma.D->simple_root(k));
    for (auto& x : img) x = -x;
    return z_monomial(img);
}

Monomial nu_monomial(const RootDatum& D, int k) { return coroot_mu_monomial(D.simple_coroot(k)); }

std::map<std::string, Monomial> z_subst(const WeylElement& w) {
    std::map<std::string, Monomial> table;
    int dim = w.D->dim();
    for (int i = 0; i < dim; ++i) {
        IVec e(dim, 0);
        e[i] = 1;
        table[zname(i + 1)] = z_monomial(w.act_weight(e));
    }
    return table;
}

std::map<std::string, Monomial> mu_subst(const WeylElement& w) {
    std::map<std::string, Monomial> table;
    int dim = w.D->dim();
    for (int i = 0; i < dim; ++i) {
        IVec e(dim, 0);
        e[i] = 1;
        table[muname(i + 1)] = mu_monomial(w.act_coweight(e));
    }
    return table;
}

FactoredExpr act_z(const WeylElement& w, const FactoredExpr& e) {
    return expr_subst(e, z_subst(w));
}

FactoredExpr act_mu(const WeylElement& w, const FactoredExpr& e) {
    return expr_subst(e, mu_subst(w));
}

}  // namespace ellsc
