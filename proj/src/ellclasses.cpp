#include "ellischub/ellclasses.hpp"

#include <algorithm>
#include <fstream>

namespace ellsc {

ClassVector identity_class_vector(const RootDatum& D) {
    ClassVector v;
    v.D = &D;
    v.comp.assign(D.group_order(), FactoredExpr::zero());
    v.comp[0] = FactoredExpr::one();
    return v;
}

ClassVector schubert_step(const ClassVector& prev, int k) {
    const RootDatum& D = *prev.D;
    WeylElement sk = D.simple_reflection(k);
    Monomial h = Monomial::var("h");
    Monomial nu = nu_monomial(D, k);
    ClassVector next;
    next.D = &D;
    next.comp.resize(D.group_order());
    std::vector<FactoredExpr> twisted(D.group_order());
    for (int i = 0; i < D.group_order(); ++i) twisted[i] = act_mu(sk, prev.comp[i]);
    for (int i = 0; i < D.group_order(); ++i) {
        WeylElement sigma = D.element(i);
        Monomial lk = line_bundle_char(sigma, k);
        Term bd, in;
        bd.push(delta_atom(lk, nu));
        in.push(delta_atom(lk, h));
        next.comp[i] = expr_add(expr_mul_term(twisted[i], bd),
                                expr_mul_term(twisted[sigma.times_simple(k).idx], in));
    }
    return next;
}

ClassVector schubert_classes_bs(const RootDatum& D, const WeylElement& omega) {
    ClassVector cur = identity_class_vector(D);
    for (int k : omega.canonical_word()) cur = schubert_step(cur, k);
    return cur;
}

ClassVector schubert_classes_pushforward(const RootDatum& D, const std::vector<int>& word) {
    ClassVector v;
    v.D = &D;
    v.comp.assign(D.group_order(), FactoredExpr::zero());
    for (const auto& pt : bs_fixed_points(D, word))
        v.comp[pt.image.idx] = expr_add(v.comp[pt.image.idx], bs_local_class_from_point(pt));
    return v;
}

ClassVector schubert_classes_rmatrix(const RootDatum& D, const WeylElement& omega) {
    // left extensions along the canonical word read back to front
    const std::vector<int>& word = omega.canonical_word();
    ClassVector cur = identity_class_vector(D);
    WeylElement built = D.identity();
    Monomial h = Monomial::var("h");
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        int k = *it;
        WeylElement sk = D.simple_reflection(k);
        Monomial zeta = z_monomial(D.simple_root(k)).inverse();  // z^{-alpha_k}
        Monomial m = coroot_mu_monomial(built.inverse().act_coweight(D.simple_coroot(k)));
        Term stay, swap;
        stay.push(delta_atom(zeta, m));
        swap.push(delta_atom(zeta.inverse(), h));
        ClassVector next;
        next.D = &D;
        next.comp.resize(D.group_order());
        for (int i = 0; i < D.group_order(); ++i) {
            WeylElement sigma = D.element(i);
            FactoredExpr moved = act_z(sk, cur.comp[sigma.simple_times(k).idx]);
            next.comp[i] = expr_add(expr_mul_term(cur.comp[i], stay),
                                    expr_mul_term(moved, swap));
        }
        cur = std::move(next);
        built = sk * built;
    }
    if (built != omega) throw InternalError("r-matrix chain did not rebuild omega");
    return cur;
}

FactoredExpr kappa_expr(const Monomial& nu) {
    Monomial h = Monomial::var("h");
    Term t;
    t.push(delta_atom(h, nu));
    t.push(delta_atom(h, nu.inverse()));
    return FactoredExpr::from_term(t);
}

std::pair<FactoredExpr, FactoredExpr> rmatrix_down_sides(const ClassVector& full,
                                                         const ClassVector& shorter,
                                                         const WeylElement& omega, int k,
                                                         const WeylElement& sigma) {
    const RootDatum& D = *full.D;
    WeylElement sk = D.simple_reflection(k);
    WeylElement target = sk * omega;
    if (target.length() != omega.length() - 1)
        throw UsageError("descending relation needs a left descent");
    Monomial zeta = z_monomial(D.simple_root(k)).inverse();
    Monomial m = coroot_mu_monomial(omega.inverse().act_coweight(D.simple_coroot(k)));
    Monomial h = Monomial::var("h");

    Term stay;
    stay.push(delta_atom(zeta, m));
    Term swap;
    swap.push(delta_atom(zeta, h));
    FactoredExpr lhs =
        expr_add(expr_mul_term(full.at(sigma), stay),
                 act_z(sk, expr_mul_term(full.at(sk * sigma), swap)));
    FactoredExpr rhs = expr_mul(kappa_expr(m), shorter.at(sigma));
    return {lhs, rhs};
}

FactoredExpr euler_class_elliptic(const RootDatum& D, const WeylElement& sigma) {
    Term t;
    for (const auto& alpha : D.positive_roots()) {
        IVec img = sigma.act_weight(alpha);
        for (auto& x : img) x = -x;
        t.push(theta_atom(z_monomial(img)));
    }
    return FactoredExpr::from_term(t);
}

FactoredExpr euler_class_k(const RootDatum& D, const WeylElement& sigma) {
    Term t;
    for (const auto& alpha : D.positive_roots())
        t.push(one_minus_atom(z_monomial(sigma.act_weight(alpha))));
    return FactoredExpr::from_term(t);
}

FactoredExpr diagonal_class(const RootDatum& D, const WeylElement& omega) {
    Monomial h = Monomial::var("h");
    WeylElement inv = omega.inverse();
    Term t;
    // alpha lies in omega(Sigma_-) iff omega^{-1}(alpha) is negative
    for (const auto& alpha : D.positive_roots()) {
        IVec back = inv.act_weight(alpha);
        bool is_positive = std::find(D.positive_roots().begin(), D.positive_roots().end(),
                                     back) != D.positive_roots().end();
        if (!is_positive) t.push(delta_atom(z_monomial(alpha), h));
    }
    return FactoredExpr::from_term(t);
}

Term rescale_multiplier(const RootDatum& D, const WeylElement& omega) {
    Monomial h = Monomial::var("h");
    Term t;
    for (size_t i = 0; i < D.positive_roots().size(); ++i) {
        IVec img = omega.act_weight(D.positive_roots()[i]);
        bool is_positive = std::find(D.positive_roots().begin(), D.positive_roots().end(),
                                     img) != D.positive_roots().end();
        if (!is_positive) {
            // h^{<lambda, alpha_vee>} is the mu-monomial of -alpha_vee
            Monomial arg = coroot_mu_monomial(D.positive_coroots()[i]).inverse();
            t.push(delta_atom(arg, h, -1));
        }
    }
    return t;
}

FactoredExpr q_zero_limit_factor(const Monomial& x, const Monomial& nu) {
    if (x.trivial() || nu.trivial())
        throw DomainError("q->0 limit of delta needs nontrivial arguments");
    Term t;
    t.push(one_minus_atom((x * nu).inverse()));
    t.push(one_minus_atom(x.inverse(), -1));
    t.push(one_minus_atom(nu.inverse(), -1));
    return FactoredExpr::from_term(t);
}

namespace {

// sort key: length first, then the canonical word lexicographically
bool word_before(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

}  // namespace

LocalClassTable emit_table(const RootDatum& D, const std::string& group) {
    LocalClassTable t;
    t.group = group;
    std::vector<int> order(D.group_order());
    for (int i = 0; i < D.group_order(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return word_before(D.element(a).canonical_word(), D.element(b).canonical_word());
    });
    for (int oi : order) {
        WeylElement omega = D.element(oi);
        ClassVector v = schubert_classes_bs(D, omega);
        for (int si : order) {
            WeylElement sigma = D.element(si);
            TableEntry e;
            e.omega_word = omega.canonical_word();
            e.sigma_word = sigma.canonical_word();
            e.expr = v.comp[sigma.idx];
            t.entries.push_back(std::move(e));
        }
    }
    return t;
}

nlohmann::json table_to_json(const LocalClassTable& t) {
    nlohmann::json j;
    j["group"] = t.group;
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : t.entries) {
        nlohmann::json je;
        je["omega"] = e.omega_word;
        je["sigma"] = e.sigma_word;
        je["expr"] = expr_to_json(e.expr);
        entries.push_back(std::move(je));
    }
    j["entries"] = std::move(entries);
    j["checksum"] = table_checksum(t);
    return j;
}

LocalClassTable table_from_json(const nlohmann::json& j) {
    LocalClassTable t;
    t.group = j.at("group").get<std::string>();
    for (const auto& je : j.at("entries")) {
        TableEntry e;
        e.omega_word = je.at("omega").get<std::vector<int>>();
        e.sigma_word = je.at("sigma").get<std::vector<int>>();
        e.expr = expr_from_json(je.at("expr"));
        t.entries.push_back(std::move(e));
    }
    if (j.contains("checksum")) {
        std::string want = j["checksum"].get<std::string>();
        std::string got = table_checksum(t);
        if (want != got)
            throw UsageError("table checksum mismatch: file says " + want + ", contents give " +
                             got);
    }
    return t;
}

LocalClassTable load_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open table file " + path);
    nlohmann::json j;
    in >> j;
    return table_from_json(j);
}

std::string table_checksum(const LocalClassTable& t) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : t.entries) {
        nlohmann::json je;
        je["omega"] = e.omega_word;
        je["sigma"] = e.sigma_word;
        je["expr"] = expr_to_json(e.expr);
        entries.push_back(std::move(je));
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(entries.dump())));
    return std::string("fnv1a64:") + buf;
}

namespace {

std::string entry_label(const TableEntry& e) {
    auto word_str = [](const std::vector<int>& w) {
        if (w.empty()) return std::string("id");
        std::string s;
        for (int k : w) s += std::to_string(k);
        return s;
    };
    return "omega=" + word_str(e.omega_word) + " sigma=" + word_str(e.sigma_word);
}

}  // namespace

TableDiff diff_tables(const RootDatum& D, const LocalClassTable& computed,
                      const LocalClassTable& golden, const EqualityConfig& cfg) {
    auto key = [&](const TableEntry& e) {
        return std::pair<int, int>(D.from_word(e.omega_word).idx, D.from_word(e.sigma_word).idx);
    };
    std::map<std::pair<int, int>, const TableEntry*> cm, gm;
    for (const auto& e : computed.entries) cm[key(e)] = &e;
    for (const auto& e : golden.entries) gm[key(e)] = &e;
    TableDiff d;
    for (const auto& [k, e] : gm)
        if (!cm.count(k)) d.missing.push_back(entry_label(*e));
    for (const auto& [k, e] : cm) {
        auto it = gm.find(k);
        if (it == gm.end()) {
            d.extra.push_back(entry_label(*e));
            continue;
        }
        if (!expr_equal(e->expr, it->second->expr, cfg)) d.unequal.push_back(entry_label(*e));
    }
    return d;
}

}  // namespace ellsc
