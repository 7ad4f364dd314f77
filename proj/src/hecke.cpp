#include "ellischub/hecke.hpp"

#include <random>

namespace ellsc {

ClassVector scale_components(const ClassVector& f, const FactoredExpr& m) {
    ClassVector out;
    out.D = f.D;
    out.comp.reserve(f.comp.size());
    for (const auto& c : f.comp) out.comp.push_back(expr_mul(c, m));
    return out;
}

ClassVector apply_kappa(const ClassVector& f, int k) {
    return scale_components(f, kappa_expr(nu_monomial(*f.D, k)));
}

FactoredExpr gamma_swap(const FactoredExpr& f, int k) {
    std::map<std::string, std::string> table{{gname(k), gname(k + 1)},
                                             {gname(k + 1), gname(k)}};
    return expr_rename(f, table);
}

FactoredExpr apply_Chat(const RootDatum& D, const FactoredExpr& f, int k) {
    if (!D.is_permutation_type())
        throw DomainError("Chat is defined for permutation-type data only");
    if (k < 1 || k > D.rank()) throw UsageError("simple index out of range");
    Monomial lg = Monomial::var(gname(k + 1)) / Monomial::var(gname(k));
    FactoredExpr fm = act_mu(D.simple_reflection(k), f);
    Term bd, in;
    bd.push(delta_atom(lg, nu_monomial(D, k)));
    in.push(delta_atom(lg, Monomial::var("h")));
    return expr_add(expr_mul_term(fm, bd), expr_mul_term(gamma_swap(fm, k), in));
}

EvalPoint twist_mu_point(const RootDatum& D, int k, const EvalPoint& p) {
    EvalPoint q = p;
    for (const auto& [var, mono] : mu_subst(D.simple_reflection(k))) {
        Rational s(1);
        for (const auto& [name, d] : mono.exponents()) {
            if (d % 2 != 0) throw InternalError("odd reflection exponent");
            auto it = p.sqrtval.find(name);
            if (it == p.sqrtval.end()) throw UsageError("point lacks variable " + name);
            s *= rat_pow(it->second, d / 2);
        }
        q.sqrtval[var] = s;
    }
    return q;
}

Rational chern_additive(const WeylElement& sigma, int k, const EvalPoint& p) {
    IVec w = sigma.act_weight(sigma.D->simple_root(k));
    Rational c(0);
    for (size_t i = 0; i < w.size(); ++i)
        if (w[i] != 0) c -= Rational(w[i]) * p.value(zname(static_cast<int>(i) + 1));
    return c;
}

namespace {

Rational nonzero(Rational v, const char* what) {
    if (rat_is_zero(v)) throw PoleAtEvaluation(std::string("vanishing ") + what);
    return v;
}

}  // namespace

NumTuple apply_degenerate(const DegenerateOp& op, const NumTuple& f) {
    if (f.D == nullptr) throw UsageError("tuple lacks a root datum");
    const RootDatum& D = *f.D;
    if (op.k < 1 || op.k > D.rank()) throw UsageError("simple index out of range");
    if (op.alcove.has_value() != (op.kind == DegKind::Ctilde))
        throw UsageError("alcove data is for Ctilde exactly");
    long b = 0;
    if (op.kind == DegKind::Ctilde) {
        auto it = op.alcove->find(op.k);
        if (it == op.alcove->end()) throw UsageError("alcove lacks the acting index");
        b = it->second;
    }
    const int k = op.k;
    const RootDatum* Dp = f.D;
    auto prev = std::make_shared<std::vector<NumFn>>(f.comp);

    NumTuple out;
    out.D = f.D;
    out.comp.resize(f.comp.size());
    for (int i = 0; i < static_cast<int>(f.comp.size()); ++i) {
        WeylElement sigma = D.element(i);
        const int j = sigma.times_simple(k).idx;
        switch (op.kind) {
            case DegKind::D:
                out.comp[i] = [Dp, prev, i, j, k](const EvalPoint& p) -> Rational {
                    Rational c1 = nonzero(chern_additive(Dp->element(i), k, p), "c1");
                    return ((*prev)[i](p) + (*prev)[j](p)) / c1;
                };
                break;
            case DegKind::A:
                out.comp[i] = [Dp, prev, i, j, k](const EvalPoint& p) -> Rational {
                    Rational c1 = nonzero(chern_additive(Dp->element(i), k, p), "c1");
                    return (*prev)[i](p) / c1 + ((1 + c1) / c1) * (*prev)[j](p);
                };
                break;
            case DegKind::B:
                out.comp[i] = [Dp, prev, i, j, k](const EvalPoint& p) {
                    Rational linv = eval_monomial(line_bundle_char(Dp->element(i), k).inverse(), p);
                    Rational den = nonzero(1 - linv, "1 - L^{-1}");
                    Rational y = p.value("y");
                    return Rational(((1 + y) * linv / den) * (*prev)[i](p) +
                                    ((1 + y * linv) / den) * (*prev)[j](p));
                };
                break;
            case DegKind::Cq0:
                out.comp[i] = [Dp, prev, i, j, k](const EvalPoint& p) {
                    Rational linv = eval_monomial(line_bundle_char(Dp->element(i), k).inverse(), p);
                    Rational den = nonzero(1 - linv, "1 - L^{-1}");
                    Rational nu = eval_monomial(nu_monomial(*Dp, k), p);
                    Rational h = p.value("h");
                    Rational fc = (1 - linv / nu) / (den * nonzero(1 - 1 / nu, "1 - 1/nu"));
                    Rational gc = (1 - linv / h) / (den * nonzero(1 - 1 / h, "1 - 1/h"));
                    EvalPoint q = twist_mu_point(*Dp, k, p);
                    return Rational(fc * (*prev)[i](q) + gc * (*prev)[j](q));
                };
                break;
            case DegKind::Ctilde:
                out.comp[i] = [Dp, prev, i, j, k, b](const EvalPoint& p) {
                    Rational lv = eval_monomial(line_bundle_char(Dp->element(i), k), p);
                    Rational den = nonzero(1 - 1 / lv, "1 - L^{-1}");
                    Rational h = p.value("h");
                    Rational fc = rat_pow(lv, -b - 1) / den;
                    Rational gc = (1 - (1 / lv) / h) / (den * nonzero(1 - 1 / h, "1 - 1/h"));
                    EvalPoint q = twist_mu_point(*Dp, k, p);
                    return Rational(fc * (*prev)[i](q) + gc * (*prev)[j](q));
                };
                break;
        }
    }
    return out;
}

// --- relation verifier ----------------------------------------------------------

namespace {

// order of s_k s_l from the Cartan entries (finite type: 2, 3, 4 or 6)
int braid_order(const RootDatum& D, int k, int l) {
    long m = RootDatum::pairing(D.simple_root(k), D.simple_coroot(l)) *
             RootDatum::pairing(D.simple_root(l), D.simple_coroot(k));
    switch (m) {
        case 0: return 2;
        case 1: return 3;
        case 2: return 4;
        case 3: return 6;
        default: throw DomainError("not a finite braid order");
    }
}

std::vector<int> alternating_word(int first, int second, int len) {
    std::vector<int> w;
    for (int i = 0; i < len; ++i) w.push_back(i % 2 == 0 ? first : second);
    return w;
}

Monomial random_monomial(const std::vector<std::string>& vars, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> pick(-1, 1);
    for (;;) {
        Monomial m;
        for (const auto& v : vars) m = m.mul_var(v, 2 * pick(rng));
        if (!m.trivial()) return m;
    }
}

FactoredExpr random_expr(const std::vector<std::string>& vars, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> nterms(1, 2), coef(1, 3), flip(0, 1);
    FactoredExpr e;
    int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
        Term term;
        term.coeff = Rational(coef(rng)) * (flip(rng) ? 1 : -1);
        Monomial a = random_monomial(vars, rng);
        Monomial b = random_monomial(vars, rng);
        while ((a * b).trivial() || a == b) b = random_monomial(vars, rng);
        term.push(delta_atom(a, b));
        term.push(theta_atom(random_monomial(vars, rng)));
        e.terms.push_back(std::move(term));
    }
    return e;
}

std::vector<std::string> elliptic_vars(const RootDatum& D) {
    std::vector<std::string> vars;
    for (int i = 1; i <= D.dim(); ++i) vars.push_back(zname(i));
    for (int i = 1; i <= D.dim(); ++i) vars.push_back(muname(i));
    vars.push_back("h");
    return vars;
}

ClassVector random_class_tuple(const RootDatum& D, std::mt19937_64& rng) {
    ClassVector f;
    f.D = &D;
    auto vars = elliptic_vars(D);
    f.comp.resize(D.group_order());
    for (auto& c : f.comp) c = random_expr(vars, rng);
    return f;
}

ClassVector apply_word(ClassVector f, const std::vector<int>& word) {
    for (auto it = word.rbegin(); it != word.rend(); ++it) f = apply_C(f, *it);
    return f;
}

bool tuples_expr_equal(const ClassVector& a, const ClassVector& b, const EqualityConfig& cfg) {
    for (size_t i = 0; i < a.comp.size(); ++i)
        if (!expr_equal(a.comp[i], b.comp[i], cfg)) return false;
    return true;
}

NumTuple random_num_tuple(const RootDatum& D, const std::vector<std::string>& vars,
                          std::mt19937_64& rng) {
    NumTuple f;
    f.D = &D;
    f.comp.resize(D.group_order());
    std::uniform_int_distribution<int> coef(-4, 4);
    for (auto& c : f.comp) {
        Monomial m = random_monomial(vars, rng);
        Rational shift(coef(rng));
        c = [m, shift](const EvalPoint& p) -> Rational { return eval_monomial(m, p) + shift; };
    }
    return f;
}

// pointwise equality of tuples at `npts` random points over `vars`
bool tuples_value_equal(const NumTuple& a, const NumTuple& b,
                        const std::vector<std::string>& vars, int npts, std::mt19937_64& rng) {
    std::set<std::string> vs(vars.begin(), vars.end());
    for (int t = 0; t < npts; ++t) {
        for (int attempt = 0;; ++attempt) {
            if (attempt > 100) throw ExhaustionError("pole at every sampled point");
            EvalPoint p = sample_point(vs, rng);
            try {
                bool ok = true;
                for (size_t i = 0; i < a.comp.size(); ++i)
                    if (a.comp[i](p) != b.comp[i](p)) {
                        ok = false;
                        break;
                    }
                if (!ok) return false;
                break;
            } catch (const PoleAtEvaluation&) {
                continue;
            }
        }
    }
    return true;
}

NumTuple scale_num(const NumTuple& f, const NumFn& m) {
    NumTuple out;
    out.D = f.D;
    for (const auto& c : f.comp)
        out.comp.push_back([c, m](const EvalPoint& p) -> Rational { return m(p) * c(p); });
    return out;
}

NumTuple add_num(const NumTuple& a, const NumTuple& b) {
    NumTuple out;
    out.D = a.D;
    for (size_t i = 0; i < a.comp.size(); ++i) {
        NumFn x = a.comp[i], y = b.comp[i];
        out.comp.push_back([x, y](const EvalPoint& p) -> Rational { return x(p) + y(p); });
    }
    return out;
}

}  // namespace

std::vector<RelationCheck> verify_relations(const std::string& kind, const RootDatum& D,
                                            const std::string& label, int trials,
                                            std::uint64_t seed) {
    std::vector<RelationCheck> out;
    auto record = [&](const std::string& relation, std::uint64_t s, bool pass) {
        out.push_back({relation, label, s, pass});
    };
    std::mt19937_64 rng(seed);

    if (kind == "C" || kind == "Chat") {
        EqualityConfig cfg;
        cfg.order = 3;
        cfg.points = 2;
        for (int trial = 0; trial < trials; ++trial) {
            std::uint64_t s = seed + static_cast<std::uint64_t>(trial);
            rng.seed(s);
            cfg.seed = s + 1;
            if (kind == "C") {
                ClassVector f = random_class_tuple(D, rng);
                for (int k = 1; k <= D.rank(); ++k) {
                    bool ok = tuples_expr_equal(apply_C(apply_C(f, k), k), apply_kappa(f, k), cfg);
                    record("C_" + std::to_string(k) + "^2 = kappa_" + std::to_string(k), s, ok);
                }
                for (int k = 1; k <= D.rank(); ++k)
                    for (int l = k + 1; l <= D.rank(); ++l) {
                        int m = braid_order(D, k, l);
                        bool ok = tuples_expr_equal(apply_word(f, alternating_word(k, l, m)),
                                                    apply_word(f, alternating_word(l, k, m)), cfg);
                        record("braid(C_" + std::to_string(k) + ", C_" + std::to_string(l) +
                                   "), m = " + std::to_string(m),
                               s, ok);
                    }
                for (int k = 1; k <= D.rank(); ++k)
                    for (int l = 1; l <= D.rank(); ++l) {
                        if (k == l) continue;
                        FactoredExpr kap = kappa_expr(nu_monomial(D, k));
                        ClassVector lhs = scale_components(apply_C(f, l), kap);
                        ClassVector rhs =
                            apply_C(scale_components(f, act_mu(D.simple_reflection(l), kap)), l);
                        record("kappa_" + std::to_string(k) + " C_" + std::to_string(l) +
                                   " = C_" + std::to_string(l) + " s_" + std::to_string(l) +
                                   "^mu(kappa_" + std::to_string(k) + ")",
                               s, tuples_expr_equal(lhs, rhs, cfg));
                    }
            } else {
                auto vars = elliptic_vars(D);
                for (int i = 1; i <= D.dim(); ++i) vars.push_back(gname(i));
                FactoredExpr f = random_expr(vars, rng);
                for (int k = 1; k <= D.rank(); ++k) {
                    FactoredExpr lhs = apply_Chat(D, apply_Chat(D, f, k), k);
                    FactoredExpr rhs = expr_mul(kappa_expr(nu_monomial(D, k)), f);
                    record("Chat_" + std::to_string(k) + "^2 = kappa_" + std::to_string(k), s,
                           expr_equal(lhs, rhs, cfg));
                }
                for (int k = 1; k <= D.rank(); ++k)
                    for (int l = k + 1; l <= D.rank(); ++l) {
                        int m = braid_order(D, k, l);
                        FactoredExpr lhs = f, rhs = f;
                        auto wa = alternating_word(k, l, m), wb = alternating_word(l, k, m);
                        for (auto it = wa.rbegin(); it != wa.rend(); ++it)
                            lhs = apply_Chat(D, lhs, *it);
                        for (auto it = wb.rbegin(); it != wb.rend(); ++it)
                            rhs = apply_Chat(D, rhs, *it);
                        record("braid(Chat_" + std::to_string(k) + ", Chat_" + std::to_string(l) +
                                   "), m = " + std::to_string(m),
                               s, expr_equal(lhs, rhs, cfg));
                    }
            }
        }
        return out;
    }

    const bool cohomology = (kind == "D" || kind == "A");
    const bool ktheory = (kind == "B");
    if (!cohomology && !ktheory && kind != "Cq0" && kind != "Ctilde")
        throw UsageError("unknown operator family: " + kind);

    std::vector<std::string> vars;
    for (int i = 1; i <= D.dim(); ++i) vars.push_back(zname(i));
    if (ktheory) vars.push_back("y");
    if (kind == "Cq0" || kind == "Ctilde") {
        for (int i = 1; i <= D.dim(); ++i) vars.push_back(muname(i));
        vars.push_back("h");
    }

    for (int trial = 0; trial < trials; ++trial) {
        std::uint64_t s = seed + static_cast<std::uint64_t>(trial);
        rng.seed(s);
        NumTuple f = random_num_tuple(D, vars, rng);
        NumTuple zero;
        zero.D = &D;
        zero.comp.assign(f.comp.size(), [](const EvalPoint&) { return Rational(0); });

        for (int k = 1; k <= D.rank(); ++k) {
            const std::string sk = std::to_string(k);
            if (kind == "D") {
                DegenerateOp op{DegKind::D, k, {}};
                record("D_" + sk + "^2 = 0", s,
                       tuples_value_equal(apply_degenerate(op, apply_degenerate(op, f)), zero,
                                          vars, 3, rng));
            } else if (kind == "A") {
                DegenerateOp op{DegKind::A, k, {}};
                record("A_" + sk + "^2 = id", s,
                       tuples_value_equal(apply_degenerate(op, apply_degenerate(op, f)), f, vars,
                                          3, rng));
            } else if (kind == "B") {
                DegenerateOp op{DegKind::B, k, {}};
                NumTuple bf = apply_degenerate(op, f);
                NumTuple lhs = add_num(
                    apply_degenerate(op, bf),
                    add_num(scale_num(bf, [](const EvalPoint& p) -> Rational { return 1 + p.value("y"); }),
                            scale_num(f, [](const EvalPoint& p) { return p.value("y"); })));
                record("(B_" + sk + " + y)(B_" + sk + " + 1) = 0", s,
                       tuples_value_equal(lhs, zero, vars, 3, rng));
            } else if (kind == "Cq0") {
                DegenerateOp op{DegKind::Cq0, k, {}};
                NumFn mult = [&D, k](const EvalPoint& p) -> Rational {
                    Rational nu = eval_monomial(nu_monomial(D, k), p);
                    Rational h = p.value("h");
                    return (1 - nu / h) * (1 - 1 / (nu * h)) /
                           (nonzero(1 - nu, "1 - nu") * nonzero(1 - 1 / nu, "1 - 1/nu") *
                            nonzero(1 - 1 / h, "1 - 1/h") * (1 - 1 / h));
                };
                record("Cq0_" + sk + "^2 = q->0 limit of kappa_" + sk, s,
                       tuples_value_equal(apply_degenerate(op, apply_degenerate(op, f)),
                                          scale_num(f, mult), vars, 3, rng));
            } else {
                std::uniform_int_distribution<long> bdist(-3, 3);
                long b = bdist(rng);
                DegenerateOp outer{DegKind::Ctilde, k, std::map<int, long>{{k, b}}};
                DegenerateOp inner{DegKind::Ctilde, k, std::map<int, long>{{k, -1 - b}}};
                NumFn mult = [](const EvalPoint& p) -> Rational {
                    Rational hinv = 1 / p.value("h");
                    return hinv / ((1 - hinv) * (1 - hinv));
                };
                record("Ctilde_" + sk + "^2 = -y/(1+y)^2 at b_" + sk + " = " + std::to_string(b),
                       s,
                       tuples_value_equal(apply_degenerate(outer, apply_degenerate(inner, f)),
                                          scale_num(f, mult), vars, 3, rng));
            }
        }
    }
    return out;
}

nlohmann::json relations_to_json(const std::vector<RelationCheck>& checks) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks)
        arr.push_back({{"relation", c.relation},
                       {"datum", c.datum},
                       {"trial_seed", c.trial_seed},
                       {"status", c.pass ? "pass" : "fail"}});
    return arr;
}

}  // namespace ellsc
