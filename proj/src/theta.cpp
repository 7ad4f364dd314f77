#include "ellischub/theta.hpp"

#include <algorithm>

namespace ellsc {

FactoredExpr expr_add(const FactoredExpr& a, const FactoredExpr& b) {
    FactoredExpr r = a;
    r.terms.insert(r.terms.end(), b.terms.begin(), b.terms.end());
    return r;
}

FactoredExpr expr_neg(const FactoredExpr& a) {
    FactoredExpr r = a;
    for (auto& t : r.terms) t.coeff = -t.coeff;
    return r;
}

FactoredExpr expr_sub(const FactoredExpr& a, const FactoredExpr& b) {
    return expr_add(a, expr_neg(b));
}

FactoredExpr expr_scale(const Rational& s, const FactoredExpr& a) {
    if (rat_is_zero(s)) return FactoredExpr::zero();
    FactoredExpr r = a;
    for (auto& t : r.terms) t.coeff *= s;
    return r;
}

FactoredExpr expr_mul_term(const FactoredExpr& a, const Term& t) {
    if (rat_is_zero(t.coeff)) return FactoredExpr::zero();
    FactoredExpr r;
    r.terms.reserve(a.terms.size());
    for (const auto& ta : a.terms) r.terms.push_back(ta.times(t));
    return r;
}

FactoredExpr expr_mul(const FactoredExpr& a, const FactoredExpr& b) {
    FactoredExpr r;
    r.terms.reserve(a.terms.size() * b.terms.size());
    for (const auto& tb : b.terms) {
        FactoredExpr part = expr_mul_term(a, tb);
        r.terms.insert(r.terms.end(), part.terms.begin(), part.terms.end());
    }
    return r;
}

FactoredExpr expr_subst(const FactoredExpr& a, const std::map<std::string, Monomial>& table) {
    FactoredExpr r;
    r.terms.reserve(a.terms.size());
    for (const auto& t : a.terms) {
        Term nt;
        nt.coeff = t.coeff;
        for (const auto& at : t.atoms) {
            Atom na = at;
            na.a = at.a.subst(table);
            na.b = at.b.subst(table);
            nt.push(na);
        }
        r.terms.push_back(std::move(nt));
    }
    return r;
}

FactoredExpr expr_rename(const FactoredExpr& a, const std::map<std::string, std::string>& table) {
    FactoredExpr r;
    r.terms.reserve(a.terms.size());
    for (const auto& t : a.terms) {
        Term nt;
        nt.coeff = t.coeff;
        for (const auto& at : t.atoms) {
            Atom na = at;
            na.a = at.a.rename(table);
            na.b = at.b.rename(table);
            nt.push(na);
        }
        r.terms.push_back(std::move(nt));
    }
    return r;
}

void collect_vars(const FactoredExpr& a, std::set<std::string>& out) {
    for (const auto& t : a.terms)
        for (const auto& at : t.atoms) {
            for (const auto& [v, d] : at.a.exponents()) out.insert(v);
            for (const auto& [v, d] : at.b.exponents()) out.insert(v);
        }
}

namespace {
std::string term_dump(const Term& t);
}

bool expr_structural_equal(const FactoredExpr& a, const FactoredExpr& b) {
    if (a.terms.size() != b.terms.size()) return false;
    std::vector<std::string> da, db;
    for (const auto& t : a.terms) da.push_back(term_dump(t));
    for (const auto& t : b.terms) db.push_back(term_dump(t));
    std::sort(da.begin(), da.end());
    std::sort(db.begin(), db.end());
    return da == db;
}

QSeries theta_series(const Monomial& m, const EvalPoint& p, int order) {
    return theta_series_t<Rational>(m, p, order);
}
QSeries theta_prime_one_series(int order) { return theta_prime_one_series_t<Rational>(order); }
QSeries delta_series(const Monomial& a, const Monomial& b, const EvalPoint& p, int order) {
    return delta_series_t<Rational>(a, b, p, order);
}
QSeries expr_eval(const FactoredExpr& e, const EvalPoint& p, int order) {
    return expr_eval_t<Rational>(e, p, order);
}

namespace {

std::set<std::string> joint_vars(const FactoredExpr& a, const FactoredExpr& b) {
    std::set<std::string> vars;
    collect_vars(a, vars);
    collect_vars(b, vars);
    return vars;
}

}  // namespace

bool expr_equal(const FactoredExpr& a, const FactoredExpr& b, const EqualityConfig& cfg) {
    if (cfg.order < 0 || cfg.points < 1) throw UsageError("bad equality configuration");
    std::set<std::string> vars = joint_vars(a, b);
    std::mt19937_64 rng(cfg.seed);
    for (int trial = 0; trial < cfg.points; ++trial) {
        int attempts = 0;
        for (;;) {
            EvalPoint p = sample_point(vars, rng);
            try {
                QSeries sa = expr_eval(a, p, cfg.order);
                QSeries sb = expr_eval(b, p, cfg.order);
                if (!qs_equal(sa, sb)) return false;
                break;
            } catch (const PoleAtEvaluation&) {
                if (++attempts > cfg.max_resamples)
                    throw ExhaustionError("could not find a pole-free evaluation point");
            }
        }
    }
    return true;
}

bool expr_is_zero(const FactoredExpr& a, const EqualityConfig& cfg) {
    return expr_equal(a, FactoredExpr::zero(), cfg);
}

bool expr_equal_on_locus(const FactoredExpr& a, const FactoredExpr& b,
                         const std::vector<std::pair<std::string, std::string>>& collide,
                         const EqualityConfig& cfg) {
    if (cfg.order < 0 || cfg.points < 1) throw UsageError("bad equality configuration");
    std::set<std::string> vars = joint_vars(a, b);
    std::mt19937_64 rng(cfg.seed);

    auto checked_eta0 = [](const SeriesT<EtaSeries>& s) {
        // every q-coefficient must be known at eta^0 and vanish below it
        std::vector<Rational> out;
        out.reserve(s.c.size());
        for (const auto& es : s.c) {
            if (es.hi() < 0) throw InternalError("insufficient eta precision in locus check");
            if (!es.known_zero() && es.lead() < 0) {
                for (int e = es.lead(); e < 0; ++e)
                    if (!rat_is_zero(es.coeff(e)))
                        return std::optional<std::vector<Rational>>{};  // genuine pole
            }
            out.push_back(es.coeff(0));
        }
        return std::optional<std::vector<Rational>>{std::move(out)};
    };

    for (int trial = 0; trial < cfg.points; ++trial) {
        int attempts = 0;
        for (;;) {
            EvalPoint base = sample_point(vars, rng);
            PointT<EtaSeries> p;
            for (const auto& [v, s] : base.sqrtval) p.sqrtval[v] = EtaSeries::from_rational(s);
            EtaSeries bump = EtaSeries::sqrt1p_eta();
            for (const auto& [va, vb] : collide) {
                if (!p.sqrtval.count(va) || !p.sqrtval.count(vb))
                    throw UsageError("collision pair names unknown variable");
                p.sqrtval[vb] = p.sqrtval.at(va) * bump;
            }
            try {
                auto ca = checked_eta0(expr_eval_t<EtaSeries>(a, p, cfg.order));
                auto cb = checked_eta0(expr_eval_t<EtaSeries>(b, p, cfg.order));
                if (!ca || !cb) return false;  // a side has an actual pole on the locus
                if (*ca != *cb) return false;
                break;
            } catch (const PoleAtEvaluation&) {
                if (++attempts > cfg.max_resamples)
                    throw ExhaustionError("could not find a pole-free evaluation point on locus");
            }
        }
    }
    return true;
}

QuasiPeriodFactor quasi_period_factor(const Atom& at, const std::string& var) {
    QuasiPeriodFactor f;
    switch (at.kind) {
        case AtomKind::ThetaPrimeOne:
            return f;
        case AtomKind::Theta: {
            int d = at.a.doubled_exponent(var);
            if (d % 2 != 0) throw LatticeViolation("quasi-periodicity off the integer lattice");
            int n = d / 2;
            // theta(q^n x) = (-1)^n q^{-n^2/2} x^{-n} theta(x)
            long n_l = n;
            f.sign = (n % 2 == 0) ? 1 : -1;
            f.multiplier = at.a.pow(-n);
            f.qshift_doubled = static_cast<int>(-n_l * n_l);
            break;
        }
        case AtomKind::Delta: {
            int da = at.a.doubled_exponent(var), db = at.b.doubled_exponent(var);
            if (da % 2 != 0 || db % 2 != 0)
                throw LatticeViolation("quasi-periodicity off the integer lattice");
            int na = da / 2, nb = db / 2;
            // delta(q^{na} a, q^{nb} b) = q^{-na nb} a^{-nb} b^{-na} delta(a, b)
            f.multiplier = at.a.pow(-nb) * at.b.pow(-na);
            f.qshift_doubled = -2 * na * nb;
            break;
        }
        case AtomKind::Mono: {
            int d = at.a.doubled_exponent(var);
            f.qshift_doubled = d;  // value picks up q^{d/2}
            break;
        }
        case AtomKind::OneMinus:
            throw DomainError("1 - m has no quasi-periodicity factor");
    }
    if (at.power != 1) {
        int pw = at.power;
        QuasiPeriodFactor g;
        g.sign = (pw % 2 == 0 || f.sign == 1) ? 1 : -1;
        g.multiplier = f.multiplier.pow(pw);
        g.qshift_doubled = f.qshift_doubled * pw;
        return g;
    }
    return f;
}

namespace {

nlohmann::json monomial_to_json(const Monomial& m) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [v, d] : m.exponents()) j[v] = d;
    return j;
}

Monomial monomial_from_json(const nlohmann::json& j) {
    Monomial m;
    for (auto it = j.begin(); it != j.end(); ++it)
        m.mul_var(it.key(), it.value().get<int>());
    return m;
}

const char* kind_name(AtomKind k) {
    switch (k) {
        case AtomKind::Theta: return "theta";
        case AtomKind::ThetaPrimeOne: return "theta_prime_one";
        case AtomKind::Delta: return "delta";
        case AtomKind::Mono: return "mono";
        case AtomKind::OneMinus: return "one_minus";
    }
    return "?";
}

AtomKind kind_from_name(const std::string& s) {
    if (s == "theta") return AtomKind::Theta;
    if (s == "theta_prime_one") return AtomKind::ThetaPrimeOne;
    if (s == "delta") return AtomKind::Delta;
    if (s == "mono") return AtomKind::Mono;
    if (s == "one_minus") return AtomKind::OneMinus;
    throw UsageError("unknown atom kind: " + s);
}

nlohmann::json term_to_json(const Term& t) {
    nlohmann::json jt;
    jt["scalar"] = rat_str(t.coeff);
    nlohmann::json factors = nlohmann::json::array();
    for (const auto& at : t.atoms) {
        nlohmann::json ja;
        ja["kind"] = kind_name(at.kind);
        if (at.kind != AtomKind::ThetaPrimeOne) ja["a"] = monomial_to_json(at.a);
        if (at.kind == AtomKind::Delta) ja["b"] = monomial_to_json(at.b);
        ja["power"] = at.power;
        factors.push_back(std::move(ja));
    }
    jt["factors"] = std::move(factors);
    return jt;
}

std::string term_dump(const Term& t) { return term_to_json(t).dump(); }

}  // namespace

nlohmann::json expr_to_json(const FactoredExpr& e) {
    nlohmann::json j;
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : e.terms) terms.push_back(term_to_json(t));
    j["terms"] = std::move(terms);
    return j;
}

FactoredExpr expr_from_json(const nlohmann::json& j) {
    FactoredExpr e;
    if (!j.contains("terms") || !j["terms"].is_array())
        throw UsageError("expression JSON lacks a terms array");
    for (const auto& jt : j["terms"]) {
        Term t;
        t.coeff = rat_parse(jt.at("scalar").get<std::string>());
        for (const auto& ja : jt.at("factors")) {
            Atom at;
            at.kind = kind_from_name(ja.at("kind").get<std::string>());
            if (ja.contains("a")) at.a = monomial_from_json(ja["a"]);
            if (ja.contains("b")) at.b = monomial_from_json(ja["b"]);
            at.power = ja.value("power", 1);
            t.push(at);
        }
        e.terms.push_back(std::move(t));
    }
    return e;
}

std::string expr_canonical_dump(const FactoredExpr& e) { return expr_to_json(e).dump(); }

std::string expr_str(const FactoredExpr& e) {
    if (e.terms.empty()) return "0";
    std::string out;
    for (size_t i = 0; i < e.terms.size(); ++i) {
        const Term& t = e.terms[i];
        if (i) out += " + ";
        out += rat_str(t.coeff);
        for (const auto& at : t.atoms) {
            out += " ";
            switch (at.kind) {
                case AtomKind::Theta: out += "th[" + at.a.str() + "]"; break;
                case AtomKind::ThetaPrimeOne: out += "th'(1)"; break;
                case AtomKind::Delta: out += "d[" + at.a.str() + " | " + at.b.str() + "]"; break;
                case AtomKind::Mono: out += "m[" + at.a.str() + "]"; break;
                case AtomKind::OneMinus: out += "(1-" + at.a.str() + ")"; break;
            }
            if (at.power != 1) out += "^" + std::to_string(at.power);
        }
    }
    return out;
}

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace ellsc
