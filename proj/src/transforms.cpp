#include "ellischub/transforms.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "ellischub/weightfn.hpp"

namespace ellsc {

namespace {

std::pair<std::string, std::string> key(const std::string& v, const std::string& u) {
    return v <= u ? std::make_pair(v, u) : std::make_pair(u, v);
}

bool is_positive_root(const RootDatum& D, const IVec& beta) {
    const auto& pos = D.positive_roots();
    return std::find(pos.begin(), pos.end(), beta) != pos.end();
}

IVec negated(const IVec& v) {
    IVec r = v;
    for (auto& x : r) x = -x;
    return r;
}

long exact_div(long a, long b, const char* what) {
    if (b == 0 || a % b != 0) throw InternalError(what);
    return a / b;
}

}  // namespace

void LinearForm::add(const std::string& v, long k) {
    if (k == 0) return;
    auto [it, fresh] = c.emplace(v, k);
    if (!fresh && (it->second += k) == 0) c.erase(it);
}

long LinearForm::at(const std::string& v) const {
    auto it = c.find(v);
    return it == c.end() ? 0 : it->second;
}

LinearForm LinearForm::operator+(const LinearForm& o) const {
    LinearForm r = *this;
    for (const auto& [v, k] : o.c) r.add(v, k);
    return r;
}

LinearForm LinearForm::operator-(const LinearForm& o) const {
    LinearForm r = *this;
    for (const auto& [v, k] : o.c) r.add(v, -k);
    return r;
}

LinearForm LinearForm::operator-() const {
    LinearForm r;
    for (const auto& [v, k] : c) r.c.emplace(v, -k);
    return r;
}

LinearForm LinearForm::scaled(long k) const {
    LinearForm r;
    if (k != 0)
        for (const auto& [v, kv] : c) r.c.emplace(v, k * kv);
    return r;
}

std::string LinearForm::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [v, k] : c) {
        os << (first ? "" : " ") << (k >= 0 ? "+" : "") << k << "*" << v;
        first = false;
    }
    return first ? "0" : os.str();
}

LinearForm linear_form_of(const Monomial& m) {
    LinearForm r;
    for (const auto& [v, d] : m.exponents()) {
        if (d % 2 != 0) throw LatticeViolation("half-integral exponent has no integral row");
        r.add(v, d / 2);
    }
    return r;
}

void QuadraticForm::add(const std::string& v, const std::string& u, long k) {
    if (k == 0) return;
    auto [it, fresh] = c.emplace(key(v, u), k);
    if (!fresh && (it->second += k) == 0) c.erase(it);
}

long QuadraticForm::at(const std::string& v, const std::string& u) const {
    auto it = c.find(key(v, u));
    return it == c.end() ? 0 : it->second;
}

QuadraticForm QuadraticForm::operator+(const QuadraticForm& o) const {
    QuadraticForm r = *this;
    for (const auto& [k, v] : o.c) r.add(k.first, k.second, v);
    return r;
}

QuadraticForm QuadraticForm::operator-(const QuadraticForm& o) const {
    QuadraticForm r = *this;
    for (const auto& [k, v] : o.c) r.add(k.first, k.second, -v);
    return r;
}

QuadraticForm QuadraticForm::scaled(long k) const {
    QuadraticForm r;
    if (k != 0)
        for (const auto& [kk, v] : c) r.c.emplace(kk, k * v);
    return r;
}

std::string QuadraticForm::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : c) {
        os << (first ? "" : " ") << (v >= 0 ? "+" : "") << v << "*" << k.first << "*" << k.second;
        first = false;
    }
    return first ? "0" : os.str();
}

std::set<std::string> QuadraticForm::vars() const {
    std::set<std::string> out;
    for (const auto& [k, v] : c) {
        (void)v;
        out.insert(k.first);
        out.insert(k.second);
    }
    return out;
}

QuadraticForm product_form(const LinearForm& a, const LinearForm& b) {
    QuadraticForm r;
    for (const auto& [v, kv] : a.c)
        for (const auto& [u, ku] : b.c) r.add(v, u, kv * ku);
    return r;
}

QuadraticForm form_of_term(const Term& t) {
    QuadraticForm r;
    for (const auto& at : t.atoms) {
        switch (at.kind) {
            case AtomKind::Theta: {
                LinearForm row = linear_form_of(at.a);
                r = r + product_form(row, row).scaled(at.power);
                break;
            }
            case AtomKind::Delta: {
                QuadraticForm cross = product_form(linear_form_of(at.a), linear_form_of(at.b));
                r = r + cross.scaled(2L * at.power);
                break;
            }
            case AtomKind::ThetaPrimeOne:
                break;
            case AtomKind::Mono:
                throw DomainError("a bare monomial factor is not a section, no ledger row");
            case AtomKind::OneMinus:
                throw DomainError("a 1 - m factor is not a section, no ledger row");
        }
    }
    return r;
}

QuadraticForm form_of_expression(const FactoredExpr& e) {
    if (e.terms.empty()) throw UsageError("the zero expression has every transformation form");
    QuadraticForm common = form_of_term(e.terms.front());
    for (size_t i = 1; i < e.terms.size(); ++i) {
        QuadraticForm other = form_of_term(e.terms[i]);
        if (!(other == common))
            throw SummandMismatch("summands transform differently: " + common.str() + " vs " +
                                  other.str());
    }
    return common;
}

QuadraticForm substitute(const QuadraticForm& f, const std::map<std::string, LinearForm>& sub) {
    auto row = [&sub](const std::string& v) -> LinearForm {
        auto it = sub.find(v);
        if (it != sub.end()) return it->second;
        LinearForm self;
        self.add(v, 1);
        return self;
    };
    QuadraticForm r;
    for (const auto& [k, coeff] : f.c)
        r = r + product_form(row(k.first), row(k.second)).scaled(coeff);
    return r;
}

LinearForm z_linear(const IVec& weight) { return linear_form_of(z_monomial(weight)); }

// The additive mu variables are the logs of the mu monomials, so the root
// functional row is minus the row of the nu monomial h^{<,coweight>}: pairing
// delta(z^{-sigma(alpha)}, nu_alpha) -> 2 mu_alpha z_{sigma(alpha)} needs the
// two minus signs to cancel.
LinearForm mu_linear(const IVec& coweight) {
    return linear_form_of(coroot_mu_monomial(coweight)).scaled(-1);
}

LinearForm h_linear() {
    LinearForm r;
    r.add("h", 1);
    return r;
}

QuadraticForm act_mu_form(const WeylElement& w, const QuadraticForm& f) {
    std::map<std::string, LinearForm> sub;
    for (const auto& [v, m] : mu_subst(w)) sub.emplace(v, linear_form_of(m));
    return substitute(f, sub);
}

namespace {

// one peeling step shared by the canonical and explicit-word recursions
QuadraticForm m_step(const RootDatum& D, const WeylElement& omega_short, int k,
                     const WeylElement& sigma,
                     const std::function<QuadraticForm(const WeylElement&)>& shorter) {
    WeylElement sk = D.simple_reflection(k);
    WeylElement full = omega_short.times_simple(k);
    LinearForm zrow = z_linear(sigma.act_weight(D.simple_root(k)));
    bool below = bruhat_leq(sigma, omega_short);
    bool below_reflected = bruhat_leq(sigma * sk, omega_short);
    if (!below && !below_reflected)
        throw InternalError("no recursion branch applies below " +
                            std::to_string(full.idx));
    QuadraticForm first, second;
    if (below)
        first = act_mu_form(sk, shorter(sigma)) +
                product_form(mu_linear(D.simple_coroot(k)), zrow);
    if (below_reflected)
        second = act_mu_form(sk, shorter(sigma * sk)) - product_form(h_linear(), zrow);
    if (below && below_reflected && !(first == second))
        throw InternalError("recursion branches disagree: " + first.str() + " vs " +
                            second.str());
    return below ? first : second;
}

}  // namespace

QuadraticForm m_form(const WeylElement& omega, const WeylElement& sigma) {
    if (omega.D != sigma.D) throw UsageError("form needs elements of one datum");
    if (!bruhat_leq(sigma, omega))
        throw UsageError("the form is defined below omega in the Bruhat order only");
    if (omega.is_identity()) return {};
    const RootDatum& D = *omega.D;
    int k = omega.canonical_word().back();
    WeylElement shorter_elem = omega.times_simple(k);
    return m_step(D, shorter_elem, k, sigma,
                  [&](const WeylElement& s) { return m_form(shorter_elem, s); });
}

QuadraticForm m_form_via_word(const RootDatum& D, const std::vector<int>& word,
                              const WeylElement& sigma) {
    if (sigma.D != &D) throw UsageError("form needs elements of one datum");
    if (!D.is_reduced_word(word)) throw UsageError("word is not reduced");
    if (!bruhat_leq(sigma, D.from_word(word)))
        throw UsageError("the form is defined below omega in the Bruhat order only");
    if (word.empty()) return {};
    std::vector<int> head(word.begin(), word.end() - 1);
    WeylElement shorter_elem = D.from_word(head);
    return m_step(D, shorter_elem, word.back(), sigma,
                  [&](const WeylElement& s) { return m_form_via_word(D, head, s); });
}

QuadraticForm q_form(const std::vector<int>& omega) {
    int n = static_cast<int>(omega.size());
    {
        std::vector<char> seen(n + 1, 0);
        for (int v : omega) {
            if (v < 1 || v > n || seen[v]) throw UsageError("not a one-line permutation");
            seen[v] = 1;
        }
    }
    auto zrow = [](int i) {
        LinearForm r;
        r.add(zname(i), 1);
        return r;
    };
    auto grow = [](int i) {
        LinearForm r;
        r.add(gname(i), 1);
        return r;
    };
    auto murow = [](int i) {
        LinearForm r;
        r.add(muname(i), 1);
        return r;
    };
    QuadraticForm Q;
    // the gamma block runs over non-inversions i<j, omega(i)<omega(j); any
    // other pair set breaks the gamma-free difference law
    for (int i = 1; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (omega[i - 1] < omega[j - 1])
                Q = Q + product_form(h_linear(), grow(j) - grow(i)).scaled(2);
    for (int i = 1; i < n; ++i)
        for (int j = 1; j < omega[i - 1]; ++j)
            Q = Q + product_form(h_linear(), zrow(j) - grow(i)).scaled(2);
    for (int i = 1; i < n; ++i) {
        LinearForm weight = murow(n) - murow(i);
        if (omega[i - 1] < omega[n - 1]) weight = weight + h_linear();
        Q = Q + product_form(zrow(omega[i - 1]) - grow(i), weight).scaled(2);
    }
    for (int i = 1; i < n; ++i)
        for (int j = 1; j <= n; ++j) {
            LinearForm d = zrow(j) - grow(i);
            Q = Q + product_form(d, d);
        }
    for (int i = 1; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            LinearForm d = grow(i) - grow(j);
            Q = Q - product_form(d, d);
        }
    return Q;
}

QuadraticForm q_form(const WeylElement& omega) {
    if (!omega.D->is_permutation_type())
        throw DomainError("the closed form needs a permutation-type datum");
    return q_form(omega.D->one_line(omega));
}

LinearForm divided_difference_form(const RootDatum& D, const IVec& beta, const QuadraticForm& f) {
    IVec pos = beta;
    long orient = 1;
    if (!is_positive_root(D, pos)) {
        pos = negated(beta);
        orient = -1;
        if (!is_positive_root(D, pos)) throw UsageError("not a root of the datum");
    }
    LinearForm denom = mu_linear(D.coroot_of_positive(pos)).scaled(orient);
    QuadraticForm diff = f - act_mu_form(D.reflection(pos), f);
    if (diff.zero()) return {};

    const auto& [pivot, cp] = *denom.c.begin();
    LinearForm quot;
    quot.add(pivot, exact_div(diff.at(pivot, pivot), cp, "difference not divisible by the pivot"));
    std::set<std::string> names = diff.vars();
    for (const auto& [v, k] : denom.c) {
        (void)k;
        names.insert(v);
    }
    for (const auto& v : names) {
        if (v == pivot) continue;
        quot.add(v, exact_div(diff.at(pivot, v) - denom.at(v) * quot.at(pivot), cp,
                              "difference not divisible by the root functional"));
    }
    if (!(product_form(denom, quot) == diff))
        throw InternalError("difference not divisible by the root functional");
    return quot;
}

QuasiPeriodFactor predicted_quasi_period(const QuadraticForm& f, const std::string& var) {
    QuasiPeriodFactor out;
    long diag = f.at(var, var);
    out.sign = (diag % 2 == 0) ? 1 : -1;
    out.qshift_doubled = static_cast<int>(-diag);
    for (const auto& u : f.vars()) {
        long cu = f.at(var, u);
        if (cu == 0) continue;
        out.multiplier.mul_var(u, static_cast<int>(u == var ? -2 * cu : -cu));
    }
    return out;
}

QuasiPeriodFactor term_quasi_period(const Term& t, const std::string& var) {
    QuasiPeriodFactor out;
    for (const auto& at : t.atoms) {
        QuasiPeriodFactor f = quasi_period_factor(at, var);
        out.sign *= f.sign;
        out.multiplier = out.multiplier * f.multiplier;
        out.qshift_doubled += f.qshift_doubled;
    }
    return out;
}

namespace {

bool quasi_period_rows_match(const Term& t) {
    QuadraticForm form = form_of_term(t);
    std::set<std::string> names;
    for (const auto& at : t.atoms) {
        for (const auto& [v, d] : at.a.exponents()) {
            (void)d;
            names.insert(v);
        }
        for (const auto& [v, d] : at.b.exponents()) {
            (void)d;
            names.insert(v);
        }
    }
    for (const auto& v : names) {
        QuasiPeriodFactor want = predicted_quasi_period(form, v);
        QuasiPeriodFactor got = term_quasi_period(t, v);
        if (want.sign != got.sign || !(want.multiplier == got.multiplier) ||
            want.qshift_doubled != got.qshift_doubled)
            return false;
    }
    return true;
}

}  // namespace

std::vector<TransformCheck> check_transform_theorems(const RootDatum& D) {
    if (D.group_order() > 24) throw UsageError("theorem battery capped at 24 group elements");
    std::vector<TransformCheck> out;
    int N = D.group_order();

    auto label_of = [&D](const WeylElement& w) {
        if (D.is_permutation_type()) {
            std::string s;
            for (int v : D.one_line(w)) s += std::to_string(v);
            return s;
        }
        std::string s = "[";
        const auto& word = w.canonical_word();
        for (size_t i = 0; i < word.size(); ++i)
            s += (i ? "." : "") + std::to_string(word[i]);
        return s + "]";
    };

    {
        bool ok = true;
        try {
            for (int i = 0; i < N; ++i)
                for (int s = 0; s < N; ++s)
                    if (bruhat_leq(D.element(s), D.element(i)))
                        m_form(D.element(i), D.element(s));
        } catch (const InternalError&) {
            ok = false;
        }
        out.push_back({"recursion branches agree wherever both apply", ok});
    }

    {
        bool ok = true;
        for (int i = 0; i < N && ok; ++i) {
            WeylElement w = D.element(i);
            for (const auto& word : D.all_reduced_words(w)) {
                for (int s = 0; s < N; ++s) {
                    WeylElement sigma = D.element(s);
                    if (!bruhat_leq(sigma, w)) continue;
                    if (!(m_form_via_word(D, word, sigma) == m_form(w, sigma))) ok = false;
                }
            }
        }
        out.push_back({"form is independent of the reduced word", ok});
    }

    for (int i = 0; i < N; ++i) {
        WeylElement w = D.element(i);
        for (int k = 1; k <= D.rank(); ++k) {
            WeylElement wk = w.times_simple(k);
            if (wk.length() < w.length()) continue;
            LinearForm zw = z_linear(w.act_weight(D.simple_root(k)));
            QuadraticForm step = product_form(mu_linear(D.simple_coroot(k)), zw);
            bool ok = true;
            for (int s = 0; s < N; ++s) {
                WeylElement sigma = D.element(s);
                if (!bruhat_leq(sigma, w)) continue;
                if (!(m_form(wk, sigma) == m_form(w, sigma) + step)) ok = false;
            }
            out.push_back({"length step omega=" + label_of(w) + " k=" + std::to_string(k), ok});
        }
    }

    for (int i = 0; i < N; ++i) {
        WeylElement w = D.element(i);
        QuadraticForm expect;
        for (const auto& beta : D.positive_roots()) {
            IVec pulled = w.inverse().act_weight(beta);
            if (!is_positive_root(D, pulled))
                expect = expect + product_form(h_linear(), z_linear(beta));
        }
        out.push_back({"smooth diagonal value omega=" + label_of(w),
                       m_form(w, w) == expect});
    }

    for (int i = 0; i < N; ++i) {
        WeylElement w = D.element(i);
        ClassVector cls = schubert_classes_bs(D, w);
        bool ok = true;
        for (int s = 0; s < N; ++s) {
            WeylElement sigma = D.element(s);
            const FactoredExpr& e = cls.at(sigma);
            if (e.structurally_zero()) continue;  // zero transforms by anything
            try {
                if (!(form_of_expression(e) == m_form(w, sigma).scaled(2))) ok = false;
            } catch (const SummandMismatch&) {
                ok = false;
            }
        }
        out.push_back({"class form is twice the fixed-point form omega=" + label_of(w), ok});
    }

    if (!D.is_permutation_type() || D.dim() > kWeightSizeCap) return out;
    int n = D.dim();

    for (int i = 0; i < N; ++i) {
        WeylElement w = D.element(i);
        std::vector<int> line = D.one_line(w);
        bool ok = true;
        try {
            if (!(form_of_expression(modified_weight_function(line).expr) == q_form(line)))
                ok = false;
        } catch (const SummandMismatch&) {
            ok = false;
        }
        out.push_back({"weight function transforms by Q omega=" + label_of(w), ok});
    }

    for (int i = 0; i < N; ++i) {
        WeylElement w = D.element(i);
        std::vector<int> line = D.one_line(w), winv = D.one_line(w.inverse());
        bool ok = true;
        for (int k = 1; k < n; ++k) {
            auto mrow = [](int a) {
                LinearForm r;
                r.add(muname(a), 1);
                return r;
            };
            auto zr = [](int a) {
                LinearForm r;
                r.add(zname(a), 1);
                return r;
            };
            QuadraticForm right = q_form(line) - q_form(D.one_line(w.times_simple(k)));
            QuadraticForm want_r =
                product_form(zr(line[k - 1]) - zr(line[k]), mrow(k + 1) - mrow(k)).scaled(2);
            QuadraticForm left = q_form(line) - q_form(D.one_line(w.simple_times(k)));
            QuadraticForm want_l =
                product_form(zr(k) - zr(k + 1), mrow(winv[k]) - mrow(winv[k - 1])).scaled(2);
            if (!(right == want_r) || !(left == want_l)) ok = false;
            for (const auto& v : right.vars())
                if (v.rfind("g", 0) == 0) ok = false;
            for (const auto& v : left.vars())
                if (v.rfind("g", 0) == 0) ok = false;
        }
        out.push_back({"Q differences close without gamma omega=" + label_of(w), ok});
    }

    {
        QuadraticForm euler_part;
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) {
                LinearForm d;
                d.add(zname(i), 1);
                d.add(zname(j), -1);
                euler_part = euler_part + product_form(d, d);
            }
        for (int i = 0; i < N; ++i) {
            WeylElement w = D.element(i);
            bool ok = true;
            for (int s = 0; s < N; ++s) {
                WeylElement sigma = D.element(s);
                if (!bruhat_leq(sigma, w)) continue;
                std::vector<int> sl = D.one_line(sigma);
                std::map<std::string, LinearForm> collapse;
                for (int a = 1; a < n; ++a) {
                    LinearForm r;
                    r.add(zname(sl[a - 1]), 1);
                    collapse.emplace(gname(a), r);
                }
                QuadraticForm lhs = substitute(q_form(D.one_line(w)), collapse);
                if (!(lhs == m_form(w, sigma).scaled(2) + euler_part)) ok = false;
            }
            out.push_back({"restricted Q is twice the form plus the Euler rows omega=" +
                               label_of(w),
                           ok});
        }
    }

    {
        bool ok = true;
        for (int i = 0; i < N; ++i)
            for (const auto& t : modified_weight_function(D.one_line(D.element(i))).expr.terms)
                if (!quasi_period_rows_match(t)) ok = false;
        out.push_back({"per-variable quasi-period factors match the ledger rows", ok});
    }

    return out;
}

}  // namespace ellsc
