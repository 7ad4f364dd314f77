#include "ellischub/bottsamelson.hpp"

namespace ellsc {

std::vector<BSFixedPoint> bs_fixed_points(const RootDatum& D, const std::vector<int>& word) {
    if (!D.is_reduced_word(word)) throw UsageError("word is not reduced");
    int len = static_cast<int>(word.size());
    std::vector<BSFixedPoint> out;
    out.reserve(static_cast<size_t>(1) << len);

    // suffix products: after[j] = s_{k_{j+1}} ... s_{k_len}
    std::vector<WeylElement> after(static_cast<size_t>(len) + 1, D.identity());
    for (int j = len - 1; j >= 0; --j)
        after[j] = D.simple_reflection(word[j]) * after[j + 1];

    for (unsigned mask = 0; mask < (1u << len); ++mask) {
        BSFixedPoint pt;
        pt.eps.resize(len);
        WeylElement prefix = D.identity();
        for (int j = 0; j < len; ++j) {
            int k = word[j];
            int e = (mask >> j) & 1u;
            pt.eps[j] = e;
            Monomial chr = line_bundle_char(prefix, k);
            if (e) chr = chr.inverse();
            pt.tangent_chars.push_back(chr);
            pt.boundary_mults.push_back(
                coroot_mu_monomial(after[j + 1].inverse().act_coweight(D.simple_coroot(k))));
            if (e) prefix = prefix.times_simple(k);
        }
        pt.image = prefix;
        out.push_back(std::move(pt));
    }
    return out;
}

FactoredExpr local_klt_class(const std::vector<Monomial>& chars,
                             const std::vector<Monomial>& mults) {
    if (chars.size() != mults.size()) throw UsageError("char/multiplicity count mismatch");
    Monomial h = Monomial::var("h");
    Term t;
    for (size_t i = 0; i < chars.size(); ++i) {
        Monomial second = h / mults[i];
        if (second.trivial()) throw DomainError("boundary multiplicity h makes delta degenerate");
        t.push(delta_atom(chars[i], second));
    }
    return FactoredExpr::from_term(t);
}

FactoredExpr bs_local_class(const RootDatum& D, const std::vector<int>& word,
                            const std::vector<int>& eps) {
    if (!D.is_reduced_word(word)) throw UsageError("word is not reduced");
    if (word.size() != eps.size()) throw UsageError("word/eps length mismatch");
    Monomial h = Monomial::var("h");
    FactoredExpr e = FactoredExpr::one();
    WeylElement prefix = D.identity();
    for (size_t j = 0; j < word.size(); ++j) {
        int k = word[j];
        e = act_mu(D.simple_reflection(k), e);
        Term t;
        if (eps[j]) {
            t.push(delta_atom(line_bundle_char(prefix, k).inverse(), h));
            prefix = prefix.times_simple(k);
        } else {
            t.push(delta_atom(line_bundle_char(prefix, k), nu_monomial(D, k)));
        }
        e = expr_mul_term(e, t);
    }
    return e;
}

FactoredExpr bs_local_class_from_point(const BSFixedPoint& pt) {
    Monomial h = Monomial::var("h");
    Term t;
    for (size_t j = 0; j < pt.eps.size(); ++j)
        t.push(delta_atom(pt.tangent_chars[j], pt.eps[j] ? h : pt.boundary_mults[j]));
    return FactoredExpr::from_term(t);
}

}  // namespace ellsc
