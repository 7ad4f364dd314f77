#pragma once

#include <algorithm>
#include <vector>

#include "ellischub/rational.hpp"

namespace ellsc {

// Truncated Laurent series in a perturbation variable eta with exact rational
// coefficients.  Used as the coefficient field when a q-series has to be
// evaluated on a collision locus (two variables set equal up to (1+eta)):
// individual factors acquire poles in eta that must cancel in the full sum,
// and the certificate is that every coefficient of eta^{<0} vanishes exactly.
//
// Invariants: coefficients are known for all exponents <= hi_; exponents
// below lead_ or past the stored window (but <= hi_) are known to be zero;
// c_ is empty iff the series is zero through hi_; c_.front() != 0 otherwise.
class EtaSeries {
  public:
    static constexpr int kRelPrec = 16;   // relative precision of inexact inputs
    static constexpr int kMaxLen = 48;    // window cap for inverses of exact data
    static constexpr int kInfinite = 1 << 28;

    EtaSeries() : hi_(kInfinite), lead_(0) {}  // exact zero

    static EtaSeries from_rational(const Rational& r) {
        EtaSeries s;
        if (!rat_is_zero(r)) {
            s.lead_ = 0;
            s.c_ = {r};
        }
        return s;
    }

    // (1+eta)^{1/2} as a binomial series, known to kRelPrec terms.
    static EtaSeries sqrt1p_eta() {
        EtaSeries s;
        s.lead_ = 0;
        s.hi_ = kRelPrec - 1;
        s.c_.resize(kRelPrec);
        Rational cur(1);
        for (int k = 0; k < kRelPrec; ++k) {
            s.c_[k] = cur;
            // next binomial(1/2, k+1) = binom(1/2,k) * (1/2 - k) / (k+1)
            cur *= Rational(1 - 2 * k, 2 * (k + 1));
        }
        return s;
    }

    bool known_zero() const { return c_.empty(); }
    int hi() const { return hi_; }
    int lead() const { return lead_; }

    Rational coeff(int e) const {
        if (e > hi_) throw InternalError("eta coefficient beyond known window");
        if (c_.empty() || e < lead_ || e >= lead_ + static_cast<int>(c_.size()))
            return Rational(0);
        return c_[e - lead_];
    }

    EtaSeries operator-() const {
        EtaSeries r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    EtaSeries operator+(const EtaSeries& o) const {
        EtaSeries r;
        r.hi_ = std::min(hi_, o.hi_);
        int lo = std::min(pot_lead(), o.pot_lead());
        // exponents past both stored windows are known zero, so the result
        // window only needs to reach the larger stored top
        int up = std::min(r.hi_, std::max(stored_top(), o.stored_top()));
        if (lo > up) return r;  // zero through r.hi_
        r.lead_ = lo;
        r.c_.assign(static_cast<size_t>(up - lo + 1), Rational(0));
        for (int e = lo; e <= up; ++e) r.c_[e - lo] = coeff(e) + o.coeff(e);
        r.normalize();
        return r;
    }

    EtaSeries operator-(const EtaSeries& o) const { return *this + (-o); }

    EtaSeries operator*(const EtaSeries& o) const {
        EtaSeries r;
        int pl = pot_lead(), po = o.pot_lead();
        r.hi_ = std::min(sat_add(hi_, po), sat_add(o.hi_, pl));
        if (c_.empty() || o.c_.empty()) return r;  // zero through r.hi_
        int lo = pl + po;
        int up = std::min(r.hi_, stored_top() + o.stored_top());
        if (lo > up) return r;
        r.lead_ = lo;
        r.c_.assign(static_cast<size_t>(up - lo + 1), Rational(0));
        int na = static_cast<int>(c_.size()), nb = static_cast<int>(o.c_.size());
        for (int i = 0; i < na; ++i) {
            if (rat_is_zero(c_[i])) continue;
            for (int j = 0; j < nb; ++j) {
                int e = lead_ + i + o.lead_ + j;
                if (e > up) break;
                r.c_[e - lo] += c_[i] * o.c_[j];
            }
        }
        r.normalize();
        return r;
    }

    EtaSeries inverse() const {
        if (c_.empty())
            throw PoleAtEvaluation("inverting an eta-series that is zero to working precision");
        if (c_.size() == 1) {  // exact monomial: inverse is exact
            EtaSeries r;
            r.hi_ = hi_ >= kInfinite ? kInfinite : hi_ - 2 * lead_;
            if (r.hi_ < -lead_) throw PoleAtEvaluation("eta-series inverse loses all precision");
            r.lead_ = -lead_;
            r.c_ = {Rational(1) / c_[0]};
            return r;
        }
        int rel = hi_ >= kInfinite ? kMaxLen : hi_ - lead_ + 1;
        rel = std::min(rel, kMaxLen);
        EtaSeries r;
        r.lead_ = -lead_;
        r.hi_ = r.lead_ + rel - 1;
        r.c_.assign(rel, Rational(0));
        Rational inv0 = Rational(1) / c_[0];
        r.c_[0] = inv0;
        for (int m = 1; m < rel; ++m) {
            Rational acc(0);
            int jmax = std::min<int>(m, static_cast<int>(c_.size()) - 1);
            for (int j = 1; j <= jmax; ++j) acc += c_[j] * r.c_[m - j];
            r.c_[m] = -inv0 * acc;
        }
        r.normalize();
        return r;
    }

    EtaSeries pow(long k) const {
        if (k < 0) return inverse().pow(-k);
        EtaSeries acc = from_rational(Rational(1));
        EtaSeries base = *this;
        while (k > 0) {
            if (k & 1) acc = acc * base;
            base = k > 1 ? base * base : base;
            k >>= 1;
        }
        return acc;
    }

  private:
    // first exponent whose coefficient is possibly nonzero
    int pot_lead() const { return c_.empty() ? sat_add(hi_, 1) : lead_; }
    // last exponent with a stored coefficient
    int stored_top() const {
        return c_.empty() ? -(kInfinite << 1) : lead_ + static_cast<int>(c_.size()) - 1;
    }

    static int sat_add(int a, int b) {
        long s = static_cast<long>(a) + b;
        if (s >= kInfinite) return kInfinite;
        return static_cast<int>(s);
    }

    void normalize() {
        size_t i = 0;
        while (i < c_.size() && rat_is_zero(c_[i])) ++i;
        if (i > 0) {
            c_.erase(c_.begin(), c_.begin() + static_cast<long>(i));
            lead_ += static_cast<int>(i);
        }
        while (!c_.empty() && rat_is_zero(c_.back())) c_.pop_back();
        if (c_.empty()) lead_ = 0;
    }

    int hi_;
    int lead_;
    std::vector<Rational> c_;
};

// Coefficient-field shims for the templated series kernel.
template <class F>
struct FieldOps;

template <>
struct FieldOps<Rational> {
    static Rational from_rat(const Rational& r) { return r; }
    static Rational inv(const Rational& r) {
        if (rat_is_zero(r)) throw PoleAtEvaluation("division by zero in q-series");
        return Rational(1) / r;
    }
    static Rational pow(const Rational& r, long k) { return rat_pow(r, k); }
    static bool is_zero(const Rational& r) { return rat_is_zero(r); }
};

template <>
struct FieldOps<EtaSeries> {
    static EtaSeries from_rat(const Rational& r) { return EtaSeries::from_rational(r); }
    static EtaSeries inv(const EtaSeries& s) { return s.inverse(); }
    static EtaSeries pow(const EtaSeries& s, long k) { return s.pow(k); }
    static bool is_zero(const EtaSeries& s) { return s.known_zero(); }
};

// Truncated power series in q with coefficients in F; c has exactly order+1
// entries, c[k] the coefficient of q^k.  All binary operations insist that the
// truncation orders match.
template <class F>
struct SeriesT {
    int order = 0;
    std::vector<F> c;

    static SeriesT constant(const F& v, int order) {
        SeriesT s;
        s.order = order;
        s.c.assign(static_cast<size_t>(order) + 1, FieldOps<F>::from_rat(Rational(0)));
        s.c[0] = v;
        return s;
    }
};

using QSeries = SeriesT<Rational>;

template <class F>
void qs_check_match(const SeriesT<F>& a, const SeriesT<F>& b) {
    if (a.order != b.order) throw UsageError("q-series truncation orders differ");
}

template <class F>
SeriesT<F> qs_add(const SeriesT<F>& a, const SeriesT<F>& b) {
    qs_check_match(a, b);
    SeriesT<F> r = a;
    for (int k = 0; k <= r.order; ++k) r.c[k] = r.c[k] + b.c[k];
    return r;
}

template <class F>
SeriesT<F> qs_sub(const SeriesT<F>& a, const SeriesT<F>& b) {
    qs_check_match(a, b);
    SeriesT<F> r = a;
    for (int k = 0; k <= r.order; ++k) r.c[k] = r.c[k] - b.c[k];
    return r;
}

template <class F>
SeriesT<F> qs_scale(const F& s, const SeriesT<F>& a) {
    SeriesT<F> r = a;
    for (auto& x : r.c) x = x * s;
    return r;
}

template <class F>
SeriesT<F> qs_mul(const SeriesT<F>& a, const SeriesT<F>& b) {
    qs_check_match(a, b);
    SeriesT<F> r = SeriesT<F>::constant(FieldOps<F>::from_rat(Rational(0)), a.order);
    for (int i = 0; i <= a.order; ++i) {
        if (FieldOps<F>::is_zero(a.c[i])) continue;
        for (int j = 0; i + j <= a.order; ++j) r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
    }
    return r;
}

template <class F>
SeriesT<F> qs_invert(const SeriesT<F>& a) {
    SeriesT<F> r = SeriesT<F>::constant(FieldOps<F>::inv(a.c[0]), a.order);
    // Newton-free direct recurrence: r_m = -a_0^{-1} sum_{j=1..m} a_j r_{m-j}
    const F& inv0 = r.c[0];
    for (int m = 1; m <= a.order; ++m) {
        F acc = FieldOps<F>::from_rat(Rational(0));
        for (int j = 1; j <= m; ++j) acc = acc + a.c[j] * r.c[m - j];
        r.c[m] = FieldOps<F>::from_rat(Rational(0)) - inv0 * acc;
    }
    return r;
}

inline bool qs_equal(const QSeries& a, const QSeries& b) {
    qs_check_match(a, b);
    for (int k = 0; k <= a.order; ++k)
        if (a.c[k] != b.c[k]) return false;
    return true;
}

}  // namespace ellsc
