#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>

#include "ellischub/monomial.hpp"
#include "ellischub/qseries.hpp"

namespace ellsc {

// A point assigns to every variable a positive rational square root; the
// variable's value is the square.  Carrying square roots makes monomials with
// half-integer exponents exactly evaluable.
template <class F>
struct PointT {
    std::map<std::string, F> sqrtval;
};

struct EvalPoint : PointT<Rational> {
    std::uint64_t rng_seed = 0;

    Rational value(const std::string& var) const {
        const Rational& s = sqrtval.at(var);
        return s * s;
    }
};

// prod_v sqrt(v)^{doubled exponent}; exact for exponents in (1/2)Z.
template <class F>
F eval_monomial_t(const Monomial& m, const PointT<F>& p) {
    F acc = FieldOps<F>::from_rat(Rational(1));
    for (const auto& [v, d] : m.exponents()) {
        auto it = p.sqrtval.find(v);
        if (it == p.sqrtval.end()) throw UsageError("evaluation point missing variable " + v);
        acc = acc * FieldOps<F>::pow(it->second, d);
    }
    return acc;
}

inline Rational eval_monomial(const Monomial& m, const EvalPoint& p) {
    return eval_monomial_t<Rational>(m, p);
}

// Square roots are drawn as fractions k/d with 2 <= k, d <= 40 and k != d, so
// every value is a positive rational bounded away from 1 variable-wise
// (collisions between monomial combinations can still occur; callers resample
// on PoleAtEvaluation).
inline EvalPoint sample_point(const std::set<std::string>& vars, std::mt19937_64& rng) {
    EvalPoint p;
    std::uniform_int_distribution<int> pick(2, 40);
    for (const auto& v : vars) {
        int k = pick(rng), d = pick(rng);
        while (d == k) d = pick(rng);
        p.sqrtval[v] = rat(k, d);
    }
    return p;
}

}  // namespace ellsc
