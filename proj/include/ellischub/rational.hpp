#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace ellsc {

// Error taxonomy shared by the whole library.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PoleAtEvaluation : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ExhaustionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct LatticeViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InternalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Thrown when summands that a quadratic-form extraction requires to agree do not.
struct SummandMismatch : InternalError {
    using InternalError::InternalError;
};

// Exact rational scalar. gmpxx keeps results of arithmetic canonical;
// only direct (num, den) construction needs an explicit canonicalize.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw DomainError("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool rat_is_zero(const Rational& r) { return sgn(r) == 0; }

inline std::string rat_str(const Rational& r) { return r.get_str(); }

// Accepts "p" or "p/q".
inline Rational rat_parse(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw UsageError("bad rational literal: " + s);
    r.canonicalize();
    return r;
}

// r^e for integer e (negative allowed; r must be nonzero then).
inline Rational rat_pow(const Rational& r, long e) {
    if (e == 0) return Rational(1);
    bool neg = e < 0;
    unsigned long k = neg ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    if (neg && rat_is_zero(r)) throw PoleAtEvaluation("zero raised to negative power");
    Rational base = neg ? Rational(1) / r : r;
    Rational out(1);
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), k);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), k);
    // base is canonical, so num^k/den^k is canonical too.
    return out;
}

}  // namespace ellsc
