#pragma once

#include "ellischub/rootdata.hpp"

namespace ellsc {

// Torus fixed point of the Bott-Samelson variety of a reduced word, encoded
// by the inclusion pattern eps (eps_j = 1 when the j-th letter participates).
struct BSFixedPoint {
    std::vector<int> eps;
    WeylElement image;                     // product of the selected reflections
    std::vector<Monomial> tangent_chars;   // z-monomial per position
    std::vector<Monomial> boundary_mults;  // mu-monomial h^{<lambda, beta_j_vee>} per position
};

// All 2^len fixed points of the Bott-Samelson variety of `word`.
// The word must be reduced.
std::vector<BSFixedPoint> bs_fixed_points(const RootDatum& D, const std::vector<int>& word);

// Local product of delta factors for a variety with Kawamata log terminal
// boundary data: prod_i delta(char_i, h / mult_i).  A multiplicity equal to h
// would make the second argument trivial.
FactoredExpr local_klt_class(const std::vector<Monomial>& chars,
                             const std::vector<Monomial>& mults);

// Localized elliptic class of the Bott-Samelson variety at one fixed point,
// built by the one-letter extension recursion (append a letter, twist the
// dynamical parameters, multiply the new delta factor).
FactoredExpr bs_local_class(const RootDatum& D, const std::vector<int>& word,
                            const std::vector<int>& eps);

// Same class assembled directly from the fixed point data; structurally equal
// to bs_local_class by construction of the twists.
FactoredExpr bs_local_class_from_point(const BSFixedPoint& pt);

}  // namespace ellsc
