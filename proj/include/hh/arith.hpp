#pragma once

// Places of Q, normalized absolute values, and logarithmic Weil heights of
// rationals, polynomials and algebraic numbers. Heights are certified real
// enclosures on the natural-log scale.

#include <variant>

#include "hh/ball.hpp"
#include "hh/qpoly.hpp"

namespace hh {

struct Place {
    // archimedean if p == 0, else the finite place at the prime p
    Int p;
    static Place archimedean() { return Place{Int(0)}; }
    static Place finite(Int prime) { return Place{std::move(prime)}; }
    bool is_archimedean() const { return p == 0; }
    bool operator==(const Place& o) const { return p == o.p; }
};

// |x|_v with the standard normalization (product formula holds); exact
// rational output at finite places, exact rational at the archimedean place
// too (|x| of a rational is rational).
Rat abs_at_place(const Rat& x, const Place& v);

// log-height of a rational: h(p/q) = log max(|p|, q).
RealBall height_rational(const Rat& x, mpfr_prec_t prec = 96);

// projective height of the coefficient vector (invariant under scaling);
// throws std::invalid_argument on the zero polynomial.
RealBall height_polynomial(const QPoly& p, mpfr_prec_t prec = 96);

// upper bound h1 + h2 + degree_ratio*log 2 for h(X1 + X2), degree_ratio =
// #M_L^inf / [L:Q] in (0, 1].
RealBall height_sum_upper(const RealBall& h1, const RealBall& h2, const Rat& degree_ratio);

// log of the Mahler measure of a primitive integer polynomial:
// log|lead| + sum log^+ |roots|. For an irreducible minimal polynomial of an
// algebraic number alpha of degree d, h(alpha) = mahler/d.
RealBall log_mahler_measure(const QPoly& p, mpfr_prec_t prec = 96);

// Height of an algebraic number given by any rational polynomial vanishing at
// it: factors the polynomial and uses the factor whose certified root disc
// contains the approximation. Exact h = log M(minpoly)/deg(minpoly).
RealBall height_algebraic(const QPoly& vanishing, const ComplexBall& which_root, mpfr_prec_t prec = 96);

// sum over the conjugate multiset of an irreducible factor: deg * h(alpha)
// (= log Mahler measure of the primitive integer form).
RealBall conjugate_height_sum(const QPoly& irreducible_monic, mpfr_prec_t prec = 96);

}  // namespace hh
