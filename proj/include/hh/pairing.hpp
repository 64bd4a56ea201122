#pragma once

// Non-Archimedean pairing of pairs of algebraic points on a hyperelliptic
// curve: the place sum (1/[M:Q]) sum_w -log d_w(u, v) over finite places,
// computed with exact rational arithmetic.
//
// A point is carried as (q, b, sign, x-enclosure): its x-coordinate is the
// root of the monic irreducible q selected by the enclosure, and y =
// sign*b(x). The pairing of (u, v) is computed on the Galois orbit of the
// pair: the orbit is split off as an irreducible factor of the resultant
// polynomial of Z = x_u + t x_v, all valuation sums are expressed as p-adic
// valuations of norms of gated linear combinations, and the chart cases of
// the metric are handled by unit gates (inclusion-exclusion between the two
// affine charts).

#include <map>

#include "hh/ball.hpp"
#include "hh/curve.hpp"
#include "hh/numfield.hpp"
#include "hh/qpoly.hpp"

namespace hh {

struct AlgPoint {
    QPoly q;        // monic irreducible minimal polynomial of x over Q
    QPoly b;        // y = sign * b(x) on the curve
    int sign = 1;   // +1 / -1
    ComplexBall x;  // certified enclosure selecting the root of q

    bool is_rational() const { return q.degree() == 1; }
    Rat rational_x() const { return -q.coeff(0) / q.coeff(1); }
    Rat rational_y() const { return Rat(sign) * b.eval(rational_x()); }
    AlgPoint involute() const { return {q, b, -sign, x}; }
    ComplexBall y_ball(mpfr_prec_t prec) const;
};

// Exact non-archimedean pairing data: prime -> exponent c_p, meaning the
// contribution (1/[M:Q]) sum_{w | p} -log d_w(u,v) equals c_p * log p.
using PlaceExponents = std::map<Int, Rat>;

// Throws std::invalid_argument if u and v collide (non-disjoint supports):
// identical points are detected exactly.
PlaceExponents pairing_nonarch(const HyperellipticCurve& curve, const AlgPoint& u, const AlgPoint& v);

// sum of c_p log p as a certified real
RealBall place_exponents_log(const PlaceExponents& pe, mpfr_prec_t prec);

// All (2 deg a) algebraic points of a semi-reduced Mumford divisor, as
// AlgPoints (one per root of each irreducible factor of a, with multiplicity
// handled by repetition).
std::vector<AlgPoint> algebraic_points(const HyperellipticCurve& curve, const MumfordDivisor& d,
                                       mpfr_prec_t prec);

// Pairing of two Mumford divisors over all finite places:
// (1/[L:Q]) sum_{w in M_L^0} log^+ (1 / prod_{i,j} d_w(p_i, q_j)), as exact
// place exponents. Throws on overlapping support.
PlaceExponents log_pairing_nonarch_places(const HyperellipticCurve& curve, const MumfordDivisor& d1,
                                          const MumfordDivisor& d2, mpfr_prec_t prec);
RealBall log_pairing_nonarch(const HyperellipticCurve& curve, const MumfordDivisor& d1,
                             const MumfordDivisor& d2, mpfr_prec_t prec);

}  // namespace hh
