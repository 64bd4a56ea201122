#pragma once

// Hyperelliptic curve model y^2 = f(x) in P(1,1,g+1), points in exact and
// ball realizations, Weierstrass points, and Mumford/Cantor divisor
// arithmetic on odd-degree models (test and pipeline support).

#include <optional>
#include <vector>

#include "hh/ball.hpp"
#include "hh/qpoly.hpp"

namespace hh {

struct HyperellipticCurve {
    int genus = 0;
    QPoly f;  // integer coefficients, degree 2g+1 or 2g+2, separable
    bool monic_odd = false;
    Int disc;
    std::vector<Int> bad_primes;  // primes dividing 2*disc(f), sorted

    int weierstrass_count() const { return 2 * genus + 2; }
};

// Validates and builds a curve; throws std::invalid_argument for singular
// models ("singular model") or genus < 2 ("genus < 2 unsupported").
HyperellipticCurve new_curve(const QPoly& f);
// Same validation but allows genus 1 (for elliptic sanity oracles only).
HyperellipticCurve new_curve_any_genus(const QPoly& f);

// Exact affine rational point (s = 1) or the point at infinity.
struct RatPoint {
    bool infinity = false;
    Rat x, y;
    static RatPoint at_infinity() { return {true, {}, {}}; }
    RatPoint involute() const { return infinity ? *this : RatPoint{false, x, -y}; }
    bool operator==(const RatPoint& o) const {
        return infinity == o.infinity && (infinity || (x == o.x && y == o.y));
    }
};

bool on_curve(const HyperellipticCurve& c, const RatPoint& p);

// Complex ball realization of a curve point (affine X, Y; infinity flagged).
struct CPoint {
    bool infinity = false;
    ComplexBall x, y;
    CPoint involute() const { return {infinity, x, -y}; }
};

// y^2 - f(x) contains 0 for a valid enclosure
bool on_curve(const HyperellipticCurve& c, const CPoint& p);

// Weierstrass points: the certified roots of f tagged with the irreducible
// factor they belong to, plus infinity for odd-degree models.
struct WeierstrassPoint {
    bool infinity = false;
    ComplexBall x;        // certified enclosure of the root (affine case)
    QPoly minpoly;        // monic irreducible factor of f over Q
    std::optional<Rat> exact_x;  // set when the root is rational
};

std::vector<WeierstrassPoint> weierstrass_points(const HyperellipticCurve& c, mpfr_prec_t prec);

// Mumford representation (a, b) with a monic, deg b < deg a, a | b^2 - f.
struct MumfordDivisor {
    QPoly a, b;
    int degree() const { return a.degree() < 0 ? 0 : a.degree(); }
    bool is_identity() const { return a.degree() == 0; }
    MumfordDivisor negate() const { return {a, -b}; }
    bool operator==(const MumfordDivisor& o) const { return a == o.a && b == o.b; }
};

MumfordDivisor mumford_identity();
// Validation: throws std::invalid_argument when (a,b) is not a valid pair on c.
void validate_mumford(const HyperellipticCurve& c, const MumfordDivisor& d);
// Semi-reduced validation (the divisibility plus no p + p^- pairs and
// Weierstrass multiplicity 1).
bool is_semi_reduced(const HyperellipticCurve& c, const MumfordDivisor& d, std::string* why = nullptr);

// Mumford divisor of a single affine rational point.
MumfordDivisor mumford_of_point(const RatPoint& p);

// Cantor composition + reduction on a monic odd model.
MumfordDivisor cantor_compose_reduce(const HyperellipticCurve& c, const MumfordDivisor& d1,
                                     const MumfordDivisor& d2);
MumfordDivisor cantor_multiple(const HyperellipticCurve& c, const MumfordDivisor& d, unsigned long n);

// The deg(a) complex points (X_i, b(X_i)) of a semi-reduced divisor. Repeated
// a-roots are returned with multiplicity (enclosures from the squarefree part).
std::vector<CPoint> divisor_points(const HyperellipticCurve& c, const MumfordDivisor& d, mpfr_prec_t prec);

}  // namespace hh
