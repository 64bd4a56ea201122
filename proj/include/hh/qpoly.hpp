#pragma once

// Dense univariate polynomials over Q (gmp rationals), plus the handful of
// exact-arithmetic utilities the rest of the library leans on: resultants,
// discriminants, Lagrange interpolation, reversals, and ball evaluation.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "hh/ball.hpp"

namespace hh {

using Int = mpz_class;
using Rat = mpq_class;

class QPoly {
  public:
    QPoly() = default;
    explicit QPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
    static QPoly constant(const Rat& a) { return QPoly({a}); }
    static QPoly x() { return QPoly({Rat(0), Rat(1)}); }
    static QPoly monomial(const Rat& a, size_t k);
    static QPoly from_int_coeffs(const std::vector<long>& v);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return (int)c_.size() - 1; }  // -1 for the zero polynomial
    const Rat& operator[](size_t i) const { return c_[i]; }
    const std::vector<Rat>& coeffs() const { return c_; }
    Rat coeff(size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }
    const Rat& leading() const { return c_.back(); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    QPoly operator-() const;
    QPoly operator+(const QPoly& o) const;
    QPoly operator-(const QPoly& o) const;
    QPoly operator*(const QPoly& o) const;
    QPoly operator*(const Rat& s) const;
    bool operator==(const QPoly& o) const { return c_ == o.c_; }

    // Euclidean division (divisor nonzero): returns {quotient, remainder}.
    std::pair<QPoly, QPoly> divrem(const QPoly& d) const;
    bool divides(const QPoly& other) const;  // this | other exactly

    QPoly derivative() const;
    QPoly monic() const;
    static QPoly gcd(QPoly a, QPoly b);  // monic gcd
    // monic g = gcd(a,b) together with u, v with u*a + v*b = g
    static QPoly xgcd(const QPoly& a, const QPoly& b, QPoly& u, QPoly& v);
    QPoly squarefree_part() const;

    Rat eval(const Rat& x) const;
    RealBall eval(const RealBall& x) const;
    ComplexBall eval(const ComplexBall& x) const;

    QPoly compose_linear(const Rat& a, const Rat& b) const;  // p(a*X + b)
    QPoly reversal(int at_degree = -1) const;                // X^n p(1/X), n = at_degree or deg
    QPoly shift_x(const Rat& b) const { return compose_linear(1, b); }

    static Rat resultant(const QPoly& a, const QPoly& b);
    Rat discriminant() const;

    // Smallest positive integer D with D*p having integer coefficients.
    Int denominator_lcm() const;
    // Content of an integer-coefficient polynomial view: p = (sign*content/denom) * primitive
    QPoly primitive_integer(Int* content_num = nullptr, Int* content_den = nullptr) const;

    std::string str(const std::string& var = "X") const;

  private:
    void trim();
    std::vector<Rat> c_;  // c_[i] is the coefficient of X^i; invariant: c_.back() != 0
};

// Lagrange interpolation through distinct rational nodes.
QPoly lagrange_interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys);

// --- small exact number theory helpers ---

// v_p of a nonzero rational (negative for denominators).
long valuation(const Rat& x, const Int& p);
long valuation(const Int& x, const Int& p);

bool is_probable_prime(const Int& n);
// Full factorization (trial division + Pollard rho); returns (prime, exponent) sorted.
std::vector<std::pair<Int, int>> factorize(Int n);

// Rational roots of a rational polynomial.
std::vector<Rat> rational_roots(const QPoly& p);

// Newton polygon slope structure of p at the prime q: returns the list of
// (slope numerator, slope denominator, multiplicity) of root valuations; root
// valuation = -slope of the polygon edge. Only needs p nonzero.
struct NPSlope {
    long num;
    long den;  // > 0
    int multiplicity;
};
std::vector<NPSlope> newton_polygon(const QPoly& p, const Int& prime);

}  // namespace hh
