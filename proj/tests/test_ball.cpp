#include <cmath>

#include "doctest.h"
#include "hh/ball.hpp"
#include "hh/qpoly.hpp"

using namespace hh;

TEST_CASE("real ball basic arithmetic encloses exact values") {
    RealBall a = RealBall::from_rational(Rat(1, 3), 128);
    RealBall b = RealBall::from_rational(Rat(1, 7), 128);
    RealBall s = a + b;
    CHECK(s.contains(Rat(10, 21)));
    RealBall p = a * b;
    CHECK(p.contains(Rat(1, 21)));
    RealBall q = a / b;
    CHECK(q.contains(Rat(7, 3)));
    CHECK((a - a).contains_zero());
}

TEST_CASE("enclosures nest under precision doubling") {
    for (long n : {3L, 7L, 113L}) {
        RealBall lo = RealBall::from_rational(Rat(1, n), 64).log();
        RealBall hi = RealBall::from_rational(Rat(1, n), 256).log();
        CHECK(lo.overlaps(hi));
        CHECK(lo.rad_d() >= hi.rad_d());
    }
}

TEST_CASE("sqrt log exp round-trips stay sound") {
    RealBall x = RealBall::from_rational(Rat(17, 5), 128);
    RealBall y = x.log().exp();
    CHECK(y.contains(Rat(17, 5)));
    RealBall z = (x * x).sqrt();
    CHECK(z.contains(Rat(17, 5)));
}

TEST_CASE("pi and trig") {
    RealBall pi = RealBall::pi(128);
    CHECK(pi.sin().contains_zero());
    RealBall c = pi.cos();
    CHECK(c.contains(Rat(-1)));
}

TEST_CASE("comparisons") {
    RealBall a = RealBall::from_rational(Rat(1, 3), 96);
    RealBall b = RealBall::from_rational(Rat(1, 2), 96);
    CHECK(a.certainly_lt(b));
    CHECK(!b.certainly_lt(a));
    CHECK(b.is_positive());
    CHECK((-b).is_negative());
}

TEST_CASE("complex ball mult and abs") {
    ComplexBall i = ComplexBall::exact(0, 1, 128);
    ComplexBall z = i * i;
    CHECK(z.re().contains(Rat(-1)));
    CHECK(z.im().contains_zero());
    ComplexBall w = ComplexBall::exact(3, 4, 128);
    CHECK(w.abs().contains(Rat(5)));
    ComplexBall r = w.recip() * w;
    CHECK(r.re().contains(Rat(1)));
    CHECK(r.im().contains_zero());
}

TEST_CASE("complex sqrt picks the requested branch") {
    ComplexBall z = ComplexBall::exact(0, 2, 128);
    ComplexBall s = z.sqrt_principal();
    CHECK((s * s).re().contains_zero());
    CHECK((s * s).im().contains(Rat(2)));
    CHECK(s.re().is_positive());
    ComplexBall approx = ComplexBall::from_doubles(-1.0, -1.0, 128);
    ComplexBall s2 = z.sqrt_near(approx);
    CHECK(s2.re().is_negative());
}

TEST_CASE("matrix inverse on balls") {
    mpfr_prec_t p = 128;
    CMat m{{ComplexBall::exact(2, 0, p), ComplexBall::exact(1, 0, p)},
           {ComplexBall::exact(1, 0, p), ComplexBall::exact(1, 0, p)}};
    CMat inv = cmat_inverse(m);
    CMat prod = cmat_mul(m, inv);
    CHECK(prod[0][0].re().contains(Rat(1)));
    CHECK(prod[0][1].re().contains_zero());
    CHECK(prod[1][0].im().contains_zero());
}

TEST_CASE("symmetric min eigenvalue lower bound") {
    mpfr_prec_t p = 128;
    RMat m{{RealBall::exact(2L, p), RealBall::exact(1L, p)},
           {RealBall::exact(1L, p), RealBall::exact(2L, p)}};
    RealBall lo = sym_min_eigenvalue_lower(m);
    // true min eigenvalue is 1
    CHECK(lo.mid_d() < 1.0 + 1e-9);
    CHECK(lo.mid_d() > 0.9);
    CHECK(lo.is_positive());
}
