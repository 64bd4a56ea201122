#include <random>

#include "doctest.h"
#include "hh/arith.hpp"

using namespace hh;

TEST_CASE("absolute values at places") {
    CHECK(abs_at_place(Rat(3, 2), Place::finite(2)) == Rat(2));
    CHECK(abs_at_place(Rat(1), Place::finite(17)) == Rat(1));
    CHECK(abs_at_place(Rat(1), Place::archimedean()) == Rat(1));
    CHECK(abs_at_place(Rat(3, 2), Place::archimedean()) == Rat(3, 2));
    CHECK(abs_at_place(Rat(0), Place::finite(5)) == Rat(0));
}

TEST_CASE("product formula holds exactly on random rationals") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> d(-2000, 2000);
    int tested = 0;
    while (tested < 1000) {
        long n = d(rng), den = d(rng);
        if (n == 0 || den == 0) continue;
        Rat x(n, den);
        x.canonicalize();
        Rat prod = abs_at_place(x, Place::archimedean());
        Int nm = abs(Int(x.get_num()) * Int(x.get_den()));
        for (auto& [p, e] : factorize(nm)) {
            (void)e;
            prod *= abs_at_place(x, Place::finite(p));
        }
        CHECK(prod == 1);
        ++tested;
    }
}

TEST_CASE("height of rationals") {
    CHECK(height_rational(Rat(0)).contains_zero());
    CHECK(height_rational(Rat(3, 2)).contains(Rat(0)) == false);
    RealBall h = height_rational(Rat(3, 2));
    RealBall log3 = RealBall::from_integer(Int(3), 96).log();
    CHECK(h.overlaps(log3));
    CHECK(height_rational(Rat(7)).overlaps(RealBall::from_integer(Int(7), 96).log()));
    // h(x) = h(1/x)
    std::mt19937 rng(11);
    std::uniform_int_distribution<long> d(1, 500);
    for (int i = 0; i < 50; ++i) {
        Rat x(d(rng), d(rng));
        x.canonicalize();
        CHECK(height_rational(x).overlaps(height_rational(1 / x)));
    }
}

TEST_CASE("height of polynomials") {
    CHECK(height_polynomial(QPoly::from_int_coeffs({-1, 1})).contains_zero());
    // (X-2)(X-1/3) = X^2 - 7/3 X + 2/3 -> primitive (3,-7,2) -> log 7
    QPoly p({Rat(2, 3), Rat(-7, 3), Rat(1)});
    CHECK(height_polynomial(p).overlaps(RealBall::from_integer(Int(7), 96).log()));
    QPoly q({Rat(-3, 2), Rat(1)});
    CHECK(height_polynomial(q).overlaps(RealBall::from_integer(Int(3), 96).log()));
    CHECK_THROWS_AS(height_polynomial(QPoly()), std::invalid_argument);
    // scaling invariance
    std::mt19937 rng(13);
    std::uniform_int_distribution<long> d(-40, 40);
    for (int i = 0; i < 50; ++i) {
        long cn = d(rng), cd = d(rng);
        if (cn == 0 || cd == 0) continue;
        Rat c(cn, cd);
        c.canonicalize();
        QPoly scaled = p * c;
        CHECK(height_polynomial(scaled).overlaps(height_polynomial(p)));
    }
}

TEST_CASE("height sum upper bound") {
    mpfr_prec_t pr = 96;
    RealBall zero(pr);
    RealBall log2 = RealBall::exact(2L, pr).log();
    CHECK(height_sum_upper(zero, zero, Rat(1)).overlaps(log2));
    RealBall log3 = RealBall::exact(3L, pr).log();
    RealBall log6 = RealBall::exact(6L, pr).log();
    CHECK(height_sum_upper(log3, zero, Rat(1)).overlaps(log6));
    RealBall log5 = RealBall::exact(5L, pr).log();
    RealBall expect = RealBall::exact(15L, pr).log() + log2 / 2;
    CHECK(height_sum_upper(log3, log5, Rat(1, 2)).overlaps(expect));

    // h(x+y) <= h(x) + h(y) + log 2 on random pairs
    std::mt19937 rng(17);
    std::uniform_int_distribution<long> d(-300, 300);
    int tested = 0;
    while (tested < 1000) {
        long a = d(rng), b = d(rng), c = d(rng), e = d(rng);
        if (b == 0 || e == 0) continue;
        Rat x(a, b), y(c, e);
        x.canonicalize();
        y.canonicalize();
        RealBall lhs = height_rational(x + y);
        RealBall rhs = height_rational(x) + height_rational(y) + log2;
        CHECK(lhs.lower_d() <= rhs.upper_d() + 1e-12);
        ++tested;
    }
}

TEST_CASE("mahler measure heights of algebraic numbers") {
    // h(sqrt 2) = log(2)/2 via X^2 - 2
    QPoly m = QPoly::from_int_coeffs({-2, 0, 1});
    RealBall lm = log_mahler_measure(m, 128);
    RealBall log2 = RealBall::exact(2L, 128).log();
    CHECK(lm.overlaps(log2));  // sum over both conjugates = 2 * (1/2) log 2
    ComplexBall approx = ComplexBall::from_doubles(1.41421356, 0, 128);
    RealBall h = height_algebraic(m, approx, 128);
    CHECK(h.overlaps(log2 / 2));
}
