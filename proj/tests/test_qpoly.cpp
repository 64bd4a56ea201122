#include "doctest.h"
#include "hh/qpoly.hpp"
#include "hh/roots.hpp"

using namespace hh;

TEST_CASE("polynomial ring basics") {
    QPoly f = QPoly::from_int_coeffs({1, 0, 0, 0, 0, 1});  // x^5 + 1
    QPoly g = QPoly::from_int_coeffs({-1, 1});             // x - 1
    CHECK(f.degree() == 5);
    CHECK((f * g).degree() == 6);
    auto [q, r] = f.divrem(g);
    CHECK(q.degree() == 4);
    CHECK(r.degree() == 0);
    CHECK(r.coeff(0) == 2);  // f(1) = 2
}

TEST_CASE("gcd and xgcd") {
    QPoly a = QPoly::from_int_coeffs({-1, 0, 1});  // x^2-1
    QPoly b = QPoly::from_int_coeffs({-1, 1});     // x-1
    CHECK(QPoly::gcd(a, b) == b.monic());
    QPoly u, v;
    QPoly g = QPoly::xgcd(a, b, u, v);
    CHECK(g == b.monic());
    CHECK(u * a + v * b == g);
}

TEST_CASE("resultant and discriminant") {
    QPoly f = QPoly::from_int_coeffs({1, 0, 0, 0, 0, 1});  // x^5+1
    // disc(x^5 + 1) = 5^5 (for x^n + a: n^n a^{n-1} up to sign)
    CHECK(f.discriminant() == 3125);
    QPoly g = QPoly::from_int_coeffs({2, 1});
    QPoly h = QPoly::from_int_coeffs({-3, 1});
    // resultant of (x+2)(x-3) pair: evaluate one at the other's root
    CHECK(QPoly::resultant(g, h) == -5);
}

TEST_CASE("interpolation round trip") {
    std::vector<Rat> xs{Rat(0), Rat(1), Rat(2), Rat(3)};
    QPoly p = QPoly({Rat(1, 2), Rat(-3), Rat(0), Rat(2)});
    std::vector<Rat> ys;
    for (auto& x : xs) ys.push_back(p.eval(x));
    CHECK(lagrange_interpolate(xs, ys) == p);
}

TEST_CASE("valuations and newton polygon") {
    CHECK(valuation(Rat(3, 2), Int(2)) == -1);
    CHECK(valuation(Rat(12), Int(2)) == 2);
    QPoly p = QPoly({Rat(1, 5), Rat(1), Rat(5)});  // 5x^2 + x + 1/5
    auto np = newton_polygon(p, Int(5));
    // vertices (0,-1),(1,0),(2,1): single line of slope 1, two roots of valuation -1
    REQUIRE(np.size() == 1);
    CHECK(np[0].num * 1 == np[0].den);  // slope 1
    CHECK(np[0].multiplicity == 2);
}

TEST_CASE("rational roots") {
    QPoly p = QPoly({Rat(-1, 2), Rat(1)}) * QPoly({Rat(3), Rat(1)}) * QPoly::from_int_coeffs({1, 0, 1});
    auto roots = rational_roots(p);
    CHECK(roots.size() == 2);
    bool has_half = false, has_m3 = false;
    for (auto& r : roots) {
        if (r == Rat(1, 2)) has_half = true;
        if (r == Rat(-3)) has_m3 = true;
    }
    CHECK(has_half);
    CHECK(has_m3);
}

TEST_CASE("certified roots of x^5+1") {
    QPoly f = QPoly::from_int_coeffs({1, 0, 0, 0, 0, 1});
    CVec roots = certified_roots(f, 128);
    REQUIRE(roots.size() == 5);
    for (const auto& r : roots) {
        CHECK(f.eval(r).contains_zero());
        CHECK((r.abs() - RealBall::exact(1L, 128)).contains_zero());
    }
    // exactly one real root, -1
    int reals = 0;
    for (const auto& r : roots)
        if (r.im().contains_zero()) {
            ++reals;
            CHECK(r.re().contains(Rat(-1)));
        }
    CHECK(reals == 1);
}

TEST_CASE("factor over Q") {
    QPoly f = QPoly::from_int_coeffs({2, 1, 1}) * QPoly::from_int_coeffs({-1, 1}) *
              QPoly::from_int_coeffs({-1, 1});
    auto fac = factor_over_q(f);
    int total = 0;
    for (auto& [p, e] : fac) {
        CHECK(is_irreducible_over_q(p));
        total += p.degree() * e;
    }
    CHECK(total == f.degree());
    // x^4 - x^3 + x^2 - x + 2 appears in x^5 + x + 2
    QPoly c = QPoly::from_int_coeffs({2, 1, 0, 0, 0, 1});
    auto fc = factor_over_q(c);
    REQUIRE(fc.size() == 2);
    CHECK(fc[0].first.degree() + fc[1].first.degree() == 5);
}

TEST_CASE("integer factorization") {
    auto f = factorize(Int(2 * 2 * 3 * 5 * 5 * 5 * 97));
    REQUIRE(f.size() == 4);
    CHECK(f[0] == std::make_pair(Int(2), 2));
    CHECK(f[2] == std::make_pair(Int(5), 3));
}
