#include <random>

#include "doctest.h"
#include "hh/curve.hpp"

using namespace hh;

namespace {
const QPoly kF1 = QPoly::from_int_coeffs({1, 0, 0, 0, 0, 1});  // x^5 + 1
const QPoly kF2 = QPoly::from_int_coeffs({2, 1, 0, 0, 0, 1});  // x^5 + x + 2
}  // namespace

TEST_CASE("curve construction and bad primes") {
    HyperellipticCurve c = new_curve(kF1);
    CHECK(c.genus == 2);
    CHECK(c.monic_odd);
    REQUIRE(c.bad_primes.size() == 2);
    CHECK(c.bad_primes[0] == 2);
    CHECK(c.bad_primes[1] == 5);

    CHECK_THROWS_WITH_AS(new_curve(QPoly::from_int_coeffs({0, 0, 0, 0, 1})), "singular model",
                         std::invalid_argument);
    CHECK_THROWS_AS(new_curve(QPoly::from_int_coeffs({1, 1, 1})), std::invalid_argument);

    HyperellipticCurve c2 = new_curve(kF2);
    CHECK(on_curve(c2, RatPoint{false, Rat(1), Rat(2)}));
    CHECK(on_curve(c2, RatPoint{false, Rat(2), Rat(6)}));
}

TEST_CASE("involution fixes exactly the weierstrass points") {
    HyperellipticCurve c = new_curve(kF1);
    RatPoint p{false, Rat(0), Rat(1)};
    CHECK(p.involute() == RatPoint{false, Rat(0), Rat(-1)});
    RatPoint w{false, Rat(-1), Rat(0)};
    CHECK(w.involute() == w);
    CHECK(p.involute().involute() == p);
}

TEST_CASE("weierstrass points") {
    HyperellipticCurve c = new_curve(kF1);
    auto ws = weierstrass_points(c, 128);
    CHECK((int)ws.size() == c.weierstrass_count());
    int at_inf = 0;
    for (auto& w : ws) {
        if (w.infinity) {
            ++at_inf;
            continue;
        }
        CHECK(c.f.eval(w.x).contains_zero());
    }
    CHECK(at_inf == 1);

    HyperellipticCurve c2 = new_curve(kF2);
    auto ws2 = weierstrass_points(c2, 128);
    bool has_minus1 = false;
    for (auto& w : ws2)
        if (!w.infinity && w.exact_x && *w.exact_x == Rat(-1)) has_minus1 = true;
    CHECK(has_minus1);
    // pairwise disjoint enclosures
    for (size_t i = 0; i < ws2.size(); ++i)
        for (size_t j = i + 1; j < ws2.size(); ++j) {
            if (ws2[i].infinity || ws2[j].infinity) continue;
            CHECK(!ws2[i].x.overlaps(ws2[j].x));
        }
}

TEST_CASE("mumford validation") {
    HyperellipticCurve c = new_curve(kF2);
    MumfordDivisor d{QPoly({Rat(-1), Rat(1)}), QPoly::constant(Rat(2))};
    CHECK_NOTHROW(validate_mumford(c, d));
    MumfordDivisor bad{QPoly({Rat(-1), Rat(1)}), QPoly::constant(Rat(3))};
    CHECK_THROWS_AS(validate_mumford(c, bad), std::invalid_argument);
}

TEST_CASE("cantor group law basics") {
    HyperellipticCurve c = new_curve(kF2);
    MumfordDivisor p = mumford_of_point({false, Rat(1), Rat(2)});
    MumfordDivisor q = mumford_of_point({false, Rat(2), Rat(6)});
    MumfordDivisor id = mumford_identity();

    CHECK(cantor_compose_reduce(c, p, id) == p);
    CHECK(cantor_compose_reduce(c, id, q) == q);
    CHECK(cantor_compose_reduce(c, p, p.negate()) == id);

    // commutativity
    CHECK(cantor_compose_reduce(c, p, q) == cantor_compose_reduce(c, q, p));

    // associativity over random combinations of multiples
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> d(1, 12);
    for (int t = 0; t < 100; ++t) {
        MumfordDivisor a = cantor_multiple(c, p, d(rng));
        MumfordDivisor b = cantor_compose_reduce(c, cantor_multiple(c, q, d(rng)), p.negate());
        MumfordDivisor e = cantor_multiple(c, q, d(rng)).negate();
        MumfordDivisor lhs = cantor_compose_reduce(c, cantor_compose_reduce(c, a, b), e);
        MumfordDivisor rhs = cantor_compose_reduce(c, a, cantor_compose_reduce(c, b, e));
        CHECK(lhs == rhs);
    }

    // valid Mumford output along the way
    MumfordDivisor s = cantor_compose_reduce(c, p, q);
    CHECK_NOTHROW(validate_mumford(c, s));
    CHECK(s.degree() <= c.genus);

    // 2-torsion supported on a Weierstrass point
    MumfordDivisor w{QPoly({Rat(1), Rat(1)}), QPoly()};  // (x+1, 0)
    CHECK_NOTHROW(validate_mumford(c, w));
    CHECK(cantor_compose_reduce(c, w, w) == id);
}

TEST_CASE("divisor points") {
    HyperellipticCurve c2 = new_curve(kF2);
    MumfordDivisor d{QPoly({Rat(-1), Rat(1)}), QPoly::constant(Rat(2))};
    auto pts = divisor_points(c2, d, 128);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].x.re().contains(Rat(1)));
    CHECK(pts[0].y.re().contains(Rat(2)));

    HyperellipticCurve c1 = new_curve(kF1);
    MumfordDivisor e{QPoly({Rat(0), Rat(1)}), QPoly::constant(Rat(1))};
    auto pts1 = divisor_points(c1, e, 128);
    REQUIRE(pts1.size() == 1);
    CHECK(pts1[0].x.re().contains(Rat(0)));
    CHECK(pts1[0].y.re().contains(Rat(1)));

    // count equals deg a
    MumfordDivisor s = cantor_compose_reduce(c2, mumford_of_point({false, Rat(1), Rat(2)}),
                                             mumford_of_point({false, Rat(2), Rat(6)}));
    CHECK((int)divisor_points(c2, s, 128).size() == s.degree());
}

TEST_CASE("semi-reduced checks") {
    HyperellipticCurve c = new_curve(kF2);
    MumfordDivisor good{QPoly({Rat(-1), Rat(1)}), QPoly::constant(Rat(2))};
    CHECK(is_semi_reduced(c, good));
    // (x+1)^2 has a Weierstrass double root
    QPoly a = QPoly({Rat(1), Rat(1)}) * QPoly({Rat(1), Rat(1)});
    MumfordDivisor bad{a, QPoly()};
    std::string why;
    CHECK(!is_semi_reduced(c, bad, &why));
}
