#include <random>

#include "doctest.h"
#include "hh/nonarch.hpp"
#include "hh/pairing.hpp"
#include "hh/roots.hpp"

using namespace hh;

namespace {
const QPoly kF1 = QPoly::from_int_coeffs({1, 0, 0, 0, 0, 1});  // x^5 + 1
const QPoly kF2 = QPoly::from_int_coeffs({2, 1, 0, 0, 0, 1});  // x^5 + x + 2

// random rational points on c by scanning x = n/d with f(x) a square (slow
// but exact); falls back to Weierstrass/known points. Used only as sample
// geometry for metric axioms, so points merely need to lie on the curve.
std::vector<RatPoint> sample_points(const HyperellipticCurve& c, int want, unsigned seed) {
    std::vector<RatPoint> pts;
    pts.push_back(RatPoint::at_infinity());
    for (const Rat& r : rational_roots(c.f)) pts.push_back({false, r, Rat(0)});
    std::mt19937 rng(seed);
    std::uniform_int_distribution<long> num(-60, 60), den(1, 12);
    while ((int)pts.size() < want) {
        Rat x(num(rng), den(rng));
        x.canonicalize();
        Rat f = c.f.eval(x);
        if (f == 0) continue;
        // accept if f is a rational square
        Rat fn(f.get_num()), fd(f.get_den());
        if (fn < 0) continue;
        Int sn = sqrt(Int(fn.get_num()));
        Int sd = sqrt(Int(fd.get_den() == 1 ? fd.get_num() : fd.get_num()));
        (void)sd;
        Int sdn = sqrt(Int(f.get_den()));
        if (sn * sn == Int(f.get_num()) && sdn * sdn == Int(f.get_den())) {
            Rat y(sn, sdn);
            y.canonicalize();
            pts.push_back({false, x, y});
            pts.push_back({false, x, -y});
        }
    }
    return pts;
}

}  // namespace

TEST_CASE("metric worked examples") {
    HyperellipticCurve c = new_curve(kF1);
    RatPoint p{false, Rat(0), Rat(1)}, q{false, Rat(0), Rat(-1)};
    CHECK(metric_nonarch(c, Int(2), p, q) == Rat(1, 2));
    CHECK(metric_nonarch(c, Int(3), p, q) == Rat(1));
    // mixed charts: |x| < |s| against |x| > |s|
    RatPoint far{false, Rat(1, 5), Rat(0)};  // placeholder coordinates, chart test only
    RatPoint nearp{false, Rat(5), Rat(0)};
    CHECK(metric_nonarch(c, Int(5), far, nearp) == Rat(1));
}

TEST_CASE("metric axioms on random rational points") {
    for (const QPoly* f : {&kF1, &kF2}) {
        HyperellipticCurve c = new_curve(*f);
        auto pts = sample_points(c, 12, 1234);
        for (long p : {2L, 3L, 5L, 7L, 11L}) {
            auto rep = check_metric_axioms(c, Int(p), pts);
            INFO("prime ", p, " cx ", rep.counterexample);
            CHECK(rep.all_ok());
        }
    }
}

TEST_CASE("phi bound and B1/B2") {
    QMat m{{Rat(-2), Rat(2)}, {Rat(2), Rat(-2)}};
    CHECK(phi_bound_local(m, 2) == Rat(1));
    CHECK(phi_bound_local(QMat{{Rat(0)}}, 2) == Rat(0));

    std::vector<BadPlaceData> bad;
    CHECK(b1_bound(bad, 2, 96).contains_zero());
    BadPlaceData d{Int(5), Int(5), 3, m, {Int(1), Int(1)}};
    validate_bad_place(d);
    bad.push_back(d);
    RealBall log5 = RealBall::from_integer(Int(5), 96).log();
    CHECK(b1_bound(bad, 2, 96).overlaps(log5));
    // two identical bad places double it
    bad.push_back(d);
    CHECK(b1_bound(bad, 2, 96).overlaps(log5 * 2));

    // b2: one place, b=3, d=e=2, residue 5 -> 12 log 5
    std::vector<BadPlaceData> bad2{d};
    CHECK(b2_bound(bad2, 2, 2, 96).overlaps(log5 * 12));
    CHECK(b2_bound(bad2, 4, 2, 96).overlaps(log5 * 24));  // doubling d doubles
    std::vector<BadPlaceData> good{BadPlaceData::good_reduction(Int(7))};
    CHECK(b2_bound(good, 2, 2, 96).contains_zero());
}

TEST_CASE("log pairing on the sign example") {
    HyperellipticCurve c = new_curve(kF1);
    MumfordDivisor d1{QPoly({Rat(0), Rat(1)}), QPoly::constant(Rat(1))};
    MumfordDivisor d2{QPoly({Rat(0), Rat(1)}), QPoly::constant(Rat(-1))};
    auto places = log_pairing_nonarch_places(c, d1, d2, 128);
    REQUIRE(places.size() == 1);
    CHECK(places.begin()->first == 2);
    CHECK(places.begin()->second == 1);
    RealBall v = log_pairing_nonarch(c, d1, d2, 128);
    CHECK(v.overlaps(RealBall::from_integer(Int(2), 128).log()));
}

TEST_CASE("log pairing rejects overlapping support") {
    HyperellipticCurve c = new_curve(kF2);
    MumfordDivisor d{QPoly({Rat(-1), Rat(1)}), QPoly::constant(Rat(2))};
    CHECK_THROWS_AS(log_pairing_nonarch(c, d, d, 128), std::invalid_argument);
    // shared weierstrass point
    MumfordDivisor w{QPoly({Rat(1), Rat(1)}), QPoly()};
    CHECK_THROWS_AS(log_pairing_nonarch(c, w, w, 128), std::invalid_argument);
}

TEST_CASE("orbit pairing agrees with rational fast path") {
    HyperellipticCurve c = new_curve(kF2);
    // two rational points with interesting denominators
    // on x^5+x+2: x=1 -> y=2, x=2 -> y=6
    MumfordDivisor d1{QPoly({Rat(-1), Rat(1)}), QPoly::constant(Rat(2))};
    MumfordDivisor d2{QPoly({Rat(-2), Rat(1)}), QPoly::constant(Rat(6))};
    auto fast = log_pairing_nonarch_places(c, d1, d2, 128);
    // route the same pair through the generic orbit machinery by degree-2
    // products: pair (d1 + d1') vs d2 where d1' uses the involuted point;
    // check additivity of the fast path against composed answers instead.
    MumfordDivisor d1m{QPoly({Rat(-1), Rat(1)}), QPoly::constant(Rat(-2))};
    auto fast2 = log_pairing_nonarch_places(c, d1m, d2, 128);
    // (x-1)^2 with b interpolating +2 at both sheets is not semi-reduced;
    // instead verify pair-of-rational-points additivity on a quadratic from
    // Cantor arithmetic below.
    MumfordDivisor s = cantor_compose_reduce(c, d1, d1m);  // p + p^- ~ 0
    CHECK(s.is_identity());
    MumfordDivisor t = cantor_compose_reduce(c, d1, d2);   // degree 2, irreducible or split a
    if (t.degree() == 2) {
        // pairing of t against a weierstrass divisor w; compare orbit route
        // with the sum over the two points evaluated through AlgPoints
        MumfordDivisor w{QPoly({Rat(1), Rat(1)}), QPoly()};
        auto total = log_pairing_nonarch_places(c, t, w, 128);
        PlaceExponents byhand;
        for (const AlgPoint& u : algebraic_points(c, t, 160)) {
            AlgPoint wp{QPoly({Rat(1), Rat(1)}), QPoly(), 1,
                        ComplexBall::from_doubles(-1.0, 0.0, 160)};
            for (auto& [p, cc] : pairing_nonarch(c, u, wp)) byhand[p] += cc;
        }
        for (auto it = byhand.begin(); it != byhand.end();) {
            if (it->second == 0)
                it = byhand.erase(it);
            else
                ++it;
        }
        CHECK(total == byhand);
    }
    (void)fast;
    (void)fast2;
}

TEST_CASE("pairing values are nonnegative and finitely supported") {
    HyperellipticCurve c = new_curve(kF2);
    MumfordDivisor d1{QPoly({Rat(-1), Rat(1)}), QPoly::constant(Rat(2))};
    MumfordDivisor d2{QPoly({Rat(-2), Rat(1)}), QPoly::constant(Rat(6))};
    MumfordDivisor t = cantor_compose_reduce(c, d1, d2);
    MumfordDivisor u = cantor_compose_reduce(c, t, d1);
    for (auto& [dA, dB] : std::vector<std::pair<MumfordDivisor, MumfordDivisor>>{
             {d1, d2}, {t, d1.negate()}, {u, d2.negate()}, {t, u.negate()}}) {
        if (QPoly::gcd(dA.a, dB.a).degree() > 0) continue;
        auto places = log_pairing_nonarch_places(c, dA, dB, 128);
        for (auto& [p, cexp] : places) {
            CHECK(cexp >= 0);
            CHECK(p >= 2);
        }
    }
}
