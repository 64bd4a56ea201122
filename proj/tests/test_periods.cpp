#include <cmath>

#include "doctest.h"
#include "hh/periods.hpp"
#include "hh/roots.hpp"

using namespace hh;

namespace {
const QPoly kF1 = QPoly::from_int_coeffs({1, 0, 0, 0, 0, 1});  // x^5 + 1
const QPoly kF2 = QPoly::from_int_coeffs({2, 1, 0, 0, 0, 1});  // x^5 + x + 2
}  // namespace

TEST_CASE("y continuation around a branch point flips the sheet") {
    HyperellipticCurve c = new_curve(kF2);
    mpfr_prec_t p = 192;
    // walk a square loop around the branch point x = -1 only
    std::vector<std::pair<double, double>> loop{{-0.4, -0.6}, {-1.6, -0.6}, {-1.6, 0.6}, {-0.4, 0.6}};
    ComplexBall x0 = ComplexBall::from_doubles(loop[0].first, loop[0].second, p);
    ComplexBall y0 = c.f.eval(x0).sqrt_principal();
    ComplexBall x = x0, y = y0;
    for (size_t i = 1; i <= loop.size(); ++i) {
        ComplexBall xn = ComplexBall::from_doubles(loop[i % loop.size()].first,
                                                   loop[i % loop.size()].second, p);
        y = continue_y(c, x, y, xn, p);
        x = xn;
    }
    // odd number of branch points inside: the lift must land on the other sheet
    CHECK((y + y0).abs_sq().contains_zero());
    CHECK((y - y0).abs_sq().is_positive());
}

TEST_CASE("genus-1 sanity: tau of y^2 = x^3 - x reduces to i and AGM period matches") {
    HyperellipticCurve e = new_curve_any_genus(QPoly::from_int_coeffs({0, -1, 0, 1}));
    PeriodData pd = period_matrix(e, 192);
    REQUIRE(pd.genus() == 1);
    // SL2(Z)-reduce tau
    ComplexBall tau = pd.tau[0][0];
    for (int it = 0; it < 64; ++it) {
        double re = tau.re().mid_d();
        if (std::fabs(re) > 0.5 + 1e-12) {
            long k = (long)std::llround(re);
            tau = tau - ComplexBall::exact(k, 0, 192);
            continue;
        }
        if (tau.abs_sq().upper_d() < 1 - 1e-12) {
            tau = -(tau.recip());
            continue;
        }
        break;
    }
    CHECK(tau.re().contains_zero());
    CHECK((tau.im() - RealBall::exact(1L, 192)).contains_zero());

    // real half-period: 2 * int_0^1 dx/sqrt(x - x^3) = 2 pi / agm(sqrt 2, 1)
    // (the cycle around the branch pair [0, 1]); find the matching lattice
    // vector among the edge periods.
    mpfr_t agm, sq2, pi_m;
    mpfr_init2(agm, 192);
    mpfr_init2(sq2, 192);
    mpfr_init2(pi_m, 192);
    mpfr_sqrt_ui(sq2, 2, MPFR_RNDN);
    mpfr_t one;
    mpfr_init2(one, 192);
    mpfr_set_ui(one, 1, MPFR_RNDN);
    mpfr_agm(agm, sq2, one, MPFR_RNDN);
    mpfr_const_pi(pi_m, MPFR_RNDN);
    mpfr_div(agm, pi_m, agm, MPFR_RNDN);  // pi / agm(sqrt2, 1) = int_0^1
    double target = 2 * mpfr_get_d(agm, MPFR_RNDN);
    bool found = false;
    for (const EdgeCycle& ec : pd.edges) {
        double pr = std::fabs(ec.periods[0].re().mid_d());
        double pi2 = std::fabs(ec.periods[0].im().mid_d());
        if (pi2 < 1e-20 && std::fabs(pr - target) < 1e-30) found = true;
        if (pi2 < 1e-20 && std::fabs(pr - target) < 1e-10) found = true;
    }
    CHECK(found);
    mpfr_clear(agm);
    mpfr_clear(sq2);
    mpfr_clear(pi_m);
    mpfr_clear(one);
}

TEST_CASE("period data for x^5+1: certified tau in Siegel space") {
    HyperellipticCurve c = new_curve(kF1);
    PeriodData pd = period_matrix(c, 192);
    CHECK(pd.c2.is_positive());
    // tau symmetric within enclosures
    CHECK((pd.tau[0][1] - pd.tau[1][0]).contains_zero());
    // intersection matrix unimodular skew
    CHECK(zmat_det(pd.intersections) == 1);
}

TEST_CASE("abel-jacobi: base point, involution antisymmetry, 2-torsion") {
    HyperellipticCurve c = new_curve(kF1);
    PeriodData pd = period_matrix(c, 192);
    int g = pd.genus();

    CPoint inf;
    inf.infinity = true;
    CVec a0 = abel_jacobi(pd, inf);
    for (int i = 0; i < g; ++i) CHECK(a0[i].contains_zero());

    // alpha(p) + alpha(p^-) = 0 mod lattice for a few points
    for (double xr : {0.3, -0.4, 1.7}) {
        CPoint p;
        p.x = ComplexBall::from_doubles(xr, 0.35, 192);
        p.y = c.f.eval(p.x).sqrt_principal();
        CVec ap = abel_jacobi(pd, p);
        CVec am = abel_jacobi(pd, p.involute());
        CVec sum(g, ComplexBall(192));
        for (int i = 0; i < g; ++i) sum[i] = ap[i] + am[i];
        reduce_mod_lattice(pd, sum);
        for (int i = 0; i < g; ++i) {
            INFO("x = ", xr, " i = ", i, " sum = ", sum[i].str());
            CHECK(sum[i].contains_zero());
        }
    }

    // 2 alpha(w) = 0 mod lattice for each finite Weierstrass point
    for (const ComplexBall& b : pd.branch) {
        CPoint w;
        w.x = b;
        w.y = ComplexBall(192);
        CVec aw = abel_jacobi(pd, w);
        CVec dbl(g, ComplexBall(192));
        for (int i = 0; i < g; ++i) dbl[i] = aw[i] + aw[i];
        reduce_mod_lattice(pd, dbl);
        for (int i = 0; i < g; ++i) {
            INFO("branch ", b.str(), " i=", i, " dbl=", dbl[i].str());
            CHECK(dbl[i].contains_zero());
        }
    }
}

TEST_CASE("abel-jacobi enclosure soundness under precision doubling") {
    HyperellipticCurve c = new_curve(kF2);
    PeriodData lo = period_matrix(c, 160);
    PeriodData hi = period_matrix(c, 320);
    CPoint p;
    p.x = ComplexBall::from_doubles(1.0, 0.0, 320);
    p.y = ComplexBall::from_doubles(2.0, 0.0, 320);
    CHECK(on_curve(c, p));
    CVec alo = abel_jacobi_raw(lo, p);
    CVec ahi = abel_jacobi_raw(hi, p);
    for (int i = 0; i < 2; ++i) CHECK(alo[i].overlaps(ahi[i]));
    // tau overlaps too
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(lo.tau[i][j].overlaps(hi.tau[i][j]));
}
