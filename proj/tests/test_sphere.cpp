#include <cmath>
#include <random>

#include "doctest.h"
#include "hh/cover.hpp"
#include "hh/curve.hpp"
#include "hh/roots.hpp"
#include "hh/sphere.hpp"

using namespace hh;

TEST_CASE("chordal distance basics") {
    SpherePoint n{{Rat(0), Rat(0), Rat(1)}};
    SpherePoint s{{Rat(0), Rat(0), Rat(-1)}};
    SpherePoint e{{Rat(1), Rat(0), Rat(0)}};
    CHECK(chordal_distance_sq(n, s) == 4);  // antipodal -> distance 2
    CHECK(chordal_distance(n, s).contains(Rat(2)));
    CHECK(chordal_distance_sq(n, n) == 0);
    CHECK(chordal_distance_sq(n, e) == 2);  // pole to equator: sqrt 2
}

TEST_CASE("rational sphere points and stereographic round trip") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> d(-1, 1);
    for (int i = 0; i < 40; ++i) {
        SpherePoint p = rational_sphere_point(d(rng), d(rng), d(rng));
        CHECK(is_unit(p.v));
        SpherePoint q = sphere_of_stereo(stereo_of_sphere(p));
        CHECK(p == q);
    }
}

TEST_CASE("polygon in/out containment") {
    SpherePoint c = rational_sphere_point(0.3, -0.2, 0.93);
    ChordalDisc d{c, Rat(2, 5)};
    for (int n = 3; n <= 12; ++n) {
        SpherePolygon in = polygon_in(d, n);
        SpherePolygon out = polygon_out(d, n);
        in.validate();
        out.validate();
        // D_n inside the open disc: verify vertices (convexity gives the rest)
        for (const Vec3& r : in.rays) CHECK(d.contains_ray_open(r));
        // disc inside D^n (exact cap certificate)
        CHECK(polygon_contains_cap(out, d));
        // centre inside both
        CHECK(in.contains_ray_open(c.v));
        CHECK(out.contains_ray_open(c.v));
    }
    // boundary sampling: points of the boundary circle lie between D_n and D^n
    SpherePolygon in6 = polygon_in(d, 6), out6 = polygon_out(d, 6);
    for (int k = 0; k < 24; ++k) {
        double th = 2 * M_PI * k / 24;
        double h = d.height().get_d(), rho = std::sqrt(1 - h * h);
        // frame
        double cx = c.v[0].get_d(), cy = c.v[1].get_d(), cz = c.v[2].get_d();
        double e1x = -cy, e1y = cx, e1z = 0;
        double n1 = std::hypot(e1x, e1y);
        e1x /= n1;
        e1y /= n1;
        double e2x = cy * 0 - cz * e1y, e2y = cz * e1x - cx * 0, e2z = cx * e1y - cy * e1x;
        double bx = h * cx + rho * (std::cos(th) * e1x + std::sin(th) * e2x);
        double by = h * cy + rho * (std::cos(th) * e1y + std::sin(th) * e2y);
        double bz = h * cz + rho * (std::cos(th) * e1z + std::sin(th) * e2z);
        SpherePoint b = rational_sphere_point(bx, by, bz);
        CHECK(!in6.contains_ray_open(b.v));  // boundary-ish points stay outside D_n
        (void)out6;
    }
}

TEST_CASE("octant triangles cover the sphere, single does not") {
    // 8 octant triangles as polygons
    std::vector<SpherePolygon> octants;
    for (int sx : {1, -1})
        for (int sy : {1, -1})
            for (int sz : {1, -1}) {
                SpherePolygon t;
                t.rays = {{Rat(sx), Rat(0), Rat(0)}, {Rat(0), Rat(sy), Rat(0)}, {Rat(0), Rat(0), Rat(sz)}};
                // orient ccw
                Vec3 n = v3_cross(t.rays[0], t.rays[1]);
                if (v3_dot(n, t.rays[2]) < 0) std::swap(t.rays[0], t.rays[1]);
                octants.push_back(t);
            }
    // closed octants tile the sphere but the open interiors do not cover the
    // coordinate great circles: enlarge each slightly by pushing vertices out
    std::vector<SpherePolygon> big;
    for (auto& t : octants) {
        SpherePolygon u = t;
        Vec3 c = polygon_interior_ray(t);
        for (Vec3& r : u.rays) {
            r = v3_sub(v3_scale(r, Rat(10)), c);  // push vertices outward
        }
        big.push_back(u);
    }
    CHECK(polygons_cover_sphere(big, 10).status == CoverStatus::Covered);
    CHECK(nerve_h2_rank(big) == 1);
    CHECK(is_cover(big));

    std::vector<SpherePolygon> one{big[0]};
    auto res = polygons_cover_sphere(one, 6);
    CHECK(res.status == CoverStatus::NotCovered);
    CHECK(nerve_h2_rank(one) == 0);
    CHECK(!is_cover(one));

    // two polar caps' inscribed squares with r = 0.9 leave the equator bare
    SpherePoint np{{Rat(0), Rat(0), Rat(1)}}, sp{{Rat(0), Rat(0), Rat(-1)}};
    std::vector<SpherePolygon> caps{polygon_in({np, Rat(9, 10)}, 4), polygon_in({sp, Rat(9, 10)}, 4)};
    auto res2 = polygons_cover_sphere(caps, 8);
    CHECK(res2.status == CoverStatus::NotCovered);
    // witnessed point must be outside both discs
    for (const SpherePoint& c : {np, sp}) {
        ChordalDisc dd{c, Rat(9, 10)};
        CHECK(!dd.contains_ray_open(res2.witness));
    }
}

TEST_CASE("find uncovered point for two polar caps") {
    std::vector<Center> centers{Center::rational(SpherePoint{{Rat(0), Rat(0), Rat(1)}}),
                                Center::rational(SpherePoint{{Rat(0), Rat(0), Rat(-1)}})};
    Rat r(9, 10);
    SpherePoint p = find_uncovered_point(centers, r, 6);
    CHECK(is_unit(p.v));
    for (const auto& c : centers) CHECK(chordal_distance_sq(p, c.exact) > r * r);
}

TEST_CASE("build cover from scratch and certify") {
    SphereCover cov = build_cover(std::vector<SpherePoint>{}, Rat(99, 100));
    CHECK(cov.centers.size() >= 4);
    CHECK(cov.epsilon > 0);
    CHECK(is_cover(cov.inscribed(cov.polygon_order)));
    // property (c) exact: pairwise distance >= r + eps
    for (size_t i = 0; i < cov.centers.size(); ++i)
        for (size_t j = i + 1; j < cov.centers.size(); ++j) {
            Rat d2 = chordal_distance_sq(cov.centers[i].exact, cov.centers[j].exact);
            CHECK(d2 >= (cov.radius + cov.epsilon) * (cov.radius + cov.epsilon));
        }
}

TEST_CASE("cover serialization round trip") {
    SphereCover cov = build_cover(std::vector<SpherePoint>{}, Rat(99, 100));
    SphereCover back = cover_from_text(cover_to_text(cov));
    CHECK(back.centers.size() == cov.centers.size());
    CHECK(back.radius == cov.radius);
    CHECK(back.epsilon == cov.epsilon);
    for (size_t i = 0; i < cov.centers.size(); ++i) {
        REQUIRE(back.centers[i].is_exact);
        CHECK(back.centers[i].exact == cov.centers[i].exact);
    }
}

TEST_CASE("cover seeded with the branch points of x^5+1") {
    HyperellipticCurve c = new_curve(QPoly::from_int_coeffs({1, 0, 0, 0, 0, 1}));
    std::vector<Center> seeds;
    for (const auto& w : weierstrass_points(c, 192)) {
        if (w.infinity)
            seeds.push_back(Center::rational(SpherePoint{{Rat(0), Rat(0), Rat(1)}}));
        else
            seeds.push_back(Center::algebraic(w.minpoly, w.x));
    }
    REQUIRE(seeds.size() == 6);
    // admissible radius: below half the minimal pairwise separation
    RealBall minsep(256);
    bool first = true;
    for (size_t i = 0; i < seeds.size(); ++i)
        for (size_t j = i + 1; j < seeds.size(); ++j) {
            RealBall d = center_distance(seeds[i], seeds[j], 256);
            minsep = first ? d : RealBall::min(minsep, d);
            first = false;
        }
    double admissible = minsep.lower_d() * 0.45;
    Rat r((long)(admissible * 1024), 1024);
    r.canonicalize();
    SphereCover cov = build_cover(seeds, r);
    CHECK(cov.centers.size() >= 6);
    CHECK(cov.epsilon > 0);
    // property (a): the seeds are among the centers (they are the first six)
    for (size_t i = 0; i < 6; ++i) CHECK(cov.centers[i].is_exact == seeds[i].is_exact);
    CHECK(is_cover(cov.inscribed(cov.polygon_order)));
}
