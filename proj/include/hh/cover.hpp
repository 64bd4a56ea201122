#pragma once

// The sphere-cover algorithm: starting from mandatory seed points (exact
// rational points or algebraic points given by the minimal polynomial of
// their stereographic x-coordinate), grow a finite set S until the inscribed
// polygons of the radius-r discs around S cover the sphere. Added points are
// always rational; predicates touching algebraic centers run in ball
// arithmetic with precision escalation, everything else is exact.

#include <array>
#include <vector>

#include "hh/sphere.hpp"

namespace hh {

struct Center {
    bool is_exact = true;
    SpherePoint exact;   // valid when is_exact
    QPoly minpoly;       // else: x-coordinate minimal polynomial over Q
    ComplexBall xroot;   // selected root (certified enclosure)

    static Center rational(SpherePoint p) { return {true, std::move(p), {}, {}}; }
    static Center algebraic(QPoly minpoly, ComplexBall root);
    // sphere coordinates as certified balls at the requested precision
    std::array<RealBall, 3> ball(mpfr_prec_t prec) const;
};

// ball of the dot product center . (rational ray)
RealBall center_dot_ray(const Center& c, const Vec3& ray, mpfr_prec_t prec);
// certified: ray/|ray| strictly outside the closed disc around c of radius r
bool ray_outside_closed_disc(const Center& c, const Rat& r, const Vec3& ray);
// certified: point strictly inside the open disc
bool point_inside_open_disc(const Center& c, const Rat& r, const SpherePoint& p);
// certified chordal distance between two centers
RealBall center_distance(const Center& a, const Center& b, mpfr_prec_t prec);

// inscribed / circumscribed rational polygons for a disc with a (possibly
// algebraic) center; certified by exact or ball-strict tests
SpherePolygon polygon_in_center(const Center& c, const Rat& r, int n);
SpherePolygon polygon_out_center(const Center& c, const Rat& r, int n);

struct SphereCover {
    std::vector<Center> centers;
    Rat radius;
    Rat epsilon;            // certified: pairwise chordal distance >= radius + epsilon
    int polygon_order = 4;  // inscribed-polygon order that certified coverage

    std::vector<SpherePolygon> inscribed(int n) const;
};

// Preconditions: 0 < r < 1 and r below half the minimum pairwise chordal
// distance of the seeds (certified; throws std::invalid_argument).
SphereCover build_cover(const std::vector<Center>& seeds, const Rat& r);
SphereCover build_cover(const std::vector<SpherePoint>& seeds, const Rat& r);

// A rational point outside every disc of U(S), avoiding the exclusion circles
// of the isolated-point condition.
SpherePoint find_uncovered_point(const std::vector<Center>& centers, const Rat& r, int n);

// certified verification of the output properties; returns epsilon
Rat verify_cover_properties(const SphereCover& c);

// serialization (text records) for the atlas pipeline
std::string cover_to_text(const SphereCover& c);
SphereCover cover_from_text(const std::string& text);

}  // namespace hh
