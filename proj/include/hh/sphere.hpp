#pragma once

// Exact rational geometry on the unit sphere: rational unit vectors, rational
// rays (projective points used for polygon vertices), chordal-metric caps,
// geodesically convex polygons with exact predicates, spherical clipping, and
// the two cover certifications (nerve homology and subdivision emptiness).

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hh/ball.hpp"
#include "hh/qpoly.hpp"

namespace hh {

using Vec3 = std::array<Rat, 3>;

Vec3 v3_add(const Vec3& a, const Vec3& b);
Vec3 v3_sub(const Vec3& a, const Vec3& b);
Vec3 v3_scale(const Vec3& a, const Rat& s);
Rat v3_dot(const Vec3& a, const Vec3& b);
Vec3 v3_cross(const Vec3& a, const Vec3& b);
Rat v3_norm2(const Vec3& a);

// exact rational point on the unit sphere (|p| = 1 exactly)
struct SpherePoint {
    Vec3 v;
    bool operator==(const SpherePoint& o) const { return v == o.v; }
};

// rational point of the sphere nearest-ish to the (unnormalized) direction,
// via stereographic rounding at the given denominator scale
SpherePoint rational_sphere_point(double x, double y, double z, long denom_scale = 1 << 20);
SpherePoint sphere_from_stereo(const Rat& u, const Rat& v);  // from the north pole
bool is_unit(const Vec3& v);

// chordal distance (Euclidean in R^3): exact square and certified real
Rat chordal_distance_sq(const SpherePoint& a, const SpherePoint& b);
RealBall chordal_distance(const SpherePoint& a, const SpherePoint& b, mpfr_prec_t prec = 96);

// stereographic/Riemann-sphere correspondence (north pole <-> infinity)
struct StereographicImage {
    bool infinity = false;
    Rat re, im;
};
StereographicImage stereo_of_sphere(const SpherePoint& p);
SpherePoint sphere_of_stereo(const StereographicImage& s);

struct ChordalDisc {
    SpherePoint center;
    Rat radius;  // chordal, in (0, 1)
    // cap form: {p : p . center >= height}, height = 1 - r^2/2
    Rat height() const { return 1 - radius * radius / 2; }
    bool contains_open(const SpherePoint& p) const {
        return v3_dot(p.v, center.v) > height();
    }
    bool contains_closed(const SpherePoint& p) const {
        return v3_dot(p.v, center.v) >= height();
    }
    // membership of a rational ray (sign-correct for unnormalized w)
    bool contains_ray_open(const Vec3& w) const;
};

// geodesically convex spherical polygon: counterclockwise rational rays, all
// contained in an open hemisphere
struct SpherePolygon {
    std::vector<Vec3> rays;
    // validation: >= 3 distinct vertices, convex, consistently oriented
    void validate() const;
    bool contains_ray_closed(const Vec3& w) const;
    bool contains_ray_open(const Vec3& w) const;
};

// clip a convex spherical polygon by the half space {w . n >= 0}
SpherePolygon clip_polygon(const SpherePolygon& poly, const Vec3& n);
// intersection of convex polygons; nullopt when the interior is empty
std::optional<SpherePolygon> polygon_intersection(const SpherePolygon& a, const SpherePolygon& b);
bool polygon_interior_nonempty(const SpherePolygon& p);
// a strictly interior ray of a polygon with nonempty interior
Vec3 polygon_interior_ray(const SpherePolygon& p);

// inscribed rational polygon (contained in the open disc) and circumscribed
// rational polygon (containing the closed disc); side count grows with n
SpherePolygon polygon_in(const ChordalDisc& d, int n);
SpherePolygon polygon_out(const ChordalDisc& d, int n);

// exact certificate that the closed cap lies inside the polygon
bool polygon_contains_cap(const SpherePolygon& poly, const ChordalDisc& d);

enum class CoverStatus { Covered, NotCovered, DepthExceeded };
struct CoverTestResult {
    CoverStatus status;
    Vec3 witness;  // an uncovered ray when NotCovered
};

// subdivision complement-emptiness test for a union of convex polygons
CoverTestResult polygons_cover_sphere(const std::vector<SpherePolygon>& polys, int max_depth = 9);

// nerve homology test: rank of H_2 of the nerve of the open polygon interiors
// (1 exactly when the polygons cover the sphere)
int nerve_h2_rank(const std::vector<SpherePolygon>& polys);

// is_cover per the appendix: both certifications, which must agree
bool is_cover(const std::vector<SpherePolygon>& polys);

}  // namespace hh
