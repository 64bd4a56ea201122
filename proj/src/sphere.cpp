#include "hh/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "hh/qlinalg.hpp"

namespace hh {

Vec3 v3_add(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Vec3 v3_sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 v3_scale(const Vec3& a, const Rat& s) { return {a[0] * s, a[1] * s, a[2] * s}; }
Rat v3_dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
Vec3 v3_cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
Rat v3_norm2(const Vec3& a) { return v3_dot(a, a); }

bool is_unit(const Vec3& v) { return v3_norm2(v) == 1; }

SpherePoint sphere_from_stereo(const Rat& u, const Rat& v) {
    Rat s = u * u + v * v;
    Rat d = s + 1;
    SpherePoint p;
    p.v = {2 * u / d, 2 * v / d, (s - 1) / d};
    return p;
}

SpherePoint rational_sphere_point(double x, double y, double z, long denom_scale) {
    double n = std::sqrt(x * x + y * y + z * z);
    if (n == 0) throw std::invalid_argument("zero direction");
    x /= n;
    y /= n;
    z /= n;
    if (z > 0.9999999) return SpherePoint{{Rat(0), Rat(0), Rat(1)}};
    // stereographic from the north pole: (x, y, z) -> (x, y)/(1 - z)
    double su = x / (1 - z), sv = y / (1 - z);
    auto round_rat = [&](double t) {
        double scaled = t * (double)denom_scale;
        if (std::fabs(scaled) > 9e18) {
            // far out on the stereographic plane; coarser denominator
            Rat r((long)t);
            return r;
        }
        Rat r((long)std::llround(scaled), denom_scale);
        r.canonicalize();
        return r;
    };
    return sphere_from_stereo(round_rat(su), round_rat(sv));
}

Rat chordal_distance_sq(const SpherePoint& a, const SpherePoint& b) {
    return v3_norm2(v3_sub(a.v, b.v));
}

RealBall chordal_distance(const SpherePoint& a, const SpherePoint& b, mpfr_prec_t prec) {
    return RealBall::from_rational(chordal_distance_sq(a, b), prec).sqrt();
}

StereographicImage stereo_of_sphere(const SpherePoint& p) {
    StereographicImage s;
    if (p.v[2] == 1) {
        s.infinity = true;
        return s;
    }
    Rat d = 1 - p.v[2];
    s.re = p.v[0] / d;
    s.im = p.v[1] / d;
    return s;
}

SpherePoint sphere_of_stereo(const StereographicImage& s) {
    if (s.infinity) return SpherePoint{{Rat(0), Rat(0), Rat(1)}};
    return sphere_from_stereo(s.re, s.im);
}

bool ChordalDisc::contains_ray_open(const Vec3& w) const {
    // w/|w| . c > h  with h > 0 (radius < 1): requires w . c > 0 and
    // (w . c)^2 > h^2 |w|^2
    Rat d = v3_dot(w, center.v);
    Rat h = height();
    if (h > 0 && d <= 0) return false;
    Rat lhs = d * d, rhs = h * h * v3_norm2(w);
    if (h >= 0) return d > 0 && lhs > rhs;
    return d >= 0 || lhs < rhs;
}

void SpherePolygon::validate() const {
    if (rays.size() < 3) throw std::invalid_argument("polygon needs >= 3 vertices");
    size_t n = rays.size();
    for (size_t i = 0; i < n; ++i) {
        if (v3_norm2(rays[i]) == 0) throw std::invalid_argument("zero vertex ray");
        // repeated vertices (projectively)
        const Vec3& a = rays[i];
        const Vec3& b = rays[(i + 1) % n];
        if (v3_norm2(v3_cross(a, b)) == 0) throw std::invalid_argument("degenerate polygon (repeated vertices)");
    }
    for (size_t i = 0; i < n; ++i) {
        const Vec3& a = rays[i];
        const Vec3& b = rays[(i + 1) % n];
        Vec3 nrm = v3_cross(a, b);
        for (size_t j = 0; j < n; ++j) {
            if (v3_dot(nrm, rays[j]) < 0)
                throw std::invalid_argument("polygon not convex/ccw");
        }
    }
}

bool SpherePolygon::contains_ray_closed(const Vec3& w) const {
    size_t n = rays.size();
    for (size_t i = 0; i < n; ++i) {
        Vec3 nrm = v3_cross(rays[i], rays[(i + 1) % n]);
        if (v3_dot(nrm, w) < 0) return false;
    }
    // also require w on the correct side of the containing hemisphere: the
    // ray must have positive dot with the vertex sum (polygon inside an open
    // hemisphere)
    Vec3 c{Rat(0), Rat(0), Rat(0)};
    for (const Vec3& r : rays) c = v3_add(c, r);
    return v3_dot(c, w) > 0;
}

bool SpherePolygon::contains_ray_open(const Vec3& w) const {
    size_t n = rays.size();
    for (size_t i = 0; i < n; ++i) {
        Vec3 nrm = v3_cross(rays[i], rays[(i + 1) % n]);
        if (v3_dot(nrm, w) <= 0) return false;
    }
    Vec3 c{Rat(0), Rat(0), Rat(0)};
    for (const Vec3& r : rays) c = v3_add(c, r);
    return v3_dot(c, w) > 0;
}

SpherePolygon clip_polygon(const SpherePolygon& poly, const Vec3& n) {
    SpherePolygon out;
    size_t k = poly.rays.size();
    for (size_t i = 0; i < k; ++i) {
        const Vec3& a = poly.rays[i];
        const Vec3& b = poly.rays[(i + 1) % k];
        Rat da = v3_dot(a, n), db = v3_dot(b, n);
        if (da >= 0) out.rays.push_back(a);
        if ((da > 0 && db < 0) || (da < 0 && db > 0)) {
            // crossing ray w = mu a + nu b with mu, nu > 0 and w . n = 0:
            // mu = |db|, nu = |da| up to a common positive factor
            Vec3 w = v3_sub(v3_scale(b, da), v3_scale(a, db));
            if (da < 0) w = v3_scale(w, Rat(-1));
            out.rays.push_back(w);
        }
    }
    // dedupe projectively equal consecutive rays
    std::vector<Vec3> clean;
    for (const Vec3& r : out.rays) {
        if (v3_norm2(r) == 0) continue;
        if (!clean.empty() && v3_norm2(v3_cross(clean.back(), r)) == 0 && v3_dot(clean.back(), r) > 0)
            continue;
        clean.push_back(r);
    }
    while (clean.size() >= 2 && v3_norm2(v3_cross(clean.front(), clean.back())) == 0 &&
           v3_dot(clean.front(), clean.back()) > 0)
        clean.pop_back();
    out.rays = std::move(clean);
    return out;
}

bool polygon_interior_nonempty(const SpherePolygon& p) {
    if (p.rays.size() < 3) return false;
    Vec3 c{Rat(0), Rat(0), Rat(0)};
    for (const Vec3& r : p.rays) c = v3_add(c, r);
    size_t n = p.rays.size();
    for (size_t i = 0; i < n; ++i) {
        Vec3 nrm = v3_cross(p.rays[i], p.rays[(i + 1) % n]);
        if (!(v3_dot(nrm, c) > 0)) return false;
    }
    return true;
}

Vec3 polygon_interior_ray(const SpherePolygon& p) {
    Vec3 c{Rat(0), Rat(0), Rat(0)};
    for (const Vec3& r : p.rays) c = v3_add(c, r);
    return c;
}

std::optional<SpherePolygon> polygon_intersection(const SpherePolygon& a, const SpherePolygon& b) {
    SpherePolygon cur = a;
    size_t n = b.rays.size();
    for (size_t i = 0; i < n && cur.rays.size() >= 3; ++i) {
        Vec3 nrm = v3_cross(b.rays[i], b.rays[(i + 1) % n]);
        cur = clip_polygon(cur, nrm);
    }
    if (!polygon_interior_nonempty(cur)) return std::nullopt;
    return cur;
}

namespace {

// orthonormal-ish rational frame in the plane perpendicular to c (not unit;
// used only through exact sign tests and ball evaluation)
std::pair<Vec3, Vec3> perp_frame(const Vec3& c) {
    Vec3 e1;
    if (c[0] == 0 && c[1] == 0)
        e1 = {Rat(1), Rat(0), Rat(0)};
    else
        e1 = {-c[1], c[0], Rat(0)};
    Vec3 e2 = v3_cross(c, e1);
    return {e1, e2};
}

}  // namespace

SpherePolygon polygon_in(const ChordalDisc& d, int n) {
    if (n < 3) throw std::invalid_argument("polygon order must be >= 3");
    // ideal vertices: p(theta) = h c + rho (cos e1' + sin e2'), slight shrink,
    // then rational rounding with exact in-disc verification
    const Rat& h = d.height();
    double hd = h.get_d();
    double rho = std::sqrt(std::max(0.0, 1.0 - hd * hd));
    auto [e1, e2] = perp_frame(d.center.v);
    double n1 = std::sqrt(v3_norm2(e1).get_d());
    double n2 = std::sqrt(v3_norm2(e2).get_d());
    SpherePolygon poly;
    double shrink = 1.0 - 0.25 / double(n) / double(n) - 1e-7;
    for (int k = 0; k < n; ++k) {
        double th = 2 * M_PI * k / n;
        double vx = 0, vy = 0, vz = 0;
        for (int axis = 0; axis < 3; ++axis) {
            double cv = d.center.v[axis].get_d();
            double e1v = e1[axis].get_d() / n1;
            double e2v = e2[axis].get_d() / n2;
            double val = hd * cv + rho * shrink * (std::cos(th) * e1v + std::sin(th) * e2v);
            if (axis == 0) vx = val;
            if (axis == 1) vy = val;
            if (axis == 2) vz = val;
        }
        // rational point near the ideal vertex, certified inside the open disc
        for (long scale = 1 << 20;; scale <<= 4) {
            SpherePoint cand = rational_sphere_point(vx, vy, vz, scale);
            if (d.contains_open(cand)) {
                poly.rays.push_back(cand.v);
                break;
            }
            if (scale > (1L << 50)) {
                // pull toward the center and retry
                vx = 0.7 * vx + 0.3 * hd * d.center.v[0].get_d();
                vy = 0.7 * vy + 0.3 * hd * d.center.v[1].get_d();
                vz = 0.7 * vz + 0.3 * hd * d.center.v[2].get_d();
                scale = 1 << 20;
            }
        }
    }
    poly.validate();
    return poly;
}

SpherePolygon polygon_out(const ChordalDisc& d, int n) {
    if (n < 3) throw std::invalid_argument("polygon order must be >= 3");
    // circumscribed: vertices at angular radius theta_v with
    // tan(theta_cap) = tan(theta_v) cos(pi/n); inflate slightly and verify
    // the exact cap-in-polygon certificate.
    double hd = d.height().get_d();
    double theta_cap = std::acos(hd);
    auto [e1, e2] = perp_frame(d.center.v);
    double n1 = std::sqrt(v3_norm2(e1).get_d());
    double n2 = std::sqrt(v3_norm2(e2).get_d());
    for (double inflate = 1.02;; inflate *= 1.25) {
        double theta_v = std::atan(std::tan(theta_cap) / std::cos(M_PI / n)) * inflate;
        if (theta_v >= M_PI / 2 * 0.98) throw std::invalid_argument("circumscribed polygon too large");
        SpherePolygon poly;
        for (int k = 0; k < n; ++k) {
            double th = 2 * M_PI * (k + 0.5) / n;
            double base = std::cos(theta_v), rad = std::sin(theta_v);
            double vx = 0, vy = 0, vz = 0;
            for (int axis = 0; axis < 3; ++axis) {
                double cv = d.center.v[axis].get_d();
                double e1v = e1[axis].get_d() / n1;
                double e2v = e2[axis].get_d() / n2;
                double val = base * cv + rad * (std::cos(th) * e1v + std::sin(th) * e2v);
                if (axis == 0) vx = val;
                if (axis == 1) vy = val;
                if (axis == 2) vz = val;
            }
            poly.rays.push_back(rational_sphere_point(vx, vy, vz).v);
        }
        if (polygon_contains_cap(poly, d)) {
            poly.validate();
            return poly;
        }
    }
}

bool polygon_contains_cap(const SpherePolygon& poly, const ChordalDisc& d) {
    // cap {w . c >= h} inside every edge half-space {w . n >= 0}:
    // min over the cap of w . n_hat = cos(angle(c, n_hat) + theta_cap) >= 0
    // iff  c . n >= 0 and (c . n)^2 >= (1 - h^2) |n|^2
    size_t k = poly.rays.size();
    if (k < 3) return false;
    Rat h = d.height();
    Rat one_minus_h2 = 1 - h * h;
    for (size_t i = 0; i < k; ++i) {
        Vec3 nrm = v3_cross(poly.rays[i], poly.rays[(i + 1) % k]);
        Rat cn = v3_dot(d.center.v, nrm);
        if (cn < 0) return false;
        if (cn * cn < one_minus_h2 * v3_norm2(nrm)) return false;
    }
    return true;
}

namespace {

struct Tri {
    Vec3 a, b, c;
};

bool tri_covered(const Tri& t, const std::vector<SpherePolygon>& polys,
                 const std::vector<int>& hint_order) {
    for (int j : hint_order) {
        const SpherePolygon& p = polys[j];
        // open containment of all vertices puts the whole geodesic hull in
        // the open polygon, matching the nerve's open-cover semantics
        if (p.contains_ray_open(t.a) && p.contains_ray_open(t.b) && p.contains_ray_open(t.c))
            return true;
    }
    return false;
}

}  // namespace

CoverTestResult polygons_cover_sphere(const std::vector<SpherePolygon>& polys, int max_depth) {
    // initial octahedron (rays along +-axes)
    Vec3 px{Rat(1), Rat(0), Rat(0)}, mx{Rat(-1), Rat(0), Rat(0)};
    Vec3 py{Rat(0), Rat(1), Rat(0)}, my{Rat(0), Rat(-1), Rat(0)};
    Vec3 pz{Rat(0), Rat(0), Rat(1)}, mz{Rat(0), Rat(0), Rat(-1)};
    std::vector<std::pair<Tri, int>> stack;
    for (const Vec3& x : {px, mx})
        for (const Vec3& y : {py, my})
            for (const Vec3& z : {pz, mz}) stack.push_back({{x, y, z}, 0});
    std::vector<int> order(polys.size());
    for (size_t i = 0; i < polys.size(); ++i) order[i] = (int)i;

    bool depth_hit = false;
    while (!stack.empty()) {
        auto [t, depth] = stack.back();
        stack.pop_back();
        if (tri_covered(t, polys, order)) continue;
        // witness check: centroid strictly outside every polygon
        Vec3 cen = v3_add(v3_add(t.a, t.b), t.c);
        bool outside_all = true;
        for (const SpherePolygon& p : polys) {
            if (p.contains_ray_closed(cen)) {
                outside_all = false;
                break;
            }
        }
        if (outside_all) return {CoverStatus::NotCovered, cen};
        if (depth >= max_depth) {
            depth_hit = true;
            continue;
        }
        Vec3 ab = v3_add(t.a, t.b), bc = v3_add(t.b, t.c), ca = v3_add(t.c, t.a);
        stack.push_back({{t.a, ab, ca}, depth + 1});
        stack.push_back({{t.b, bc, ab}, depth + 1});
        stack.push_back({{t.c, ca, bc}, depth + 1});
        stack.push_back({{ab, bc, ca}, depth + 1});
    }
    if (depth_hit) return {CoverStatus::DepthExceeded, {}};
    return {CoverStatus::Covered, {}};
}

int nerve_h2_rank(const std::vector<SpherePolygon>& polys) {
    size_t n = polys.size();
    // 1-simplices: pairs with open intersection; keep the clipped polygons
    std::map<std::pair<int, int>, SpherePolygon> pair_int;
    std::vector<std::array<int, 2>> edges;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            auto is = polygon_intersection(polys[i], polys[j]);
            if (is) {
                pair_int[{(int)i, (int)j}] = *is;
                edges.push_back({(int)i, (int)j});
            }
        }
    // 2-simplices
    std::map<std::array<int, 3>, SpherePolygon> tri_int;
    std::vector<std::array<int, 3>> tris;
    for (const auto& [ij, pij] : pair_int) {
        auto [i, j] = ij;
        for (size_t k = j + 1; k < n; ++k) {
            if (!pair_int.count({i, (int)k}) || !pair_int.count({j, (int)k})) continue;
            auto is = polygon_intersection(pij, polys[k]);
            if (is) {
                tris.push_back({i, j, (int)k});
                tri_int[{i, j, (int)k}] = *is;
            }
        }
    }
    // 3-simplices
    std::vector<std::array<int, 4>> quads;
    for (const auto& [ijk, pijk] : tri_int) {
        auto [i, j, k] = ijk;
        for (size_t l = k + 1; l < n; ++l) {
            if (!pair_int.count({i, (int)l}) || !pair_int.count({j, (int)l}) ||
                !pair_int.count({k, (int)l}))
                continue;
            auto is = polygon_intersection(pijk, polys[l]);
            if (is) quads.push_back({i, j, k, (int)l});
        }
    }
    // boundary ranks over Q
    std::map<std::array<int, 2>, int> eidx;
    for (size_t e = 0; e < edges.size(); ++e) eidx[edges[e]] = (int)e;
    std::map<std::array<int, 3>, int> tidx;
    for (size_t t = 0; t < tris.size(); ++t) tidx[tris[t]] = (int)t;

    auto rank_of = [](QMat m) {
        size_t rows = m.size();
        if (rows == 0) return 0;
        size_t cols = m[0].size(), r = 0;
        for (size_t c = 0; c < cols && r < rows; ++c) {
            size_t piv = r;
            while (piv < rows && m[piv][c] == 0) ++piv;
            if (piv == rows) continue;
            std::swap(m[piv], m[r]);
            for (size_t i = 0; i < rows; ++i) {
                if (i == r || m[i][c] == 0) continue;
                Rat f = m[i][c] / m[r][c];
                for (size_t cc = c; cc < cols; ++cc) m[i][cc] -= f * m[r][cc];
            }
            ++r;
        }
        return (int)r;
    };

    // d2: C2 -> C1
    QMat d2(edges.size(), std::vector<Rat>(tris.size(), Rat(0)));
    for (size_t t = 0; t < tris.size(); ++t) {
        auto [i, j, k] = tris[t];
        d2[eidx[{j, k}]][t] += 1;
        d2[eidx[{i, k}]][t] -= 1;
        d2[eidx[{i, j}]][t] += 1;
    }
    // d3: C3 -> C2
    QMat d3(tris.size(), std::vector<Rat>(quads.size(), Rat(0)));
    for (size_t q = 0; q < quads.size(); ++q) {
        auto [i, j, k, l] = quads[q];
        d3[tidx[{j, k, l}]][q] += 1;
        d3[tidx[{i, k, l}]][q] -= 1;
        d3[tidx[{i, j, l}]][q] += 1;
        d3[tidx[{i, j, k}]][q] -= 1;
    }
    int rank_d2 = rank_of(d2);
    int rank_d3 = rank_of(d3);
    int ker_d2 = (int)tris.size() - rank_d2;
    return ker_d2 - rank_d3;
}

bool is_cover(const std::vector<SpherePolygon>& polys) {
    CoverTestResult sub = polygons_cover_sphere(polys, 10);
    if (sub.status == CoverStatus::DepthExceeded)
        throw precision_error("is_cover: subdivision depth exceeded");
    bool covered_sub = sub.status == CoverStatus::Covered;
    int h2 = nerve_h2_rank(polys);
    bool covered_nerve = h2 != 0;
    if (covered_sub != covered_nerve)
        throw std::logic_error("cover certifications disagree (subdivision vs nerve homology)");
    return covered_sub;
}

}  // namespace hh
