#include "hh/cover.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hh/roots.hpp"

namespace hh {

namespace {
constexpr mpfr_prec_t kMaxPrec = 1 << 14;
}

Center Center::algebraic(QPoly minpoly, ComplexBall root) {
    Center c;
    c.is_exact = false;
    c.minpoly = std::move(minpoly);
    c.xroot = std::move(root);
    // a rational root is promoted to an exact stereographic point
    if (c.minpoly.degree() == 1) {
        Rat x = -c.minpoly.coeff(0) / c.minpoly.coeff(1);
        c.is_exact = true;
        c.exact = sphere_from_stereo(x, Rat(0));
    }
    return c;
}

std::array<RealBall, 3> Center::ball(mpfr_prec_t prec) const {
    std::array<RealBall, 3> out;
    if (is_exact) {
        for (int i = 0; i < 3; ++i) out[i] = RealBall::from_rational(exact.v[i], prec);
        return out;
    }
    // refresh the root enclosure at the requested precision
    ComplexBall r = xroot;
    if (r.radius_bound().mid_d() > std::pow(2.0, -(double)prec / 2)) {
        for (const ComplexBall& cand : certified_roots(minpoly.primitive_integer(), prec)) {
            if (cand.overlaps(xroot)) {
                r = cand;
                break;
            }
        }
    }
    // stereographic inverse: X = u + iv -> (2u, 2v, |X|^2 - 1)/(|X|^2 + 1)
    RealBall u = r.re().round_prec(prec), v = r.im().round_prec(prec);
    RealBall s = u * u + v * v;
    RealBall d = (s + 1).recip();
    out[0] = u * 2 * d;
    out[1] = v * 2 * d;
    out[2] = (s - 1) * d;
    return out;
}

RealBall center_dot_ray(const Center& c, const Vec3& ray, mpfr_prec_t prec) {
    auto b = c.ball(prec);
    RealBall acc(prec);
    for (int i = 0; i < 3; ++i) acc += b[i] * RealBall::from_rational(ray[i], prec);
    return acc;
}

bool ray_outside_closed_disc(const Center& c, const Rat& r, const Vec3& ray) {
    // ray/|ray| . c < h  certifies strictly outside (h = 1 - r^2/2 > 0)
    Rat h = 1 - r * r / 2;
    if (c.is_exact) {
        Rat d = v3_dot(ray, c.exact.v);
        Rat lhs = d * d, rhs = h * h * v3_norm2(ray);
        if (h > 0) return d < 0 || lhs < rhs;
        return d < 0 && lhs > rhs;
    }
    for (mpfr_prec_t prec = 128; prec <= kMaxPrec; prec *= 2) {
        RealBall d = center_dot_ray(c, ray, prec);
        RealBall target = RealBall::from_rational(h, prec) *
                          RealBall::from_rational(v3_norm2(ray), prec).sqrt();
        if (d.certainly_lt(target)) return true;
        if (target.certainly_lt(d)) return false;
    }
    throw precision_error("ray_outside_closed_disc: undecidable at precision cap");
}

bool point_inside_open_disc(const Center& c, const Rat& r, const SpherePoint& p) {
    Rat h = 1 - r * r / 2;
    if (c.is_exact) return v3_dot(p.v, c.exact.v) > h;
    for (mpfr_prec_t prec = 128; prec <= kMaxPrec; prec *= 2) {
        RealBall d = center_dot_ray(c, p.v, prec);
        RealBall hb = RealBall::from_rational(h, prec);
        if (hb.certainly_lt(d)) return true;
        if (d.certainly_lt(hb)) return false;
    }
    throw precision_error("point_inside_open_disc: undecidable at precision cap");
}

RealBall center_distance(const Center& a, const Center& b, mpfr_prec_t prec) {
    auto ba = a.ball(prec), bb = b.ball(prec);
    RealBall acc(prec);
    for (int i = 0; i < 3; ++i) {
        RealBall d = ba[i] - bb[i];
        acc += d * d;
    }
    return acc.sqrt();
}

namespace {

// double-precision coordinates of a center (midpoints)
std::array<double, 3> center_mid(const Center& c) {
    if (c.is_exact) return {c.exact.v[0].get_d(), c.exact.v[1].get_d(), c.exact.v[2].get_d()};
    auto b = c.ball(96);
    return {b[0].mid_d(), b[1].mid_d(), b[2].mid_d()};
}

}  // namespace

SpherePolygon polygon_in_center(const Center& c, const Rat& r, int n) {
    if (c.is_exact) return polygon_in({c.exact, r}, n);
    if (n < 3) throw std::invalid_argument("polygon order must be >= 3");
    Rat h = 1 - r * r / 2;
    double hd = h.get_d();
    double rho = std::sqrt(std::max(0.0, 1.0 - hd * hd));
    auto cm = center_mid(c);
    // frame perpendicular to the midpoint direction
    double e1x = -cm[1], e1y = cm[0], e1z = 0;
    double n1 = std::hypot(e1x, e1y);
    if (n1 < 1e-12) {
        e1x = 1;
        e1y = 0;
        n1 = 1;
    }
    e1x /= n1;
    e1y /= n1;
    double e2x = cm[1] * e1z - cm[2] * e1y, e2y = cm[2] * e1x - cm[0] * e1z,
           e2z = cm[0] * e1y - cm[1] * e1x;
    SpherePolygon poly;
    double shrink = 1.0 - 0.25 / double(n) / double(n) - 1e-7;
    for (int k = 0; k < n; ++k) {
        double th = 2 * M_PI * k / n;
        double vx = hd * cm[0] + rho * shrink * (std::cos(th) * e1x + std::sin(th) * e2x);
        double vy = hd * cm[1] + rho * shrink * (std::cos(th) * e1y + std::sin(th) * e2y);
        double vz = hd * cm[2] + rho * shrink * (std::cos(th) * e1z + std::sin(th) * e2z);
        for (long scale = 1 << 20;; scale <<= 4) {
            SpherePoint cand = rational_sphere_point(vx, vy, vz, scale);
            if (point_inside_open_disc(c, r, cand)) {
                poly.rays.push_back(cand.v);
                break;
            }
            if (scale > (1L << 50)) {
                vx = 0.7 * vx + 0.3 * hd * cm[0];
                vy = 0.7 * vy + 0.3 * hd * cm[1];
                vz = 0.7 * vz + 0.3 * hd * cm[2];
                scale = 1 << 20;
            }
        }
    }
    poly.validate();
    return poly;
}

SpherePolygon polygon_out_center(const Center& c, const Rat& r, int n) {
    if (c.is_exact) return polygon_out({c.exact, r}, n);
    if (n < 3) throw std::invalid_argument("polygon order must be >= 3");
    Rat h = 1 - r * r / 2;
    double hd = h.get_d();
    double theta_cap = std::acos(hd);
    auto cm = center_mid(c);
    double e1x = -cm[1], e1y = cm[0], e1z = 0;
    double n1 = std::hypot(e1x, e1y);
    if (n1 < 1e-12) {
        e1x = 1;
        e1y = 0;
        n1 = 1;
    }
    e1x /= n1;
    e1y /= n1;
    double e2x = cm[1] * e1z - cm[2] * e1y, e2y = cm[2] * e1x - cm[0] * e1z,
           e2z = cm[0] * e1y - cm[1] * e1x;
    // ball certificate that the closed cap sits inside the polygon: for each
    // edge normal m, need c . m >= sqrt(1 - h^2) |m|
    auto cap_inside = [&](const SpherePolygon& poly) {
        size_t k = poly.rays.size();
        Rat one_minus_h2 = 1 - h * h;
        for (size_t i = 0; i < k; ++i) {
            Vec3 nrm = v3_cross(poly.rays[i], poly.rays[(i + 1) % k]);
            for (mpfr_prec_t prec = 128;; prec *= 2) {
                if (prec > kMaxPrec) throw precision_error("polygon_out_center: certificate undecidable");
                RealBall cn = center_dot_ray(c, nrm, prec);
                RealBall rhs = (RealBall::from_rational(one_minus_h2, prec) *
                                RealBall::from_rational(v3_norm2(nrm), prec))
                                   .sqrt();
                if (rhs.certainly_lt(cn)) break;
                if (cn.certainly_lt(rhs)) return false;
            }
        }
        return true;
    };
    for (double inflate = 1.02;; inflate *= 1.25) {
        double theta_v = std::atan(std::tan(theta_cap) / std::cos(M_PI / n)) * inflate;
        if (theta_v >= M_PI / 2 * 0.98) throw std::invalid_argument("circumscribed polygon too large");
        SpherePolygon poly;
        for (int k = 0; k < n; ++k) {
            double th = 2 * M_PI * (k + 0.5) / n;
            double base = std::cos(theta_v), rad = std::sin(theta_v);
            double vx = base * cm[0] + rad * (std::cos(th) * e1x + std::sin(th) * e2x);
            double vy = base * cm[1] + rad * (std::cos(th) * e1y + std::sin(th) * e2y);
            double vz = base * cm[2] + rad * (std::cos(th) * e1z + std::sin(th) * e2z);
            poly.rays.push_back(rational_sphere_point(vx, vy, vz).v);
        }
        if (cap_inside(poly)) {
            poly.validate();
            return poly;
        }
    }
}

std::vector<SpherePolygon> SphereCover::inscribed(int n) const {
    std::vector<SpherePolygon> out;
    out.reserve(centers.size());
    for (const Center& c : centers) out.push_back(polygon_in_center(c, radius, n));
    return out;
}

namespace {

// exclusion circles for the isolated-point condition, in ball form: points t
// with t.a = t.b = h for a pair of centers; candidate points w must certify
// |w . t - h| > 0 for both intersection points
bool hits_exclusion_pair(const Center& ca, const Center& cb, const Rat& r, const SpherePoint& w) {
    Rat h = 1 - r * r / 2;
    for (mpfr_prec_t prec = 128; prec <= kMaxPrec; prec *= 2) {
        auto a = ca.ball(prec), b = cb.ball(prec);
        RVec av{a[0], a[1], a[2]}, bv{b[0], b[1], b[2]};
        RealBall ab(prec);
        for (int i = 0; i < 3; ++i) ab += av[i] * bv[i];
        // the two boundary circles meet iff 2h^2 <= 1 + a.b
        RealBall hb2 = RealBall::from_rational(2 * h * h, prec);
        if ((ab + 1).certainly_lt(hb2)) return false;  // no meeting points: nothing to avoid
        RealBall denom = (ab + 1) * 2;
        if (denom.contains_zero()) continue;  // escalate precision
        RealBall alpha = RealBall::from_rational(h, prec) * 2 / denom;
        RVec base(3, RealBall(prec)), dir(3, RealBall(prec));
        for (int i = 0; i < 3; ++i) base[i] = (av[i] + bv[i]) * alpha;
        dir[0] = av[1] * bv[2] - av[2] * bv[1];
        dir[1] = av[2] * bv[0] - av[0] * bv[2];
        dir[2] = av[0] * bv[1] - av[1] * bv[0];
        RealBall dn(prec), bn(prec);
        for (int i = 0; i < 3; ++i) {
            dn += dir[i] * dir[i];
            bn += base[i] * base[i];
        }
        if (dn.contains_zero()) return true;
        RealBall s2 = (RealBall::exact(1L, prec) - bn) / dn;
        if (s2.is_negative()) return false;  // cap circles do not meet: nothing to avoid
        if (s2.contains_zero() && !s2.is_positive()) continue;  // escalate
        RealBall wb(prec), wd(prec);
        for (int i = 0; i < 3; ++i) {
            RealBall wi = RealBall::from_rational(w.v[i], prec);
            wb += wi * base[i];
            wd += wi * dir[i];
        }
        // w.t = wb +- sqrt(s2) wd must avoid h
        RealBall s = s2.sqrt();
        RealBall d1 = wb + s * wd - RealBall::from_rational(h, prec);
        RealBall d2 = wb - s * wd - RealBall::from_rational(h, prec);
        if (!d1.contains_zero() && !d2.contains_zero()) return false;
        // inconclusive: escalate, and at the cap call it a hit (perturb)
    }
    return true;
}

}  // namespace

SpherePoint find_uncovered_point(const std::vector<Center>& centers, const Rat& r, int n) {
    std::vector<SpherePolygon> outer;
    outer.reserve(centers.size());
    for (const Center& c : centers) outer.push_back(polygon_out_center(c, r, n));
    CoverTestResult res = polygons_cover_sphere(outer, 11);
    if (res.status != CoverStatus::NotCovered)
        throw std::invalid_argument("find_uncovered_point: circumscribed polygons cover the sphere");
    double wx = res.witness[0].get_d(), wy = res.witness[1].get_d(), wz = res.witness[2].get_d();
    double wn = std::sqrt(wx * wx + wy * wy + wz * wz);
    wx /= wn;
    wy /= wn;
    wz /= wn;
    for (int attempt = 0; attempt < 400; ++attempt) {
        double jx = wx + 2e-7 * attempt * std::cos(attempt * 2.39996);
        double jy = wy + 2e-7 * attempt * std::sin(attempt * 2.39996);
        SpherePoint cand = rational_sphere_point(jx, jy, wz, 1L << (20 + (attempt % 8)));
        bool ok = true;
        for (const Center& c : centers) {
            if (!ray_outside_closed_disc(c, r, cand.v)) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        for (size_t i = 0; i < centers.size() && ok; ++i)
            for (size_t j = i + 1; j < centers.size() && ok; ++j)
                if (hits_exclusion_pair(centers[i], centers[j], r, cand)) ok = false;
        if (ok) return cand;
    }
    throw precision_error("find_uncovered_point: perturbation search exhausted");
}

SphereCover build_cover(const std::vector<Center>& seeds, const Rat& r) {
    if (!(r > 0 && r < 1)) throw std::invalid_argument("cover radius must be in (0,1)");
    for (size_t i = 0; i < seeds.size(); ++i)
        for (size_t j = i + 1; j < seeds.size(); ++j) {
            RealBall d = center_distance(seeds[i], seeds[j], 256);
            if (!RealBall::from_rational(2 * r, 256).certainly_lt(d))
                throw std::invalid_argument("cover radius too large for the seed separation");
        }
    std::vector<Center> s = seeds;
    if (s.empty()) s.push_back(Center::rational(SpherePoint{{Rat(0), Rat(0), Rat(1)}}));
    std::vector<int> m{1};
    for (int rounds = 0; rounds < 100000; ++rounds) {
        size_t bign = m.size();
        for (size_t idx = 0; idx < bign; ++idx) {
            int order = m[idx] + 3;
            std::vector<SpherePolygon> inner;
            inner.reserve(s.size());
            for (const Center& c : s) inner.push_back(polygon_in_center(c, r, order));
            CoverTestResult res = polygons_cover_sphere(inner, 10);
            if (res.status == CoverStatus::Covered) {
                SphereCover out;
                out.centers = s;
                out.radius = r;
                out.polygon_order = order;
                out.epsilon = verify_cover_properties(out);
                return out;
            }
            std::vector<SpherePolygon> outer;
            outer.reserve(s.size());
            for (const Center& c : s) outer.push_back(polygon_out_center(c, r, order));
            CoverTestResult res2 = polygons_cover_sphere(outer, 10);
            if (res2.status == CoverStatus::NotCovered) {
                s.push_back(Center::rational(find_uncovered_point(s, r, order)));
            } else {
                m[idx] += 1;
            }
        }
        m.push_back(1);
    }
    throw precision_error("build_cover: iteration cap reached");
}

SphereCover build_cover(const std::vector<SpherePoint>& seeds, const Rat& r) {
    std::vector<Center> cs;
    cs.reserve(seeds.size());
    for (const SpherePoint& p : seeds) cs.push_back(Center::rational(p));
    return build_cover(cs, r);
}

Rat verify_cover_properties(const SphereCover& c) {
    size_t n = c.centers.size();
    Rat best_eps(-1);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            RealBall d = center_distance(c.centers[i], c.centers[j], 256);
            double gap = d.lower_d() - c.radius.get_d();
            if (gap <= 0) throw std::logic_error("cover property (b) violated");
            Rat eps((long)std::floor(gap * (1 << 20) * 0.9), 1 << 20);
            eps.canonicalize();
            RealBall target = RealBall::from_rational(c.radius + eps, 256);
            int halvings = 0;
            while (eps > 0 && !target.certainly_lt(d)) {
                eps /= 2;
                target = RealBall::from_rational(c.radius + eps, 256);
                if (++halvings > 200) throw std::logic_error("cover property (c) failed to certify");
            }
            if (best_eps < 0 || eps < best_eps) best_eps = eps;
        }
    if (n <= 1) best_eps = Rat(1, 2);
    return best_eps;
}

std::string cover_to_text(const SphereCover& c) {
    std::ostringstream os;
    os << "radius = " << c.radius.get_str() << "\n";
    os << "epsilon = " << c.epsilon.get_str() << "\n";
    os << "order = " << c.polygon_order << "\n";
    for (const Center& p : c.centers) {
        if (p.is_exact) {
            os << "center = (" << p.exact.v[0].get_str() << "," << p.exact.v[1].get_str() << ","
               << p.exact.v[2].get_str() << ")\n";
        } else {
            os << "algebraic_center = [";
            for (int i = 0; i <= p.minpoly.degree(); ++i) {
                if (i) os << ",";
                os << p.minpoly.coeff(i).get_str();
            }
            os << "] root = (" << p.xroot.re().mid_d() << "," << p.xroot.im().mid_d() << ")\n";
        }
    }
    return os.str();
}

SphereCover cover_from_text(const std::string& text) {
    SphereCover c;
    std::istringstream is(text);
    std::string line;
    auto parse_rat = [](const std::string& s) {
        Rat r(s);
        r.canonicalize();
        return r;
    };
    auto strip = [](std::string t) {
        while (!t.empty() && (t.front() == ' ' || t.front() == '(' || t.front() == '[')) t.erase(t.begin());
        while (!t.empty() &&
               (t.back() == ' ' || t.back() == ')' || t.back() == ']' || t.back() == '\r'))
            t.pop_back();
        return t;
    };
    while (std::getline(is, line)) {
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string key = strip(line.substr(0, eq));
        std::string val = line.substr(eq + 1);
        if (key == "radius") c.radius = parse_rat(strip(val));
        if (key == "epsilon") c.epsilon = parse_rat(strip(val));
        if (key == "order") c.polygon_order = std::stoi(strip(val));
        if (key == "center") {
            std::istringstream vs(strip(val));
            std::string part;
            Vec3 v;
            for (int i = 0; i < 3; ++i) {
                std::getline(vs, part, ',');
                v[i] = parse_rat(strip(part));
            }
            if (!is_unit(v)) throw std::invalid_argument("cover_from_text: center not unit");
            c.centers.push_back(Center::rational(SpherePoint{v}));
        }
        if (key == "algebraic_center") {
            auto rootpos = val.find("root =");
            std::string coeffs = strip(val.substr(0, val.find(']')));
            std::string root = strip(val.substr(rootpos + 6));
            std::istringstream cs(coeffs);
            std::string part;
            std::vector<Rat> cfs;
            while (std::getline(cs, part, ',')) cfs.push_back(parse_rat(strip(part)));
            QPoly mp(cfs);
            std::istringstream rs(root);
            double re, im;
            char comma;
            rs >> re >> comma >> im;
            ComplexBall approx = ComplexBall::from_doubles(re, im, 192);
            // select the certified root nearest the stored approximation
            CVec roots = certified_roots(mp.primitive_integer(), 192);
            size_t best = 0;
            double bestd = -1;
            for (size_t ri = 0; ri < roots.size(); ++ri) {
                double d = (roots[ri] - approx).abs().mid_d();
                if (bestd < 0 || d < bestd) {
                    best = ri;
                    bestd = d;
                }
            }
            if (roots.empty()) throw std::invalid_argument("algebraic_center: no roots");
            c.centers.push_back(Center::algebraic(mp, roots[best]));
        }
    }
    return c;
}

}  // namespace hh
