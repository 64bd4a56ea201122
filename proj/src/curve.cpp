#include "hh/curve.hpp"

#include <stdexcept>

#include "hh/roots.hpp"

namespace hh {

namespace {

HyperellipticCurve build_curve(const QPoly& f, int min_genus) {
    for (const Rat& c : f.coeffs())
        if (c.get_den() != 1) throw std::invalid_argument("curve coefficients must be integers");
    int deg = f.degree();
    if (deg < 3) throw std::invalid_argument("genus < 2 unsupported");
    Rat d = f.discriminant();
    if (d == 0) throw std::invalid_argument("singular model");
    int g = (deg - 1) / 2;  // deg = 2g+1 or 2g+2
    if (g < min_genus) throw std::invalid_argument("genus < 2 unsupported");
    HyperellipticCurve c;
    c.genus = g;
    c.f = f;
    c.monic_odd = (deg == 2 * g + 1) && f.leading() == 1;
    c.disc = Int(d.get_num());
    Int n = abs(2 * c.disc);
    for (auto& [p, e] : factorize(n)) {
        (void)e;
        c.bad_primes.push_back(p);
    }
    return c;
}

}  // namespace

HyperellipticCurve new_curve(const QPoly& f) { return build_curve(f, 2); }
HyperellipticCurve new_curve_any_genus(const QPoly& f) { return build_curve(f, 1); }

bool on_curve(const HyperellipticCurve& c, const RatPoint& p) {
    if (p.infinity) return c.monic_odd || c.f.degree() == 2 * c.genus + 2;
    return p.y * p.y == c.f.eval(p.x);
}

bool on_curve(const HyperellipticCurve& c, const CPoint& p) {
    if (p.infinity) return true;
    ComplexBall r = p.y * p.y - c.f.eval(p.x);
    return r.contains_zero();
}

std::vector<WeierstrassPoint> weierstrass_points(const HyperellipticCurve& c, mpfr_prec_t prec) {
    std::vector<WeierstrassPoint> out;
    for (const auto& [fac, mult] : factor_over_q(c.f)) {
        (void)mult;  // f separable: all multiplicities 1
        CVec roots = certified_roots(fac.primitive_integer(), prec);
        std::vector<Rat> rat = rational_roots(fac);
        for (const ComplexBall& r : roots) {
            WeierstrassPoint w;
            w.x = r;
            w.minpoly = fac;
            if (fac.degree() == 1) w.exact_x = -fac.coeff(0) / fac.coeff(1);
            out.push_back(std::move(w));
        }
    }
    // deterministic order: by real part then imaginary part of the midpoint
    std::sort(out.begin(), out.end(), [](const WeierstrassPoint& a, const WeierstrassPoint& b) {
        double ar = a.x.re().mid_d(), br = b.x.re().mid_d();
        if (ar != br) return ar < br;
        return a.x.im().mid_d() < b.x.im().mid_d();
    });
    if (c.f.degree() == 2 * c.genus + 1) {
        WeierstrassPoint w;
        w.infinity = true;
        out.push_back(std::move(w));
    }
    return out;
}

MumfordDivisor mumford_identity() { return {QPoly::constant(1), QPoly()}; }

void validate_mumford(const HyperellipticCurve& c, const MumfordDivisor& d) {
    if (d.a.is_zero() || !d.a.is_monic()) throw std::invalid_argument("mumford: a must be monic");
    if (!d.b.is_zero() && d.b.degree() >= d.a.degree())
        throw std::invalid_argument("mumford: deg b must be < deg a");
    QPoly r = (d.b * d.b - c.f).divrem(d.a).second;
    if (!r.is_zero()) throw std::invalid_argument("mumford: a does not divide b^2 - f");
}

bool is_semi_reduced(const HyperellipticCurve& c, const MumfordDivisor& d, std::string* why) {
    auto fail = [&](const char* msg) {
        if (why) *why = msg;
        return false;
    };
    if (d.a.is_zero() || !d.a.is_monic()) return fail("a not monic");
    if (!d.b.is_zero() && d.b.degree() >= d.a.degree()) return fail("deg b >= deg a");
    if (!d.a.divides(d.b * d.b - c.f)) return fail("a does not divide b^2 - f");
    // repeated roots of a must be Weierstrass-free violations:
    QPoly g = QPoly::gcd(d.a, d.a.derivative());
    if (g.degree() > 0) {
        // a repeated root r is allowed only if it is NOT a Weierstrass point
        // and the two sheet copies do not collide: for Mumford pairs a
        // repeated non-Weierstrass root means 2p in the support, legal for
        // semi-reduced only when p is not Weierstrass; a repeated Weierstrass
        // root is illegal.
        QPoly w = QPoly::gcd(g, c.f);
        if (w.degree() > 0) return fail("Weierstrass point with multiplicity > 1");
    }
    // no pair p, p^-: a root r with b(r) = -b(r) != 0 cannot occur since b is
    // a function; p and p^- share the same x, so they would both be roots of a
    // with b(r) = y and b(r) = -y, impossible unless y = 0 (Weierstrass).
    // A Weierstrass x-root with y = 0 is fine at multiplicity 1; multiplicity
    // >= 2 was rejected above. Nothing further to check for pairs.
    return true;
}

MumfordDivisor mumford_of_point(const RatPoint& p) {
    if (p.infinity) return mumford_identity();
    return {QPoly({-p.x, Rat(1)}), QPoly::constant(p.y)};
}

MumfordDivisor cantor_compose_reduce(const HyperellipticCurve& c, const MumfordDivisor& d1,
                                     const MumfordDivisor& d2) {
    if (!c.monic_odd) throw std::invalid_argument("cantor arithmetic requires a monic odd model");
    // composition (Cantor, h = 0)
    QPoly e1, e2;
    QPoly d0 = QPoly::xgcd(d1.a, d2.a, e1, e2);
    QPoly c1, c2;
    QPoly d = QPoly::xgcd(d0, d1.b + d2.b, c1, c2);
    QPoly s1 = c1 * e1, s2 = c1 * e2, s3 = c2;
    QPoly a = (d1.a * d2.a).divrem(d * d).first;
    QPoly num = s1 * d1.a * d2.b + s2 * d2.a * d1.b + s3 * (d1.b * d2.b + c.f);
    QPoly b = num.divrem(d).first.divrem(a).second;
    a = a.monic();
    // reduction
    while (a.degree() > c.genus) {
        QPoly a2 = (c.f - b * b).divrem(a).first;
        a2 = a2.monic();
        QPoly b2 = (-b).divrem(a2).second;
        a = std::move(a2);
        b = std::move(b2);
    }
    if (a.degree() == 0) return mumford_identity();
    return {a, b};
}

MumfordDivisor cantor_multiple(const HyperellipticCurve& c, const MumfordDivisor& d, unsigned long n) {
    MumfordDivisor acc = mumford_identity();
    MumfordDivisor base = d;
    while (n > 0) {
        if (n & 1) acc = cantor_compose_reduce(c, acc, base);
        base = cantor_compose_reduce(c, base, base);
        n >>= 1;
    }
    return acc;
}

std::vector<CPoint> divisor_points(const HyperellipticCurve& c, const MumfordDivisor& d, mpfr_prec_t prec) {
    (void)c;
    std::vector<CPoint> out;
    if (d.is_identity()) return out;
    for (const auto& [fac, mult] : factor_over_q(d.a)) {
        for (const ComplexBall& r : certified_roots(fac.primitive_integer(), prec)) {
            CPoint p;
            p.x = r;
            p.y = d.b.eval(r);
            for (int i = 0; i < mult; ++i) out.push_back(p);
        }
    }
    return out;
}

}  // namespace hh
