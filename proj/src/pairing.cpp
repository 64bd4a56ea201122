#include "hh/pairing.hpp"

#include <algorithm>
#include <stdexcept>

#include "hh/roots.hpp"

namespace hh {

ComplexBall AlgPoint::y_ball(mpfr_prec_t prec) const {
    ComplexBall xv = ComplexBall(x.re().round_prec(prec), x.im().round_prec(prec));
    ComplexBall yv = b.eval(xv);
    if (sign < 0) yv = -yv;
    return yv;
}

namespace {

long kInfVal = 1L << 40;  // stand-in for +infinity in exact valuation math

// --- rational fast path ---------------------------------------------------

long val_or_inf(const Rat& x, const Int& p) { return x == 0 ? kInfVal : valuation(x, p); }

// -log_p d_p(u, v) for two affine rational points (exact, >= 0)
long neglog_metric_rational(int genus, const Int& p, const Rat& xu, const Rat& yu, const Rat& xv,
                            const Rat& yv) {
    bool c1u = xu == 0 || valuation(xu, p) >= 0;
    bool c1v = xv == 0 || valuation(xv, p) >= 0;
    bool c2u = xu != 0 && valuation(xu, p) <= 0;
    bool c2v = xv != 0 && valuation(xv, p) <= 0;
    if (c1u && c1v) {
        long m = std::min(val_or_inf(xu - xv, p), val_or_inf(yu - yv, p));
        if (m >= kInfVal) throw std::invalid_argument("metric of identical points");
        return std::max(0L, m);
    }
    if (c2u && c2v) {
        Rat su = 1 / xu, sv = 1 / xv;
        Rat ypu = yu, ypv = yv;
        for (int i = 0; i < genus + 1; ++i) {
            ypu /= xu;
            ypv /= xv;
        }
        long m = std::min(val_or_inf(su - sv, p), val_or_inf(ypu - ypv, p));
        if (m >= kInfVal) throw std::invalid_argument("metric of identical points");
        return std::max(0L, m);
    }
    return 0;
}

void collect_prime_divisors(const Rat& x, std::vector<Int>& out) {
    if (x == 0) return;
    for (const Int& part : {Int(abs(x.get_num())), Int(x.get_den())}) {
        if (part == 1) continue;
        for (auto& [p, e] : factorize(part)) {
            (void)e;
            out.push_back(p);
        }
    }
}

PlaceExponents pairing_rational(int genus, const Rat& xu, const Rat& yu, const Rat& xv, const Rat& yv) {
    if (xu == xv && yu == yv) throw std::invalid_argument("pairing of identical points");
    std::vector<Int> cand;
    collect_prime_divisors(xu - xv, cand);
    collect_prime_divisors(yu - yv, cand);
    collect_prime_divisors(Rat(xu.get_den()), cand);
    collect_prime_divisors(Rat(xv.get_den()), cand);
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    PlaceExponents out;
    for (const Int& p : cand) {
        long w = neglog_metric_rational(genus, p, xu, yu, xv, yv);
        if (w != 0) out[p] = Rat(w);
    }
    return out;
}

// --- orbit machinery ------------------------------------------------------

// R_t(Z) = Res_X(q1(X), t^d2 q2((Z-X)/t)) via evaluation-interpolation.
QPoly pair_resultant(const QPoly& q1, const QPoly& q2, long t) {
    int dz = q1.degree() * q2.degree();
    std::vector<Rat> xs, ys;
    Rat tp(1);
    for (int i = 0; i < q2.degree(); ++i) tp *= t;
    for (long k = 0;; ++k) {
        // q2((k - X)/t) * t^d2
        QPoly shifted = q2.compose_linear(Rat(-1, t), Rat(k, t)) * tp;
        xs.emplace_back(k);
        ys.push_back(QPoly::resultant(q1, shifted));
        if ((int)xs.size() == dz + 1) break;
    }
    return lagrange_interpolate(xs, ys);
}

struct Orbit {
    const QPoly* m;  // monic irreducible over Q (caller-owned storage)
    long t0;
    NFElem xu, xv;
};

// linear gcd of q1(X) and t^d2 q2((Z-X)/t) over Q[Z]/m: returns the common
// root A(Z) (i.e. the u-coordinate image in the orbit field).
NFElem orbit_xu(const QPoly& m, const QPoly& q1, const QPoly& q2, long t0) {
    auto lift = [&](const QPoly& q) {
        FPoly<NFElem> f;
        for (int i = 0; i <= q.degree(); ++i) f.c.push_back(NFElem::of_rat(q.coeff(i), &m));
        f.trim();
        return f;
    };
    FPoly<NFElem> a = lift(q1);
    // b(X) = t^d2 q2((Z - X)/t): expand in powers of X with NFElem coefficients
    Rat tp(1);
    for (int i = 0; i < q2.degree(); ++i) tp *= t0;
    // q2((Z-X)/t) = sum_j c_j (Z-X)^j / t^j ; times t^d2
    FPoly<NFElem> b;
    b.c.assign(q2.degree() + 1, NFElem::zero(&m));
    NFElem zgen = NFElem::generator(&m);
    // (Z - X)^j expanded via binomials
    std::vector<std::vector<Rat>> binom(q2.degree() + 1, std::vector<Rat>(q2.degree() + 1, Rat(0)));
    for (int i2 = 0; i2 <= q2.degree(); ++i2) {
        binom[i2][0] = 1;
        for (int j2 = 1; j2 <= i2; ++j2)
            binom[i2][j2] = binom[i2 - 1][j2 - 1] + (j2 <= i2 - 1 ? binom[i2 - 1][j2] : Rat(0));
    }
    for (int j = 0; j <= q2.degree(); ++j) {
        Rat cj = q2.coeff(j);
        if (cj == 0) continue;
        Rat tscale = tp;
        for (int i2 = 0; i2 < j; ++i2) tscale /= t0;
        // (Z - X)^j = sum_k binom(j,k) Z^(j-k) (-X)^k
        NFElem zpow = NFElem::one(&m);
        std::vector<NFElem> zpows;
        for (int k2 = 0; k2 <= j; ++k2) {
            zpows.push_back(zpow);
            zpow = zpow * zgen;
        }
        for (int k2 = 0; k2 <= j; ++k2) {
            Rat coef = binom[j][k2] * tscale;
            if (k2 % 2) coef = -coef;
            b.c[k2] = b.c[k2] + zpows[j - k2] * coef * cj;
        }
    }
    b.trim();
    // Euclidean gcd over the field Q[Z]/m
    FPoly<NFElem> f = a, g = b;
    while (!g.is_zero()) {
        FPoly<NFElem> r = f;
        while (!r.is_zero() && r.degree() >= g.degree()) {
            NFElem fac = r.leading() / g.leading();
            size_t k2 = r.c.size() - g.c.size();
            for (size_t i2 = 0; i2 < g.c.size(); ++i2) r.c[k2 + i2] = r.c[k2 + i2] - fac * g.c[i2];
            r.trim();
        }
        f = std::move(g);
        g = std::move(r);
    }
    if (f.degree() != 1) throw precision_error("orbit_xu: expected a linear gcd");
    return -(f.c[0] / f.c[1]);
}

// refine an x-enclosure of a root of q to higher precision
ComplexBall refine_root(const QPoly& q, const ComplexBall& x, mpfr_prec_t prec) {
    for (const ComplexBall& r : certified_roots(q.primitive_integer(), prec)) {
        if (r.overlaps(x)) return r;
    }
    throw precision_error("refine_root: enclosure lost the root");
}

// --- gated valuation sums -------------------------------------------------

struct MultiplierFamily {
    // lifts of distinct residues of F_{p^r}: polynomials in W (degree < r)
    // with small nonnegative integer coefficients; for r = 1 plain integers.
    int r = 1;
    QPoly h;  // modulus for W (degree r, irreducible mod p); unused when r = 1
    std::vector<QPoly> elems;
};

MultiplierFamily build_family(const Int& p, size_t count) {
    MultiplierFamily fam;
    long pl = p < 1000000 ? mpz_get_si(p.get_mpz_t()) : 1000000;
    // smallest r with p^r >= count + 1
    Int need(count + 1);
    Int pk(1);
    int r = 0;
    while (pk < need) {
        pk *= p;
        ++r;
    }
    if (r == 0) r = 1;
    fam.r = r;
    if (r > 1) fam.h = find_irreducible_mod_p(p, r);
    // enumerate residues: digits base p (capped for giant p)
    for (size_t k = 0; fam.elems.size() < count; ++k) {
        size_t t = k;
        std::vector<Rat> coeffs(r, Rat(0));
        for (int i = 0; i < r; ++i) {
            coeffs[i] = Rat((long)(t % pl));
            t /= pl;
        }
        fam.elems.emplace_back(coeffs);
        if (k > 10 * count + 100) break;
    }
    return fam;
}

// Polynomials in W over Q[Z]/m, used as elements of the unramified extension.
using WPoly = FPoly<NFElem>;

WPoly wpoly_of(const NFElem& e) {
    WPoly w;
    w.c.push_back(e);
    w.trim();
    return w;
}

WPoly wpoly_scale_add(const WPoly& acc, const QPoly& mult, const NFElem& elt, const QPoly& m) {
    // acc + mult(W) * elt
    WPoly out = acc;
    if (out.c.size() < (size_t)mult.degree() + 1) out.c.resize(mult.degree() + 1, NFElem::zero(&m));
    for (int i = 0; i <= mult.degree(); ++i)
        out.c[i] = out.c[i] + elt * mult.coeff(i);
    out.trim();
    return out;
}

// v_p of the norm of an element of (Q[Z]/m)[W]/h down to Q; h irreducible mod
// p of degree r (when r = 1 the element is plain NFElem).
long vp_norm(const WPoly& e, const MultiplierFamily& fam, const QPoly& m, const Int& p) {
    if (e.is_zero()) return kInfVal;
    NFElem nm = NFElem::zero(&m);
    if (fam.r == 1) {
        nm = e.c[0];
    } else {
        // resultant over the field Q[Z]/m of h (in W) and e
        FPoly<NFElem> hf;
        for (int i = 0; i <= fam.h.degree(); ++i) hf.c.push_back(NFElem::of_rat(fam.h.coeff(i), &m));
        hf.trim();
        nm = fpoly_resultant(hf, e, NFElem::one(&m));
    }
    if (nm.is_zero()) return kInfVal;
    Rat q = nm.norm();
    if (q == 0) return kInfVal;
    return valuation(q, p);
}

// sum over places w|p of M' = (Q[Z]/m)[W]/h of f_w * max(0, min_i v_w(L_i)),
// divided by r (giving the sum over places of M). In plain mode all list
// elements are known p-integral, so the clamp is a no-op and the inner
// min(v, 0) term vanishes. The caller skips zero elements.
Rat gated_min_sum(const std::vector<NFElem>& list, const QPoly& m, const Int& p, bool plain) {
    size_t kk = list.size();
    int n = m.degree();
    size_t need = kk * (size_t)n * 4 + 2;
    MultiplierFamily fam = build_family(p, need);
    size_t outer_need = kk * (size_t)n * (size_t)fam.r + 1;
    size_t inner_need = (size_t)n * (size_t)fam.r + 1;
    if (fam.elems.size() < std::max(outer_need, inner_need))
        fam = build_family(p, std::max(outer_need, inner_need));

    long best = kInfVal;
    // moment-curve combinations: E_s = L0 + s L1 + s^2 L2 + ...
    for (size_t si = 0; si < outer_need && si < fam.elems.size(); ++si) {
        const QPoly& s = fam.elems[si];
        WPoly e = wpoly_of(list[0]);
        QPoly spow = QPoly::constant(1);
        for (size_t i = 1; i < kk; ++i) {
            // spow = s^i reduced mod h (keep degree < r)
            spow = spow * s;
            if (fam.r > 1 && spow.degree() >= fam.r) spow = spow.divrem(fam.h).second;
            e = wpoly_scale_add(e, spow, list[i], m);
        }
        long vn = vp_norm(e, fam, m, p);
        if (vn >= kInfVal) continue;  // degenerate combination; another s works
        long inner = 0;
        if (!plain) {
            // sum_w f_w min(v_w(E), 0) = min over nonzero residues s' of
            // v_p N(E + s')
            inner = kInfVal;
            for (size_t ti = 1; ti < inner_need + 1 && ti < fam.elems.size(); ++ti) {
                WPoly e2 = wpoly_scale_add(e, fam.elems[ti], NFElem::one(&m), m);
                long v2 = vp_norm(e2, fam, m, p);
                inner = std::min(inner, v2);
            }
            if (inner >= kInfVal) continue;
        }
        best = std::min(best, vn - inner);
    }
    if (best >= kInfVal) throw precision_error("gated_min_sum: no usable combination");
    Rat out(best);
    out /= fam.r;
    return out;
}

enum class Integrality { AllInt, AllNonInt, Mixed };

// root-valuation pattern of q at p from its Newton polygon (root valuation of
// an edge is -slope)
Integrality integrality_pattern(const QPoly& q, const Int& p) {
    bool any_int = false, any_non = false;
    for (const auto& s : newton_polygon(q, p)) {
        if (s.num > 0)
            any_non = true;  // slope > 0: roots of negative valuation
        else
            any_int = true;
    }
    if (any_int && any_non) return Integrality::Mixed;
    return any_non ? Integrality::AllNonInt : Integrality::AllInt;
}

// valuation bound V for the gate exponent
long vbound_for(const std::vector<NFElem>& elts, const QPoly& m, const Int& p) {
    int n = m.degree();
    // beta bounds how negative v_w(Z) can be: the most negative root
    // valuation of m is -(max slope); slopes are num/den with den > 0
    long beta = 0;
    for (const auto& s : newton_polygon(m, p)) {
        if (s.num > 0) beta = std::max(beta, (s.num + s.den - 1) / s.den);
    }
    long v = 1;
    for (const NFElem& e : elts) {
        if (e.is_zero()) continue;
        long dv = 0;
        for (const Rat& c : e.poly().coeffs()) {
            if (c == 0) continue;
            Int den = c.get_den();
            if (den % p == 0) dv = std::max(dv, valuation(den, p));
        }
        Rat nm = e.norm();
        long vn = nm == 0 ? 0 : valuation(nm, p);
        long d_elt = dv + (long)(n - 1) * beta;
        v = std::max(v, std::labs(vn) + (long)n * d_elt + 1);
    }
    return v;
}

// contribution at p of one pair-orbit: sum over places w|p of M of
// f_w * (-log_p d_w) for the pair (xu, xv) with y-functions; the full metric
// with chart gates and inclusion-exclusion.
Rat orbit_prime_contribution(int genus, const Orbit& orb, const QPoly& qu, const QPoly& qv,
                             const NFElem& yu, const NFElem& yv, const Int& p) {
    const QPoly& m = *orb.m;
    NFElem one = NFElem::one(&m);
    Rat pr(p);
    NFElem dx = orb.xu - orb.xv;
    NFElem dy = yu - yv;

    Integrality iu = integrality_pattern(qu, p), iv = integrality_pattern(qv, p);
    auto plain_run = [&](std::vector<NFElem> lst) -> Rat {
        std::vector<NFElem> nonzero;
        for (auto& e : lst)
            if (!e.is_zero()) nonzero.push_back(e);
        if (nonzero.empty()) throw std::invalid_argument("pairing of identical points (orbit)");
        return gated_min_sum(nonzero, m, p, /*plain=*/true);
    };

    // Uniform-chart fast paths: both families of roots integral at p puts
    // every conjugate pair in the first affine chart (and the chart-2 /
    // overlap terms cancel); both non-integral is the symmetric picture; a
    // uniform mismatch means the reductions never meet.
    if (iu == Integrality::AllInt && iv == Integrality::AllInt) {
        return plain_run({dx, dy});
    }
    if (iu == Integrality::AllNonInt && iv == Integrality::AllNonInt) {
        NFElem xiu = orb.xu.inverse(), xiv = orb.xv.inverse();
        NFElem ds = xiv - xiu;
        NFElem dyp = yu * xiu.pow(genus + 1) - yv * xiv.pow(genus + 1);
        return plain_run({ds, dyp});
    }
    if (iu != Integrality::Mixed && iv != Integrality::Mixed) return Rat(0);

    // Mixed-slope case: the full gated inclusion-exclusion.
    bool xu_zero = orb.xu.is_zero(), xv_zero = orb.xv.is_zero();
    NFElem xiu = xu_zero ? one : orb.xu.inverse();
    NFElem xiv = xv_zero ? one : orb.xv.inverse();
    NFElem ds = (xu_zero || xv_zero) ? NFElem::of_rat(1, &m) : xiv - xiu;
    NFElem dyp = (xu_zero || xv_zero)
                     ? NFElem::of_rat(1, &m)
                     : yu * xiu.pow(genus + 1) - yv * xiv.pow(genus + 1);
    // gates: open (valuation 0) exactly on the matching chart side
    NFElem g1u = one + orb.xu * orb.xu * pr;  // open iff v(xu) >= 0
    NFElem g1v = one + orb.xv * orb.xv * pr;
    NFElem g2u = xu_zero ? NFElem::of_rat(Rat(1) / pr, &m) : one + xiu * xiu * pr;
    NFElem g2v = xv_zero ? NFElem::of_rat(Rat(1) / pr, &m) : one + xiv * xiv * pr;

    auto gate_pow = [&](std::vector<NFElem> gs, long v) {
        NFElem acc = NFElem::of_rat(Rat(1), &m);
        for (const NFElem& g : gs) acc = acc * g;
        acc = acc.pow((unsigned long)(v + 1));
        Rat pv(1);
        for (long i = 0; i < v; ++i) pv *= pr;
        return acc * pv;
    };

    auto run = [&](std::vector<NFElem> lst, std::vector<NFElem> gates) -> Rat {
        std::vector<NFElem> nonzero;
        for (auto& e : lst)
            if (!e.is_zero()) nonzero.push_back(e);
        if (nonzero.empty()) throw std::invalid_argument("pairing of identical points (orbit)");
        std::vector<NFElem> all = nonzero;
        for (auto& g : gates) all.push_back(g);
        long v = vbound_for(all, m, p);
        nonzero.push_back(gate_pow(gates, v));
        return gated_min_sum(nonzero, m, p, /*plain=*/false);
    };

    Rat w1 = run({dx, dy}, {g1u, g1v});
    // on the all-gates-open locus the chart-1 and chart-2 minima agree, so
    // the overlap term can reuse the chart-1 list under the joint gate
    Rat w2 = run({dx, dy}, {g1u, g1v, g2u, g2v});
    Rat w3 = run({ds, dyp}, {g2u, g2v});
    return w1 + w3 - w2;
}

// candidate primes for an orbit: primes where some element norm or
// denominator is non-trivial
std::vector<Int> orbit_candidate_primes(const std::vector<NFElem>& elts, const QPoly& m) {
    std::vector<Int> out;
    auto add = [&](const Rat& q) {
        if (q == 0) return;
        for (const Int& part : {Int(abs(q.get_num())), Int(q.get_den())}) {
            if (part == 1) continue;
            for (auto& [p, e] : factorize(part)) {
                (void)e;
                out.push_back(p);
            }
        }
    };
    for (const NFElem& e : elts) {
        if (e.is_zero()) continue;
        add(e.norm());
        for (const Rat& c : e.poly().coeffs()) add(Rat(c.get_den()));
    }
    for (const Rat& c : m.coeffs()) add(Rat(c.get_den()));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// full contribution of one pair-orbit (all conjugate pairs at all primes)
PlaceExponents orbit_total(int genus, const Orbit& orb, const QPoly& qu, const QPoly& qv,
                           const QPoly& bu, int su, const QPoly& bv, int sv) {
    const QPoly& m = *orb.m;
    auto reduce_b = [&](const QPoly& b, const NFElem& at, int sgn) {
        NFElem acc = NFElem::zero(&m);
        for (int i = b.degree(); i >= 0; --i) acc = acc * at + NFElem::of_rat(b.coeff(i), &m);
        if (sgn < 0) acc = -acc;
        return acc;
    };
    NFElem yu = reduce_b(bu, orb.xu, su);
    NFElem yv = reduce_b(bv, orb.xv, sv);
    NFElem dx = orb.xu - orb.xv, dy = yu - yv;
    if (dx.is_zero() && dy.is_zero()) throw std::invalid_argument("supports not disjoint");
    std::vector<NFElem> probe{dx, dy, orb.xu, orb.xv, yu, yv};
    PlaceExponents out;
    for (const Int& p : orbit_candidate_primes(probe, m)) {
        Rat w = orbit_prime_contribution(genus, orb, qu, qv, yu, yv, p);
        if (w != 0) out[p] += w;
    }
    return out;
}

Orbit build_orbit(const QPoly& q1, const QPoly& q2, long t0, const QPoly& factor) {
    // NFElems keep a pointer to `factor`, which the caller must keep alive.
    Orbit orb;
    orb.m = &factor;
    orb.t0 = t0;
    orb.xu = orbit_xu(factor, q1, q2, t0);
    orb.xv = (NFElem::generator(&factor) - orb.xu) * Rat(1, t0);
    NFElem chk1 = NFElem::zero(&factor), chk2 = NFElem::zero(&factor);
    for (int i = q1.degree(); i >= 0; --i) chk1 = chk1 * orb.xu + NFElem::of_rat(q1.coeff(i), &factor);
    for (int i = q2.degree(); i >= 0; --i) chk2 = chk2 * orb.xv + NFElem::of_rat(q2.coeff(i), &factor);
    if (!chk1.is_zero() || !chk2.is_zero()) throw std::logic_error("orbit coordinate images invalid");
    return orb;
}

long choose_t(const QPoly& q1, const QPoly& q2, QPoly* r_out) {
    for (long t = 1; t < 200; ++t) {
        QPoly r = pair_resultant(q1, q2, t);
        if (r.degree() != q1.degree() * q2.degree()) continue;
        if (QPoly::gcd(r, r.derivative()).degree() == 0) {
            *r_out = r;
            return t;
        }
    }
    throw precision_error("choose_t: no separating t found");
}

}  // namespace

PlaceExponents pairing_nonarch(const HyperellipticCurve& curve, const AlgPoint& u, const AlgPoint& v) {
    if (u.is_rational() && v.is_rational()) {
        return pairing_rational(curve.genus, u.rational_x(), u.rational_y(), v.rational_x(),
                                v.rational_y());
    }
    QPoly r;
    long t0 = choose_t(u.q, v.q, &r);
    auto factors = factor_over_q(r);
    // identify the factor whose roots include z = x_u + t0 x_v
    mpfr_prec_t prec = std::max<mpfr_prec_t>(u.x.prec(), 128);
    for (int attempt = 0; attempt < 8; ++attempt, prec *= 2) {
        ComplexBall xu = attempt == 0 ? u.x : refine_root(u.q, u.x, prec);
        ComplexBall xv = attempt == 0 ? v.x : refine_root(v.q, v.x, prec);
        ComplexBall z = xu + xv * RealBall::exact(t0, prec);
        const QPoly* hit = nullptr;
        bool ambiguous = false;
        for (const auto& [f, e] : factors) {
            (void)e;
            if (f.eval(z).contains_zero()) {
                if (hit) ambiguous = true;
                hit = &f;
            }
        }
        if (!hit) throw std::logic_error("pairing_nonarch: z matches no factor");
        if (ambiguous) continue;
        Orbit orb = build_orbit(u.q, v.q, t0, *hit);
        PlaceExponents total = orbit_total(curve.genus, orb, u.q, v.q, u.b, u.sign, v.b, v.sign);
        // per-pair value: divide the orbit total by the orbit size
        for (auto& [p, c] : total) c /= hit->degree();
        return total;
    }
    throw precision_error("pairing_nonarch: factor identification stayed ambiguous");
}

RealBall place_exponents_log(const PlaceExponents& pe, mpfr_prec_t prec) {
    RealBall acc(prec);
    for (const auto& [p, c] : pe) {
        acc += RealBall::from_integer(p, prec).log() * RealBall::from_rational(c, prec);
    }
    return acc;
}

std::vector<AlgPoint> algebraic_points(const HyperellipticCurve& curve, const MumfordDivisor& d,
                                       mpfr_prec_t prec) {
    std::vector<AlgPoint> out;
    if (d.is_identity()) return out;
    for (const auto& [f, mult] : factor_over_q(d.a)) {
        QPoly bred = d.b.divrem(f).second;
        for (const ComplexBall& r : certified_roots(f.primitive_integer(), prec)) {
            AlgPoint p{f, bred, 1, r};
            for (int i = 0; i < mult; ++i) out.push_back(p);
        }
    }
    (void)curve;
    return out;
}

PlaceExponents log_pairing_nonarch_places(const HyperellipticCurve& curve, const MumfordDivisor& d1,
                                          const MumfordDivisor& d2, mpfr_prec_t prec) {
    (void)prec;
    if (d1.is_identity() || d2.is_identity()) return {};
    // exact disjoint-support check
    QPoly g = QPoly::gcd(d1.a, d2.a);
    if (g.degree() > 0) {
        QPoly db = d1.b - d2.b;
        if (db.is_zero() || QPoly::gcd(g, db).degree() > 0)
            throw std::invalid_argument("supports not disjoint");
    }
    PlaceExponents total;
    auto add_scaled = [&](const PlaceExponents& pe, int scale) {
        for (auto& [p, c] : pe) total[p] += c * scale;
    };
    for (const auto& [f1, e1] : factor_over_q(d1.a)) {
        QPoly b1 = d1.b.divrem(f1).second;
        for (const auto& [f2, e2] : factor_over_q(d2.a)) {
            QPoly b2 = d2.b.divrem(f2).second;
            if (f1.degree() == 1 && f2.degree() == 1) {
                Rat x1 = -f1.coeff(0), x2 = -f2.coeff(0);
                add_scaled(pairing_rational(curve.genus, x1, b1.eval(x1), x2, b2.eval(x2)), e1 * e2);
                continue;
            }
            // orbit sums cover all conjugate pairs of (f1, f2) at once
            QPoly r;
            long t0 = choose_t(f1, f2, &r);
            for (const auto& [mf, me] : factor_over_q(r)) {
                (void)me;
                Orbit orb = build_orbit(f1, f2, t0, mf);
                add_scaled(orbit_total(curve.genus, orb, f1, f2, b1, 1, b2, 1), e1 * e2);
            }
        }
    }
    // drop zero entries
    for (auto it = total.begin(); it != total.end();) {
        if (it->second == 0)
            it = total.erase(it);
        else
            ++it;
    }
    return total;
}

RealBall log_pairing_nonarch(const HyperellipticCurve& curve, const MumfordDivisor& d1,
                             const MumfordDivisor& d2, mpfr_prec_t prec) {
    return place_exponents_log(log_pairing_nonarch_places(curve, d1, d2, prec), prec);
}

}  // namespace hh
