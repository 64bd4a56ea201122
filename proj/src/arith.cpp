#include "hh/arith.hpp"

#include <stdexcept>

#include "hh/roots.hpp"

namespace hh {

Rat abs_at_place(const Rat& x, const Place& v) {
    if (x == 0) return Rat(0);
    if (v.is_archimedean()) return abs(x);
    long e = valuation(x, v.p);
    Rat out(1);
    Rat pr(v.p);
    for (long i = 0; i < std::labs(e); ++i) out *= pr;
    if (e > 0) out = 1 / out;
    return out;
}

RealBall height_rational(const Rat& x, mpfr_prec_t prec) {
    if (x == 0) return RealBall(prec);
    Int num = abs(Int(x.get_num()));
    Int den = Int(x.get_den());
    Int m = num > den ? num : den;
    if (m == 1) return RealBall(prec);
    return RealBall::from_integer(m, prec).log();
}

RealBall height_polynomial(const QPoly& p, mpfr_prec_t prec) {
    if (p.is_zero()) throw std::invalid_argument("zero polynomial");
    QPoly prim = p.primitive_integer();
    Int m(1);
    for (const Rat& c : prim.coeffs()) {
        Int a = abs(Int(c.get_num()));
        if (a > m) m = a;
    }
    if (m == 1) return RealBall(prec);
    return RealBall::from_integer(m, prec).log();
}

RealBall height_sum_upper(const RealBall& h1, const RealBall& h2, const Rat& degree_ratio) {
    mpfr_prec_t p = std::max(h1.prec(), h2.prec());
    RealBall log2 = RealBall::exact(2L, p).log();
    return h1 + h2 + log2 * RealBall::from_rational(degree_ratio, p);
}

RealBall log_mahler_measure(const QPoly& p, mpfr_prec_t prec) {
    if (p.is_zero()) throw std::invalid_argument("zero polynomial");
    QPoly prim = p.primitive_integer();
    RealBall acc = RealBall::from_integer(abs(Int(prim.leading().get_num())), prec).log();
    if (prim.degree() == 0) return acc;
    QPoly sf = prim.squarefree_part();
    if (sf.degree() != prim.degree())
        throw std::invalid_argument("log_mahler_measure expects a squarefree polynomial");
    for (const ComplexBall& r : certified_roots(prim, prec)) {
        RealBall a = r.abs();
        RealBall one = RealBall::exact(1L, prec);
        // log^+ |r|: use max(|r|, 1) through the hull to stay sound near 1
        acc += RealBall::max(a, one).log();
    }
    return acc;
}

RealBall height_algebraic(const QPoly& vanishing, const ComplexBall& which_root, mpfr_prec_t prec) {
    // Conjugate roots of the same irreducible factor share their height, so it
    // is enough to identify the factor: pick the one with the nearest
    // certified root to the approximation.
    const QPoly* best = nullptr;
    double best_dist = 0;
    std::vector<std::pair<QPoly, int>> factors = factor_over_q(vanishing);
    for (const auto& [f, mult] : factors) {
        (void)mult;
        for (const ComplexBall& r : certified_roots(f.primitive_integer(), prec)) {
            ComplexBall d = r - which_root;
            double dist = d.abs().mid_d();
            if (!best || dist < best_dist) {
                best = &f;
                best_dist = dist;
            }
        }
    }
    if (!best) throw std::invalid_argument("height_algebraic: no factors");
    return log_mahler_measure(best->primitive_integer(), prec) / (long)best->degree();
}

RealBall conjugate_height_sum(const QPoly& irreducible_monic, mpfr_prec_t prec) {
    return log_mahler_measure(irreducible_monic.primitive_integer(), prec);
}

}  // namespace hh
