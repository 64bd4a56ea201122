#include "hh/nonarch.hpp"

#include <sstream>
#include <stdexcept>

namespace hh {

namespace {

// exact |t|_p as a rational power of p
Rat absp(const Rat& t, const Int& p) {
    if (t == 0) return Rat(0);
    long v = valuation(t, p);
    Rat out(1);
    for (long i = 0; i < std::labs(v); ++i) out *= Rat(p);
    if (v > 0) out = 1 / out;
    return out;
}

Rat rat_max(const Rat& a, const Rat& b) { return a > b ? a : b; }

}  // namespace

Rat metric_nonarch(const HyperellipticCurve& c, const Int& p, const RatPoint& u, const RatPoint& v) {
    // normalized projective coordinates: affine (x : 1 : y), infinity (1 : 0 : 0)
    int gp1 = c.genus + 1;
    auto chart1 = [&](const RatPoint& t) {  // |x| <= |s|
        return !t.infinity && (t.x == 0 || valuation(t.x, p) >= 0);
    };
    auto chart2 = [&](const RatPoint& t) {  // |x| >= |s|
        return t.infinity || (t.x != 0 && valuation(t.x, p) <= 0);
    };
    if (chart1(u) && chart1(v)) {
        return rat_max(absp(u.x - v.x, p), absp(u.y - v.y, p));
    }
    if (chart2(u) && chart2(v)) {
        Rat su = u.infinity ? Rat(0) : 1 / u.x;
        Rat sv = v.infinity ? Rat(0) : 1 / v.x;
        Rat ypu(0), ypv(0);
        if (!u.infinity) {
            ypu = u.y;
            for (int i = 0; i < gp1; ++i) ypu /= u.x;
        }
        if (!v.infinity) {
            ypv = v.y;
            for (int i = 0; i < gp1; ++i) ypv /= v.x;
        }
        return rat_max(absp(su - sv, p), absp(ypu - ypv, p));
    }
    return Rat(1);
}

MetricAxiomReport check_metric_axioms(const HyperellipticCurve& c, const Int& p,
                                      const std::vector<RatPoint>& sample) {
    MetricAxiomReport rep;
    auto describe = [](const RatPoint& t) {
        std::ostringstream os;
        if (t.infinity)
            os << "inf";
        else
            os << "(" << t.x.get_str() << "," << t.y.get_str() << ")";
        return os.str();
    };
    size_t n = sample.size();
    for (size_t i = 0; i < n && rep.all_ok(); ++i)
        for (size_t j = 0; j < n && rep.all_ok(); ++j) {
            Rat dij = metric_nonarch(c, p, sample[i], sample[j]);
            if (dij > 1) {
                rep.bounded_by_one_ok = false;
                rep.counterexample = describe(sample[i]) + " " + describe(sample[j]);
                break;
            }
            if (metric_nonarch(c, p, sample[j], sample[i]) != dij) {
                rep.symmetry_ok = false;
                rep.counterexample = describe(sample[i]) + " " + describe(sample[j]);
                break;
            }
            if (i == j && dij != 0) {
                rep.identity_ok = false;
                rep.counterexample = describe(sample[i]);
                break;
            }
            if (i != j && dij == 0 && !(sample[i] == sample[j])) {
                rep.identity_ok = false;
                rep.counterexample = describe(sample[i]) + " " + describe(sample[j]);
                break;
            }
            for (size_t k = 0; k < n; ++k) {
                Rat djk = metric_nonarch(c, p, sample[j], sample[k]);
                Rat dik = metric_nonarch(c, p, sample[i], sample[k]);
                if (dik > dij + djk) {
                    rep.triangle_ok = false;
                    rep.counterexample = describe(sample[i]) + " " + describe(sample[j]) + " " +
                                         describe(sample[k]);
                    break;
                }
            }
        }
    return rep;
}

void validate_bad_place(const BadPlaceData& d) {
    if (!qmat_is_symmetric(d.matrix)) throw std::invalid_argument("intersection matrix not symmetric");
    if (!d.multiplicities.empty()) {
        if (d.multiplicities.size() != d.matrix.size())
            throw std::invalid_argument("multiplicities size mismatch");
        for (size_t i = 0; i < d.matrix.size(); ++i) {
            Rat acc(0);
            for (size_t j = 0; j < d.matrix.size(); ++j) acc += d.matrix[i][j] * Rat(d.multiplicities[j]);
            if (acc != 0) throw std::invalid_argument("matrix * multiplicities != 0");
        }
    }
    if (d.b < 0) throw std::invalid_argument("blowup chain length must be >= 0");
    if (d.residue_size < 2) throw std::invalid_argument("residue size must be >= 2");
}

Rat phi_bound_local(const QMat& intersection, int genus) {
    QMat plus = moore_penrose(intersection);
    auto [lo, hi] = qmat_entry_range(plus);
    return Rat(genus) * Rat(genus) * (hi - lo);
}

RealBall b1_bound(const std::vector<BadPlaceData>& bad, int genus, mpfr_prec_t prec) {
    RealBall acc(prec);
    for (const BadPlaceData& d : bad) {
        Rat local = phi_bound_local(d.matrix, genus);
        if (local == 0) continue;
        acc += RealBall::from_integer(d.residue_size, prec).log() * RealBall::from_rational(local, prec);
    }
    return acc;
}

RealBall b2_bound(const std::vector<BadPlaceData>& bad, long d, long e, mpfr_prec_t prec) {
    if (d < 1 || e < 1) throw std::invalid_argument("b2_bound needs degrees >= 1");
    RealBall acc(prec);
    for (const BadPlaceData& bp : bad) {
        if (bp.b == 0) continue;
        acc += RealBall::from_integer(bp.residue_size, prec).log() *
               RealBall::exact(bp.b, prec) * RealBall::exact(d, prec) * RealBall::exact(e, prec);
    }
    return acc;
}

}  // namespace hh
