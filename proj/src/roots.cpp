#include "hh/roots.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <stdexcept>

namespace hh {

namespace {

// Aberth-Ehrlich in std::complex<double> to get starting points.
std::vector<std::complex<double>> aberth_double(const QPoly& p) {
    int n = p.degree();
    std::vector<std::complex<double>> c(n + 1);
    for (int i = 0; i <= n; ++i) c[i] = p.coeff(i).get_d();
    // Cauchy-style radius
    double lead = std::abs(c[n]);
    double radius = 0;
    for (int i = 0; i < n; ++i) radius = std::max(radius, std::pow(std::abs(c[i]) / lead, 1.0 / (n - i)));
    radius = 2 * radius + 1;
    std::vector<std::complex<double>> z(n);
    for (int i = 0; i < n; ++i) {
        double th = 2 * M_PI * i / n + 0.4;
        z[i] = radius * std::complex<double>(std::cos(th), std::sin(th)) * (0.3 + 0.7 * (i + 1.0) / n);
    }
    auto eval = [&](std::complex<double> x, std::complex<double>& d) {
        std::complex<double> v = 0, dv = 0;
        for (int i = n; i >= 0; --i) {
            dv = dv * x + v;
            v = v * x + c[i];
        }
        d = dv;
        return v;
    };
    for (int iter = 0; iter < 400; ++iter) {
        double moved = 0;
        for (int i = 0; i < n; ++i) {
            std::complex<double> d;
            std::complex<double> v = eval(z[i], d);
            if (std::abs(v) == 0) continue;
            std::complex<double> corr = 0;
            for (int j = 0; j < n; ++j)
                if (j != i) corr += 1.0 / (z[i] - z[j]);
            std::complex<double> newton = v / d;
            std::complex<double> step = newton / (1.0 - newton * corr);
            z[i] -= step;
            moved = std::max(moved, std::abs(step));
        }
        if (moved < 1e-14) break;
    }
    return z;
}

// One high-precision Newton refinement pass on the midpoint.
ComplexBall newton_refine(const QPoly& p, const QPoly& dp, ComplexBall z, int iters) {
    for (int i = 0; i < iters; ++i) {
        ComplexBall m = z.midpoint();
        ComplexBall v = p.eval(m);
        ComplexBall d = dp.eval(m);
        if (d.abs_sq().contains_zero()) break;
        z = m - v / d;
    }
    return z;
}

}  // namespace

std::optional<ComplexBall> interval_newton_certify(const QPoly& p, const ComplexBall& disc) {
    QPoly dp = p.derivative();
    ComplexBall mid = disc.midpoint();
    ComplexBall dval = dp.eval(disc);
    if (dval.abs_sq().contains_zero()) return std::nullopt;
    ComplexBall n = mid - p.eval(mid) / dval;
    // containment: n's box inside disc's box
    auto inside = [](const RealBall& inner, const RealBall& outer) {
        return outer.lower_bound().certainly_lt(inner.lower_bound()) &&
               inner.upper_bound().certainly_lt(outer.upper_bound());
    };
    if (inside(n.re(), disc.re()) && inside(n.im(), disc.im())) return n;
    return std::nullopt;
}

CVec certified_roots(const QPoly& p, mpfr_prec_t prec) {
    if (p.degree() < 1) return {};
    QPoly sf = p;
    QPoly dp = sf.derivative();
    if (!QPoly::gcd(sf, dp).divides(QPoly::constant(1))) {
        // not squarefree as given
        throw std::invalid_argument("certified_roots requires a squarefree polynomial");
    }
    auto start = aberth_double(sf);
    int n = sf.degree();
    for (mpfr_prec_t work = std::max<mpfr_prec_t>(prec, 64);; work *= 2) {
        if (work > 1 << 20) throw precision_error("certified_roots: escalation cap hit");
        CVec roots;
        roots.reserve(n);
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            ComplexBall z = ComplexBall::from_doubles(start[i].real(), start[i].imag(), work);
            z = newton_refine(sf, dp, z, 8 + (int)std::log2((double)work));
            // build a candidate disc a bit wider than the residual suggests
            ComplexBall m = z.midpoint();
            RealBall res = sf.eval(m).abs();
            RealBall dabs = dp.eval(m).abs();
            if (!dabs.is_positive()) {
                ok = false;
                break;
            }
            RealBall tiny(work);
            mpfr_set_ui_2exp(tiny.mid_mut(), 1, -(long)(work / 2), MPFR_RNDU);
            RealBall delta = (res / dabs.lower_bound()) * 4 + tiny;
            ComplexBall disc(m.re().widened(delta), m.im().widened(delta));
            auto cert = interval_newton_certify(sf, disc);
            if (!cert) {
                ok = false;
                break;
            }
            roots.push_back(*cert);
        }
        if (!ok) continue;
        // pairwise disjoint
        bool disjoint = true;
        for (int i = 0; i < n && disjoint; ++i)
            for (int j = i + 1; j < n && disjoint; ++j)
                if (roots[i].overlaps(roots[j])) disjoint = false;
        if (!disjoint) continue;
        // round down to requested precision
        for (auto& r : roots) r = ComplexBall(r.re().round_prec(prec), r.im().round_prec(prec));
        return roots;
    }
}

namespace {

// Factor a primitive squarefree integer polynomial (monic after the classical
// lead^(n-1) substitution) by subset recombination over certified roots.
std::vector<QPoly> factor_squarefree_primitive(const QPoly& q) {
    int n = q.degree();
    std::vector<QPoly> out;
    if (n <= 1) {
        out.push_back(q.monic());
        return out;
    }
    // monicize: m(X) = lead^(n-1) q(X/lead) is monic with integer coefficients;
    // roots of m are lead*root(q)
    Rat lead = q.leading();
    QPoly m = q.compose_linear(Rat(1) / lead, 0) * [&] {
        Rat s(1);
        for (int i = 0; i < n - 1; ++i) s *= lead;
        return s;
    }();
    mpfr_prec_t prec = 128;
    for (;; prec *= 2) {
        if (prec > 1 << 18) throw precision_error("factor_squarefree_primitive: precision cap");
        CVec roots = certified_roots(m, prec);
        // coefficient size bound for any factor (Mahler-type): prod (1+|z_i|)
        std::vector<int> idx(n);
        for (int i = 0; i < n; ++i) idx[i] = i;
        std::vector<bool> used(n, false);
        std::vector<QPoly> factors;
        bool precision_fail = false;

        // try to peel minimal factors greedily by subset size
        std::function<bool(int)> peel = [&](int remaining) -> bool {
            if (remaining == 0) return true;
            std::vector<int> avail;
            for (int i = 0; i < n; ++i)
                if (!used[i]) avail.push_back(i);
            int k = (int)avail.size();
            for (int size = 1; size <= k; ++size) {
                // iterate subsets of given size
                std::vector<int> comb(size);
                std::function<bool(int, int)> rec = [&](int pos, int from) -> bool {
                    if (pos == size) {
                        // build candidate monic factor from the chosen roots
                        CVec cs{ComplexBall::exact(1, 0, prec)};
                        for (int t : comb) {
                            CVec next(cs.size() + 1, ComplexBall(prec));
                            for (size_t a2 = 0; a2 < cs.size(); ++a2) {
                                next[a2 + 1] += cs[a2];
                                next[a2] -= cs[a2] * roots[t];
                            }
                            // note: building coefficients from low degree up
                            cs = std::move(next);
                        }
                        // candidate integer coefficients
                        std::vector<Rat> cr(cs.size());
                        for (size_t a2 = 0; a2 < cs.size(); ++a2) {
                            const ComplexBall& cb = cs[a2];
                            if (!cb.im().contains_zero()) return false;
                            // nearest integer to the real part
                            double mid = cb.re().mid_d();
                            Int near;
                            mpz_set_d(near.get_mpz_t(), std::nearbyint(mid));
                            if (!cb.re().contains(Rat(near))) return false;
                            // ambiguous if a second integer fits
                            if (cb.re().rad_d() >= 0.5) {
                                precision_fail = true;
                                return false;
                            }
                            cr[a2] = Rat(near);
                        }
                        QPoly cand(cr);
                        if (!cand.divides(m)) return false;
                        factors.push_back(cand);
                        for (int t : comb) used[t] = true;
                        if (peel(remaining - size)) return true;
                        // backtrack
                        factors.pop_back();
                        for (int t : comb) used[t] = false;
                        return false;
                    }
                    for (int i2 = from; i2 < k; ++i2) {
                        comb[pos] = avail[i2];
                        if (rec(pos + 1, i2 + 1)) return true;
                        if (precision_fail) return false;
                    }
                    return false;
                };
                if (rec(0, 0)) return true;
                if (precision_fail) return false;
            }
            return false;
        };
        if (peel(n) && !precision_fail) {
            // undo the monicize substitution: factor f(X) of m gives factor f(lead X)/content
            for (QPoly& f : factors) {
                QPoly g = f.compose_linear(lead, 0);
                out.push_back(g.monic());
            }
            return out;
        }
        if (!precision_fail) throw std::logic_error("factorization peel failed unexpectedly");
    }
}

}  // namespace

std::vector<std::pair<QPoly, int>> factor_over_q(const QPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("factor_over_q(0)");
    std::vector<std::pair<QPoly, int>> out;
    // squarefree decomposition by repeated gcd (Yun-lite; degrees are small)
    QPoly rest = p.monic();
    int mult = 1;
    while (rest.degree() > 0) {
        QPoly g = QPoly::gcd(rest, rest.derivative());
        QPoly sf = rest.divrem(g).first;  // squarefree part of rest
        // factors of sf that do NOT divide g have exact multiplicity `mult`
        if (sf.degree() > 0) {
            QPoly q = sf.primitive_integer();
            for (const QPoly& f : factor_squarefree_primitive(q)) {
                // multiplicity of f in p: count by division
                int e = 0;
                QPoly t = p.monic();
                while (f.divides(t)) {
                    t = t.divrem(f).first;
                    ++e;
                }
                bool seen = false;
                for (auto& fe : out)
                    if (fe.first == f) seen = true;
                if (!seen) out.emplace_back(f, e);
            }
        }
        rest = g;
        ++mult;
        if (mult > p.degree() + 2) break;
    }
    return out;
}

bool is_irreducible_over_q(const QPoly& p) {
    if (p.degree() <= 0) return false;
    if (p.degree() == 1) return true;
    auto f = factor_over_q(p);
    return f.size() == 1 && f[0].second == 1;
}

}  // namespace hh
