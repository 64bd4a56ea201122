#include "hh/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace hh {

namespace {

// Legendre P_n and derivative at a ball point, by the three-term recurrence
std::pair<RealBall, RealBall> legendre_pair(int n, const RealBall& x) {
    mpfr_prec_t p = x.prec();
    RealBall p0 = RealBall::exact(1L, p), p1 = x;
    if (n == 0) return {p0, RealBall(p)};
    for (int k = 2; k <= n; ++k) {
        RealBall pk = (x * p1 * (2 * k - 1) - p0 * (k - 1)) / k;
        p0 = p1;
        p1 = pk;
    }
    // P'_n = n (x P_n - P_{n-1}) / (x^2 - 1)
    RealBall num = (x * p1 - p0) * n;
    RealBall den = x * x - RealBall::exact(1L, p);
    return {p1, num / den};
}

GLRule build_gl(int n, mpfr_prec_t prec) {
    GLRule rule;
    // the three-term recurrence amplifies ball radii by ~2.42 per step, so
    // evaluate with n-dependent guard bits
    mpfr_prec_t work = prec + 48 + (mpfr_prec_t)(1.35 * n);
    for (int k = 1; k <= n; ++k) {
        // initial guess
        double th = M_PI * (k - 0.25) / (n + 0.5);
        double x0 = std::cos(th);
        RealBall x = RealBall::exact(x0, work);
        // Newton on midpoints
        for (int it = 0; it < 64; ++it) {
            RealBall mid(work);
            mpfr_set(mid.mid_mut(), x.mid(), MPFR_RNDN);
            auto [pv, dv] = legendre_pair(n, mid);
            if (dv.contains_zero()) break;
            RealBall nx = mid - pv / dv;
            if (mpfr_cmp(nx.mid(), x.mid()) == 0) {
                x = nx;
                break;
            }
            x = nx;
        }
        // interval Newton certification with a widened disc
        RealBall mid(work);
        mpfr_set(mid.mid_mut(), x.mid(), MPFR_RNDN);
        RealBall delta(work);
        mpfr_set_ui_2exp(delta.mid_mut(), 1, -(long)(work / 2), MPFR_RNDU);
        for (int widen = 0; widen < 40; ++widen) {
            RealBall disc = mid.widened(delta);
            auto [pv_mid, dv_mid] = legendre_pair(n, mid);
            auto [pv_disc, dv_disc] = legendre_pair(n, disc);
            (void)pv_disc;
            (void)dv_mid;
            if (!dv_disc.contains_zero()) {
                RealBall candidate = mid - pv_mid / dv_disc;
                RealBall lo = disc.lower_bound(), hi = disc.upper_bound();
                if (lo.certainly_lt(candidate.lower_bound()) &&
                    candidate.upper_bound().certainly_lt(hi)) {
                    x = candidate;
                    break;
                }
            }
            delta = delta * 2;
            if (widen == 39) throw precision_error("gauss_legendre: certification failed");
        }
        auto [pv, dv] = legendre_pair(n, x);
        (void)pv;
        RealBall w = RealBall::exact(2L, work) /
                     ((RealBall::exact(1L, work) - x * x) * dv * dv);
        rule.nodes.push_back(x.round_prec(prec));
        rule.weights.push_back(w.round_prec(prec));
    }
    return rule;
}

std::map<std::pair<int, mpfr_prec_t>, GLRule> g_gl_cache;
std::mutex g_gl_mutex;

}  // namespace

const GLRule& gauss_legendre(int n, mpfr_prec_t prec) {
    std::lock_guard<std::mutex> lock(g_gl_mutex);
    auto key = std::make_pair(n, prec);
    auto it = g_gl_cache.find(key);
    if (it == g_gl_cache.end()) it = g_gl_cache.emplace(key, build_gl(n, prec)).first;
    return it->second;
}

RVec gauss_chebyshev_nodes(int n, mpfr_prec_t prec) {
    RVec nodes;
    RealBall pi = RealBall::pi(prec + 16);
    for (int k = 1; k <= n; ++k) {
        RealBall arg = pi * (2 * k - 1) / (2 * n);
        nodes.push_back(arg.cos().round_prec(prec));
    }
    return nodes;
}

ComplexBall integrate_gl(const std::function<ComplexBall(const RealBall&)>& f, int n,
                         const RealBall& rho, const RealBall& m, mpfr_prec_t prec) {
    const GLRule& rule = gauss_legendre(n, prec);
    ComplexBall acc(prec);
    for (int k = 0; k < n; ++k) acc += f(rule.nodes[k]) * rule.weights[k];
    // tail: 8 m rho^{-2n} / (1 - 1/rho)
    RealBall tail = m * 8 / (rho.pow_ui(2 * (unsigned long)n) * (RealBall::exact(1L, prec) - rho.recip()));
    RealBall pad = tail.abs().upper_bound();
    return {acc.re().widened(pad), acc.im().widened(pad)};
}

ComplexBall integrate_gc(const std::function<ComplexBall(const RealBall&)>& g, int n,
                         const RealBall& rho, const RealBall& m, mpfr_prec_t prec) {
    RVec nodes = gauss_chebyshev_nodes(n, prec);
    ComplexBall acc(prec);
    for (int k = 0; k < n; ++k) acc += g(nodes[k]);
    RealBall pi = RealBall::pi(prec);
    acc = acc * (pi / n);
    RealBall tail = m * pi * 2 / (rho.pow_ui(2 * (unsigned long)n) - RealBall::exact(1L, prec));
    RealBall pad = tail.abs().upper_bound();
    return {acc.re().widened(pad), acc.im().widened(pad)};
}

namespace {
int nodes_for(const RealBall& rho, const RealBall& m, const RealBall& tol, double c) {
    // smallest n with c * m * rho^{-2n} <= tol (double estimate, then slack)
    double lr = std::log(std::max(1.0 + 1e-9, rho.lower_d()));
    double lm = std::log(std::max(1e-300, m.upper_d() * c / std::max(1e-300, tol.lower_d())));
    int n = (int)std::ceil(lm / (2 * lr)) + 4;
    return std::max(4, std::min(n, 4000));
}
}  // namespace

int gl_nodes_for(const RealBall& rho, const RealBall& m, const RealBall& tol) {
    return nodes_for(rho, m, tol, 8.0 / (1 - 1 / rho.lower_d()));
}

int gc_nodes_for(const RealBall& rho, const RealBall& m, const RealBall& tol) {
    return nodes_for(rho, m, tol, 2 * M_PI / (1 - std::pow(rho.lower_d(), -2.0)));
}

}  // namespace hh
