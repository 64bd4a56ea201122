#include "hh/periods.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "hh/quadrature.hpp"
#include "hh/roots.hpp"

namespace hh {

namespace {

ComplexBall qc_ball(const QC& q, mpfr_prec_t prec) { return q.ball(prec); }

// ---- certified square-root continuation ----------------------------------

// One certified continuation step for y = sqrt(F) along [xa, xb]: F and dF
// are ball evaluators. Returns the continued value at xb, or nullopt when the
// step cannot be certified (caller halves the step).
std::optional<ComplexBall> sqrt_step(const std::function<ComplexBall(const ComplexBall&)>& F,
                                     const std::function<ComplexBall(const ComplexBall&)>& dF,
                                     const ComplexBall& xa, const ComplexBall& ya,
                                     const ComplexBall& xb) {
    mpfr_prec_t prec = xa.prec();
    ComplexBall box = ComplexBall::hull(xa, xb);
    ComplexBall fbox = F(box);
    RealBall fabs2 = fbox.abs_sq();
    if (!fabs2.is_positive()) return std::nullopt;
    RealBall s = fabs2.sqrt().sqrt();  // lower bound of |y| on the box via |F|^{1/2}
    RealBall s_lo = s.lower_bound();
    ComplexBall dfbox = dF(box);
    RealBall len = (xb - xa).abs().upper_bound();
    RealBall var = dfbox.abs().upper_bound() * len / (s_lo * 2);
    if (!var.certainly_lt(s_lo)) return std::nullopt;
    ComplexBall fb = F(xb);
    ComplexBall yb;
    try {
        yb = fb.sqrt_near(ya);
    } catch (const precision_error&) {
        return std::nullopt;
    }
    // sanity: the continuation must stay nearer to ya than to -ya
    if (!((yb - ya).abs_sq().certainly_lt((yb + ya).abs_sq()))) return std::nullopt;
    return yb;
}

ComplexBall continue_sqrt(const std::function<ComplexBall(const ComplexBall&)>& F,
                          const std::function<ComplexBall(const ComplexBall&)>& dF,
                          const ComplexBall& x0, const ComplexBall& y0, const ComplexBall& x1,
                          int depth = 0) {
    if (depth > 40) throw precision_error("continue_sqrt: subdivision depth exceeded");
    auto step = sqrt_step(F, dF, x0, y0, x1);
    if (step) return *step;
    ComplexBall half = RealBall::from_rational(Rat(1, 2), x0.prec()) * (x0 + x1);
    ComplexBall ymid = continue_sqrt(F, dF, x0, y0, half, depth + 1);
    return continue_sqrt(F, dF, half, ymid, x1, depth + 1);
}

}  // namespace

ComplexBall continue_y(const HyperellipticCurve& c, const ComplexBall& x0, const ComplexBall& y0,
                       const ComplexBall& x1, mpfr_prec_t prec) {
    QPoly df = c.f.derivative();
    auto F = [&](const ComplexBall& x) { return c.f.eval(x); };
    auto dF = [&](const ComplexBall& x) { return df.eval(x); };
    (void)prec;
    return continue_sqrt(F, dF, x0, y0, x1);
}

namespace {

// ---- Bernstein-ellipse data for a segment --------------------------------

struct EllipseBounds {
    RealBall rho;        // working ellipse parameter (> 1)
    RealBall min_f_abs;  // lower bound of |f| on E_rho
    RealBall max_x_abs;  // upper bound of |x(u)| on E_rho
    bool ok = false;
};

EllipseBounds segment_ellipse(const HyperellipticCurve& c, const CVec& branch,
                              const ComplexBall& mid, const ComplexBall& h, mpfr_prec_t prec) {
    EllipseBounds out;
    RealBall one = RealBall::exact(1L, prec);
    // rho_j = |u_j + sqrt(u_j^2 - 1)| with the branch of modulus >= 1
    RealBall rho_min(prec);
    bool first = true;
    std::vector<RealBall> rho_js;
    for (const ComplexBall& b : branch) {
        ComplexBall u = (b - mid) / h;
        ComplexBall s2 = u * u - ComplexBall(one);
        ComplexBall s = s2.sqrt_principal();
        RealBall c1 = (u + s).abs(), c2 = (u - s).abs();
        RealBall rj = RealBall::max(c1, c2);
        rho_js.push_back(rj);
        rho_min = first ? rj : RealBall::min(rho_min, rj);
        first = false;
    }
    if (!one.certainly_lt(rho_min)) return out;  // a root touches the segment's ellipse family
    // working rho strictly inside
    RealBall rho = one + (rho_min - one) * RealBall::from_rational(Rat(7, 10), prec);
    RealBall cap = RealBall::exact(8L, prec);
    rho = RealBall::min(rho, cap);
    // |f| lower bound on E_rho via per-root distances
    RealBall habs = h.abs();
    RealBall prod = RealBall::from_rational(abs(c.f.leading()), prec);
    for (const RealBall& rj : rho_js) {
        RealBall dist = habs * (rj - rho) * (one - rj.recip()) / 2;
        if (!dist.is_positive()) return out;
        prod = prod * dist.lower_bound();
    }
    out.rho = rho;
    out.min_f_abs = prod;
    out.max_x_abs = mid.abs().upper_bound() + habs.upper_bound() * (rho + rho.recip()) / 2;
    out.ok = true;
    return out;
}

}  // namespace

SegmentIntegral integrate_raw_segment(const HyperellipticCurve& c, const CVec& branch,
                                      const ComplexBall& x0, const ComplexBall& y0,
                                      const ComplexBall& x1, int kmax, mpfr_prec_t prec,
                                      const RealBall& tol) {
    ComplexBall mid = (x0 + x1) * RealBall::from_rational(Rat(1, 2), prec);
    ComplexBall h = (x1 - x0) * RealBall::from_rational(Rat(1, 2), prec);
    EllipseBounds eb = segment_ellipse(c, branch, mid, h, prec);
    if (!eb.ok) {
        // split the segment
        ComplexBall xm = mid;
        SegmentIntegral left = integrate_raw_segment(c, branch, x0, y0, xm, kmax, prec, tol / 2);
        SegmentIntegral right = integrate_raw_segment(c, branch, xm, left.y_end, x1, kmax, prec, tol / 2);
        SegmentIntegral out;
        out.y_end = right.y_end;
        for (int k = 0; k < kmax; ++k) out.values.push_back(left.values[k] + right.values[k]);
        return out;
    }
    // M bound for the largest power
    RealBall ymin = eb.min_f_abs.sqrt().lower_bound();
    RealBall xmax = RealBall::max(eb.max_x_abs, RealBall::exact(1L, prec));
    RealBall m = xmax.pow_ui(kmax > 0 ? kmax - 1 : 0) * h.abs().upper_bound() / ymin;
    int n = gl_nodes_for(eb.rho, m, tol);
    if (n > 140) {
        // a tight ellipse wants a huge rule; halving the segment is cheaper
        ComplexBall xm = mid;
        SegmentIntegral left = integrate_raw_segment(c, branch, x0, y0, xm, kmax, prec, tol / 2);
        SegmentIntegral right = integrate_raw_segment(c, branch, xm, left.y_end, x1, kmax, prec, tol / 2);
        SegmentIntegral out;
        out.y_end = right.y_end;
        for (int k = 0; k < kmax; ++k) out.values.push_back(left.values[k] + right.values[k]);
        return out;
    }
    const GLRule& rule = gauss_legendre(n, prec);

    QPoly df = c.f.derivative();
    auto F = [&](const ComplexBall& x) { return c.f.eval(x); };
    auto dF = [&](const ComplexBall& x) { return df.eval(x); };

    SegmentIntegral out;
    out.values.assign(kmax, ComplexBall(prec));
    ComplexBall xcur = x0, ycur = y0;
    for (int i = 0; i < n; ++i) {
        ComplexBall xi = mid + h * ComplexBall(rule.nodes[i]);
        ComplexBall yi = continue_sqrt(F, dF, xcur, ycur, xi);
        ComplexBall base = h * ComplexBall(rule.weights[i]) / yi;
        ComplexBall xpow = ComplexBall::exact(1, 0, prec);
        for (int k = 0; k < kmax; ++k) {
            out.values[k] += base * xpow;
            xpow = xpow * xi;
        }
        xcur = xi;
        ycur = yi;
    }
    out.y_end = continue_sqrt(F, dF, xcur, ycur, x1);
    // tail bound per power
    for (int k = 0; k < kmax; ++k) {
        RealBall mk = xmax.pow_ui(k) * h.abs().upper_bound() / ymin;
        RealBall tail =
            mk * 8 / (eb.rho.pow_ui(2 * (unsigned long)n) * (RealBall::exact(1L, prec) - eb.rho.recip()));
        RealBall pad = tail.abs().upper_bound();
        out.values[k] = {out.values[k].re().widened(pad), out.values[k].im().widened(pad)};
    }
    return out;
}

namespace {

// ---- rectangles around tree edges -----------------------------------------

struct RectGeom {
    std::array<QC, 4> corners;  // ccw
};

Rat rat_round(double v, long denom = 1 << 16) {
    Rat r((long)std::llround(v * (double)denom), denom);
    r.canonicalize();
    return r;
}

// signed cross of (b-a) x (c-a) for rational complex points
Rat cross3(const QC& a, const QC& b, const QC& c) {
    return (b.re - a.re) * (c.im - a.im) - (b.im - a.im) * (c.re - a.re);
}

// strict membership test for a ball point in the open rectangle
bool ball_in_rect(const std::array<QC, 4>& rect, const ComplexBall& z, mpfr_prec_t prec) {
    for (int i = 0; i < 4; ++i) {
        const QC& a = rect[i];
        const QC& b = rect[(i + 1) % 4];
        // cross((b-a), (z-a)) > 0
        ComplexBall ab = b.ball(prec) - a.ball(prec);
        ComplexBall az = z - a.ball(prec);
        RealBall cr = ab.re() * az.im() - ab.im() * az.re();
        if (!cr.is_positive()) return false;
    }
    return true;
}

bool ball_outside_rect(const std::array<QC, 4>& rect, const ComplexBall& z, mpfr_prec_t prec) {
    for (int i = 0; i < 4; ++i) {
        const QC& a = rect[i];
        const QC& b = rect[(i + 1) % 4];
        ComplexBall ab = b.ball(prec) - a.ball(prec);
        ComplexBall az = z - a.ball(prec);
        RealBall cr = ab.re() * az.im() - ab.im() * az.re();
        if (cr.is_negative()) return true;
    }
    return false;
}

std::optional<RectGeom> make_rectangle(const CVec& branch, int ia, int ib, double margin_scale,
                                       double jitter, mpfr_prec_t prec) {
    ComplexBall ba = branch[ia], bb = branch[ib];
    double ax = ba.re().mid_d(), ay = ba.im().mid_d();
    double bx = bb.re().mid_d(), by = bb.im().mid_d();
    double dx = bx - ax, dy = by - ay;
    double len = std::hypot(dx, dy);
    dx /= len;
    dy /= len;
    double nx = -dy, ny = dx;
    // margin from the distance of other branch points to the segment
    double margin = len;
    for (size_t j = 0; j < branch.size(); ++j) {
        if ((int)j == ia || (int)j == ib) continue;
        double px = branch[j].re().mid_d() - ax, py = branch[j].im().mid_d() - ay;
        double t = (px * dx + py * dy);
        t = std::max(0.0, std::min(len, t));
        double qx = px - t * dx, qy = py - t * dy;
        margin = std::min(margin, std::hypot(qx, qy));
    }
    margin *= margin_scale;
    double mn = margin * (1 + 0.13 * std::sin(jitter * 2.7 + 0.4));  // normal margin, jittered
    double mt = margin * (1 + 0.11 * std::cos(jitter * 1.9 + 1.1));  // tangential margin
    RectGeom rg;
    double c0x = ax - mt * dx - mn * nx, c0y = ay - mt * dy - mn * ny;
    double c1x = bx + mt * dx - mn * nx, c1y = by + mt * dy - mn * ny;
    double c2x = bx + mt * dx + mn * nx, c2y = by + mt * dy + mn * ny;
    double c3x = ax - mt * dx + mn * nx, c3y = ay - mt * dy + mn * ny;
    rg.corners = {QC{rat_round(c0x), rat_round(c0y)}, QC{rat_round(c1x), rat_round(c1y)},
                  QC{rat_round(c2x), rat_round(c2y)}, QC{rat_round(c3x), rat_round(c3y)}};
    // orientation ccw
    if (cross3(rg.corners[0], rg.corners[1], rg.corners[2]) < 0)
        std::swap(rg.corners[1], rg.corners[3]);
    // containment checks: the two endpoints inside, all others outside
    if (!ball_in_rect(rg.corners, ba, prec) || !ball_in_rect(rg.corners, bb, prec)) return std::nullopt;
    for (size_t j = 0; j < branch.size(); ++j) {
        if ((int)j == ia || (int)j == ib) continue;
        if (!ball_outside_rect(rg.corners, branch[j], prec)) return std::nullopt;
    }
    return rg;
}

// Prim MST over midpoint positions
std::vector<std::pair<int, int>> branch_mst(const CVec& branch) {
    size_t n = branch.size();
    std::vector<bool> used(n, false);
    std::vector<double> dist(n, 1e300);
    std::vector<int> parent(n, -1);
    used[0] = true;
    auto d2 = [&](size_t i, size_t j) {
        double dx = branch[i].re().mid_d() - branch[j].re().mid_d();
        double dy = branch[i].im().mid_d() - branch[j].im().mid_d();
        return dx * dx + dy * dy;
    };
    for (size_t j = 1; j < n; ++j) {
        dist[j] = d2(0, j);
        parent[j] = 0;
    }
    std::vector<std::pair<int, int>> edges;
    for (size_t step = 1; step < n; ++step) {
        size_t best = 0;
        double bd = 1e301;
        for (size_t j = 0; j < n; ++j)
            if (!used[j] && dist[j] < bd) {
                bd = dist[j];
                best = j;
            }
        used[best] = true;
        edges.push_back({parent[best], (int)best});
        for (size_t j = 0; j < n; ++j)
            if (!used[j] && d2(best, j) < dist[j]) {
                dist[j] = d2(best, j);
                parent[j] = (int)best;
            }
    }
    return edges;
}

// exact intersection of open segments (a1,b1) x (a2,b2); returns the point
std::optional<QC> segment_intersection(const QC& a1, const QC& b1, const QC& a2, const QC& b2) {
    Rat d1x = b1.re - a1.re, d1y = b1.im - a1.im;
    Rat d2x = b2.re - a2.re, d2y = b2.im - a2.im;
    Rat den = d1x * d2y - d1y * d2x;
    if (den == 0) return std::nullopt;
    Rat ex = a2.re - a1.re, ey = a2.im - a1.im;
    Rat s = (ex * d2y - ey * d2x) / den;
    Rat t = (ex * d1y - ey * d1x) / den;
    if (!(s > 0 && s < 1 && t > 0 && t < 1)) return std::nullopt;
    return QC{a1.re + s * d1x, a1.im + s * d1y};
}

}  // namespace

PeriodData period_matrix(const HyperellipticCurve& c, mpfr_prec_t prec) {
    if (!c.monic_odd) throw std::invalid_argument("period_matrix requires a monic odd model");
    int g = c.genus;
    PeriodData pd;
    pd.curve = c;
    pd.prec = prec;
    pd.branch = certified_roots(c.f, prec + 64);
    std::sort(pd.branch.begin(), pd.branch.end(), [](const ComplexBall& a, const ComplexBall& b) {
        double ar = a.re().mid_d(), br = b.re().mid_d();
        if (ar != br) return ar < br;
        return a.im().mid_d() < b.im().mid_d();
    });
    RealBall tol(prec);
    mpfr_set_ui_2exp(tol.mid_mut(), 1, -(long)(prec * 3 / 4), MPFR_RNDN);

    auto edges_idx = branch_mst(pd.branch);
    QPoly df = c.f.derivative();
    auto F = [&](const ComplexBall& x) { return c.f.eval(x); };
    auto dF = [&](const ComplexBall& x) { return df.eval(x); };
    size_t ne = edges_idx.size();
    if ((int)ne != 2 * g) throw std::logic_error("period_matrix: unexpected edge count");

    // geometry first: jitter margins until the crossing count gives a
    // unimodular intersection matrix, then integrate the loops once
    bool geometry_ok = false;
    for (int attempt = 0; attempt < 12 && !geometry_ok; ++attempt) {
        pd.edges.clear();
        bool built = true;
        for (size_t ei = 0; ei < ne; ++ei) {
            auto [ia, ib] = edges_idx[ei];
            std::optional<RectGeom> rg;
            for (double ms = 0.38; ms > 0.01; ms *= 0.7) {
                rg = make_rectangle(pd.branch, ia, ib, ms, 1.77 * ei + 0.61 * attempt, prec);
                if (rg) break;
            }
            if (!rg) {
                built = false;
                break;
            }
            EdgeCycle ec;
            ec.from = ia;
            ec.to = ib;
            ec.corners = rg->corners;
            ComplexBall x0 = qc_ball(ec.corners[0], prec);
            ComplexBall y0 = c.f.eval(x0).sqrt_principal();
            ec.corner_y.push_back(y0);
            ComplexBall ycur = y0;
            for (int side = 0; side < 4; ++side) {
                ComplexBall xa = qc_ball(ec.corners[side], prec);
                ComplexBall xb = qc_ball(ec.corners[(side + 1) % 4], prec);
                ycur = continue_sqrt(F, dF, xa, ycur, xb);
                if (side < 3) ec.corner_y.push_back(ycur);
            }
            // closure on the other sheet never happens for a two-branch loop
            if (!(ycur - y0).abs_sq().contains_zero() || !((ycur + y0).abs_sq().is_positive())) {
                built = false;
                break;
            }
            pd.edges.push_back(std::move(ec));
        }
        if (!built) continue;
        // crossing counts with sheet matching
        pd.intersections.assign(ne, std::vector<Int>(ne, Int(0)));
        bool counted = true;
        for (size_t e = 0; e < ne && counted; ++e) {
            for (size_t f2 = e + 1; f2 < ne && counted; ++f2) {
                Int total(0);
                for (int se = 0; se < 4 && counted; ++se) {
                    const QC& a1 = pd.edges[e].corners[se];
                    const QC& b1 = pd.edges[e].corners[(se + 1) % 4];
                    for (int sf = 0; sf < 4 && counted; ++sf) {
                        const QC& a2 = pd.edges[f2].corners[sf];
                        const QC& b2 = pd.edges[f2].corners[(sf + 1) % 4];
                        // parallel overlapping sides spoil the count: retry
                        Rat den = (b1.re - a1.re) * (b2.im - a2.im) - (b1.im - a1.im) * (b2.re - a2.re);
                        if (den == 0) {
                            // colinear and overlapping?
                            if (cross3(a1, b1, a2) == 0 &&
                                !(std::min(a2.re, b2.re) > std::max(a1.re, b1.re) ||
                                  std::max(a2.re, b2.re) < std::min(a1.re, b1.re) ||
                                  std::min(a2.im, b2.im) > std::max(a1.im, b1.im) ||
                                  std::max(a2.im, b2.im) < std::min(a1.im, b1.im))) {
                                counted = false;
                            }
                            continue;
                        }
                        auto cross = segment_intersection(a1, b1, a2, b2);
                        if (!cross) continue;
                        ComplexBall xz = qc_ball(*cross, prec);
                        ComplexBall ye =
                            continue_sqrt(F, dF, qc_ball(a1, prec), pd.edges[e].corner_y[se], xz);
                        ComplexBall yf =
                            continue_sqrt(F, dF, qc_ball(a2, prec), pd.edges[f2].corner_y[sf], xz);
                        RealBall same = (ye - yf).abs_sq(), diff = (ye + yf).abs_sq();
                        bool same_sheet;
                        if (same.certainly_lt(diff))
                            same_sheet = true;
                        else if (diff.certainly_lt(same))
                            same_sheet = false;
                        else
                            throw precision_error("period_matrix: sheet comparison ambiguous");
                        if (!same_sheet) continue;
                        total += den > 0 ? 1 : -1;
                    }
                }
                pd.intersections[e][f2] = total;
                pd.intersections[f2][e] = -total;
            }
        }
        if (!counted) continue;
        if (zmat_det(pd.intersections) == 1) geometry_ok = true;
        if (geometry_ok && getenv("HH_DEBUG_J")) {
            for (size_t e = 0; e < ne; ++e) {
                for (size_t f2 = 0; f2 < ne; ++f2) fprintf(stderr, "%ld ", mpz_get_si(pd.intersections[e][f2].get_mpz_t()));
                fprintf(stderr, "  edge %d-%d\n", pd.edges[e].from, pd.edges[e].to);
            }
        }
    }
    if (!geometry_ok) throw precision_error("period_matrix: no unimodular rectangle geometry found");

    // integrate the boundary loops
    for (EdgeCycle& ec : pd.edges) {
        ec.periods.assign(g, ComplexBall(prec));
        ComplexBall ycur = ec.corner_y[0];
        for (int side = 0; side < 4; ++side) {
            ComplexBall xa = qc_ball(ec.corners[side], prec);
            ComplexBall xb = qc_ball(ec.corners[(side + 1) % 4], prec);
            SegmentIntegral si = integrate_raw_segment(c, pd.branch, xa, ycur, xb, g, prec, tol);
            for (int k = 0; k < g; ++k) ec.periods[k] += si.values[k];
            ycur = si.y_end;
        }
        if (!(ycur - ec.corner_y[0]).abs_sq().contains_zero())
            throw precision_error("period_matrix: cycle lift failed to close");
    }
    if (getenv("HH_DEBUG_J")) {
        // Riemann relation residual: P J^{-1} P^T should vanish (P is g x 2g)
        QMat jq(ne, std::vector<Rat>(ne));
        for (size_t i2 = 0; i2 < ne; ++i2)
            for (size_t j2 = 0; j2 < ne; ++j2) jq[i2][j2] = Rat(pd.intersections[i2][j2]);
        QMat jinv = qmat_inverse(jq);
        for (int a2 = 0; a2 < g; ++a2)
            for (int b2 = 0; b2 < g; ++b2) {
                ComplexBall acc(prec);
                for (size_t i2 = 0; i2 < ne; ++i2)
                    for (size_t j2 = 0; j2 < ne; ++j2) {
                        if (jinv[i2][j2] == 0) continue;
                        acc += pd.edges[i2].periods[a2] * pd.edges[j2].periods[b2] *
                               RealBall::from_rational(jinv[i2][j2], prec);
                    }
                fprintf(stderr, "RJR[%d][%d] = %s\n", a2, b2, acc.str(6).c_str());
            }
    }

    for (int flip = 0; flip < 2; ++flip) {
        ZMat j = pd.intersections;
        if (flip) {
            for (auto& row : j)
                for (auto& v : row) v = -v;
        }
        ZMat s = skew_frobenius_transform(j);
        // rows 2k are the A-cycles, rows 2k+1 the B-cycles
        CMat amat(g, CVec(g, ComplexBall(prec))), bmat(g, CVec(g, ComplexBall(prec)));
        for (int k = 0; k < g; ++k)
            for (size_t e = 0; e < ne; ++e) {
                long se_a = mpz_get_si(s[2 * k][e].get_mpz_t());
                long se_b = mpz_get_si(s[2 * k + 1][e].get_mpz_t());
                for (int jcol = 0; jcol < g; ++jcol) {
                    if (se_a != 0)
                        amat[k][jcol] += pd.edges[e].periods[jcol] * RealBall::exact(se_a, prec);
                    if (se_b != 0)
                        bmat[k][jcol] += pd.edges[e].periods[jcol] * RealBall::exact(se_b, prec);
                }
            }
        // normalization: sum_j C[i][j] amat[k][j] = delta_{ik}, so C is the
        // inverse of amat^T
        CMat cmat = cmat_inverse(amat);
        for (int i = 0; i < g; ++i)
            for (int k = i + 1; k < g; ++k) std::swap(cmat[i][k], cmat[k][i]);
        // tau_{ik} = sum_j c[i][j] b[k][j]
        CMat tau(g, CVec(g, ComplexBall(prec)));
        for (int i = 0; i < g; ++i)
            for (int k = 0; k < g; ++k) {
                ComplexBall acc(prec);
                for (int jcol = 0; jcol < g; ++jcol) acc += cmat[i][jcol] * bmat[k][jcol];
                tau[i][k] = acc;
            }
        RMat imtau(g, RVec(g));
        for (int i = 0; i < g; ++i)
            for (int k = 0; k < g; ++k) imtau[i][k] = tau[i][k].im();
        RealBall mineig = sym_min_eigenvalue_lower(imtau);
        if (mineig.is_positive()) {
            pd.symplectic = s;
            pd.a_mat = amat;
            pd.b_mat = bmat;
            pd.norm_c = cmat;
            pd.tau = tau;
            pd.c2 = mineig;
            // symmetry sanity
            for (int i = 0; i < g; ++i)
                for (int k = i + 1; k < g; ++k)
                    if (!(tau[i][k] - tau[k][i]).contains_zero())
                        throw std::logic_error("period_matrix: tau not symmetric");
            break;
        }
        if (flip == 1) throw precision_error("period_matrix: Im(tau) not certified definite");
    }

    // real lattice basis [I, Re tau; 0, Im tau]
    pd.lattice.assign(2 * g, RVec(2 * g, RealBall(prec)));
    for (int i = 0; i < g; ++i) {
        pd.lattice[i][i] = RealBall::exact(1L, prec);
        for (int k = 0; k < g; ++k) {
            pd.lattice[i][g + k] = pd.tau[i][k].re();
            pd.lattice[g + i][g + k] = pd.tau[i][k].im();
        }
    }
    pd.lattice_inv = rmat_inverse(pd.lattice);
    return pd;
}

namespace {

// routing: exclusion radius per branch point
std::vector<double> exclusion_radii(const CVec& branch) {
    size_t n = branch.size();
    std::vector<double> out(n, 1e300);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            double dx = branch[i].re().mid_d() - branch[j].re().mid_d();
            double dy = branch[i].im().mid_d() - branch[j].im().mid_d();
            out[i] = std::min(out[i], std::hypot(dx, dy));
        }
        out[i] *= 0.35;
    }
    return out;
}

double dist_to_segment(double px, double py, double ax, double ay, double bx, double by) {
    double dx = bx - ax, dy = by - ay;
    double len2 = dx * dx + dy * dy;
    double t = len2 > 0 ? ((px - ax) * dx + (py - ay) * dy) / len2 : 0;
    t = std::max(0.0, std::min(1.0, t));
    return std::hypot(px - (ax + t * dx), py - (ay + t * dy));
}

void route_points(const CVec& branch, const std::vector<double>& excl, double ax, double ay,
                  double bx, double by, int depth, std::vector<std::pair<double, double>>& out) {
    if (depth > 16) throw precision_error("abel_jacobi: routing depth exceeded");
    int worst = -1;
    double worst_ratio = 1;
    for (size_t j = 0; j < branch.size(); ++j) {
        double px = branch[j].re().mid_d(), py = branch[j].im().mid_d();
        double d = dist_to_segment(px, py, ax, ay, bx, by);
        double ratio = d / (0.9 * excl[j]);
        if (ratio < worst_ratio) {
            worst_ratio = ratio;
            worst = (int)j;
        }
    }
    if (worst < 0) {
        out.push_back({bx, by});
        return;
    }
    // waypoint: push away from the offending branch point, perpendicular to
    // the segment
    double px = branch[worst].re().mid_d(), py = branch[worst].im().mid_d();
    double dx = bx - ax, dy = by - ay;
    double len = std::hypot(dx, dy);
    double nx = -dy / len, ny = dx / len;
    double side = (px - ax) * nx + (py - ay) * ny;
    double s = side > 0 ? -1.0 : 1.0;
    double wx = px + s * nx * 1.4 * excl[worst], wy = py + s * ny * 1.4 * excl[worst];
    route_points(branch, excl, ax, ay, wx, wy, depth + 1, out);
    route_points(branch, excl, wx, wy, bx, by, depth + 1, out);
}

}  // namespace

CVec abel_jacobi_raw(const PeriodData& pd, const CPoint& p) {
    mpfr_prec_t prec = pd.prec;
    int g = pd.genus();
    CVec raw(g, ComplexBall(prec));
    if (p.infinity) return raw;
    const HyperellipticCurve& c = pd.curve;
    QPoly df = c.f.derivative();
    auto F = [&](const ComplexBall& x) { return c.f.eval(x); };
    auto dF = [&](const ComplexBall& x) { return df.eval(x); };
    RealBall tol(prec);
    mpfr_set_ui_2exp(tol.mid_mut(), 1, -(long)(prec * 3 / 4), MPFR_RNDN);

    // staging point: far from every branch direction
    double maxb = 1;
    for (const ComplexBall& b : pd.branch) maxb = std::max(maxb, b.abs().upper_d());
    double r0 = 4 * maxb + 4;
    double best_th = 0, best_d = -1;
    for (int k = 0; k < 32; ++k) {
        double th = 2 * M_PI * k / 32 + 0.07;
        double sx = r0 * std::cos(th), sy = r0 * std::sin(th);
        double dmin = 1e300;
        for (const ComplexBall& b : pd.branch)
            dmin = std::min(dmin, std::hypot(sx - b.re().mid_d(), sy - b.im().mid_d()));
        if (dmin > best_d) {
            best_d = dmin;
            best_th = th;
        }
    }
    ComplexBall xs = ComplexBall::from_doubles(r0 * std::cos(best_th), r0 * std::sin(best_th), prec);

    // zeta leg: x = zeta^{-2}, y = zeta^{-N} sqrt(G(zeta^2)), N = 2g+1;
    // omega_j = -2 zeta^{N-2j-3} / sqrt(G(zeta^2)) dzeta from 0 to zeta_s
    int bigN = 2 * g + 1;
    QPoly bigG = c.f.reversal(bigN);  // G(w) = w^N f(1/w), G(0) = 1
    ComplexBall zs2 = xs.recip();
    ComplexBall zs = zs2.sqrt_principal();
    {
        // G(zeta^2) on the segment [0, zs]: roots are at w = 1/b_j, so
        // |zeta|^2 <= |zs|^2 << min |1/b_j| keeps a healthy ellipse; certify
        // via segment_ellipse on the w-variable with G's roots
        CVec groots;
        for (const ComplexBall& b : pd.branch) groots.push_back(b.recip());
        // parametrize zeta = zs * (u+1)/2, u in [-1,1]
        ComplexBall mid = zs * RealBall::from_rational(Rat(1, 2), prec);
        ComplexBall h = mid;
        // ellipse bound for the w = zeta^2 values: bound |G| below via roots
        RealBall one = RealBall::exact(1L, prec);
        RealBall rho(prec);
        bool okr = true;
        RealBall rho_min(prec);
        bool first = true;
        for (const ComplexBall& w : groots) {
            // distance in the zeta plane: w has two square roots +-sqrt(w)
            ComplexBall sw = w.sqrt_principal();
            for (const ComplexBall& cand : {sw, ComplexBall(-sw)}) {
                ComplexBall u = (cand - mid) / h;
                ComplexBall s2 = u * u - ComplexBall(one);
                ComplexBall s = s2.sqrt_principal();
                RealBall rj = RealBall::max((u + s).abs(), (u - s).abs());
                rho_min = first ? rj : RealBall::min(rho_min, rj);
                first = false;
            }
        }
        if (!one.certainly_lt(rho_min)) okr = false;
        if (!okr) throw precision_error("abel_jacobi: zeta leg ellipse failed");
        rho = one + (rho_min - one) * RealBall::from_rational(Rat(7, 10), prec);
        rho = RealBall::min(rho, RealBall::exact(8L, prec));
        // |sqrt(G)| lower bound on the ellipse via root distances in zeta
        RealBall habs = h.abs();
        RealBall prod = one;
        {
            bool f2 = true;
            RealBall rmin(prec);
            for (const ComplexBall& w : groots) {
                ComplexBall sw = w.sqrt_principal();
                for (const ComplexBall& cand : {sw, ComplexBall(-sw)}) {
                    ComplexBall u = (cand - mid) / h;
                    ComplexBall s2 = u * u - ComplexBall(one);
                    ComplexBall s = s2.sqrt_principal();
                    RealBall rj = RealBall::max((u + s).abs(), (u - s).abs());
                    RealBall dist = habs * (rj - rho) * (one - rj.recip()) / 2;
                    if (!dist.is_positive()) throw precision_error("abel_jacobi: zeta leg root distance");
                    prod = prod * dist.lower_bound();
                    if (f2) {
                        rmin = rj;
                        f2 = false;
                    }
                }
            }
        }
        // sqrt(G(zeta^2)) continued from sqrt(G(0)) = 1 along the segment;
        // node values by continuation; |zeta| <= |zs|(rho+1/rho)/2 on E_rho
        RealBall zmax = habs * (rho + rho.recip());
        RealBall gmin = prod;  // lower bound of prod |zeta - root| ~ |G|, lc(G)=1 scale
        RealBall m = zmax.pow_ui((unsigned long)std::max(0, bigN - 3)) * 2 * habs / gmin.sqrt();
        int nn = std::min(400, gl_nodes_for(rho, m, tol));
        const GLRule& rule = gauss_legendre(nn, prec);
        QPoly dG = bigG.derivative();
        auto FG = [&](const ComplexBall& z) { return bigG.eval(z * z); };
        auto dFG = [&](const ComplexBall& z) { return dG.eval(z * z) * z * 2; };
        ComplexBall zcur = ComplexBall(prec);  // zeta = 0
        ComplexBall qcur = ComplexBall::exact(1, 0, prec);  // sqrt(G(0)) = 1
        for (int i = 0; i < nn; ++i) {
            ComplexBall zi = mid + h * ComplexBall(rule.nodes[i]);
            ComplexBall qi = continue_sqrt(FG, dFG, zcur, qcur, zi);
            // omega_j contribution: -2 z^{N-2j-3} / q * (dzeta = h du)
            for (int jj = 0; jj < g; ++jj) {
                long e = bigN - 2 * jj - 3;
                ComplexBall zp = zi.pow_ui((unsigned long)e);
                raw[jj] += h * ComplexBall(rule.weights[i]) * zp / qi * RealBall::exact(-2L, prec);
            }
            zcur = zi;
            qcur = qi;
        }
        for (int jj = 0; jj < g; ++jj) {
            RealBall mk = zmax.pow_ui((unsigned long)(bigN - 2 * jj - 3)) * 2 * habs / gmin.sqrt();
            RealBall tail = mk * 8 /
                            (rho.pow_ui(2 * (unsigned long)nn) * (RealBall::exact(1L, prec) - rho.recip()));
            RealBall pad = tail.abs().upper_bound();
            raw[jj] = {raw[jj].re().widened(pad), raw[jj].im().widened(pad)};
        }
        // arrival y at the staging point
        ComplexBall qs = continue_sqrt(FG, dFG, zcur, qcur, zs);
        ComplexBall ys = zs.recip().pow_ui((unsigned long)bigN) * qs;
        // continue along routed segments toward the target
        auto excl = exclusion_radii(pd.branch);
        double tx = p.x.re().mid_d(), ty = p.x.im().mid_d();
        // does the target sit inside an exclusion disc?
        int near_b = -1;
        for (size_t j = 0; j < pd.branch.size(); ++j) {
            double d = std::hypot(tx - pd.branch[j].re().mid_d(), ty - pd.branch[j].im().mid_d());
            if (d < excl[j]) {
                near_b = (int)j;
                break;
            }
        }
        double gx = tx, gy = ty;  // goal of the straight routing phase
        if (near_b >= 0) {
            // entry point on the exclusion circle
            double px = pd.branch[near_b].re().mid_d(), py = pd.branch[near_b].im().mid_d();
            double vx = xs.re().mid_d() - px, vy = xs.im().mid_d() - py;
            double vn = std::hypot(vx, vy);
            gx = px + excl[near_b] * vx / vn;
            gy = py + excl[near_b] * vy / vn;
        }
        std::vector<std::pair<double, double>> waypoints;
        route_points(pd.branch, excl, xs.re().mid_d(), xs.im().mid_d(), gx, gy, 0, waypoints);
        ComplexBall xcur = xs;
        ComplexBall ycur = ys;
        for (auto [wx, wy] : waypoints) {
            ComplexBall xnext = ComplexBall::from_doubles(wx, wy, prec);
            SegmentIntegral si = integrate_raw_segment(c, pd.branch, xcur, ycur, xnext, g, prec, tol);
            for (int k = 0; k < g; ++k) raw[k] += si.values[k];
            ycur = si.y_end;
            xcur = xnext;
        }
        if (near_b < 0) {
            // plain target: fix the sheet
            RealBall same = (ycur - p.y).abs_sq(), diffb = (ycur + p.y).abs_sq();
            if (diffb.certainly_lt(same)) {
                for (int k = 0; k < g; ++k) raw[k] = -raw[k];
            } else if (!same.certainly_lt(diffb)) {
                throw precision_error("abel_jacobi: arrival sheet ambiguous");
            }
            return raw;
        }
        // branch leg in the t-plane: x = b + t^2, F_b(t) = prod_{j != b}(b + t^2 - b_j) * lc
        ComplexBall b = pd.branch[near_b];
        auto Fb = [&](const ComplexBall& t) {
            ComplexBall acc = ComplexBall(RealBall::from_rational(Rat(c.f.leading()), prec));
            ComplexBall x = b + t * t;
            for (size_t j = 0; j < pd.branch.size(); ++j) {
                if ((int)j == near_b) continue;
                acc = acc * (x - pd.branch[j]);
            }
            return acc;
        };
        auto dFb = [&](const ComplexBall& t) {
            // derivative in t: sum over j of prod_{k != j} (x - b_k) * 2t
            ComplexBall x = b + t * t;
            ComplexBall sum(prec);
            for (size_t j = 0; j < pd.branch.size(); ++j) {
                if ((int)j == near_b) continue;
                ComplexBall term = ComplexBall(RealBall::from_rational(Rat(c.f.leading()), prec));
                for (size_t k2 = 0; k2 < pd.branch.size(); ++k2) {
                    if ((int)k2 == near_b || k2 == j) continue;
                    term = term * (x - pd.branch[k2]);
                }
                sum += term;
            }
            return sum * t * 2;
        };
        // entry t with t^2 = x_entry - b and q(t_entry) = y_entry / t_entry
        ComplexBall t_entry = (xcur - b).sqrt_principal();
        ComplexBall q_entry = ycur / t_entry;
        // target t: t^2 = x_target - b, sign resolved after continuation
        ComplexBall dxt = p.x - b;
        ComplexBall t_target(prec);
        bool target_is_branch = dxt.abs_sq().contains_zero();
        if (!target_is_branch) t_target = dxt.sqrt_principal();
        // integrate 2 x(t)^k / q(t) dt along [t_entry, t_target]
        auto leg = [&](const ComplexBall& t_to, CVec& add, ComplexBall& q_out) {
            ComplexBall midt = (t_entry + t_to) * RealBall::from_rational(Rat(1, 2), prec);
            ComplexBall ht = (t_to - t_entry) * RealBall::from_rational(Rat(1, 2), prec);
            // ellipse: roots of F_b(t): t^2 = b_j - b
            RealBall one2 = RealBall::exact(1L, prec);
            RealBall rho_min2(prec);
            bool first2 = true;
            RealBall habs2 = ht.abs();
            RealBall prod2 = RealBall::from_rational(Rat(abs(c.f.leading())), prec);
            std::vector<RealBall> rhos;
            for (size_t j = 0; j < pd.branch.size(); ++j) {
                if ((int)j == near_b) continue;
                ComplexBall w = pd.branch[j] - b;
                ComplexBall sw = w.sqrt_principal();
                for (const ComplexBall& cand : {sw, ComplexBall(-sw)}) {
                    ComplexBall u = (cand - midt) / ht;
                    ComplexBall s2c = u * u - ComplexBall(one2);
                    ComplexBall sc = s2c.sqrt_principal();
                    RealBall rj = RealBall::max((u + sc).abs(), (u - sc).abs());
                    rhos.push_back(rj);
                    rho_min2 = first2 ? rj : RealBall::min(rho_min2, rj);
                    first2 = false;
                }
            }
            if (!one2.certainly_lt(rho_min2)) throw precision_error("abel_jacobi: branch leg ellipse");
            RealBall rho2 = one2 + (rho_min2 - one2) * RealBall::from_rational(Rat(7, 10), prec);
            rho2 = RealBall::min(rho2, RealBall::exact(8L, prec));
            for (const RealBall& rj : rhos) {
                RealBall dist = habs2 * (rj - rho2) * (one2 - rj.recip()) / 2;
                if (!dist.is_positive()) throw precision_error("abel_jacobi: branch leg distance");
                prod2 = prod2 * dist.lower_bound();
            }
            RealBall tmax = midt.abs().upper_bound() + habs2.upper_bound() * (rho2 + rho2.recip()) / 2;
            RealBall xmax2 = b.abs().upper_bound() + tmax * tmax + RealBall::exact(1L, prec);
            RealBall m2 = xmax2.pow_ui((unsigned long)std::max(0, g - 1)) * 2 * habs2 / prod2.sqrt();
            int nn2 = std::min(400, gl_nodes_for(rho2, m2, tol));
            const GLRule& rule2 = gauss_legendre(nn2, prec);
            ComplexBall tcur = t_entry, qcur2 = q_entry;
            for (int i = 0; i < nn2; ++i) {
                ComplexBall ti = midt + ht * ComplexBall(rule2.nodes[i]);
                ComplexBall qi = continue_sqrt(Fb, dFb, tcur, qcur2, ti);
                ComplexBall xi = b + ti * ti;
                ComplexBall base = ht * ComplexBall(rule2.weights[i]) * RealBall::exact(2L, prec) / qi;
                ComplexBall xpow = ComplexBall::exact(1, 0, prec);
                for (int k = 0; k < g; ++k) {
                    add[k] += base * xpow;
                    xpow = xpow * xi;
                }
                tcur = ti;
                qcur2 = qi;
            }
            q_out = continue_sqrt(Fb, dFb, tcur, qcur2, t_to);
            for (int k = 0; k < g; ++k) {
                RealBall mk = xmax2.pow_ui((unsigned long)k) * 2 * habs2 / prod2.sqrt();
                RealBall tail = mk * 8 / (rho2.pow_ui(2 * (unsigned long)nn2) *
                                          (RealBall::exact(1L, prec) - rho2.recip()));
                RealBall pad = tail.abs().upper_bound();
                add[k] = {add[k].re().widened(pad), add[k].im().widened(pad)};
            }
        };
        CVec addv(g, ComplexBall(prec));
        ComplexBall qout(prec);
        if (target_is_branch) {
            leg(ComplexBall(prec), addv, qout);
            for (int k = 0; k < g; ++k) raw[k] += addv[k];
            return raw;
        }
        leg(t_target, addv, qout);
        // outgoing y = t q(t): match the requested sheet
        ComplexBall yout = t_target * qout;
        RealBall same = (yout - p.y).abs_sq(), diffb = (yout + p.y).abs_sq();
        if (same.certainly_lt(diffb)) {
            for (int k = 0; k < g; ++k) raw[k] += addv[k];
            return raw;
        }
        if (!diffb.certainly_lt(same)) throw precision_error("abel_jacobi: branch-leg sheet ambiguous");
        // redo with -t_target
        CVec addv2(g, ComplexBall(prec));
        leg(-t_target, addv2, qout);
        yout = (-t_target) * qout;
        if (!((yout - p.y).abs_sq().certainly_lt((yout + p.y).abs_sq())))
            throw precision_error("abel_jacobi: branch-leg sheet mismatch");
        for (int k = 0; k < g; ++k) raw[k] += addv2[k];
        return raw;
    }
}

namespace {
long round_ball_to_long(const RealBall& x) {
    double d = x.mid_d();
    return (long)std::llround(d);
}
}  // namespace

RVec lattice_coordinates(const PeriodData& pd, const CVec& z) {
    int g = pd.genus();
    RVec rhs(2 * g, RealBall(pd.prec));
    for (int i = 0; i < g; ++i) {
        rhs[i] = z[i].re();
        rhs[g + i] = z[i].im();
    }
    return rmat_mul_vec(pd.lattice_inv, rhs);
}

void reduce_mod_lattice(const PeriodData& pd, CVec& z) {
    int g = pd.genus();
    RVec coords = lattice_coordinates(pd, z);
    std::vector<long> m(2 * g);
    for (int i = 0; i < 2 * g; ++i) m[i] = round_ball_to_long(coords[i]);
    // z -= sum m_i e_i + sum m_{g+k} tau_k
    for (int i = 0; i < g; ++i) {
        RealBall re = z[i].re() - RealBall::exact(m[i], pd.prec);
        z[i] = ComplexBall(re, z[i].im());
        for (int k = 0; k < g; ++k) {
            if (m[g + k] == 0) continue;
            z[i] = z[i] - pd.tau[i][k] * RealBall::exact(m[g + k], pd.prec);
        }
    }
}

CVec abel_jacobi(const PeriodData& pd, const CPoint& p) {
    CVec raw = abel_jacobi_raw(pd, p);
    int g = pd.genus();
    // normalized coordinates: alpha_i = sum_j C[i][j] raw_j
    CVec z(g, ComplexBall(pd.prec));
    for (int i = 0; i < g; ++i) {
        ComplexBall acc(pd.prec);
        for (int j = 0; j < g; ++j) acc += pd.norm_c[i][j] * raw[j];
        z[i] = acc;
    }
    reduce_mod_lattice(pd, z);
    return z;
}

}  // namespace hh
