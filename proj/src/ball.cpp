#include "hh/ball.hpp"

#include <cmath>
#include <cstdio>

namespace hh {

namespace {

// rad := rad + |a|*b (upward), b >= 0
void rad_add_mul(mpfr_t rad, const mpfr_t a, const mpfr_t b) {
    mpfr_t t;
    mpfr_init2(t, kRadPrec);
    mpfr_abs(t, a, MPFR_RNDU);
    mpfr_mul(t, t, b, MPFR_RNDU);
    mpfr_add(rad, rad, t, MPFR_RNDU);
    mpfr_clear(t);
}

}  // namespace

void RealBall::bump_ulp() {
    if (!mpfr_number_p(mid_)) {
        mpfr_set_inf(rad_, 1);
        return;
    }
    if (mpfr_zero_p(mid_)) return;  // rounding to a zero result is exact in mpfr set-ops we use
    mpfr_t u;
    mpfr_init2(u, kRadPrec);
    mpfr_set_ui_2exp(u, 1, mpfr_get_exp(mid_) - mpfr_get_prec(mid_), MPFR_RNDU);
    mpfr_add(rad_, rad_, u, MPFR_RNDU);
    mpfr_clear(u);
}

RealBall RealBall::from_endpoints(const RealBall& lo, const RealBall& hi) {
    mpfr_prec_t p = std::max(lo.prec(), hi.prec());
    RealBall out(p);
    mpfr_add(out.mid_, lo.mid_, hi.mid_, MPFR_RNDN);
    mpfr_div_2ui(out.mid_, out.mid_, 1, MPFR_RNDN);
    out.bump_ulp();
    // radius: half width plus endpoint radii
    mpfr_t w;
    mpfr_init2(w, kRadPrec);
    mpfr_sub(w, hi.mid_, lo.mid_, MPFR_RNDU);
    mpfr_abs(w, w, MPFR_RNDU);
    mpfr_div_2ui(w, w, 1, MPFR_RNDU);
    mpfr_add(out.rad_, out.rad_, w, MPFR_RNDU);
    mpfr_add(out.rad_, out.rad_, lo.rad_, MPFR_RNDU);
    mpfr_add(out.rad_, out.rad_, hi.rad_, MPFR_RNDU);
    mpfr_clear(w);
    return out;
}

RealBall RealBall::upper_bound() const {
    RealBall out(prec());
    mpfr_t r;
    mpfr_init2(r, prec());
    mpfr_set(r, rad_, MPFR_RNDU);
    mpfr_add(out.mid_, mid_, r, MPFR_RNDU);
    mpfr_clear(r);
    return out;
}

RealBall RealBall::lower_bound() const {
    RealBall out(prec());
    mpfr_t r;
    mpfr_init2(r, prec());
    mpfr_set(r, rad_, MPFR_RNDU);
    mpfr_sub(out.mid_, mid_, r, MPFR_RNDD);
    mpfr_clear(r);
    return out;
}

double RealBall::upper_d() const {
    mpfr_t t;
    mpfr_init2(t, 64);
    mpfr_add(t, mid_, rad_, MPFR_RNDU);
    double d = mpfr_get_d(t, MPFR_RNDU);
    mpfr_clear(t);
    return d;
}

double RealBall::lower_d() const {
    mpfr_t t;
    mpfr_init2(t, 64);
    mpfr_sub(t, mid_, rad_, MPFR_RNDD);
    double d = mpfr_get_d(t, MPFR_RNDD);
    mpfr_clear(t);
    return d;
}

bool RealBall::contains_zero() const { return mpfr_cmpabs(mid_, rad_) <= 0; }

bool RealBall::is_positive() const {
    return mpfr_sgn(mid_) > 0 && mpfr_cmpabs(mid_, rad_) > 0;
}

bool RealBall::is_negative() const {
    return mpfr_sgn(mid_) < 0 && mpfr_cmpabs(mid_, rad_) > 0;
}

bool RealBall::certainly_lt(const RealBall& o) const { return (o - *this).is_positive(); }

bool RealBall::certainly_le(const RealBall& o) const {
    // upper(this) <= lower(o), evaluated with directed rounding
    mpfr_t a, b;
    mpfr_init2(a, prec() + 8);
    mpfr_init2(b, o.prec() + 8);
    mpfr_add(a, mid_, rad_, MPFR_RNDU);
    mpfr_sub(b, o.mid_, o.rad_, MPFR_RNDD);
    bool ok = mpfr_cmp(a, b) <= 0;
    mpfr_clear(a);
    mpfr_clear(b);
    return ok;
}

bool RealBall::contains(const mpq_class& q) const {
    RealBall d = *this - RealBall::from_rational(q, prec() + 16);
    return d.contains_zero();
}

bool RealBall::overlaps(const RealBall& o) const {
    RealBall d = *this - o;
    return d.contains_zero();
}

RealBall RealBall::round_prec(mpfr_prec_t p) const {
    RealBall out(p);
    int t = mpfr_set(out.mid_, mid_, MPFR_RNDN);
    mpfr_set(out.rad_, rad_, MPFR_RNDU);
    if (t != 0) out.bump_ulp();
    return out;
}

RealBall RealBall::operator-() const {
    RealBall out(prec());
    mpfr_neg(out.mid_, mid_, MPFR_RNDN);
    mpfr_set(out.rad_, rad_, MPFR_RNDU);
    return out;
}

RealBall RealBall::operator+(const RealBall& o) const {
    RealBall out(std::max(prec(), o.prec()));
    mpfr_add(out.mid_, mid_, o.mid_, MPFR_RNDN);
    mpfr_add(out.rad_, rad_, o.rad_, MPFR_RNDU);
    out.bump_ulp();
    return out;
}

RealBall RealBall::operator-(const RealBall& o) const {
    RealBall out(std::max(prec(), o.prec()));
    mpfr_sub(out.mid_, mid_, o.mid_, MPFR_RNDN);
    mpfr_add(out.rad_, rad_, o.rad_, MPFR_RNDU);
    out.bump_ulp();
    return out;
}

RealBall RealBall::operator*(const RealBall& o) const {
    RealBall out(std::max(prec(), o.prec()));
    mpfr_mul(out.mid_, mid_, o.mid_, MPFR_RNDN);
    // rad = |a|rb + |b|ra + ra rb
    mpfr_set_zero(out.rad_, 1);
    rad_add_mul(out.rad_, mid_, o.rad_);
    rad_add_mul(out.rad_, o.mid_, rad_);
    mpfr_t t;
    mpfr_init2(t, kRadPrec);
    mpfr_mul(t, rad_, o.rad_, MPFR_RNDU);
    mpfr_add(out.rad_, out.rad_, t, MPFR_RNDU);
    mpfr_clear(t);
    out.bump_ulp();
    return out;
}

RealBall RealBall::recip() const {
    if (contains_zero()) throw precision_error("recip: ball contains zero");
    RealBall out(prec());
    mpfr_ui_div(out.mid_, 1, mid_, MPFR_RNDN);
    // |1/x - 1/m| <= r / (|m| (|m|-r))
    mpfr_t am, d, t;
    mpfr_init2(am, kRadPrec);
    mpfr_init2(d, kRadPrec);
    mpfr_init2(t, kRadPrec);
    mpfr_abs(am, mid_, MPFR_RNDD);
    mpfr_sub(d, am, rad_, MPFR_RNDD);
    mpfr_mul(d, d, am, MPFR_RNDD);
    mpfr_div(t, rad_, d, MPFR_RNDU);
    mpfr_set(out.rad_, t, MPFR_RNDU);
    mpfr_clear(am);
    mpfr_clear(d);
    mpfr_clear(t);
    out.bump_ulp();
    return out;
}

RealBall RealBall::operator/(const RealBall& o) const { return *this * o.recip(); }

RealBall RealBall::abs() const {
    RealBall out(prec());
    if (contains_zero()) {
        // [0, |mid|+rad]
        mpfr_t hi;
        mpfr_init2(hi, prec());
        mpfr_abs(hi, mid_, MPFR_RNDU);
        mpfr_add(hi, hi, rad_, MPFR_RNDU);
        mpfr_div_2ui(out.mid_, hi, 1, MPFR_RNDU);
        mpfr_set(out.rad_, out.mid_, MPFR_RNDU);
        mpfr_clear(hi);
        out.bump_ulp();
        return out;
    }
    mpfr_abs(out.mid_, mid_, MPFR_RNDN);
    mpfr_set(out.rad_, rad_, MPFR_RNDU);
    return out;
}

// Monotone function enclosure: f at the endpoints with directed rounding.
static RealBall monotone_env(const RealBall& x,
                             int (*f)(mpfr_t, const mpfr_t, mpfr_rnd_t)) {
    mpfr_prec_t p = x.prec();
    mpfr_t lo, hi, flo, fhi;
    mpfr_init2(lo, p);
    mpfr_init2(hi, p);
    mpfr_init2(flo, p);
    mpfr_init2(fhi, p);
    mpfr_sub(lo, x.mid(), x.rad(), MPFR_RNDD);
    mpfr_add(hi, x.mid(), x.rad(), MPFR_RNDU);
    f(flo, lo, MPFR_RNDD);
    f(fhi, hi, MPFR_RNDU);
    RealBall a(p), b(p);
    mpfr_set(a.mid_mut(), flo, MPFR_RNDD);
    mpfr_set(b.mid_mut(), fhi, MPFR_RNDU);
    RealBall out = RealBall::from_endpoints(a, b);
    mpfr_clear(lo);
    mpfr_clear(hi);
    mpfr_clear(flo);
    mpfr_clear(fhi);
    return out;
}

RealBall RealBall::sqrt() const {
    if (is_negative()) throw precision_error("sqrt of negative ball");
    if (contains_zero()) {
        // clip to [0, hi]
        mpfr_prec_t p = prec();
        mpfr_t hi, shi;
        mpfr_init2(hi, p);
        mpfr_init2(shi, p);
        mpfr_add(hi, mid_, rad_, MPFR_RNDU);
        if (mpfr_sgn(hi) < 0) mpfr_set_zero(hi, 1);
        mpfr_sqrt(shi, hi, MPFR_RNDU);
        RealBall out(p);
        mpfr_div_2ui(out.mid_, shi, 1, MPFR_RNDU);
        mpfr_set(out.rad_, out.mid_, MPFR_RNDU);
        out.bump_ulp();
        mpfr_clear(hi);
        mpfr_clear(shi);
        return out;
    }
    return monotone_env(*this, mpfr_sqrt);
}

RealBall RealBall::log() const {
    if (!is_positive()) throw precision_error("log of non-positive ball");
    return monotone_env(*this, mpfr_log);
}

RealBall RealBall::exp() const { return monotone_env(*this, mpfr_exp); }
RealBall RealBall::atan() const { return monotone_env(*this, mpfr_atan); }

RealBall RealBall::sin() const {
    RealBall out(prec());
    mpfr_sin(out.mid_, mid_, MPFR_RNDN);
    mpfr_set(out.rad_, rad_, MPFR_RNDU);  // |sin'| <= 1
    out.bump_ulp();
    // clamp into [-1, 1] envelope when radius is huge
    return out;
}

RealBall RealBall::cos() const {
    RealBall out(prec());
    mpfr_cos(out.mid_, mid_, MPFR_RNDN);
    mpfr_set(out.rad_, rad_, MPFR_RNDU);
    out.bump_ulp();
    return out;
}

RealBall RealBall::atan2(const RealBall& y, const RealBall& x) {
    // Valid when x is certainly positive or the quadrant is unambiguous.
    if (x.is_positive()) {
        return (y / x).atan();
    }
    if (y.is_positive() || y.is_negative()) {
        // atan2 = sign(y)*pi/2 + atan(-x/y)
        RealBall half_pi = RealBall::pi(std::max(x.prec(), y.prec())) / 2;
        RealBall t = (-(x / y)).atan();
        return (y.is_positive() ? half_pi : -half_pi) + t;
    }
    throw precision_error("atan2: ambiguous quadrant");
}

RealBall RealBall::pow(const RealBall& e) const { return (log() * e).exp(); }

RealBall RealBall::pow_ui(unsigned long k) const {
    RealBall acc = RealBall::exact(1L, prec());
    RealBall base = *this;
    while (k > 0) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

RealBall RealBall::min(const RealBall& a, const RealBall& b) {
    if (a.certainly_lt(b)) return a;
    if (b.certainly_lt(a)) return b;
    // overlapping: take the hull of lower parts
    RealBall lo = a.lower_bound().certainly_lt(b.lower_bound()) ? a.lower_bound() : b.lower_bound();
    RealBall hi = a.upper_bound().certainly_lt(b.upper_bound()) ? a.upper_bound() : b.upper_bound();
    return from_endpoints(lo, hi);
}

RealBall RealBall::max(const RealBall& a, const RealBall& b) { return -min(-a, -b); }

RealBall RealBall::hull(const RealBall& a, const RealBall& b) {
    RealBall lo = RealBall::min(a.lower_bound(), b.lower_bound());
    RealBall hi = RealBall::max(a.upper_bound(), b.upper_bound());
    return from_endpoints(lo.lower_bound(), hi.upper_bound());
}

RealBall RealBall::widened(const RealBall& e) const {
    RealBall out = *this;
    mpfr_t t;
    mpfr_init2(t, kRadPrec);
    mpfr_abs(t, e.mid_, MPFR_RNDU);
    mpfr_add(t, t, e.rad_, MPFR_RNDU);
    mpfr_add(out.rad_, out.rad_, t, MPFR_RNDU);
    mpfr_clear(t);
    return out;
}

std::string RealBall::str(size_t digits) const {
    char* s = nullptr;
    int n = mpfr_asprintf(&s, "%.*Rg", (int)digits, mid_);
    std::string out = n >= 0 ? s : "?";
    mpfr_free_str(s);
    char* r = nullptr;
    n = mpfr_asprintf(&r, "%.3Rg", rad_);
    out += " +/- ";
    out += (n >= 0 ? r : "?");
    mpfr_free_str(r);
    return out;
}

// ---------- ComplexBall ----------

RealBall ComplexBall::abs_upper() const {
    return re_.abs().upper_bound() + im_.abs().upper_bound();
}

ComplexBall ComplexBall::recip() const {
    RealBall d = abs_sq();
    if (!d.is_positive()) throw precision_error("complex recip: ball contains zero");
    RealBall inv = d.recip();
    return {re_ * inv, -(im_ * inv)};
}

ComplexBall ComplexBall::operator/(const ComplexBall& o) const { return *this * o.recip(); }

RealBall ComplexBall::radius_bound() const {
    RealBall rr(std::max(re_.prec(), im_.prec()));
    mpfr_t t;
    mpfr_init2(t, kRadPrec);
    mpfr_hypot(t, re_.rad(), im_.rad(), MPFR_RNDU);
    mpfr_set(rr.mid_mut(), t, MPFR_RNDU);
    mpfr_clear(t);
    return rr;
}

ComplexBall ComplexBall::midpoint() const {
    ComplexBall out(prec());
    mpfr_set(out.re_.mid_mut(), re_.mid(), MPFR_RNDN);
    mpfr_set(out.im_.mid_mut(), im_.mid(), MPFR_RNDN);
    return out;
}

ComplexBall ComplexBall::sqrt_near(const ComplexBall& approx) const {
    mpfr_prec_t p = prec();
    RealBall r = radius_bound();
    RealBall modc = midpoint().abs();
    if (!(r * 4).certainly_lt(modc)) throw precision_error("sqrt_near: ball too wide relative to |center|");
    // principal sqrt of the midpoint via polar form
    mpfr_t h, th, sq, c, s, half;
    mpfr_init2(h, p);
    mpfr_init2(th, p);
    mpfr_init2(sq, p);
    mpfr_init2(c, p);
    mpfr_init2(s, p);
    mpfr_init2(half, p);
    mpfr_hypot(h, re_.mid(), im_.mid(), MPFR_RNDN);
    mpfr_atan2(th, im_.mid(), re_.mid(), MPFR_RNDN);
    mpfr_sqrt(sq, h, MPFR_RNDN);
    mpfr_div_2ui(half, th, 1, MPFR_RNDN);
    mpfr_cos(c, half, MPFR_RNDN);
    mpfr_sin(s, half, MPFR_RNDN);
    ComplexBall w(p);
    mpfr_mul(w.re_.mid_mut(), sq, c, MPFR_RNDN);
    mpfr_mul(w.im_.mid_mut(), sq, s, MPFR_RNDN);
    w.re_.bump_ulp();
    w.im_.bump_ulp();
    // enclosure radius: |sqrt(z)-sqrt(c)| <= 0.6 |sqrt(c)| * (r/|c|) for r <= |c|/4
    RealBall extra = RealBall::exact(6L, p) / 10 * modc.sqrt().upper_bound() * r / modc.lower_bound();
    w.re_ = w.re_.widened(extra);
    w.im_ = w.im_.widened(extra);
    // a couple of rounding ulps in the polar evaluation
    RealBall fudge = modc.sqrt().upper_bound();
    mpfr_t u;
    mpfr_init2(u, kRadPrec);
    mpfr_set_ui_2exp(u, 8, -(p > 16 ? p - 8 : 8), MPFR_RNDU);
    RealBall pad(p);
    mpfr_set(pad.mid_mut(), u, MPFR_RNDU);
    mpfr_clear(u);
    w.re_ = w.re_.widened(fudge * pad);
    w.im_ = w.im_.widened(fudge * pad);
    mpfr_clear(h);
    mpfr_clear(th);
    mpfr_clear(sq);
    mpfr_clear(c);
    mpfr_clear(s);
    mpfr_clear(half);
    // choose sign nearest approx
    RealBall d_plus = (w - approx).abs_sq();
    RealBall d_minus = ((-w) - approx).abs_sq();
    ComplexBall out = d_plus.certainly_lt(d_minus) ? w : (d_minus.certainly_lt(d_plus) ? -w : w);
    if (!d_plus.certainly_lt(d_minus) && !d_minus.certainly_lt(d_plus))
        throw precision_error("sqrt_near: sign selection ambiguous");
    return out;
}

ComplexBall ComplexBall::sqrt_principal() const {
    // use sqrt_near with an approximation from double arithmetic
    double a = re_.mid_d(), b = im_.mid_d();
    double m = std::sqrt(std::hypot(a, b));
    double t = std::atan2(b, a) / 2;
    ComplexBall approx = ComplexBall::from_doubles(m * std::cos(t), m * std::sin(t), prec());
    return sqrt_near(approx);
}

ComplexBall ComplexBall::pow_ui(unsigned long k) const {
    ComplexBall acc = ComplexBall::exact(1, 0, prec());
    ComplexBall base = *this;
    while (k > 0) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

// ---------- small linear algebra ----------

CVec cmat_mul_vec(const CMat& m, const CVec& v) {
    CVec out;
    out.reserve(m.size());
    for (const auto& row : m) {
        ComplexBall acc(v.empty() ? 64 : v[0].prec());
        for (size_t j = 0; j < row.size(); ++j) acc += row[j] * v[j];
        out.push_back(acc);
    }
    return out;
}

CMat cmat_mul(const CMat& a, const CMat& b) {
    size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    CMat out(n, CVec(m, ComplexBall(a.empty() ? 64 : a[0][0].prec())));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < m; ++j) {
            ComplexBall acc(a[0][0].prec());
            for (size_t l = 0; l < k; ++l) acc += a[i][l] * b[l][j];
            out[i][j] = acc;
        }
    return out;
}

CMat cmat_inverse(const CMat& a) {
    size_t n = a.size();
    mpfr_prec_t p = a.empty() ? 64 : a[0][0].prec();
    CMat m = a;
    CMat inv(n, CVec(n, ComplexBall(p)));
    for (size_t i = 0; i < n; ++i) inv[i][i] = ComplexBall::exact(1, 0, p);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        double best = -1;
        for (size_t r = col; r < n; ++r) {
            double v = m[r][col].abs_sq().mid_d();
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        std::swap(m[piv], m[col]);
        std::swap(inv[piv], inv[col]);
        ComplexBall d = m[col][col];
        if (d.abs_sq().contains_zero()) throw precision_error("cmat_inverse: singular pivot");
        ComplexBall di = d.recip();
        for (size_t j = 0; j < n; ++j) {
            m[col][j] = m[col][j] * di;
            inv[col][j] = inv[col][j] * di;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            ComplexBall f = m[r][col];
            for (size_t j = 0; j < n; ++j) {
                m[r][j] = m[r][j] - f * m[col][j];
                inv[r][j] = inv[r][j] - f * inv[col][j];
            }
        }
    }
    return inv;
}

RMat rmat_inverse(const RMat& a) {
    size_t n = a.size();
    CMat ca(n, CVec(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) ca[i][j] = ComplexBall(a[i][j]);
    CMat ci = cmat_inverse(ca);
    RMat out(n, RVec(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) out[i][j] = ci[i][j].re();
    return out;
}

RVec rmat_mul_vec(const RMat& m, const RVec& v) {
    RVec out;
    for (const auto& row : m) {
        RealBall acc(v.empty() ? 64 : v[0].prec());
        for (size_t j = 0; j < row.size(); ++j) acc += row[j] * v[j];
        out.push_back(acc);
    }
    return out;
}

RealBall rmat_det(RMat a) {
    size_t n = a.size();
    mpfr_prec_t p = n ? a[0][0].prec() : 64;
    RealBall det = RealBall::exact(1L, p);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        double best = -1;
        for (size_t r = col; r < n; ++r) {
            double v = std::fabs(a[r][col].mid_d());
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = -det;
        }
        RealBall d = a[col][col];
        if (d.contains_zero()) throw precision_error("rmat_det: singular pivot");
        det = det * d;
        RealBall di = d.recip();
        for (size_t r = col + 1; r < n; ++r) {
            RealBall f = a[r][col] * di;
            for (size_t j = col; j < n; ++j) a[r][j] = a[r][j] - f * a[col][j];
        }
    }
    return det;
}

RealBall sym_min_eigenvalue_lower(const RMat& m) {
    size_t n = m.size();
    mpfr_prec_t p = n ? m[0][0].prec() : 64;
    // double-precision Jacobi eigenvalue iteration on the midpoints
    std::vector<std::vector<double>> a(n, std::vector<double>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) a[i][j] = m[i][j].mid_d();
    std::vector<std::vector<double>> q(n, std::vector<double>(n, 0.0));
    for (size_t i = 0; i < n; ++i) q[i][i] = 1.0;
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
        if (off < 1e-300) break;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j) {
                if (std::fabs(a[i][j]) < 1e-200) continue;
                double theta = (a[j][j] - a[i][i]) / (2 * a[i][j]);
                double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1));
                double c = 1 / std::sqrt(t * t + 1), s = t * c;
                for (size_t k = 0; k < n; ++k) {
                    double aik = a[i][k], ajk = a[j][k];
                    a[i][k] = c * aik - s * ajk;
                    a[j][k] = s * aik + c * ajk;
                }
                for (size_t k = 0; k < n; ++k) {
                    double aki = a[k][i], akj = a[k][j];
                    a[k][i] = c * aki - s * akj;
                    a[k][j] = s * aki + c * akj;
                }
                for (size_t k = 0; k < n; ++k) {
                    double qki = q[k][i], qkj = q[k][j];
                    q[k][i] = c * qki - s * qkj;
                    q[k][j] = s * qki + c * qkj;
                }
            }
    }
    // Weyl: lambda_min(M) >= min_i D_ii - ||M - Q D Q^T||_F, computed in balls
    RMat qd(n, RVec(n, RealBall(p))), qb(n, RVec(n, RealBall(p)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) qb[i][j] = RealBall::exact(q[i][j], p);
    RealBall dmin = RealBall::exact(a[0][0], p);
    for (size_t i = 1; i < n; ++i) dmin = RealBall::min(dmin, RealBall::exact(a[i][i], p));
    // R = M - Q D Q^T  (D diagonal of a)
    RealBall fro(p);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            RealBall acc(p);
            for (size_t k = 0; k < n; ++k) acc += qb[i][k] * RealBall::exact(a[k][k], p) * qb[j][k];
            RealBall r = m[i][j] - acc;
            fro += r * r;
        }
    // also account for Q not being exactly orthogonal: ||Q Q^T - I||_F
    RealBall ortho(p);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            RealBall acc(p);
            for (size_t k = 0; k < n; ++k) acc += qb[i][k] * qb[j][k];
            if (i == j) acc -= RealBall::exact(1L, p);
            ortho += acc * acc;
        }
    // For nearly orthogonal Q the similarity defect is second order; we fold it
    // in linearly with the norm of M as a safe overestimate.
    RealBall mnorm(p);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) mnorm += m[i][j] * m[i][j];
    return dmin - fro.sqrt() - ortho.sqrt() * (mnorm.sqrt() + RealBall::exact(1L, p)) * 4;
}

}  // namespace hh
