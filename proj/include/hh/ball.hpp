#pragma once

// Ball arithmetic over MPFR: a real value is carried as midpoint +/- radius,
// a complex value as a pair of real balls. Every operation encloses the exact
// result; midpoint rounding errors are absorbed into the radius. Radii are
// kept at a small fixed precision and always rounded upward.

#include <mpfr.h>
#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hh {

inline constexpr mpfr_prec_t kRadPrec = 32;

// Thrown when an operation cannot produce a sound enclosure at the current
// working precision (division by a ball containing zero, sqrt of a ball
// touching the branch point, and so on).
struct precision_error : std::runtime_error {
    explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

class RealBall {
  public:
    RealBall() : RealBall(64) {}
    explicit RealBall(mpfr_prec_t prec) {
        mpfr_init2(mid_, prec);
        mpfr_init2(rad_, kRadPrec);
        mpfr_set_zero(mid_, 1);
        mpfr_set_zero(rad_, 1);
    }
    RealBall(const RealBall& o) {
        mpfr_init2(mid_, mpfr_get_prec(o.mid_));
        mpfr_init2(rad_, kRadPrec);
        mpfr_set(mid_, o.mid_, MPFR_RNDN);
        mpfr_set(rad_, o.rad_, MPFR_RNDU);
    }
    RealBall(RealBall&& o) noexcept {
        mpfr_init2(mid_, 2);
        mpfr_init2(rad_, kRadPrec);
        mpfr_swap(mid_, o.mid_);
        mpfr_swap(rad_, o.rad_);
    }
    RealBall& operator=(const RealBall& o) {
        if (this != &o) {
            mpfr_set_prec(mid_, mpfr_get_prec(o.mid_));
            mpfr_set(mid_, o.mid_, MPFR_RNDN);
            mpfr_set(rad_, o.rad_, MPFR_RNDU);
        }
        return *this;
    }
    RealBall& operator=(RealBall&& o) noexcept {
        mpfr_swap(mid_, o.mid_);
        mpfr_swap(rad_, o.rad_);
        return *this;
    }
    ~RealBall() {
        mpfr_clear(mid_);
        mpfr_clear(rad_);
    }

    static RealBall exact(long v, mpfr_prec_t prec) {
        RealBall b(prec);
        int t = mpfr_set_si(b.mid_, v, MPFR_RNDN);
        if (t != 0) b.bump_ulp();
        return b;
    }
    static RealBall exact(double v, mpfr_prec_t prec) {
        RealBall b(prec);
        mpfr_set_d(b.mid_, v, MPFR_RNDN);  // doubles embed exactly for prec >= 53
        return b;
    }
    static RealBall from_rational(const mpq_class& q, mpfr_prec_t prec) {
        RealBall b(prec);
        int t = mpfr_set_q(b.mid_, q.get_mpq_t(), MPFR_RNDN);
        if (t != 0) b.bump_ulp();
        return b;
    }
    static RealBall from_integer(const mpz_class& z, mpfr_prec_t prec) {
        RealBall b(prec);
        int t = mpfr_set_z(b.mid_, z.get_mpz_t(), MPFR_RNDN);
        if (t != 0) b.bump_ulp();
        return b;
    }
    // The interval [lo, hi] given as exact mpfr endpoints.
    static RealBall from_endpoints(const RealBall& lo, const RealBall& hi);
    static RealBall pi(mpfr_prec_t prec) {
        RealBall b(prec);
        mpfr_const_pi(b.mid_, MPFR_RNDN);
        b.bump_ulp();
        return b;
    }

    mpfr_prec_t prec() const { return mpfr_get_prec(mid_); }
    const mpfr_t& mid() const { return mid_; }
    const mpfr_t& rad() const { return rad_; }
    mpfr_t& mid_mut() { return mid_; }
    mpfr_t& rad_mut() { return rad_; }

    double mid_d() const { return mpfr_get_d(mid_, MPFR_RNDN); }
    double rad_d() const { return mpfr_get_d(rad_, MPFR_RNDU); }

    bool is_finite() const { return mpfr_number_p(mid_) && mpfr_number_p(rad_); }
    bool is_exact() const { return mpfr_zero_p(rad_); }

    // upper bound of the interval, rounded up; lower bound rounded down
    RealBall upper_bound() const;
    RealBall lower_bound() const;
    double upper_d() const;
    double lower_d() const;

    bool contains_zero() const;
    bool is_positive() const;  // certainly > 0
    bool is_negative() const;  // certainly < 0
    bool certainly_lt(const RealBall& o) const;
    bool certainly_le(const RealBall& o) const;
    bool contains(const mpq_class& q) const;
    bool overlaps(const RealBall& o) const;

    RealBall round_prec(mpfr_prec_t prec) const;

    RealBall operator-() const;
    RealBall operator+(const RealBall& o) const;
    RealBall operator-(const RealBall& o) const;
    RealBall operator*(const RealBall& o) const;
    RealBall operator/(const RealBall& o) const;
    RealBall& operator+=(const RealBall& o) { return *this = *this + o; }
    RealBall& operator-=(const RealBall& o) { return *this = *this - o; }
    RealBall& operator*=(const RealBall& o) { return *this = *this * o; }
    RealBall& operator/=(const RealBall& o) { return *this = *this / o; }

    RealBall operator+(long v) const { return *this + exact(v, prec()); }
    RealBall operator-(long v) const { return *this - exact(v, prec()); }
    RealBall operator*(long v) const { return *this * exact(v, prec()); }
    RealBall operator/(long v) const { return *this / exact(v, prec()); }

    RealBall abs() const;
    RealBall recip() const;
    RealBall sqrt() const;   // requires interval to stay >= 0 (clips tiny negative slack)
    RealBall log() const;    // requires certainly > 0
    RealBall exp() const;
    RealBall sin() const;
    RealBall cos() const;
    RealBall atan() const;
    static RealBall atan2(const RealBall& y, const RealBall& x);
    RealBall pow(const RealBall& e) const;  // exp(e*log(this)), base certainly > 0
    RealBall pow_ui(unsigned long k) const;

    static RealBall min(const RealBall& a, const RealBall& b);
    static RealBall max(const RealBall& a, const RealBall& b);
    static RealBall hull(const RealBall& a, const RealBall& b);

    // Widen the radius by |e|.
    RealBall widened(const RealBall& e) const;

    std::string str(size_t digits = 12) const;

  private:
    void bump_ulp();  // add one ulp of mid to rad (covers a rounding step)
    mpfr_t mid_;
    mpfr_t rad_;

    friend class ComplexBall;
};

class ComplexBall {
  public:
    ComplexBall() = default;
    explicit ComplexBall(mpfr_prec_t prec) : re_(prec), im_(prec) {}
    ComplexBall(RealBall re, RealBall im) : re_(std::move(re)), im_(std::move(im)) {}
    explicit ComplexBall(const RealBall& re) : re_(re), im_(RealBall(re.prec())) {}

    static ComplexBall exact(long re, long im, mpfr_prec_t prec) {
        return {RealBall::exact(re, prec), RealBall::exact(im, prec)};
    }
    static ComplexBall from_doubles(double re, double im, mpfr_prec_t prec) {
        return {RealBall::exact(re, prec), RealBall::exact(im, prec)};
    }

    const RealBall& re() const { return re_; }
    const RealBall& im() const { return im_; }
    RealBall& re_mut() { return re_; }
    RealBall& im_mut() { return im_; }
    mpfr_prec_t prec() const { return std::max(re_.prec(), im_.prec()); }

    bool is_finite() const { return re_.is_finite() && im_.is_finite(); }
    bool contains_zero() const { return re_.contains_zero() && im_.contains_zero(); }
    bool overlaps(const ComplexBall& o) const { return re_.overlaps(o.re()) && im_.overlaps(o.im()); }

    ComplexBall operator-() const { return {-re_, -im_}; }
    ComplexBall conj() const { return {re_, -im_}; }
    ComplexBall operator+(const ComplexBall& o) const { return {re_ + o.re_, im_ + o.im_}; }
    ComplexBall operator-(const ComplexBall& o) const { return {re_ - o.re_, im_ - o.im_}; }
    ComplexBall operator*(const ComplexBall& o) const {
        return {re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_};
    }
    ComplexBall operator*(const RealBall& s) const { return {re_ * s, im_ * s}; }
    ComplexBall operator*(long s) const { return {re_ * s, im_ * s}; }
    ComplexBall operator/(long s) const { return {re_ / s, im_ / s}; }
    ComplexBall operator/(const ComplexBall& o) const;
    ComplexBall& operator+=(const ComplexBall& o) { return *this = *this + o; }
    ComplexBall& operator-=(const ComplexBall& o) { return *this = *this - o; }
    ComplexBall& operator*=(const ComplexBall& o) { return *this = *this * o; }

    RealBall abs() const { return (re_ * re_ + im_ * im_).sqrt(); }
    RealBall abs_sq() const { return re_ * re_ + im_ * im_; }
    RealBall abs_upper() const;  // cheap upper bound |re|+|im] style
    ComplexBall recip() const;

    // exp(this) = e^re (cos im + i sin im)
    ComplexBall exp() const {
        RealBall m = re_.exp();
        return {m * im_.cos(), m * im_.sin()};
    }

    // A square root enclosure near the given approximation (selects the sign
    // whose midpoint is closer to approx). Requires 0 to be well outside the
    // ball; throws precision_error otherwise.
    ComplexBall sqrt_near(const ComplexBall& approx) const;
    // Principal square root (branch cut on the negative real axis; the ball
    // must not touch the cut unless it is certainly in the right half plane).
    ComplexBall sqrt_principal() const;

    ComplexBall pow_ui(unsigned long k) const;

    // Max distance from midpoint to any point of the box (upper bound).
    RealBall radius_bound() const;
    ComplexBall midpoint() const;
    static ComplexBall hull(const ComplexBall& a, const ComplexBall& b) {
        return {RealBall::hull(a.re(), b.re()), RealBall::hull(a.im(), b.im())};
    }

    std::string str(size_t digits = 12) const { return re_.str(digits) + " + " + im_.str(digits) + "*i"; }

  private:
    RealBall re_, im_;
};

inline ComplexBall operator*(const RealBall& s, const ComplexBall& z) { return z * s; }

using RVec = std::vector<RealBall>;
using CVec = std::vector<ComplexBall>;
using CMat = std::vector<std::vector<ComplexBall>>;
using RMat = std::vector<std::vector<RealBall>>;

// Small dense linear algebra on balls (g is tiny throughout).
CVec cmat_mul_vec(const CMat& m, const CVec& v);
CMat cmat_mul(const CMat& a, const CMat& b);
CMat cmat_inverse(const CMat& a);  // Gaussian elimination; throws if a pivot ball touches 0
RMat rmat_inverse(const RMat& a);
RVec rmat_mul_vec(const RMat& m, const RVec& v);
RealBall rmat_det(RMat a);

// Certified lower bound on the smallest eigenvalue of a symmetric ball matrix
// (midpoint eigen-approximation plus a Weyl-type Frobenius correction).
RealBall sym_min_eigenvalue_lower(const RMat& m);

}  // namespace hh
