#pragma once

// Arithmetic in Q[Z]/(m) for monic irreducible m, generic resultants over
// that field, and small F_p[x] utilities (irreducible polynomial search for
// unramified auxiliary extensions).

#include <vector>

#include "hh/qpoly.hpp"

namespace hh {

// Element of Q[Z]/(m); the modulus is shared externally.
class NFElem {
  public:
    NFElem() = default;
    NFElem(QPoly v, const QPoly* m) : v_(std::move(v)), m_(m) { reduce(); }
    static NFElem zero(const QPoly* m) { return NFElem(QPoly(), m); }
    static NFElem one(const QPoly* m) { return NFElem(QPoly::constant(1), m); }
    static NFElem of_rat(const Rat& r, const QPoly* m) { return NFElem(QPoly::constant(r), m); }
    static NFElem generator(const QPoly* m) { return NFElem(QPoly::x(), m); }

    const QPoly& poly() const { return v_; }
    const QPoly* modulus() const { return m_; }
    bool is_zero() const { return v_.is_zero(); }

    NFElem operator+(const NFElem& o) const { return NFElem(v_ + o.v_, m_); }
    NFElem operator-(const NFElem& o) const { return NFElem(v_ - o.v_, m_); }
    NFElem operator-() const { return NFElem(-v_, m_); }
    NFElem operator*(const NFElem& o) const { return NFElem(v_ * o.v_, m_); }
    NFElem operator*(const Rat& r) const { return NFElem(v_ * r, m_); }
    NFElem inverse() const;
    NFElem operator/(const NFElem& o) const { return *this * o.inverse(); }
    NFElem pow(unsigned long k) const;
    bool operator==(const NFElem& o) const { return v_ == o.v_; }

    // Norm down to Q: resultant of the modulus (monic) with this element.
    Rat norm() const { return QPoly::resultant(*m_, v_); }

  private:
    void reduce() {
        if (m_ && v_.degree() >= m_->degree()) v_ = v_.divrem(*m_).second;
    }
    QPoly v_;
    const QPoly* m_ = nullptr;
};

// Dense polynomials over an abstract field element type F which supports
// +, -, *, /, is_zero(). Used for resultants over Q[Z]/(m).
template <typename F>
struct FPoly {
    std::vector<F> c;  // ascending, trimmed
    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
    int degree() const { return (int)c.size() - 1; }
    bool is_zero() const { return c.empty(); }
    const F& leading() const { return c.back(); }
};

// resultant of two polynomials over a field, by the Euclidean algorithm
template <typename F>
F fpoly_resultant(FPoly<F> a, FPoly<F> b, const F& one_elt) {
    auto pow_f = [&](F base, long e) {
        F acc = one_elt;
        for (long i = 0; i < e; ++i) acc = acc * base;
        return acc;
    };
    if (a.is_zero() || b.is_zero()) {
        F z = one_elt - one_elt;
        return z;
    }
    F res = one_elt;
    bool neg = false;
    while (b.degree() > 0) {
        // remainder of a by b
        FPoly<F> r = a;
        while (r.degree() >= b.degree() && !r.is_zero()) {
            F f = r.leading() / b.leading();
            size_t k = r.c.size() - b.c.size();
            for (size_t i = 0; i < b.c.size(); ++i) r.c[k + i] = r.c[k + i] - f * b.c[i];
            r.trim();
        }
        long da = a.degree(), db = b.degree(), dr = r.is_zero() ? -1 : r.degree();
        if ((da % 2) && (db % 2)) neg = !neg;
        if (r.is_zero()) {
            F z = one_elt - one_elt;
            return z;
        }
        res = res * pow_f(b.leading(), da - dr);
        a = std::move(b);
        b = std::move(r);
    }
    res = res * pow_f(b.c[0], a.degree());
    if (neg) res = -res;
    return res;
}

// --- F_p[x] helpers ---

// monic irreducible polynomial of the given degree over F_p (deterministic
// search), coefficients lifted to integers in [0, p).
QPoly find_irreducible_mod_p(const Int& p, int degree);

// is the monic integer polynomial irreducible modulo p?
bool is_irreducible_mod_p(const QPoly& f, const Int& p);

}  // namespace hh
