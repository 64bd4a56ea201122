#include "hh/numfield.hpp"

#include <stdexcept>

namespace hh {

NFElem NFElem::inverse() const {
    if (is_zero()) throw std::invalid_argument("NFElem inverse of zero");
    QPoly u, w;
    QPoly g = QPoly::xgcd(v_, *m_, u, w);
    if (g.degree() != 0) throw std::invalid_argument("NFElem inverse: modulus not coprime (reducible?)");
    // u*v + w*m = g (monic constant 1)
    return NFElem(u, m_);
}

NFElem NFElem::pow(unsigned long k) const {
    NFElem acc = NFElem::one(m_);
    NFElem base = *this;
    while (k > 0) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

namespace {

// dense F_p[x] with integer coefficient vectors reduced mod p
using ZPoly = std::vector<Int>;

void zp_trim(ZPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

ZPoly zp_reduce(const QPoly& f, const Int& p) {
    ZPoly out;
    for (int i = 0; i <= f.degree(); ++i) {
        Rat c = f.coeff(i);
        if (c.get_den() % p == 0) throw std::invalid_argument("zp_reduce: denominator divisible by p");
        Int num = c.get_num() % p, den = c.get_den() % p;
        if (num < 0) num += p;
        Int deninv;
        mpz_invert(deninv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
        out.push_back((num * deninv) % p);
    }
    zp_trim(out);
    return out;
}

ZPoly zp_mulmod(const ZPoly& a, const ZPoly& b, const ZPoly& mod, const Int& p) {
    if (a.empty() || b.empty()) return {};
    ZPoly prod(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    // reduce modulo mod (leading coefficient invertible mod p)
    Int lead_inv;
    Int lead = mod.back() % p;
    mpz_invert(lead_inv.get_mpz_t(), lead.get_mpz_t(), p.get_mpz_t());
    while (prod.size() >= mod.size()) {
        Int top = prod.back() % p;
        if (top == 0) {
            prod.pop_back();
            continue;
        }
        Int f = (top * lead_inv) % p;
        size_t k = prod.size() - mod.size();
        for (size_t i = 0; i < mod.size(); ++i) {
            prod[k + i] = (prod[k + i] - f * mod[i]) % p;
            if (prod[k + i] < 0) prod[k + i] += p;
        }
        while (!prod.empty() && prod.back() % p == 0) prod.pop_back();
    }
    zp_trim(prod);
    return prod;
}

ZPoly zp_gcd(ZPoly a, ZPoly b, const Int& p) {
    zp_trim(a);
    zp_trim(b);
    while (!b.empty()) {
        // a mod b
        Int binv;
        Int blead = b.back() % p;
        mpz_invert(binv.get_mpz_t(), blead.get_mpz_t(), p.get_mpz_t());
        while (a.size() >= b.size() && !a.empty()) {
            Int f = (a.back() * binv) % p;
            size_t k = a.size() - b.size();
            for (size_t i = 0; i < b.size(); ++i) {
                a[k + i] = (a[k + i] - f * b[i]) % p;
                if (a[k + i] < 0) a[k + i] += p;
            }
            zp_trim(a);
        }
        std::swap(a, b);
    }
    return a;
}

ZPoly zp_xpow_pk(const ZPoly& mod, const Int& p, int k) {
    // x^(p^k) mod (mod, p)
    ZPoly x{Int(0), Int(1)};
    ZPoly acc = x;
    for (int i = 0; i < k; ++i) {
        // acc = acc^p via square-and-multiply on exponent p
        ZPoly r{Int(1)};
        ZPoly base = acc;
        Int e = p;
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t())) r = zp_mulmod(r, base, mod, p);
            base = zp_mulmod(base, base, mod, p);
            e >>= 1;
        }
        acc = r;
    }
    return acc;
}

}  // namespace

bool is_irreducible_mod_p(const QPoly& f, const Int& p) {
    int n = f.degree();
    if (n < 1) return false;
    ZPoly mod = zp_reduce(f, p);
    if ((int)mod.size() - 1 != n) return false;  // degree dropped mod p
    // x^(p^n) == x mod f, and gcd(x^(p^(n/q)) - x, f) == 1 for prime divisors q of n
    ZPoly xp = zp_xpow_pk(mod, p, n);
    ZPoly x{Int(0), Int(1)};
    ZPoly diff = xp;
    // diff -= x
    if (diff.size() < 2) diff.resize(2, Int(0));
    diff[1] = (diff[1] - 1) % p;
    if (diff[1] < 0) diff[1] += p;
    zp_trim(diff);
    if (!diff.empty()) return false;
    for (int q = 2; q <= n; ++q) {
        if (n % q != 0) continue;
        bool qprime = true;
        for (int d = 2; d * d <= q; ++d)
            if (q % d == 0) qprime = false;
        if (!qprime) continue;
        ZPoly xq = zp_xpow_pk(mod, p, n / q);
        ZPoly d2 = xq;
        if (d2.size() < 2) d2.resize(2, Int(0));
        d2[1] = (d2[1] - 1) % p;
        if (d2[1] < 0) d2[1] += p;
        zp_trim(d2);
        ZPoly g = zp_gcd(d2, mod, p);
        if ((int)g.size() - 1 != 0) return false;
    }
    return true;
}

QPoly find_irreducible_mod_p(const Int& p, int degree) {
    if (degree == 1) return QPoly::x();
    // deterministic scan over small coefficient patterns
    std::vector<long> coeffs(degree + 1, 0);
    coeffs[degree] = 1;
    long base = p < 50 ? mpz_get_si(p.get_mpz_t()) : 50;
    for (long trial = 0; trial < 100000; ++trial) {
        long t = trial;
        for (int i = 0; i < degree; ++i) {
            coeffs[i] = t % base;
            t /= base;
        }
        std::vector<Rat> v;
        for (long c : coeffs) v.emplace_back(c);
        QPoly cand(v);
        if (cand.degree() == degree && is_irreducible_mod_p(cand, p)) return cand;
    }
    throw std::runtime_error("find_irreducible_mod_p: search exhausted");
}

}  // namespace hh
