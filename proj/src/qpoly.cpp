#include "hh/qpoly.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace hh {

void QPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

QPoly QPoly::monomial(const Rat& a, size_t k) {
    std::vector<Rat> v(k + 1, Rat(0));
    v[k] = a;
    return QPoly(std::move(v));
}

QPoly QPoly::from_int_coeffs(const std::vector<long>& v) {
    std::vector<Rat> c;
    c.reserve(v.size());
    for (long x : v) c.emplace_back(x);
    return QPoly(std::move(c));
}

QPoly QPoly::operator-() const {
    std::vector<Rat> v = c_;
    for (auto& x : v) x = -x;
    return QPoly(std::move(v));
}

QPoly QPoly::operator+(const QPoly& o) const {
    std::vector<Rat> v(std::max(c_.size(), o.c_.size()), Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
    return QPoly(std::move(v));
}

QPoly QPoly::operator-(const QPoly& o) const { return *this + (-o); }

QPoly QPoly::operator*(const QPoly& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<Rat> v(c_.size() + o.c_.size() - 1, Rat(0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
    return QPoly(std::move(v));
}

QPoly QPoly::operator*(const Rat& s) const {
    std::vector<Rat> v = c_;
    for (auto& x : v) x *= s;
    return QPoly(std::move(v));
}

std::pair<QPoly, QPoly> QPoly::divrem(const QPoly& d) const {
    if (d.is_zero()) throw std::invalid_argument("divrem by zero polynomial");
    std::vector<Rat> rem = c_;
    std::vector<Rat> quo(rem.size() > d.c_.size() ? rem.size() - d.c_.size() + 1 : 1, Rat(0));
    while ((int)rem.size() - 1 >= d.degree() && !rem.empty()) {
        size_t k = rem.size() - d.c_.size();
        Rat f = rem.back() / d.leading();
        quo[k] = f;
        for (size_t i = 0; i < d.c_.size(); ++i) rem[k + i] -= f * d.c_[i];
        while (!rem.empty() && rem.back() == 0) rem.pop_back();
    }
    return {QPoly(std::move(quo)), QPoly(std::move(rem))};
}

bool QPoly::divides(const QPoly& other) const {
    if (is_zero()) return other.is_zero();
    return other.divrem(*this).second.is_zero();
}

QPoly QPoly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rat> v(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * Rat((long)i);
    return QPoly(std::move(v));
}

QPoly QPoly::monic() const {
    if (is_zero()) return {};
    return *this * (Rat(1) / leading());
}

QPoly QPoly::gcd(QPoly a, QPoly b) {
    while (!b.is_zero()) {
        QPoly r = a.divrem(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
}

QPoly QPoly::xgcd(const QPoly& a, const QPoly& b, QPoly& u, QPoly& v) {
    QPoly r0 = a, r1 = b;
    QPoly u0 = constant(1), u1;
    QPoly v0, v1 = constant(1);
    while (!r1.is_zero()) {
        auto [q, r] = r0.divrem(r1);
        QPoly u2 = u0 - q * u1, v2 = v0 - q * v1;
        r0 = std::move(r1);
        r1 = std::move(r);
        u0 = std::move(u1);
        u1 = std::move(u2);
        v0 = std::move(v1);
        v1 = std::move(v2);
    }
    if (r0.is_zero()) {
        u = QPoly();
        v = QPoly();
        return QPoly();
    }
    Rat lead = r0.leading();
    u = u0 * (Rat(1) / lead);
    v = v0 * (Rat(1) / lead);
    return r0.monic();
}

QPoly QPoly::squarefree_part() const {
    if (degree() <= 0) return *this;
    QPoly g = gcd(*this, derivative());
    return divrem(g).first;
}

Rat QPoly::eval(const Rat& x) const {
    Rat acc(0);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

RealBall QPoly::eval(const RealBall& x) const {
    RealBall acc(x.prec());
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + RealBall::from_rational(c_[i], x.prec());
    return acc;
}

ComplexBall QPoly::eval(const ComplexBall& x) const {
    ComplexBall acc(x.prec());
    for (size_t i = c_.size(); i-- > 0;) {
        acc = acc * x;
        acc = acc + ComplexBall(RealBall::from_rational(c_[i], x.prec()));
    }
    return acc;
}

QPoly QPoly::compose_linear(const Rat& a, const Rat& b) const {
    QPoly lin({b, a});
    QPoly acc;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * lin + constant(c_[i]);
    return acc;
}

QPoly QPoly::reversal(int at_degree) const {
    int n = at_degree < 0 ? degree() : at_degree;
    if (n < degree()) throw std::invalid_argument("reversal degree too small");
    std::vector<Rat> v(n + 1, Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) v[n - i] = c_[i];
    return QPoly(std::move(v));
}

Rat QPoly::resultant(const QPoly& a, const QPoly& b) {
    // Euclidean algorithm with the standard resultant bookkeeping.
    if (a.is_zero() || b.is_zero()) return Rat(0);
    QPoly f = a, g = b;
    Rat res(1);
    bool neg = false;
    while (g.degree() > 0) {
        QPoly r = f.divrem(g).second;
        long df = f.degree(), dg = g.degree(), dr = r.is_zero() ? -1 : r.degree();
        if ((df % 2) && (dg % 2)) neg = !neg;
        if (r.is_zero()) return Rat(0);
        Rat lg = g.leading();
        // res *= lg^(df - dr)
        Rat pw(1);
        for (long i = 0; i < df - dr; ++i) pw *= lg;
        res *= pw;
        f = std::move(g);
        g = std::move(r);
    }
    // g is a nonzero constant
    Rat lg = g[0];
    Rat pw(1);
    for (long i = 0; i < f.degree(); ++i) pw *= lg;
    res *= pw;
    return neg ? -res : res;
}

Rat QPoly::discriminant() const {
    int n = degree();
    if (n < 1) throw std::invalid_argument("discriminant of constant");
    Rat r = resultant(*this, derivative());
    r /= leading();
    // sign (-1)^{n(n-1)/2}
    if (((long)n * (n - 1) / 2) % 2) r = -r;
    return r;
}

Int QPoly::denominator_lcm() const {
    Int d(1);
    for (const auto& x : c_) {
        Int den = x.get_den();
        d = lcm(d, den);
    }
    return d;
}

QPoly QPoly::primitive_integer(Int* content_num, Int* content_den) const {
    if (is_zero()) {
        if (content_num) *content_num = 0;
        if (content_den) *content_den = 1;
        return {};
    }
    Int den = denominator_lcm();
    Int g(0);
    for (const auto& x : c_) {
        Rat y = x * Rat(den);
        g = ::gcd(g, Int(y.get_num()));
    }
    if (g == 0) g = 1;
    if (content_num) *content_num = g;
    if (content_den) *content_den = den;
    std::vector<Rat> v;
    v.reserve(c_.size());
    for (const auto& x : c_) v.push_back(x * Rat(den) / Rat(g));
    QPoly out(std::move(v));
    if (out.leading() < 0) {
        out = -out;
        if (content_num) *content_num = -g;
    }
    return out;
}

std::string QPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        Rat a = c_[i];
        if (!first) os << (a > 0 ? " + " : " - ");
        else if (a < 0)
            os << "-";
        first = false;
        Rat aa = abs(a);
        if (i == 0 || aa != 1) os << aa.get_str();
        if (i > 0) {
            if (aa != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

QPoly lagrange_interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys) {
    size_t n = xs.size();
    QPoly acc;
    for (size_t i = 0; i < n; ++i) {
        QPoly basis = QPoly::constant(1);
        Rat denom(1);
        for (size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            basis = basis * QPoly({-xs[j], Rat(1)});
            denom *= xs[i] - xs[j];
        }
        acc = acc + basis * (ys[i] / denom);
    }
    return acc;
}

long valuation(const Int& x, const Int& p) {
    if (x == 0) throw std::invalid_argument("valuation of zero");
    long v = 0;
    Int t = x, q, r;
    while (true) {
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t());
        if (r != 0) break;
        t = q;
        ++v;
    }
    return v;
}

long valuation(const Rat& x, const Int& p) {
    if (x == 0) throw std::invalid_argument("valuation of zero");
    Int num = x.get_num(), den = x.get_den();
    long v = 0;
    if (num % p == 0) v = valuation(num, p);
    if (den % p == 0) v -= valuation(den, p);
    return v;
}

bool is_probable_prime(const Int& n) { return mpz_probab_prime_p(n.get_mpz_t(), 32) > 0; }

namespace {

Int pollard_rho(const Int& n) {
    if (n % 2 == 0) return 2;
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(12345);
    while (true) {
        Int x = rng.get_z_range(n - 3) + 2;
        Int y = x, c = rng.get_z_range(n - 2) + 1, d(1);
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            Int diff = x - y;
            if (diff < 0) diff = -diff;
            if (diff == 0) break;
            d = gcd(diff, n);
        }
        if (d != 1 && d != n) return d;
    }
}

void factor_rec(Int n, std::map<Int, int>& out) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        out[n] += 1;
        return;
    }
    Int d = pollard_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace

std::vector<std::pair<Int, int>> factorize(Int n) {
    if (n < 0) n = -n;
    if (n == 0) throw std::invalid_argument("factorize(0)");
    std::map<Int, int> m;
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L}) {
        while (n % p == 0) {
            m[Int(p)] += 1;
            n /= p;
        }
    }
    factor_rec(n, m);
    return {m.begin(), m.end()};
}

std::vector<Rat> rational_roots(const QPoly& p) {
    std::vector<Rat> roots;
    if (p.degree() < 1) return roots;
    QPoly q = p.primitive_integer();
    // strip X^k
    size_t k = 0;
    while (q.coeff(k) == 0) ++k;
    if (k > 0) {
        roots.emplace_back(0);
        std::vector<Rat> v(q.coeffs().begin() + k, q.coeffs().end());
        q = QPoly(v);
    }
    if (q.degree() < 1) return roots;
    Int a0 = Int(q.coeff(0).get_num());
    Int an = Int(q.leading().get_num());
    auto divisors = [](const Int& n) {
        std::vector<Int> ds{1};
        for (auto& [p2, e] : factorize(n)) {
            size_t sz = ds.size();
            Int pk(1);
            for (int i = 1; i <= e; ++i) {
                pk *= p2;
                for (size_t j = 0; j < sz; ++j) ds.push_back(ds[j] * pk);
            }
        }
        return ds;
    };
    for (const Int& r : divisors(abs(a0)))
        for (const Int& s : divisors(abs(an)))
            for (int sign : {1, -1}) {
                Rat cand(sign * r, s);
                cand.canonicalize();
                if (q.eval(cand) == 0) {
                    if (std::find(roots.begin(), roots.end(), cand) == roots.end()) roots.push_back(cand);
                }
            }
    return roots;
}

std::vector<NPSlope> newton_polygon(const QPoly& p, const Int& prime) {
    // lower convex hull of (i, v_p(c_i)) over nonzero coefficients
    struct Pt {
        long x;
        long y;
    };
    std::vector<Pt> pts;
    for (int i = 0; i <= p.degree(); ++i) {
        if (p.coeff(i) != 0) pts.push_back({i, valuation(p.coeff(i), prime)});
    }
    std::vector<Pt> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2) {
            const Pt& a = hull[hull.size() - 2];
            const Pt& b = hull[hull.size() - 1];
            // keep if b is strictly below segment a-pt
            // cross product orientation: (b-a) x (pt-a) <= 0 means b above or on
            long cross = (b.x - a.x) * (pt.y - a.y) - (b.y - a.y) * (pt.x - a.x);
            if (cross <= 0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(pt);
    }
    std::vector<NPSlope> slopes;
    for (size_t i = 0; i + 1 < hull.size(); ++i) {
        long dx = hull[i + 1].x - hull[i].x;
        long dy = hull[i + 1].y - hull[i].y;
        // edge slope dy/dx; the dx roots on this edge have valuation -dy/dx
        slopes.push_back({dy, dx, (int)dx});
    }
    return slopes;
}

}  // namespace hh
