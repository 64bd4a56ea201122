#include "hh/qlinalg.hpp"

#include <stdexcept>

namespace hh {

QMat qmat_identity(size_t n) {
    QMat m(n, std::vector<Rat>(n, Rat(0)));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

QMat qmat_mul(const QMat& a, const QMat& b) {
    size_t n = a.size(), k = b.size(), mm = b.empty() ? 0 : b[0].size();
    QMat out(n, std::vector<Rat>(mm, Rat(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (size_t j = 0; j < mm; ++j) out[i][j] += a[i][l] * b[l][j];
        }
    return out;
}

QMat qmat_transpose(const QMat& a) {
    size_t n = a.size(), m = a.empty() ? 0 : a[0].size();
    QMat out(m, std::vector<Rat>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < m; ++j) out[j][i] = a[i][j];
    return out;
}

QMat qmat_sub(const QMat& a, const QMat& b) {
    QMat out = a;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[i].size(); ++j) out[i][j] -= b[i][j];
    return out;
}

bool qmat_is_zero(const QMat& a) {
    for (const auto& r : a)
        for (const auto& x : r)
            if (x != 0) return false;
    return true;
}

bool qmat_is_symmetric(const QMat& a) {
    size_t n = a.size();
    for (const auto& r : a)
        if (r.size() != n) return false;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (a[i][j] != a[j][i]) return false;
    return true;
}

QMat qmat_inverse(QMat a) {
    size_t n = a.size();
    QMat inv = qmat_identity(n);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) throw std::invalid_argument("qmat_inverse: singular");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Rat d = a[col][col];
        for (size_t j = 0; j < n; ++j) {
            a[col][j] /= d;
            inv[col][j] /= d;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rat f = a[r][col];
            for (size_t j = 0; j < n; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

namespace {

// reduced row echelon form; returns pivot column indices
std::vector<size_t> rref(QMat& a) {
    size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        Rat d = a[r][c];
        for (size_t j = 0; j < cols; ++j) a[r][j] /= d;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rat f = a[i][c];
            for (size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

QMat moore_penrose(const QMat& m) {
    size_t n = m.size(), cols = n ? m[0].size() : 0;
    QMat r = m;
    std::vector<size_t> piv = rref(r);
    size_t rank = piv.size();
    if (rank == 0) {
        // pseudo-inverse of the zero matrix is the zero transpose
        return QMat(cols, std::vector<Rat>(n, Rat(0)));
    }
    // C: n x rank (pivot columns of m), F: rank x cols (nonzero rows of rref)
    QMat c(n, std::vector<Rat>(rank));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < rank; ++j) c[i][j] = m[i][piv[j]];
    QMat f(rank, std::vector<Rat>(cols));
    for (size_t i = 0; i < rank; ++i)
        for (size_t j = 0; j < cols; ++j) f[i][j] = r[i][j];
    QMat ft = qmat_transpose(f), ct = qmat_transpose(c);
    QMat fft_inv = qmat_inverse(qmat_mul(f, ft));
    QMat ctc_inv = qmat_inverse(qmat_mul(ct, c));
    return qmat_mul(qmat_mul(ft, fft_inv), qmat_mul(ctc_inv, ct));
}

bool penrose_identities_hold(const QMat& m, const QMat& plus) {
    QMat mp = qmat_mul(m, plus), pm = qmat_mul(plus, m);
    if (!qmat_is_zero(qmat_sub(qmat_mul(mp, m), m))) return false;
    if (!qmat_is_zero(qmat_sub(qmat_mul(pm, plus), plus))) return false;
    if (!qmat_is_zero(qmat_sub(qmat_transpose(mp), mp))) return false;
    if (!qmat_is_zero(qmat_sub(qmat_transpose(pm), pm))) return false;
    return true;
}

std::pair<Rat, Rat> qmat_entry_range(const QMat& m) {
    Rat lo = m.at(0).at(0), hi = lo;
    for (const auto& r : m)
        for (const auto& x : r) {
            if (x < lo) lo = x;
            if (x > hi) hi = x;
        }
    return {lo, hi};
}

ZMat zmat_mul(const ZMat& a, const ZMat& b) {
    size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    ZMat out(n, std::vector<Int>(m, Int(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (size_t j = 0; j < m; ++j) out[i][j] += a[i][l] * b[l][j];
        }
    return out;
}

ZMat zmat_transpose(const ZMat& a) {
    size_t n = a.size(), m = a.empty() ? 0 : a[0].size();
    ZMat out(m, std::vector<Int>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < m; ++j) out[j][i] = a[i][j];
    return out;
}

Int zmat_det(ZMat a) {
    // fraction-free Bareiss
    size_t n = a.size();
    if (n == 0) return 1;
    Int prev(1);
    int sign = 1;
    for (size_t k = 0; k < n - 1; ++k) {
        if (a[k][k] == 0) {
            size_t s = k + 1;
            while (s < n && a[s][k] == 0) ++s;
            if (s == n) return 0;
            std::swap(a[s], a[k]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        prev = a[k][k];
    }
    return sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

ZMat skew_frobenius_transform(ZMat j, std::vector<Int>* block_ds) {
    size_t n = j.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k)
            if (j[i][k] != -j[k][i]) throw std::invalid_argument("matrix not skew-symmetric");
    ZMat s(n, std::vector<Int>(n, Int(0)));
    for (size_t i = 0; i < n; ++i) s[i][i] = 1;

    auto row_op = [&](size_t dst, size_t src, const Int& c) {
        // rows: dst += c*src, and the congruent column op; also track S
        for (size_t t = 0; t < n; ++t) j[dst][t] += c * j[src][t];
        for (size_t t = 0; t < n; ++t) j[t][dst] += c * j[t][src];
        for (size_t t = 0; t < n; ++t) s[dst][t] += c * s[src][t];
    };
    auto swap_op = [&](size_t a2, size_t b2) {
        std::swap(j[a2], j[b2]);
        for (size_t t = 0; t < n; ++t) std::swap(j[t][a2], j[t][b2]);
        std::swap(s[a2], s[b2]);
    };

    std::vector<Int> ds;
    for (size_t base = 0; base + 1 < n; base += 2) {
        // find minimal nonzero |j[i][k]| with i,k >= base
        bool found = false;
        size_t bi = base, bk = base + 1;
        Int best(0);
        for (size_t i = base; i < n; ++i)
            for (size_t k = i + 1; k < n; ++k) {
                if (j[i][k] == 0) continue;
                Int a2 = abs(j[i][k]);
                if (!found || a2 < best) {
                    best = a2;
                    bi = i;
                    bk = k;
                    found = true;
                }
            }
        if (!found) throw std::invalid_argument("skew matrix is singular");
        if (bi != base) swap_op(bi, base);
        if (bk == base) bk = bi;  // got swapped
        if (bk != base + 1) swap_op(bk, base + 1);
        if (j[base][base + 1] < 0) swap_op(base, base + 1);

        // keep reducing until the pivot divides everything in its row pair
        bool again = true;
        while (again) {
            again = false;
            Int d = j[base][base + 1];
            for (size_t t = base + 2; t < n; ++t) {
                if (j[base][t] != 0) {
                    Int q = -(j[base][t] / d);
                    // adding q * col(base+1)'s partner row reduces entry (base, t):
                    // j[base][t] += q * j[base][base+1] requires row t += q^T...
                    // use: row t += (-j[base][t]/d) * row (base+1) to clear j[base][t]
                    row_op(t, base + 1, q);
                    if (j[base][t] != 0) {
                        // remainder left; swap roles to shrink the pivot
                        swap_op(base + 1, t);
                        if (j[base][base + 1] < 0) swap_op(base, base + 1);
                        again = true;
                        break;
                    }
                }
                if (j[base + 1][t] != 0) {
                    Int q = j[base + 1][t] / d;
                    // row t += q * row base clears j[base+1][t] since j[base][base+1] = d
                    row_op(t, base, q);
                    if (j[base + 1][t] != 0) {
                        swap_op(base, t);
                        if (j[base][base + 1] < 0) swap_op(base, base + 1);
                        again = true;
                        break;
                    }
                }
            }
        }
        ds.push_back(j[base][base + 1]);
    }
    if (block_ds) *block_ds = ds;
    return s;
}

}  // namespace hh
