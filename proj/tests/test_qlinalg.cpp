#include <random>

#include "doctest.h"
#include "hh/qlinalg.hpp"

using namespace hh;

TEST_CASE("moore-penrose worked examples") {
    QMat zero{{Rat(0)}};
    QMat zp = moore_penrose(zero);
    CHECK(zp[0][0] == 0);

    QMat m{{Rat(-2), Rat(2)}, {Rat(2), Rat(-2)}};
    QMat mp = moore_penrose(m);
    CHECK(mp[0][0] == Rat(-1, 8));
    CHECK(mp[0][1] == Rat(1, 8));
    CHECK(mp[1][0] == Rat(1, 8));
    CHECK(mp[1][1] == Rat(-1, 8));
    CHECK(penrose_identities_hold(m, mp));

    QMat inv{{Rat(2), Rat(1)}, {Rat(1), Rat(1)}};
    QMat invp = moore_penrose(inv);
    CHECK(qmat_is_zero(qmat_sub(invp, qmat_inverse(inv))));
}

TEST_CASE("penrose identities on random symmetric rational matrices") {
    std::mt19937 rng(23);
    std::uniform_int_distribution<long> d(-6, 6);
    std::uniform_int_distribution<int> dim(1, 6);
    for (int t = 0; t < 100; ++t) {
        int n = dim(rng);
        QMat m(n, std::vector<Rat>(n));
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                long num = d(rng), den = std::abs(d(rng)) + 1;
                Rat v(num, den);
                v.canonicalize();
                m[i][j] = v;
                m[j][i] = v;
            }
        QMat mp = moore_penrose(m);
        CHECK(penrose_identities_hold(m, mp));
    }
}

TEST_CASE("entry range") {
    QMat m{{Rat(-1, 8), Rat(1, 8)}, {Rat(1, 8), Rat(-1, 8)}};
    auto [lo, hi] = qmat_entry_range(m);
    CHECK(lo == Rat(-1, 8));
    CHECK(hi == Rat(1, 8));
}

TEST_CASE("skew frobenius reduction gives unit symplectic blocks") {
    // build J = S0 J0 S0^T for a few unimodular S0 and reduce back
    std::mt19937 rng(29);
    std::uniform_int_distribution<long> d(-2, 2);
    for (int t = 0; t < 25; ++t) {
        size_t g = 1 + (t % 3);
        size_t n = 2 * g;
        ZMat j0(n, std::vector<Int>(n, Int(0)));
        for (size_t i = 0; i < g; ++i) {
            j0[2 * i][2 * i + 1] = 1;
            j0[2 * i + 1][2 * i] = -1;
        }
        // random unimodular: product of elementary row+col ops applied congruently
        ZMat s0(n, std::vector<Int>(n, Int(0)));
        for (size_t i = 0; i < n; ++i) s0[i][i] = 1;
        for (int k = 0; k < 12; ++k) {
            size_t a = rng() % n, b = rng() % n;
            if (a == b) continue;
            Int c(d(rng));
            for (size_t col = 0; col < n; ++col) s0[a][col] += c * s0[b][col];
        }
        ZMat j = zmat_mul(zmat_mul(s0, j0), zmat_transpose(s0));
        CHECK(abs(zmat_det(j)) == 1);
        std::vector<Int> ds;
        ZMat s = skew_frobenius_transform(j, &ds);
        ZMat red = zmat_mul(zmat_mul(s, j), zmat_transpose(s));
        for (size_t i = 0; i < g; ++i) {
            CHECK(red[2 * i][2 * i + 1] == 1);
            CHECK(red[2 * i + 1][2 * i] == -1);
        }
        for (size_t r = 0; r < n; ++r)
            for (size_t c2 = 0; c2 < n; ++c2) {
                long expect = 0;
                if (r / 2 == c2 / 2 && r != c2) expect = (r < c2) ? 1 : -1;
                CHECK(red[r][c2] == expect);
            }
    }
}
