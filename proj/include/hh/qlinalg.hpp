#pragma once

// Exact linear algebra over Q and Z: reduced row echelon form, the
// Moore-Penrose pseudo-inverse by rank factorization, and skew-symmetric
// Frobenius reduction to a standard symplectic form over Z.

#include <vector>

#include "hh/qpoly.hpp"

namespace hh {

using QMat = std::vector<std::vector<Rat>>;
using ZMat = std::vector<std::vector<Int>>;

QMat qmat_identity(size_t n);
QMat qmat_mul(const QMat& a, const QMat& b);
QMat qmat_transpose(const QMat& a);
QMat qmat_sub(const QMat& a, const QMat& b);
bool qmat_is_zero(const QMat& a);
bool qmat_is_symmetric(const QMat& a);

// Inverse of a nonsingular square rational matrix (throws on singular).
QMat qmat_inverse(QMat a);

// Exact Moore-Penrose pseudo-inverse (rank factorization route); satisfies the
// four Penrose identities exactly.
QMat moore_penrose(const QMat& m);

bool penrose_identities_hold(const QMat& m, const QMat& plus);

// min and max entries of a rational matrix.
std::pair<Rat, Rat> qmat_entry_range(const QMat& m);

// Frobenius reduction of a nonsingular skew-symmetric integer matrix J:
// returns a unimodular S with S J S^T having consecutive 2x2 blocks
// [[0, d], [-d, 0]]; for det J = 1 all d = 1. Throws if J is singular or not
// skew.
ZMat skew_frobenius_transform(ZMat j, std::vector<Int>* block_ds = nullptr);

ZMat zmat_mul(const ZMat& a, const ZMat& b);
ZMat zmat_transpose(const ZMat& a);
Int zmat_det(ZMat a);

}  // namespace hh
