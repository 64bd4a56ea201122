#pragma once

// Periods and the Abel-Jacobi map of a monic odd-degree hyperelliptic curve:
// certified branch points, a non-crossing spanning tree of rectangle cycles
// with tracked square-root branches, exact intersection numbers by crossing
// counts, symplectic reduction, the normalized period matrix tau, and path
// integration from the Weierstrass base point at infinity.

#include <functional>
#include <vector>

#include "hh/ball.hpp"
#include "hh/curve.hpp"
#include "hh/qlinalg.hpp"

namespace hh {

// rational point of the complex plane (used for exact rectangle corners)
struct QC {
    Rat re, im;
    ComplexBall ball(mpfr_prec_t prec) const {
        return {RealBall::from_rational(re, prec), RealBall::from_rational(im, prec)};
    }
};

struct EdgeCycle {
    int from = 0, to = 0;          // indices into the branch array
    std::array<QC, 4> corners;     // ccw rectangle containing exactly these two
    CVec periods;                  // integrals of x^k dx/y, k = 0..g-1
    CVec corner_y;                 // tracked y at each corner (consistent lift)
};

struct PeriodData {
    HyperellipticCurve curve;
    mpfr_prec_t prec = 0;
    CVec branch;                 // finite branch points, sorted by (re, im)
    std::vector<EdgeCycle> edges;
    ZMat intersections;          // 2g x 2g skew, det 1
    ZMat symplectic;             // S with S J S^T standard
    CMat a_mat, b_mat;           // g x g period matrices (rows = cycles)
    CMat norm_c;                 // C = a_mat^{-1}: omega_i = sum_j C[i][j] x^j dx/y
    CMat tau;                    // normalized period matrix
    RealBall c2;                 // certified lower bound on lambda_min(Im tau)
    RMat lattice;                // 2g x 2g real lattice basis (columns I | tau)
    RMat lattice_inv;

    int genus() const { return curve.genus; }
};

PeriodData period_matrix(const HyperellipticCurve& c, mpfr_prec_t prec);

// certified continuation of y = sqrt(f(x)) along the straight segment from
// (x0, y0) to x1; throws precision_error when a step cannot be certified
ComplexBall continue_y(const HyperellipticCurve& c, const ComplexBall& x0, const ComplexBall& y0,
                       const ComplexBall& x1, mpfr_prec_t prec);

// integrals of x^k dx/y (k < kmax) along the straight segment from (x0, y0)
// to x1, plus the continued y at x1
struct SegmentIntegral {
    CVec values;
    ComplexBall y_end;
};
SegmentIntegral integrate_raw_segment(const HyperellipticCurve& c, const CVec& branch,
                                      const ComplexBall& x0, const ComplexBall& y0,
                                      const ComplexBall& x1, int kmax, mpfr_prec_t prec,
                                      const RealBall& tol);

// Abel-Jacobi map with base point infinity, reduced into the centered
// fundamental domain. The point is given as a complex-ball curve point; the
// y-coordinate selects the sheet (for |y| ~ 0 the point is snapped to the
// nearest branch point).
CVec abel_jacobi(const PeriodData& pd, const CPoint& p);
// without the final lattice reduction
CVec abel_jacobi_raw(const PeriodData& pd, const CPoint& p);
void reduce_mod_lattice(const PeriodData& pd, CVec& z);

// z as a point of C^g -> the 2g real lattice coordinates
RVec lattice_coordinates(const PeriodData& pd, const CVec& z);

}  // namespace hh
