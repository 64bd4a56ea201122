#pragma once

// Non-Archimedean metrics on curve points, metric axiom checking, and the
// fibral correction bounds B1 (Moore-Penrose route) and B2 (blowup chain
// lengths). Regular models are never computed here: chain lengths and
// intersection matrices arrive as inputs with good-reduction defaults.

#include <optional>
#include <string>
#include <vector>

#include "hh/arith.hpp"
#include "hh/curve.hpp"
#include "hh/pairing.hpp"
#include "hh/qlinalg.hpp"

namespace hh {

// A curve point over Q_p given exactly by rational coordinates (the exact
// realization is enough everywhere in the pipeline; algebraic points go
// through the pairing machinery instead).
struct PadicPoint {
    Int p;
    RatPoint pt;
};

// d_nu(p, q): the three-case max formula, exact (a power of p or 0/1).
Rat metric_nonarch(const HyperellipticCurve& c, const Int& p, const RatPoint& u, const RatPoint& v);

struct MetricAxiomReport {
    bool symmetry_ok = true;
    bool bounded_by_one_ok = true;
    bool identity_ok = true;
    bool triangle_ok = true;
    std::string counterexample;
    bool all_ok() const { return symmetry_ok && bounded_by_one_ok && identity_ok && triangle_ok; }
};

MetricAxiomReport check_metric_axioms(const HyperellipticCurve& c, const Int& p,
                                      const std::vector<RatPoint>& sample);

// Bad-place input data (supplied, never computed): blowup chain length b and
// the special-fibre intersection matrix.
struct BadPlaceData {
    Int p;
    Int residue_size;  // #kappa(nu)
    long b = 0;        // longest blowup chain length
    QMat matrix;       // fibral intersection matrix (1x1 zero for good reduction)
    std::vector<Int> multiplicities;  // optional component multiplicities

    static BadPlaceData good_reduction(const Int& prime) {
        return {prime, prime, 0, QMat{{Rat(0)}}, {}};
    }
};

// Validation: matrix symmetric; if multiplicities supplied, M*mult = 0.
void validate_bad_place(const BadPlaceData& d);

// g^2 (m_+ - m_-) over the entries of the Moore-Penrose pseudo-inverse.
Rat phi_bound_local(const QMat& intersection, int genus);

// B1 = sum over bad places of log(residue_size) * phi_bound_local
RealBall b1_bound(const std::vector<BadPlaceData>& bad, int genus, mpfr_prec_t prec);

// B2 = sum over bad places of b_nu * d * e * log(residue_size)
RealBall b2_bound(const std::vector<BadPlaceData>& bad, long d, long e, mpfr_prec_t prec);

}  // namespace hh
