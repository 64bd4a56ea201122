#pragma once

// Certified complex root enclosures (Aberth refinement + interval Newton
// certification) and factorization over Q by root-subset recombination with
// exact verification. Degrees throughout this project are tiny.

#include "hh/ball.hpp"
#include "hh/qpoly.hpp"

namespace hh {

// Certified, pairwise-disjoint enclosures of all complex roots of a squarefree
// polynomial. Each enclosure contains exactly one simple root. Throws
// precision_error if certification keeps failing after internal precision
// escalation.
CVec certified_roots(const QPoly& p, mpfr_prec_t prec);

// Irreducible monic factors over Q with multiplicities (the non-monic content
// is dropped; p nonzero).
std::vector<std::pair<QPoly, int>> factor_over_q(const QPoly& p);

bool is_irreducible_over_q(const QPoly& p);

// Interval Newton contraction test: returns a certified enclosure of the
// unique simple root of p in the given disc, or nullopt if the test fails.
std::optional<ComplexBall> interval_newton_certify(const QPoly& p, const ComplexBall& disc);

}  // namespace hh
