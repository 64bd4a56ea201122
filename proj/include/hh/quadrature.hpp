#pragma once

// Certified quadrature on [-1, 1]: Gauss-Legendre (analytic integrands) and
// Gauss-Chebyshev (inverse square-root endpoint weight), with truncation
// errors bounded through Bernstein-ellipse sup bounds supplied by the caller.

#include <functional>

#include "hh/ball.hpp"

namespace hh {

struct GLRule {
    RVec nodes;    // certified enclosures of the Legendre roots
    RVec weights;  // matching weights
};

// certified n-point Gauss-Legendre rule
const GLRule& gauss_legendre(int n, mpfr_prec_t prec);

// Chebyshev nodes cos((2k-1)pi/2n); the common weight is pi/n
RVec gauss_chebyshev_nodes(int n, mpfr_prec_t prec);

// integral over [-1,1] of f, where f is analytic inside the Bernstein ellipse
// of parameter rho > 1 with |f| <= m there: n-point Gauss-Legendre plus the
// tail bound 8 m rho^{-2n} / (1 - 1/rho).
ComplexBall integrate_gl(const std::function<ComplexBall(const RealBall&)>& f, int n,
                         const RealBall& rho, const RealBall& m, mpfr_prec_t prec);

// integral over [-1,1] of g(u) / sqrt(1-u^2), g analytic in E_rho with
// |g| <= m: n-point Gauss-Chebyshev plus the tail bound 2 pi m / (rho^{2n}-1).
ComplexBall integrate_gc(const std::function<ComplexBall(const RealBall&)>& g, int n,
                         const RealBall& rho, const RealBall& m, mpfr_prec_t prec);

// node count sufficient for the respective tail bound to drop below tol
int gl_nodes_for(const RealBall& rho, const RealBall& m, const RealBall& tol);
int gc_nodes_for(const RealBall& rho, const RealBall& m, const RealBall& tol);

}  // namespace hh
