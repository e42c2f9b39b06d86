// quadrature.hpp — 1-D quadrature rules used throughout the lab.
//
//   gauss_legendre(P)        : nodes/weights on [-1,1], exact for degree 2P-1
//   gauss_chebyshev2(P)      : nodes/weights for weight sqrt(1-x^2) on [-1,1],
//                              exact for polynomial factors of degree 2P-1;
//                              this is the natural rule for the S^3 polar
//                              angle where the measure is sin^2(psi) dpsi
//   integrate_panels(f,a,b,…): composite Gauss–Legendre on equal panels

#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace necklab::num {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss–Legendre nodes by Newton iteration on P_n.
QuadratureRule gauss_legendre(int points);

// Gauss–Chebyshev (second kind): x_j = cos(j pi/(P+1)),
// w_j = pi/(P+1) * sin^2(j pi/(P+1)).  Integrates f(x) sqrt(1-x^2) dx.
QuadratureRule gauss_chebyshev2(int points);

// Rule mapped to [a, b].
QuadratureRule map_to_interval(const QuadratureRule& rule, double a, double b);

// Composite Gauss–Legendre: `panels` equal subintervals, `points` per panel.
double integrate_panels(const std::function<double(double)>& f, double a, double b,
                        int panels = 8, int points = 24);

}  // namespace necklab::num
