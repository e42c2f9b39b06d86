// chebyshev.hpp — Chebyshev–Gauss–Lobatto collocation on an interval:
// nodes, spectral differentiation matrices (Trefethen's formulas) and
// Clenshaw–Curtis quadrature weights.  Used for the t-direction of every
// cylinder discretization.

#pragma once

#include <Eigen/Dense>

#include <vector>

namespace necklab::num {

struct ChebyshevGrid {
    double a = -1.0, b = 1.0;
    std::vector<double> nodes;      // ascending in [a, b], size M+1
    Eigen::MatrixXd deriv;          // first-derivative collocation matrix
    std::vector<double> cc_weights; // Clenshaw–Curtis quadrature weights

    int degree() const { return static_cast<int>(nodes.size()) - 1; }
};

// Build a CGL grid with M+1 nodes on [a, b].
ChebyshevGrid chebyshev_grid(int M, double a, double b);

// Evaluate the interpolant of nodal values at x (barycentric formula).
double chebyshev_eval(const ChebyshevGrid& grid, const std::vector<double>& values, double x);

}  // namespace necklab::num
