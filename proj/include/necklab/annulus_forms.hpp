// annulus_forms.hpp — the weighted energies F_i as quadratic forms.
//
// On the annulus A_i = { e^{-iL} <= |x| <= e^{-(i-1)L} } the energy
//     F_i(f) = integral over A_i of f^2 / |x|^4
// restricted to a single mode of degree n is a quadratic form of the
// radial coefficients with Gram entries
//     g(beta) = integral of r^{beta-1} dr over the annulus
//             = L                                   (beta = 0)
//             = e^{-i beta L} (e^{beta L} - 1)/beta （beta != 0).
// Ordering the radial basis as (r^n, r^{n+2}, r^{-n}, r^{-(n+2)}) the
// Gram matrix M_i has the entry pattern
//     [ g(2n)   g(2n+2)  g(0)     g(-2)    ]
//     [ g(2n+2) g(2n+4)  g(2)     g(0)     ]
//     [ g(0)    g(2)     g(-2n)   g(-2n-2) ]
//     [ g(-2)   g(0)     g(-2n-2) g(-2n-4) ]
// The three-circle matrix e^{-L}(M_{-1} + M_1) - 2 M_0 then has entries
// h(beta) = (e^{-L}(e^{beta L} + e^{-beta L}) - 2) g_0(beta), with
// h(0) = 2L(e^{-L} - 1).

#pragma once

#include "necklab/modes.hpp"
#include "necklab/precision.hpp"

#include <Eigen/Dense>

#include <array>

namespace necklab::spectral {

// g(beta) in hardware doubles; throws std::overflow_error when the result
// exceeds double range (use g_beta_log then).
double g_beta(int i, double L, double beta);

// log g(beta), computed in log space; finite for any (i, beta).
double g_beta_log(int i, double L, double beta);

// Certified enclosure of g(beta).
num::Interval g_beta(int i, double L, double beta, int bits);

// Symmetric 4x4 Gram matrix of F_i for degree n, with provenance.
struct QuadraticForm4 {
    Eigen::Matrix4d m;
    int i = 0;
    double L = 3.0;
    int n = 1;

    // Form value for a radial quadruple (handles the basis reordering
    // (A, B, C, D) -> (A, C, D, B)).
    double operator()(const RadialQuadruple& q) const;
};

// Exponent pattern beta_{jk} shared by M_i and the three-circle matrix.
std::array<std::array<double, 4>, 4> beta_matrix(int n);

QuadraticForm4 assemble_M(int i, double L, int n);

using IntervalMat4 = std::array<std::array<num::Interval, 4>, 4>;

IntervalMat4 assemble_M_interval(int i, double L, int n, int bits);

// e^{-L}(M_{-1} + M_1) - 2 M_0 for degree n (anchor i = 0); PD of this
// matrix is exactly the three-circle inequality for the mode.
Eigen::Matrix4d three_circle_matrix(double L, int n);
IntervalMat4 three_circle_matrix_interval(double L, int n, int bits);

// Gram matrix of the mean-mode basis (1, r^2, r^{-2}, log r) under the
// same weighted integral (closed form, including the log branch).
Eigen::Matrix4d mean_mode_gram(int i, double L);

// F_i(field): sum of per-mode form values plus 2 pi^2 times the mean
// quadratic form.  Equals the weighted L^2 integral over annulus i.
double F_energy(const BiharmonicField& field, int i, double L);

// All annulus energies over a chain.
EnergyProfile energy_profile(const BiharmonicField& field, const AnnulusChain& chain);

}  // namespace necklab::spectral
