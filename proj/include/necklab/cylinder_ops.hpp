// cylinder_ops.hpp — Pohozaev machinery on the cylinder R x S^3.
//
// With r = e^t the flat operators become
//     lap  u = e^{-2t} (d_t^2 + 2 d_t + lap_S3) u
//     lap^2 u = e^{-4t} ((d_t^2 + lap_S3)^2 - 4 d_t^2) u .
// Pairing lap^2 u with d_t u over a slice and integrating by parts once in
// t gives a conserved flux for biharmonic fields,
//     Q(t) = ∫ 2 u_t u_ttt - |u_tt|^2 + |lap_S3 u|^2
//              - 2 |grad_S3 u_t|^2 - 4 |u_t|^2 dθ ,
// and a second rewrite yields the radial-energy ODE
//     d_t ∫ u_t u_tt dθ - ∫ (3/2)|u_tt|^2 + 2|u_t|^2 dθ = Θ(t) + Q(T0)/2
// with Θ = ∫ -(1/2)|lap_S3 u|^2 + |grad_S3 u_t|^2.  The intrinsic
// variants for unit-sphere targets add the second-fundamental-form
// brackets of the Laplace energy and the curvature bracket of the Hessian
// energy; both are quartic and evaluated pointwise on the S^3 grid.

#pragma once

#include "necklab/field_grid.hpp"

#include <Eigen/Dense>

#include <map>
#include <random>

namespace necklab::pohozaev {

using spectral::CylinderField;
using spectral::JetField;
using spectral::S3Grid;

// ── cylinder differential operators (grid fields) ───────────────────────
CylinderField cylinder_laplacian(const CylinderField& u);
CylinderField cylinder_bilaplacian(const CylinderField& u);

// ── slice quantities from jets ───────────────────────────────────────────
enum class Variant { Extrinsic, IntrinsicLaplace, IntrinsicHessian };
const char* to_string(Variant v);

// Five-term conserved bracket at one slice.
double boundary_quantity_Q(const JetField& jets, std::size_t slice);

// ∫ e^{4t} lap^2 u · u_t dθ — the equation defect pairing; identically
// zero for biharmonic fields and the t-derivative of Q/2 in general.
double equation_pairing(const JetField& jets, std::size_t slice);

// Variant Θ; intrinsic variants need the grid (quartic terms) unless the
// field is radial, and require unit-norm fields.
double theta(const JetField& jets, std::size_t slice, Variant v, const S3Grid* grid = nullptr);

// Extra slice bracket of the intrinsic variants:
//   IntrinsicLaplace: ∫ -4 B(pu,pu)B(ut,ut) + |B(pu,pu)|^2 dθ with pu the
//     product-metric gradient (t and S^3 parts together);
//   IntrinsicHessian: the curvature bracket with the round-sphere tensor
//     R_{abcd} = g_{ac} g_{bd} - g_{ad} g_{bc}.
double intrinsic_boundary_terms(const JetField& jets, std::size_t slice, Variant v,
                                const S3Grid* grid = nullptr);

struct PohozaevReport {
    Variant variant = Variant::Extrinsic;
    std::vector<double> t;
    std::vector<double> Q;
    std::vector<double> theta;
    std::vector<double> lhs;       // d_t ∫ u_t u_tt - ∫ (3/2)|u_tt|^2 + 2|u_t|^2 (+ Ψ)
    std::vector<double> residual;  // conserved(t) - conserved(t0)
    std::vector<double> source;    // equation_pairing
    double conserved0 = 0.0;
    double scale = 1.0;  // max over slices of the summed |Q-term| magnitudes
};

PohozaevReport pohozaev_report(const JetField& jets, Variant v, const S3Grid* grid = nullptr);

// window integrand ∫ (3/2)|u_tt|^2 + 2 |u_t|^2 dθ at one slice
double radial_energy_density(const JetField& jets, std::size_t slice);

// ── unit-sphere target geometry ──────────────────────────────────────────
// P(y) = Id - y y^T; requires |y| = 1 within tol.
Eigen::MatrixXd sphere_P(const Eigen::VectorXd& y, double tol = 1e-8);
// B(y)(X, Y) = -<X, Y> y.
Eigen::VectorXd sphere_B(const Eigen::VectorXd& y, const Eigen::VectorXd& X,
                         const Eigen::VectorXd& Y, double tol = 1e-8);

// ── divergence decomposition (Lemma-style radial/tangential split) ───────
struct Poly4 {
    std::map<std::array<int, 4>, double> terms;

    double eval(const Eigen::Vector4d& x) const;
    Poly4 partial(int axis) const;
    static Poly4 random(int max_degree, int nterms, std::mt19937_64& rng);
};

struct PolyVectorField {
    std::array<Poly4, 4> comp;

    Eigen::Vector4d eval(const Eigen::Vector4d& x) const;
    double divergence(const Eigen::Vector4d& x) const;  // exact
    static PolyVectorField random(int max_degree, std::mt19937_64& rng);
};

// |div X - (d_r X_r + (3/r) X_r + div_S3 X^T)| per sample; the tangential
// divergence is evaluated by sixth-order differences along great circles
// with parallel-transported frames, independent of the exact route.
std::vector<double> div_decompose(const PolyVectorField& X,
                                  const std::vector<Eigen::Vector4d>& samples);

}  // namespace necklab::pohozaev
