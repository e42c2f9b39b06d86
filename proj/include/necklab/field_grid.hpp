// field_grid.hpp — grid <-> mode transforms on the cylinder [T0,T1] x S^3.
//
// Two representations travel through the lab:
//   GridSamples   : raw pointwise values on (t-nodes) x (S^3 grid)
//   CylinderField : per-slice spectral coefficients (mean + modes <= N),
//                   vector-valued (K components), t-nodes organized as
//                   Chebyshev bands over an annulus chain
// plus SliceJet, the common currency of the Pohozaev machinery: mode
// coefficients together with t-derivatives up to order four, either exact
// (mode fields, geodesic profiles) or spectral (Chebyshev differentiation).

#pragma once

#include "necklab/chebyshev.hpp"
#include "necklab/modes.hpp"
#include "necklab/s3.hpp"

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <memory>

namespace necklab::spectral {

// Chebyshev bands over the chain; interface nodes are duplicated.
struct CylinderGrid {
    AnnulusChain chain;
    int points_per_band = 16;  // nodes per band = points_per_band + 1
    std::vector<num::ChebyshevGrid> bands;

    CylinderGrid() = default;
    CylinderGrid(const AnnulusChain& c, int M);
    std::size_t node_count() const;
    double node(std::size_t flat) const;
    std::vector<double> all_nodes() const;
    std::pair<std::size_t, std::size_t> locate(std::size_t flat) const;  // (band, local)
};

// Pointwise samples u_k(t_j, theta_p).
struct GridSamples {
    CylinderGrid tgrid;
    std::shared_ptr<S3Grid> sgrid;
    int K = 1;
    std::vector<Eigen::MatrixXd> values;  // K matrices, node_count x sgrid->size()
};

// Spectral-in-theta field: column 0 = mean profile, columns 1.. = labels.
struct CylinderField {
    CylinderGrid tgrid;
    int K = 1;
    std::vector<ModeLabel> labels;
    std::vector<Eigen::MatrixXd> coeffs;  // K matrices, node_count x (1 + labels)
    bool unit_norm = false;

    int truncation() const;
    // Chebyshev differentiation in t applied per band, p times.
    CylinderField t_derivative(int p) const;
};

// Evaluate a mode field on the tensor grid (pointwise samples).
GridSamples synthesize(const BiharmonicField& field, const CylinderGrid& tgrid,
                       std::shared_ptr<S3Grid> sgrid);

// Per-slice projection onto the basis of degree <= N.  The grid must
// resolve products of degree <= N pairs; otherwise an error is thrown
// rather than silently aliasing.
CylinderField analyze(const GridSamples& samples, int N);

// ── Jets ────────────────────────────────────────────────────────────────
// Coefficients with t-derivatives 0..4 at one slice: mean[k][p] and
// modes[k][m][p] (m indexes `labels`).
struct SliceJet {
    std::vector<std::array<double, 5>> mean;
    std::vector<std::vector<std::array<double, 5>>> modes;
};

struct JetField {
    std::vector<double> t;
    std::vector<ModeLabel> labels;
    int K = 1;
    bool unit_norm = false;
    std::vector<SliceJet> slices;
    double scale = 1.0;  // reference magnitude for tolerances
};

// Exact jets of a (scalar) biharmonic mode field at the given times.
JetField jets_from_field(const BiharmonicField& field, const std::vector<double>& ts);

// Jets of a sampled spectral field via per-band Chebyshev differentiation.
JetField jets_from_cylinder(const CylinderField& field);

// Geodesic-circle field u(t) = cos(s) e_a + sin(s) e_b in R^K: radial,
// unit-norm by construction.  `jet` returns (s, s', s'', s''', s'''').
using ProfileJet = std::function<std::array<double, 5>(double)>;
JetField jets_from_geodesic(const ProfileJet& jet, const std::vector<double>& ts, int K,
                            int axis_a = 0, int axis_b = 1);

// Jet of a mean-mode quadruple profile (the radial biharmonic space).
ProfileJet mean_quadruple_jet(const MeanModeQuadruple& m);

// Truncated Taylor composition helpers (5 coefficients: value..4th deriv).
std::array<double, 5> jet_cos(const std::array<double, 5>& s);
std::array<double, 5> jet_sin(const std::array<double, 5>& s);

}  // namespace necklab::spectral
