// modes.hpp — mode-space representation of biharmonic functions on
// annuli of R^4.  Separation of variables gives, per S^3 eigenmode of
// degree n, the radial space spanned by
//     r^n,  r^{-(n+2)},  r^{n+2},  r^{-n}        (coefficients A, B, C, D)
// and for the mean mode
//     1,  r^2,  r^{-2},  log r                    (A0, B0, C0, D0).
// In cylinder coordinates r = e^t these are exponentials (plus t for the
// log branch), so every derivative is available in closed form.

#pragma once

#include "necklab/s3.hpp"

#include <array>
#include <map>
#include <string>

namespace necklab::spectral {

// Radial coefficients of one mode of degree n.
struct RadialQuadruple {
    double A = 0.0, B = 0.0, C = 0.0, D = 0.0;
    int n = 1;

    // p-th t-derivative of the profile at t = log r.
    double deriv(int p, double t) const;
    double operator()(double t) const { return deriv(0, t); }
};

// Mean-mode coefficients: A0 + B0 r^2 + C0 r^{-2} + D0 log r.
struct MeanModeQuadruple {
    double A0 = 0.0, B0 = 0.0, C0 = 0.0, D0 = 0.0;

    double deriv(int p, double t) const;
    double operator()(double t) const { return deriv(0, t); }
    bool is_zero() const { return A0 == 0.0 && B0 == 0.0 && C0 == 0.0 && D0 == 0.0; }
};

// Finite mode expansion of a biharmonic function.
struct BiharmonicField {
    std::map<ModeIndex, RadialQuadruple> modes;
    MeanModeQuadruple mean;
    int truncation = 0;  // max degree N present

    bool mean_zero() const { return mean.is_zero(); }
    // Largest coefficient magnitude; the reference scale for tolerances.
    double scale() const;
    // Pointwise value at (t, point); exact sum over modes.
    double evaluate(double t, const S3Point& p) const;
    // Field rescaled by x -> x / e^{L} (t -> t - L); pairs with an index
    // shift i -> i+1 of any annulus chain.
    BiharmonicField rescaled(double L) const;
    void insert(const ModeIndex& idx, const RadialQuadruple& q);
};

// Dyadic annulus chain: annulus i = { e^{-iL} <= |x| <= e^{-(i-1)L} }.
struct AnnulusChain {
    double L = 3.0;
    int l_lo = 0;
    int l_hi = 0;

    AnnulusChain() = default;
    AnnulusChain(double L_, int lo, int hi);
    int count() const { return l_hi - l_lo + 1; }
    // t-interval of annulus l (ascending: [t_left, t_right])
    std::array<double, 2> band(int l) const { return {-l * L, -(l - 1) * L}; }
    double t_min() const { return -l_hi * L; }
    double t_max() const { return -(l_lo - 1) * L; }
};

// Weighted L^2 energies F_l over a chain.
struct EnergyProfile {
    AnnulusChain chain;
    std::vector<double> values;  // index 0 <-> l_lo

    double at(int l) const { return values.at(static_cast<std::size_t>(l - chain.l_lo)); }
};

// JSON round-trip for mode fields:
// {"L":..., "N":..., "mean":[A0,B0,C0,D0], "modes":[{"n":..,"l":..,"ABCD":[..]},...]}
std::string field_to_json(const BiharmonicField& f, double L);
BiharmonicField field_from_json(const std::string& text, double* L_out = nullptr);

}  // namespace necklab::spectral
