// s3.hpp — real orthonormal harmonics on S^3 and the quadrature grid.
//
// Eigenfunctions of the sphere Laplacian satisfy
//     laplace_S3 Y = -n(n+2) Y,   n = 0, 1, 2, ...
// with eigenspace dimension (n+1)^2 for n >= 1 (the n = 0 mean mode is
// handled separately throughout the lab).  In hyperspherical coordinates
//     x = (cos psi, sin psi cos th, sin psi sin th cos ph, sin psi sin th sin ph)
// the basis factorizes as
//     Y_{nkm} = c(n,k) sin^k(psi) C^{(k+1)}_{n-k}(cos psi) Y_{km}(th, ph),
// with C the Gegenbauer polynomial and Y_{km} real S^2 spherical
// harmonics, 0 <= k <= n, -k <= m <= k.  The normalization c(n,k) makes
// the family orthonormal in L^2(S^3) (volume 2 pi^2).
//
// Quadrature: Gauss–Chebyshev (2nd kind) in cos psi absorbs the sin^2 psi
// measure, Gauss–Legendre in cos th absorbs sin th, uniform points in ph.
// A grid built with pair_degree = N integrates products of two harmonics
// of degree <= N exactly (up to roundoff).

#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <vector>

namespace necklab::spectral {

// One S^3 eigenmode: degree n >= 1 and multiplicity slot 1 <= l <= (n+1)^2.
struct ModeIndex {
    int n = 1;
    int l = 1;
    friend auto operator<=>(const ModeIndex&, const ModeIndex&) = default;
};

// Concrete hyperspherical label (n, k, m), 0 <= k <= n, |m| <= k.
struct ModeLabel {
    int n = 1;
    int k = 0;
    int m = 0;
    friend auto operator<=>(const ModeLabel&, const ModeLabel&) = default;
};

// Laplace eigenvalue n(n+2) (returned >= 0; the operator is -eigenvalue).
double eigenvalue(int n);

// Eigenspace dimension (n+1)^2; rejects n = 0 (mean mode stored apart).
long multiplicity(int n);

// Bijection between flat slots l = k^2 + (k+m) + 1 and labels (k, m).
ModeLabel to_label(const ModeIndex& idx);
ModeIndex to_index(const ModeLabel& lab);

inline constexpr double kVolS3 = 2.0 * 3.14159265358979323846 * 3.14159265358979323846;

struct S3Point {
    double psi, theta, phi;
};

// Gegenbauer C^(lambda)_m(x) by recurrence, and d/dx C = 2 lambda C^(lambda+1)_{m-1}.
double gegenbauer(int m, double lambda, double x);

// Value of the orthonormal harmonic at a point (slow path, no caching).
double harmonic_value(const ModeLabel& lab, const S3Point& p);

// Gradient in the orthonormal frame (e_psi, e_theta, e_phi); requires an
// interior point (sin psi > 0, sin theta > 0).
void harmonic_gradient(const ModeLabel& lab, const S3Point& p, double out[3]);

// ── Quadrature grid ──────────────────────────────────────────────────────
class S3Grid {
  public:
    // Exact for integrals of products of two harmonics of degree <= pair_degree.
    explicit S3Grid(int pair_degree);

    int pair_degree() const { return pair_degree_; }
    std::size_t size() const { return points_.size(); }
    const S3Point& point(std::size_t p) const { return points_[p]; }
    double weight(std::size_t p) const { return weights_[p]; }

    // Cached per-mode factor tables.
    struct ModeTable {
        std::vector<double> fpsi, dfpsi;    // psi factor and d/dpsi
        std::vector<double> gth, dgth;      // theta factor and d/dtheta
        std::vector<double> hph, dhph;      // phi factor and d/dphi
    };
    const ModeTable& table(const ModeLabel& lab) const;

    double value(const ModeTable& t, std::size_t p) const {
        const auto [a, b, c] = split(p);
        return t.fpsi[a] * t.gth[b] * t.hph[c];
    }
    // Orthonormal-frame gradient from cached factors.
    void gradient(const ModeTable& t, std::size_t p, double out[3]) const;

  private:
    std::tuple<std::size_t, std::size_t, std::size_t> split(std::size_t p) const {
        std::size_t c = p % nphi_;
        std::size_t b = (p / nphi_) % nth_;
        std::size_t a = p / (nphi_ * nth_);
        return {a, b, c};
    }
    int pair_degree_;
    std::size_t npsi_, nth_, nphi_;
    std::vector<S3Point> points_;
    std::vector<double> weights_;
    std::vector<double> inv_sin_psi_, inv_sin_theta_;  // per psi / theta node
    mutable std::map<ModeLabel, std::unique_ptr<ModeTable>> cache_;
};

// All labels of degree 1..N in (n, k, m) order.
std::vector<ModeLabel> modes_up_to(int N);

}  // namespace necklab::spectral
