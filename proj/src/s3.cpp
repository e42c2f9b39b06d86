#include "necklab/s3.hpp"

#include "necklab/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace necklab::spectral {

double eigenvalue(int n) {
    if (n < 0) throw std::domain_error("eigenvalue: degree must be >= 0");
    return static_cast<double>(n) * (n + 2.0);
}

long multiplicity(int n) {
    if (n < 1) throw std::domain_error("multiplicity: mean mode (n = 0) is stored separately");
    return static_cast<long>(n + 1) * (n + 1);
}

ModeLabel to_label(const ModeIndex& idx) {
    if (idx.n < 1) throw std::domain_error("to_label: degree must be >= 1");
    if (idx.l < 1 || idx.l > multiplicity(idx.n))
        throw std::domain_error("to_label: slot out of range");
    // l - 1 = k^2 + (k + m), 0 <= k + m <= 2k
    int r = idx.l - 1;
    int k = static_cast<int>(std::sqrt(static_cast<double>(r)));
    while ((k + 1) * (k + 1) <= r) ++k;
    while (k * k > r) --k;
    int m = r - k * k - k;
    return {idx.n, k, m};
}

ModeIndex to_index(const ModeLabel& lab) {
    if (lab.k < 0 || lab.k > lab.n || std::abs(lab.m) > lab.k)
        throw std::domain_error("to_index: invalid label");
    return {lab.n, lab.k * lab.k + lab.k + lab.m + 1};
}

double gegenbauer(int m, double lambda, double x) {
    if (m < 0) return 0.0;
    double c0 = 1.0;
    if (m == 0) return c0;
    double c1 = 2.0 * lambda * x;
    for (int j = 2; j <= m; ++j) {
        double c2 = (2.0 * (j + lambda - 1.0) * x * c1 - (j + 2.0 * lambda - 2.0) * c0) / j;
        c0 = c1;
        c1 = c2;
    }
    return c1;
}

namespace {

// psi-factor normalization: integral over [0,pi] of (c sin^k C^{(k+1)}_{n-k})^2 sin^2 = 1.
double psi_norm(int n, int k) {
    // 1/c^2 = pi 2^{-2k-1} (n+k+1)! / ((n-k)! (n+1) (k!)^2)
    double lg = std::lgamma(n + k + 2.0) - std::lgamma(n - k + 1.0) - 2.0 * std::lgamma(k + 1.0);
    double log_inv_c2 = std::log(std::numbers::pi) - (2.0 * k + 1.0) * std::numbers::ln2 + lg -
                        std::log(n + 1.0);
    return std::exp(-0.5 * log_inv_c2);
}

// real S^2 spherical harmonic normalization (without the trig factor)
double s2_norm(int k, int absm) {
    double lg = std::lgamma(k - absm + 1.0) - std::lgamma(k + absm + 1.0);
    return std::sqrt((2.0 * k + 1.0) / (4.0 * std::numbers::pi) * std::exp(lg));
}

double assoc_p(int k, int absm, double x) {
    if (absm > k) return 0.0;
    return std::assoc_legendre(static_cast<unsigned>(k), static_cast<unsigned>(absm), x);
}

// d/dtheta of P_k^{|m|}(cos theta); interior points only (sin theta > 0)
double assoc_p_dtheta(int k, int absm, double costh, double sinth) {
    // (1-x^2) dP/dx = (k+m) P_{k-1}^m - k x P_k^m
    double p = assoc_p(k, absm, costh);
    double pm1 = (k - 1 >= absm) ? assoc_p(k - 1, absm, costh) : 0.0;
    double dpdx_times = (k + absm) * pm1 - k * costh * p;  // = (1-x^2) dP/dx
    return -dpdx_times / sinth;                            // d/dtheta = -sin * dP/dx
}

double trig_factor(int m, double phi) {
    if (m > 0) return std::numbers::sqrt2 * std::cos(m * phi);
    if (m < 0) return std::numbers::sqrt2 * std::sin(-m * phi);
    return 1.0;
}

double trig_factor_dphi(int m, double phi) {
    if (m > 0) return -std::numbers::sqrt2 * m * std::sin(m * phi);
    if (m < 0) return std::numbers::sqrt2 * (-m) * std::cos(-m * phi);
    return 0.0;
}

}  // namespace

double harmonic_value(const ModeLabel& lab, const S3Point& p) {
    const int n = lab.n, k = lab.k, am = std::abs(lab.m);
    double spsi = std::sin(p.psi), cpsi = std::cos(p.psi);
    double f = psi_norm(n, k) * std::pow(spsi, k) * gegenbauer(n - k, k + 1.0, cpsi);
    double g = s2_norm(k, am) * assoc_p(k, am, std::cos(p.theta));
    return f * g * trig_factor(lab.m, p.phi);
}

void harmonic_gradient(const ModeLabel& lab, const S3Point& p, double out[3]) {
    const int n = lab.n, k = lab.k, am = std::abs(lab.m);
    double spsi = std::sin(p.psi), cpsi = std::cos(p.psi);
    double sth = std::sin(p.theta), cth = std::cos(p.theta);
    if (spsi <= 0.0 || sth <= 0.0)
        throw std::domain_error("harmonic_gradient: interior point required");
    double cnk = psi_norm(n, k);
    double C = gegenbauer(n - k, k + 1.0, cpsi);
    double dC = 2.0 * (k + 1.0) * gegenbauer(n - k - 1, k + 2.0, cpsi);
    double f = cnk * std::pow(spsi, k) * C;
    double df = cnk * ((k > 0 ? k * cpsi * std::pow(spsi, k - 1) * C : 0.0) -
                       std::pow(spsi, k + 1) * dC);
    double nrm = s2_norm(k, am);
    double g = nrm * assoc_p(k, am, cth);
    double dg = nrm * assoc_p_dtheta(k, am, cth, sth);
    double h = trig_factor(lab.m, p.phi);
    double dh = trig_factor_dphi(lab.m, p.phi);
    out[0] = df * g * h;
    out[1] = (f / spsi) * dg * h;
    out[2] = (f / spsi) * (g / sth) * dh;
}

S3Grid::S3Grid(int pair_degree) : pair_degree_(pair_degree) {
    if (pair_degree < 0) throw std::invalid_argument("S3Grid: pair_degree < 0");
    const int N = pair_degree;
    npsi_ = static_cast<std::size_t>(N + 1);
    nth_ = static_cast<std::size_t>(N + 1);
    nphi_ = static_cast<std::size_t>(2 * N + 1);

    num::QuadratureRule rpsi = num::gauss_chebyshev2(static_cast<int>(npsi_));
    num::QuadratureRule rth = num::gauss_legendre(static_cast<int>(nth_));

    std::vector<double> psis(npsi_), wpsi(npsi_);
    for (std::size_t a = 0; a < npsi_; ++a) {
        psis[a] = std::acos(rpsi.nodes[a]);
        wpsi[a] = rpsi.weights[a];  // includes sin^2(psi) measure
    }
    std::vector<double> ths(nth_), wth(nth_);
    for (std::size_t b = 0; b < nth_; ++b) {
        ths[b] = std::acos(rth.nodes[b]);
        wth[b] = rth.weights[b];  // includes sin(theta) measure via x = cos theta
    }
    const double wphi = 2.0 * std::numbers::pi / static_cast<double>(nphi_);

    inv_sin_psi_.resize(npsi_);
    inv_sin_theta_.resize(nth_);
    for (std::size_t a = 0; a < npsi_; ++a) inv_sin_psi_[a] = 1.0 / std::sin(psis[a]);
    for (std::size_t b = 0; b < nth_; ++b) inv_sin_theta_[b] = 1.0 / std::sin(ths[b]);

    points_.reserve(npsi_ * nth_ * nphi_);
    weights_.reserve(points_.capacity());
    for (std::size_t a = 0; a < npsi_; ++a)
        for (std::size_t b = 0; b < nth_; ++b)
            for (std::size_t c = 0; c < nphi_; ++c) {
                double phi = (2.0 * std::numbers::pi * c) / static_cast<double>(nphi_);
                points_.push_back({psis[a], ths[b], phi});
                weights_.push_back(wpsi[a] * wth[b] * wphi);
            }
}

const S3Grid::ModeTable& S3Grid::table(const ModeLabel& lab) const {
    auto it = cache_.find(lab);
    if (it != cache_.end()) return *it->second;
    auto t = std::make_unique<ModeTable>();
    const int n = lab.n, k = lab.k, am = std::abs(lab.m);
    const double cnk = psi_norm(n, k);
    t->fpsi.resize(npsi_);
    t->dfpsi.resize(npsi_);
    for (std::size_t a = 0; a < npsi_; ++a) {
        double psi = points_[a * nth_ * nphi_].psi;
        double s = std::sin(psi), c = std::cos(psi);
        double C = gegenbauer(n - k, k + 1.0, c);
        double dC = 2.0 * (k + 1.0) * gegenbauer(n - k - 1, k + 2.0, c);
        t->fpsi[a] = cnk * std::pow(s, k) * C;
        t->dfpsi[a] = cnk * ((k > 0 ? k * c * std::pow(s, k - 1) * C : 0.0) - std::pow(s, k + 1) * dC);
    }
    const double nrm = s2_norm(k, am);
    t->gth.resize(nth_);
    t->dgth.resize(nth_);
    for (std::size_t b = 0; b < nth_; ++b) {
        double th = points_[b * nphi_].theta;
        double c = std::cos(th), s = std::sin(th);
        t->gth[b] = nrm * assoc_p(k, am, c);
        t->dgth[b] = nrm * assoc_p_dtheta(k, am, c, s);
    }
    t->hph.resize(nphi_);
    t->dhph.resize(nphi_);
    for (std::size_t c = 0; c < nphi_; ++c) {
        double phi = points_[c].phi;
        t->hph[c] = trig_factor(lab.m, phi);
        t->dhph[c] = trig_factor_dphi(lab.m, phi);
    }
    const ModeTable& ref = *t;
    cache_[lab] = std::move(t);
    return ref;
}

void S3Grid::gradient(const ModeTable& t, std::size_t p, double out[3]) const {
    const auto [a, b, c] = split(p);
    out[0] = t.dfpsi[a] * t.gth[b] * t.hph[c];
    out[1] = t.fpsi[a] * inv_sin_psi_[a] * t.dgth[b] * t.hph[c];
    out[2] = t.fpsi[a] * inv_sin_psi_[a] * t.gth[b] * inv_sin_theta_[b] * t.dhph[c];
}

std::vector<ModeLabel> modes_up_to(int N) {
    std::vector<ModeLabel> out;
    for (int n = 1; n <= N; ++n)
        for (int k = 0; k <= n; ++k)
            for (int m = -k; m <= k; ++m) out.push_back({n, k, m});
    return out;
}

}  // namespace necklab::spectral
