#include "necklab/annulus_forms.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace necklab::spectral {

using num::Interval;

double g_beta(int i, double L, double beta) {
    if (L <= 0.0) throw std::domain_error("g_beta: L must be > 0");
    if (!std::isfinite(beta)) throw std::domain_error("g_beta: beta must be finite");
    if (beta == 0.0) return L;
    double lg = g_beta_log(i, L, beta);
    if (lg > 700.0) throw std::overflow_error("g_beta: value exceeds double range");
    return std::exp(lg);
}

double g_beta_log(int i, double L, double beta) {
    if (L <= 0.0) throw std::domain_error("g_beta_log: L must be > 0");
    if (!std::isfinite(beta)) throw std::domain_error("g_beta_log: beta must be finite");
    if (beta == 0.0) return std::log(L);
    // g = e^{-i beta L} (e^{beta L} - 1)/beta, always positive
    if (beta > 0.0)
        return -i * beta * L + beta * L + std::log1p(-std::exp(-beta * L)) - std::log(beta);
    return -i * beta * L + std::log1p(-std::exp(beta * L)) - std::log(-beta);
}

Interval g_beta(int i, double L, double beta, int bits) {
    if (L <= 0.0) throw std::domain_error("g_beta: L must be > 0");
    if (!std::isfinite(beta)) throw std::domain_error("g_beta: beta must be finite");
    if (beta == 0.0) return Interval(L, bits);
    Interval bL = Interval(beta, bits) * Interval(L, bits);
    Interval e = exp(bL);
    Interval one(1.0, bits);
    Interval scale = exp(Interval(-static_cast<double>(i), bits) * bL);
    return scale * (e - one) / Interval(beta, bits);
}

std::array<std::array<double, 4>, 4> beta_matrix(int n) {
    const double e[4] = {static_cast<double>(n), n + 2.0, -static_cast<double>(n), -(n + 2.0)};
    std::array<std::array<double, 4>, 4> b{};
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) b[j][k] = e[j] + e[k];
    return b;
}

double QuadraticForm4::operator()(const RadialQuadruple& q) const {
    Eigen::Vector4d x(q.A, q.C, q.D, q.B);
    return x.dot(m * x);
}

QuadraticForm4 assemble_M(int i, double L, int n) {
    if (n < 1) throw std::domain_error("assemble_M: n must be >= 1");
    QuadraticForm4 out;
    out.i = i;
    out.L = L;
    out.n = n;
    auto b = beta_matrix(n);
    for (int j = 0; j < 4; ++j)
        for (int k = j; k < 4; ++k) {
            double v = g_beta(i, L, b[j][k]);
            out.m(j, k) = v;
            out.m(k, j) = v;
        }
    return out;
}

IntervalMat4 assemble_M_interval(int i, double L, int n, int bits) {
    if (n < 1) throw std::domain_error("assemble_M_interval: n must be >= 1");
    auto b = beta_matrix(n);
    IntervalMat4 out;
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) out[j][k] = g_beta(i, L, b[j][k], bits);
    return out;
}

namespace {

// h(beta) = (e^{-L}(e^{beta L} + e^{-beta L}) - 2) g_0(beta); h(0) = 2L(e^{-L}-1)
double h_entry(double L, double beta) {
    if (beta == 0.0) return 2.0 * L * (std::exp(-L) - 1.0);
    double g0 = g_beta(0, L, beta);
    return (std::exp(-L) * (std::exp(beta * L) + std::exp(-beta * L)) - 2.0) * g0;
}

Interval h_entry(double L, double beta, int bits) {
    Interval two(2.0, bits);
    Interval eL = exp(Interval(-L, bits));
    if (beta == 0.0) return two * Interval(L, bits) * (eL - Interval(1.0, bits));
    Interval bL = Interval(beta, bits) * Interval(L, bits);
    Interval g0 = g_beta(0, L, beta, bits);
    return (eL * (exp(bL) + exp(-bL)) - two) * g0;
}

}  // namespace

Eigen::Matrix4d three_circle_matrix(double L, int n) {
    if (n < 1) throw std::domain_error("three_circle_matrix: n must be >= 1");
    auto b = beta_matrix(n);
    Eigen::Matrix4d d;
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) d(j, k) = h_entry(L, b[j][k]);
    return d;
}

IntervalMat4 three_circle_matrix_interval(double L, int n, int bits) {
    if (n < 1) throw std::domain_error("three_circle_matrix_interval: n must be >= 1");
    auto b = beta_matrix(n);
    IntervalMat4 out;
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) out[j][k] = h_entry(L, b[j][k], bits);
    return out;
}

Eigen::Matrix4d mean_mode_gram(int i, double L) {
    // basis (1, r^2, r^{-2}, log r) on [a, b] = [e^{-iL}, e^{-(i-1)L}],
    // all integrals against dr/r; ta = log a, tb = log b
    const double ta = -i * L, tb = -(i - 1) * L;
    auto e2 = [](double t) { return std::exp(2.0 * t); };
    Eigen::Matrix4d g;
    const double g0 = L;
    const double g2 = g_beta(i, L, 2.0);
    const double gm2 = g_beta(i, L, -2.0);
    const double g4 = g_beta(i, L, 4.0);
    const double gm4 = g_beta(i, L, -4.0);
    const double i1log = 0.5 * (tb * tb - ta * ta);                       // ∫ log r / r
    const double i2log = 0.25 * (e2(tb) * (2 * tb - 1) - e2(ta) * (2 * ta - 1));   // ∫ r log r
    const double im2log = -0.25 * (std::exp(-2 * tb) * (2 * tb + 1) -
                                   std::exp(-2 * ta) * (2 * ta + 1));     // ∫ r^{-3} log r
    const double ilog2 = (tb * tb * tb - ta * ta * ta) / 3.0;             // ∫ log^2 r / r
    g << g0, g2, gm2, i1log,
         g2, g4, g0, i2log,
         gm2, g0, gm4, im2log,
         i1log, i2log, im2log, ilog2;
    if (!g.allFinite()) throw std::overflow_error("mean_mode_gram: overflow at this (i, L)");
    return g;
}

double F_energy(const BiharmonicField& field, int i, double L) {
    double total = 0.0;
    // group modes by degree: the Gram matrix depends on n only
    int last_n = -1;
    QuadraticForm4 M;
    for (const auto& [idx, q] : field.modes) {
        if (idx.n != last_n) {
            M = assemble_M(i, L, idx.n);
            last_n = idx.n;
        }
        total += M(q);
    }
    if (!field.mean.is_zero()) {
        Eigen::Vector4d m(field.mean.A0, field.mean.B0, field.mean.C0, field.mean.D0);
        total += kVolS3 * m.dot(mean_mode_gram(i, L) * m);
    }
    return total;
}

EnergyProfile energy_profile(const BiharmonicField& field, const AnnulusChain& chain) {
    EnergyProfile p;
    p.chain = chain;
    p.values.reserve(static_cast<std::size_t>(chain.count()));
    for (int l = chain.l_lo; l <= chain.l_hi; ++l) p.values.push_back(F_energy(field, l, chain.L));
    return p;
}

}  // namespace necklab::spectral
