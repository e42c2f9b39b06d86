#include "necklab/annulus_forms.hpp"
#include "necklab/modes.hpp"
#include "necklab/precision.hpp"
#include "necklab/quadrature.hpp"
#include "necklab/s3.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace necklab;
using namespace necklab::spectral;

TEST_CASE("eigenvalue n(n+2)") {
    CHECK(eigenvalue(0) == 0.0);
    CHECK(eigenvalue(1) == 3.0);
    CHECK(eigenvalue(5) == 35.0);
    CHECK_THROWS_AS(eigenvalue(-1), std::domain_error);
}

TEST_CASE("multiplicity matches brute-force harmonic polynomial count") {
    CHECK(multiplicity(1) == 4);
    CHECK(multiplicity(2) == 9);
    CHECK(multiplicity(3) == 16);
    for (int n = 1; n <= 4; ++n) CHECK(multiplicity(n) == oracles::harmonic_polynomial_count(n));
    CHECK_THROWS_AS(multiplicity(0), std::domain_error);
}

TEST_CASE("mode index <-> label bijection") {
    for (int n = 1; n <= 4; ++n) {
        for (int l = 1; l <= multiplicity(n); ++l) {
            ModeLabel lab = to_label({n, l});
            CHECK(to_index(lab).l == l);
            CHECK(lab.k >= 0);
            CHECK(lab.k <= n);
            CHECK(std::abs(lab.m) <= lab.k);
        }
    }
    CHECK_THROWS_AS(to_label({2, 10}), std::domain_error);
}

TEST_CASE("g_beta closed form vs adaptive quadrature") {
    // g(0) branch
    CHECK(g_beta(0, 3.0, 0.0) == 3.0);
    // (i=0, L=3, beta=2) -> (e^6 - 1)/2
    double expect = (std::exp(6.0) - 1.0) / 2.0;
    CHECK(g_beta(0, 3.0, 2.0) == doctest::Approx(expect).epsilon(1e-14));
    CHECK(g_beta(0, 3.0, 2.0) == doctest::Approx(201.2144).epsilon(1e-4));
    // quadrature oracle of r^{beta-1} over the annulus radii
    auto quad = [](int i, double L, double beta) {
        double a = std::exp(-i * L), b = std::exp(-(i - 1) * L);
        return oracles::adaptive_simpson([beta](double r) { return std::pow(r, beta - 1.0); }, a, b);
    };
    CHECK(g_beta(0, 3.0, 2.0) == doctest::Approx(quad(0, 3.0, 2.0)).epsilon(1e-10));
    CHECK(g_beta(1, 3.0, 2.0) == doctest::Approx(std::exp(-6.0) * expect).epsilon(1e-13));
    CHECK(g_beta(1, 3.0, 2.0) == doctest::Approx(quad(1, 3.0, 2.0)).epsilon(1e-10));
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 24; ++trial) {
        int i = static_cast<int>(rng() % 5) - 2;
        double L = 0.5 + 2.5 * (rng() % 1000) / 999.0;
        double beta = static_cast<double>(static_cast<int>(rng() % 13) - 6);
        CHECK(g_beta(i, L, beta) == doctest::Approx(quad(i, L, beta)).epsilon(1e-9));
    }
    CHECK_THROWS_AS(g_beta(0, 3.0, std::nan("")), std::domain_error);
    // huge |i| L overflows the double path but stays finite in log space
    CHECK_THROWS_AS(g_beta(-200, 3.0, 6.0), std::overflow_error);
    CHECK(std::isfinite(g_beta_log(-200, 3.0, 6.0)));
}

TEST_CASE("g_beta interval encloses a 512-bit evaluation") {
    using num::Real;
    for (double beta : {-4.0, -2.0, 0.0, 2.0, 6.0}) {
        num::Interval g = g_beta(1, 3.0, beta, 128);
        // (1/beta) e^{-i beta L} (e^{beta L} - 1) at 512 bits, effectively exact
        Real ref(3.0, 512);
        if (beta != 0.0) {
            Real bL(beta * 3.0, 512);
            ref = exp(-Real(1.0, 512) * bL) * (exp(bL) - Real(1.0, 512)) / Real(beta, 512);
        }
        CHECK(g.lower_real() <= ref);
        CHECK(g.upper_real() >= ref);
        CHECK(g.width_double() < 1e-25 * std::abs(g.mid_double()) + 1e-30);
        // the hardware-double path agrees to a few ulps
        CHECK(g_beta(1, 3.0, beta) == doctest::Approx(g.mid_double()).epsilon(1e-13));
    }
}

TEST_CASE("assemble_M matches paper pattern and quadrature") {
    QuadraticForm4 M = assemble_M(0, 3.0, 1);
    CHECK(M.m(0, 0) == doctest::Approx(g_beta(0, 3.0, 2.0)));   // g(2n)
    CHECK(M.m(0, 1) == doctest::Approx(g_beta(0, 3.0, 4.0)));   // g(2n+2)
    CHECK(M.m(0, 2) == doctest::Approx(3.0));                   // g(0)
    CHECK(M.m(0, 3) == doctest::Approx(g_beta(0, 3.0, -2.0)));  // g(-2)
    // symmetry is exact by construction
    QuadraticForm4 M2 = assemble_M(-1, 1.7, 3);
    CHECK((M2.m - M2.m.transpose()).norm() == 0.0);
    // x = (1,0,0,0): form value equals quadrature of r^{2n}/r
    QuadraticForm4 M3 = assemble_M(0, 3.0, 2);
    double q = oracles::adaptive_simpson([](double r) { return std::pow(r, 3.0); }, 1.0,
                                         std::exp(3.0));
    RadialQuadruple unitA{1.0, 0.0, 0.0, 0.0, 2};
    CHECK(M3(unitA) == doctest::Approx(q).epsilon(1e-10));
}

TEST_CASE("assemble_M entries vs adaptive quadrature across (i, L, n)") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        int i = static_cast<int>(rng() % 3) - 1;
        double L = 0.8 + 2.0 * (rng() % 1000) / 999.0;
        int n = 1 + static_cast<int>(rng() % 4);
        QuadraticForm4 M = assemble_M(i, L, n);
        auto b = beta_matrix(n);
        double a = std::exp(-i * L), bb = std::exp(-(i - 1) * L);
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) {
                double ref = oracles::adaptive_simpson(
                    [&](double r) { return std::pow(r, b[j][k] - 1.0); }, a, bb);
                CHECK(M.m(j, k) == doctest::Approx(ref).epsilon(1e-10));
            }
    }
}

TEST_CASE("S3 grid integrates the constant and the basis orthonormally") {
    S3Grid grid(6);
    double vol = 0.0;
    for (std::size_t p = 0; p < grid.size(); ++p) vol += grid.weight(p);
    CHECK(vol == doctest::Approx(kVolS3).epsilon(1e-13));

    auto labels = modes_up_to(3);
    for (std::size_t a = 0; a < labels.size(); ++a) {
        const auto& ta = grid.table(labels[a]);
        for (std::size_t b = a; b < labels.size(); ++b) {
            const auto& tb = grid.table(labels[b]);
            double ip = 0.0;
            for (std::size_t p = 0; p < grid.size(); ++p)
                ip += grid.weight(p) * grid.value(ta, p) * grid.value(tb, p);
            if (a == b)
                CHECK(ip == doctest::Approx(1.0).epsilon(1e-12));
            else
                CHECK(std::abs(ip) < 1e-12);
        }
        // zero spherical mean of every n >= 1 harmonic
        double mean = 0.0;
        for (std::size_t p = 0; p < grid.size(); ++p) mean += grid.weight(p) * grid.value(ta, p);
        CHECK(std::abs(mean) < 1e-12);
    }
}

TEST_CASE("harmonic gradient: integral of |grad|^2 equals the eigenvalue") {
    S3Grid grid(8);
    for (ModeLabel lab : {ModeLabel{1, 1, 0}, ModeLabel{2, 1, -1}, ModeLabel{3, 2, 2},
                          ModeLabel{4, 0, 0}, ModeLabel{4, 4, -3}}) {
        const auto& t = grid.table(lab);
        double e = 0.0;
        for (std::size_t p = 0; p < grid.size(); ++p) {
            double g[3];
            grid.gradient(t, p, g);
            e += grid.weight(p) * (g[0] * g[0] + g[1] * g[1] + g[2] * g[2]);
        }
        CHECK(e == doctest::Approx(eigenvalue(lab.n)).epsilon(1e-11));
    }
}

TEST_CASE("gradient tables agree with the slow evaluator") {
    S3Grid grid(4);
    ModeLabel lab{3, 2, -1};
    const auto& t = grid.table(lab);
    for (std::size_t p = 0; p < grid.size(); p += 17) {
        CHECK(grid.value(t, p) == doctest::Approx(harmonic_value(lab, grid.point(p))).epsilon(1e-13));
        double g1[3], g2[3];
        grid.gradient(t, p, g1);
        harmonic_gradient(lab, grid.point(p), g2);
        for (int c = 0; c < 3; ++c) CHECK(g1[c] == doctest::Approx(g2[c]).epsilon(1e-12));
    }
}

namespace {

// 4-D quadrature of the weighted energy integral, via the S^3 grid and
// panels of Gauss–Legendre in t = log r.
double energy_quadrature(const BiharmonicField& f, int i, double L, const S3Grid& grid) {
    double lo = -i * L, hi = -(i - 1) * L;
    return num::integrate_panels(
        [&](double t) {
            double slice = 0.0;
            for (std::size_t p = 0; p < grid.size(); ++p) {
                double v = f.evaluate(t, grid.point(p));
                slice += grid.weight(p) * v * v;
            }
            return slice;
        },
        lo, hi, 8, 24);
}

}  // namespace

TEST_CASE("F_energy: zero, single mode, additivity, quadrature oracle") {
    BiharmonicField zero;
    CHECK(F_energy(zero, 0, 3.0) == 0.0);

    // single mode n=1, A=1: F = g(2) ~ 201.214
    BiharmonicField f;
    f.insert({1, 1}, {1.0, 0.0, 0.0, 0.0, 1});
    double F = F_energy(f, 0, 3.0);
    CHECK(F == doctest::Approx((std::exp(6.0) - 1.0) / 2.0).epsilon(1e-13));

    // two orthonormal modes: energies add
    BiharmonicField g;
    g.insert({1, 1}, {1.0, 0.0, 0.0, 0.0, 1});
    g.insert({2, 5}, {0.0, 0.5, 0.0, -1.0, 2});
    BiharmonicField g2;
    g2.insert({2, 5}, {0.0, 0.5, 0.0, -1.0, 2});
    CHECK(F_energy(g, 0, 3.0) ==
          doctest::Approx(F_energy(f, 0, 3.0) + F_energy(g2, 0, 3.0)).epsilon(1e-13));

    // grid quadrature oracle
    S3Grid grid(4);
    CHECK(F == doctest::Approx(energy_quadrature(f, 0, 3.0, grid)).epsilon(1e-10));
    BiharmonicField mixed;
    mixed.mean = {0.3, -0.2, 0.05, 0.4};
    mixed.insert({1, 2}, {0.7, -0.1, 0.02, 0.3, 1});
    mixed.insert({3, 7}, {0.01, 0.2, -0.005, 0.1, 3});
    CHECK(F_energy(mixed, 1, 2.0) ==
          doctest::Approx(energy_quadrature(mixed, 1, 2.0, grid)).epsilon(1e-9));
}

TEST_CASE("F_energy nonnegative and zero only for the zero field") {
    std::mt19937_64 rng(23);
    std::normal_distribution<double> gauss;
    for (int trial = 0; trial < 50; ++trial) {
        BiharmonicField f;
        f.mean = {gauss(rng), gauss(rng), gauss(rng), gauss(rng)};
        int n = 1 + static_cast<int>(rng() % 5);
        f.insert({n, 1}, {gauss(rng), gauss(rng), gauss(rng), gauss(rng), n});
        CHECK(F_energy(f, 0, 3.0) > 0.0);
    }
}

TEST_CASE("F_energy scale invariance: f(x/e^L) with chain shift") {
    BiharmonicField f;
    f.mean = {0.2, 0.1, -0.4, 0.7};
    f.insert({1, 3}, {1.0, -0.5, 0.25, 2.0, 1});
    f.insert({2, 2}, {0.1, 0.3, -0.7, 0.9, 2});
    const double L = 3.0;
    BiharmonicField g = f.rescaled(L);
    // rescaled annulus i sees the original annulus i+1
    for (int i = -1; i <= 2; ++i)
        CHECK(F_energy(g, i, L) == doctest::Approx(F_energy(f, i + 1, L)).epsilon(1e-12));
}

TEST_CASE("mean_mode_gram vs quadrature") {
    // basis (1, r^2, r^{-2}, log r); compare a full quadratic form value
    MeanModeQuadruple m{0.5, -0.3, 0.2, 0.8};
    BiharmonicField f;
    f.mean = m;
    double a = std::exp(-1.0 * 2.5), b = std::exp(0.0 * 2.5);
    double ref = oracles::adaptive_simpson(
        [&](double r) {
            double v = m.A0 + m.B0 * r * r + m.C0 / (r * r) + m.D0 * std::log(r);
            return v * v / r;
        },
        a, b);
    CHECK(F_energy(f, 1, 2.5) == doctest::Approx(kVolS3 * ref).epsilon(1e-10));
}

TEST_CASE("field JSON round trip") {
    BiharmonicField f;
    f.mean = {1.0, 0.0, -2.0, 0.125};
    f.insert({2, 4}, {0.5, -1.5, 0.0, 3.0, 2});
    double L = 0;
    BiharmonicField g = field_from_json(field_to_json(f, 3.0), &L);
    CHECK(L == 3.0);
    CHECK(g.mean.C0 == -2.0);
    CHECK(g.modes.at({2, 4}).B == -1.5);
    CHECK(g.truncation == 2);
}

TEST_CASE("AnnulusChain invariants") {
    AnnulusChain c(3.0, 0, 4);
    CHECK(c.count() == 5);
    CHECK(c.band(0)[1] == doctest::Approx(3.0));
    CHECK(c.t_min() == doctest::Approx(-12.0));
    CHECK_THROWS_AS(AnnulusChain(0.0, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(AnnulusChain(3.0, 2, 1), std::invalid_argument);
}
