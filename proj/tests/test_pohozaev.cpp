#include "necklab/cylinder_ops.hpp"
#include "necklab/quadrature.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace necklab;
using namespace necklab::spectral;
using namespace necklab::pohozaev;

namespace {

std::vector<double> uniform_ts(double a, double b, int count) {
    std::vector<double> ts(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) ts[static_cast<std::size_t>(i)] = a + (b - a) * i / (count - 1.0);
    return ts;
}

// closed-form conserved flux of a mode expansion, from the pairwise
// cancellation of the exponential branches: only mirror pairs survive,
//   Q = sum over modes 16(n+1) (A D n^2 - B C (n+2)^2)
//       + 2 pi^2 (-4 D0^2 - 64 B0 C0).
double closed_form_Q(const BiharmonicField& f) {
    double q = kVolS3 * (-4.0 * f.mean.D0 * f.mean.D0 - 64.0 * f.mean.B0 * f.mean.C0);
    for (const auto& [idx, m] : f.modes) {
        double n = m.n;
        q += 16.0 * (n + 1.0) * (m.A * m.D * n * n - m.B * m.C * (n + 2.0) * (n + 2.0));
    }
    return q;
}

// random field with per-branch scaling anchored at the cylinder ends, so
// profile values stay O(1) on [t_lo, t_hi]
BiharmonicField random_field(std::mt19937_64& rng, int max_degree, double t_lo, double t_hi,
                             bool smooth_only = false, bool with_mean = true) {
    std::normal_distribution<double> gauss;
    BiharmonicField f;
    if (with_mean) {
        f.mean.A0 = gauss(rng);
        f.mean.B0 = gauss(rng) * std::exp(-2.0 * t_hi);
        f.mean.C0 = smooth_only ? 0.0 : gauss(rng) * std::exp(2.0 * t_lo);
        f.mean.D0 = smooth_only ? 0.0 : gauss(rng) * 0.2;
    }
    int nmodes = 1 + static_cast<int>(rng() % 5);
    for (int j = 0; j < nmodes; ++j) {
        int n = 1 + static_cast<int>(rng() % max_degree);
        int l = 1 + static_cast<int>(rng() % multiplicity(n));
        RadialQuadruple q;
        q.n = n;
        q.A = gauss(rng) * std::exp(-n * t_hi);
        q.C = gauss(rng) * std::exp(-(n + 2.0) * t_hi);
        q.B = smooth_only ? 0.0 : gauss(rng) * std::exp((n + 2.0) * t_lo);
        q.D = smooth_only ? 0.0 : gauss(rng) * std::exp(n * t_lo);
        f.insert({n, l}, q);
    }
    return f;
}

}  // namespace

TEST_CASE("cylinder operators: constants, harmonic kernel, e^{3t} oracle") {
    AnnulusChain chain(3.0, 1, 1);  // t in [-3, 0]
    CylinderGrid tg(chain, 32);
    auto sg = std::make_shared<S3Grid>(4);
    auto ts = tg.all_nodes();

    // the r^{-4} weight amplifies collocation roundoff toward small radii;
    // kernel residuals are judged after peeling the weight off
    BiharmonicField cf;
    cf.mean.A0 = 2.5;
    CylinderField c = analyze(synthesize(cf, tg, sg), 2);
    CylinderField lc = cylinder_laplacian(c), bc = cylinder_bilaplacian(c);
    for (std::size_t j = 0; j < ts.size(); ++j) {
        CHECK(std::abs(lc.coeffs[0](static_cast<Eigen::Index>(j), 0)) * std::exp(2.0 * ts[j]) <
              1e-10);
        // fourth derivative of a constant: pure collocation roundoff
        CHECK(std::abs(bc.coeffs[0](static_cast<Eigen::Index>(j), 0)) * std::exp(4.0 * ts[j]) <
              5e-6);
    }

    // harmonic mode r^n phi_n: both operators vanish relative to the
    // magnitude of the cancelling terms (~ nu^2 here)
    // harmonic mode with exactly sampled coefficients: kernel residual at
    // the collocation noise floor
    CylinderField h;
    h.tgrid = tg;
    h.K = 1;
    h.labels = {to_label({2, 3})};
    Eigen::MatrixXd hc = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(tg.node_count()), 2);
    for (std::size_t j = 0; j < ts.size(); ++j)
        hc(static_cast<Eigen::Index>(j), 1) = std::exp(2.0 * ts[j]);
    h.coeffs.push_back(hc);
    CylinderField lh = cylinder_laplacian(h), bh = cylinder_bilaplacian(h);
    // band scale of the cancelling terms: |c''''| + (2nu+4)|c''| + nu^2|c|
    const double nu2 = eigenvalue(2);
    const double band_scale = 16.0 + (2.0 * nu2 + 4.0) * 4.0 + nu2 * nu2;
    for (std::size_t j = 0; j < ts.size(); ++j) {
        double unweighted_l = std::abs(lh.coeffs[0](static_cast<Eigen::Index>(j), 1));
        double unweighted_b = std::abs(bh.coeffs[0](static_cast<Eigen::Index>(j), 1));
        CHECK(unweighted_l * std::exp(2.0 * ts[j]) < 1e-8 * (4.0 + 2.0 * 2.0 + nu2));
        CHECK(unweighted_b * std::exp(4.0 * ts[j]) < 1e-7 * band_scale);
    }

    // radial r^3 = e^{3t}: bilaplacian 45 e^{-t}
    GridSamples gs;
    gs.tgrid = tg;
    gs.sgrid = sg;
    gs.K = 1;
    Eigen::MatrixXd v(static_cast<Eigen::Index>(tg.node_count()),
                      static_cast<Eigen::Index>(sg->size()));
    for (Eigen::Index j = 0; j < v.rows(); ++j)
        v.row(j).setConstant(std::exp(3.0 * ts[static_cast<std::size_t>(j)]));
    gs.values.push_back(v);
    CylinderField r3 = analyze(gs, 1);
    CylinderField bil = cylinder_bilaplacian(r3);
    for (std::size_t j = 0; j < tg.node_count(); j += 5)
        CHECK(bil.coeffs[0](static_cast<Eigen::Index>(j), 0) ==
              doctest::Approx(45.0 * std::exp(-ts[j])).epsilon(2e-6));

    // under-resolution reported
    CHECK_THROWS_AS(cylinder_bilaplacian(CylinderField{CylinderGrid(chain, 10), 1, {}, {}, false}),
                    std::invalid_argument);
}

TEST_CASE("analyze/synthesize round trip and Parseval") {
    AnnulusChain chain(2.0, 0, 0);
    CylinderGrid tg(chain, 10);
    auto sg = std::make_shared<S3Grid>(5);

    BiharmonicField f;
    f.mean = {0.3, 0.1, -0.2, 0.5};
    f.insert({1, 2}, {0.8, -0.3, 0.1, 0.9, 1});
    f.insert({3, 11}, {0.2, 0.4, -0.6, 0.05, 3});
    GridSamples s = synthesize(f, tg, sg);
    CylinderField c = analyze(s, 5);

    // round trip: coefficients match the radial profiles to 1e-12 relative
    auto ts = tg.all_nodes();
    std::size_t m1 = 0, m3 = 0;
    for (std::size_t m = 0; m < c.labels.size(); ++m) {
        if (c.labels[m] == to_label({1, 2})) m1 = m;
        if (c.labels[m] == to_label({3, 11})) m3 = m;
    }
    for (std::size_t j = 0; j < ts.size(); ++j) {
        CHECK(c.coeffs[0](static_cast<Eigen::Index>(j), 0) ==
              doctest::Approx(f.mean(ts[j])).epsilon(1e-12));
        CHECK(c.coeffs[0](static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(1 + m1)) ==
              doctest::Approx(f.modes.at({1, 2}).deriv(0, ts[j])).epsilon(1e-12));
        CHECK(c.coeffs[0](static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(1 + m3)) ==
              doctest::Approx(f.modes.at({3, 11}).deriv(0, ts[j])).epsilon(1e-12));
    }

    // Parseval per slice: grid L2 norm equals coefficient sum of squares
    for (std::size_t j = 0; j < ts.size(); j += 3) {
        double grid_norm = 0.0;
        for (std::size_t p = 0; p < sg->size(); ++p)
            grid_norm += sg->weight(p) * s.values[0](static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(p)) *
                         s.values[0](static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(p));
        double coeff_norm = kVolS3 * c.coeffs[0](static_cast<Eigen::Index>(j), 0) *
                            c.coeffs[0](static_cast<Eigen::Index>(j), 0);
        for (std::size_t m = 0; m < c.labels.size(); ++m)
            coeff_norm += c.coeffs[0](static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(1 + m)) *
                          c.coeffs[0](static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(1 + m));
        CHECK(grid_norm == doctest::Approx(coeff_norm).epsilon(1e-10));
    }

    // under-resolved grid is an error, not silent aliasing
    CHECK_THROWS_AS(analyze(s, 6), std::invalid_argument);
}

TEST_CASE("Q: constant field, log mode, closed-form oracle") {
    auto ts = uniform_ts(-6.0, 0.0, 31);

    BiharmonicField cf;
    cf.mean.A0 = 3.0;
    JetField cj = jets_from_field(cf, ts);
    for (std::size_t s = 0; s < ts.size(); ++s) CHECK(boundary_quantity_Q(cj, s) == 0.0);

    // log mode: only the -4|u_t|^2 term survives
    BiharmonicField lf;
    lf.mean.D0 = 1.5;
    JetField lj = jets_from_field(lf, ts);
    for (std::size_t s = 0; s < ts.size(); s += 5)
        CHECK(boundary_quantity_Q(lj, s) ==
              doctest::Approx(-4.0 * 1.5 * 1.5 * kVolS3).epsilon(1e-13));

    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        BiharmonicField f = random_field(rng, 6, -6.0, 0.0);
        JetField j = jets_from_field(f, ts);
        double expect = closed_form_Q(f);
        PohozaevReport rep = pohozaev_report(j, Variant::Extrinsic);
        for (std::size_t s = 0; s < ts.size(); s += 7) {
            CHECK(rep.Q[s] == doctest::Approx(expect).epsilon(1e-9));
            // constancy relative to the term magnitudes
            CHECK(std::abs(rep.Q[s] - rep.Q[0]) <= 1e-10 * rep.scale);
        }
    }
}

TEST_CASE("smooth-origin limit: smooth-branch fields have vanishing flux at the left end") {
    std::mt19937_64 rng(77);
    auto ts = uniform_ts(-20.0, 0.0, 41);
    for (int trial = 0; trial < 20; ++trial) {
        BiharmonicField f = random_field(rng, 4, -20.0, 0.0, /*smooth_only=*/true);
        JetField j = jets_from_field(f, ts);
        PohozaevReport rep = pohozaev_report(j, Variant::Extrinsic);
        CHECK(std::abs(rep.Q[0]) < 1e-6 * rep.scale);
        CHECK(std::abs(closed_form_Q(f)) < 1e-12 * rep.scale);
    }
}

TEST_CASE("ode residual: biharmonic fields are flat, residual tracks (Q - Q0)/2") {
    std::mt19937_64 rng(53);
    auto ts = uniform_ts(-9.0, 0.0, 41);
    for (int trial = 0; trial < 30; ++trial) {
        BiharmonicField f = random_field(rng, 6, -9.0, 0.0);
        JetField j = jets_from_field(f, ts);
        PohozaevReport rep = pohozaev_report(j, Variant::Extrinsic);
        for (std::size_t s = 0; s < ts.size(); ++s) {
            CHECK(std::abs(rep.residual[s]) <= 1e-10 * rep.scale);
            CHECK(std::abs(rep.source[s]) <= 1e-10 * rep.scale);
            CHECK(rep.residual[s] ==
                  doctest::Approx(0.5 * (rep.Q[s] - rep.Q[0])).epsilon(1e-9).scale(rep.scale));
        }
    }
}

TEST_CASE("non-biharmonic field: dQ/dt = 2 S and residual = (Q - Q0)/2") {
    // hand-built jets of u = e^{3t} phi_2 (not in the degree-2 kernel)
    auto ts = uniform_ts(-2.0, 0.0, 201);
    JetField j;
    j.t = ts;
    j.K = 1;
    j.labels = {to_label({2, 1})};
    j.slices.resize(ts.size());
    for (std::size_t s = 0; s < ts.size(); ++s) {
        j.slices[s].mean.assign(1, {0, 0, 0, 0, 0});
        j.slices[s].modes.assign(1, {});
        std::array<double, 5> c;
        for (std::size_t p = 0; p < 5; ++p) c[p] = std::pow(3.0, static_cast<double>(p)) * std::exp(3.0 * ts[s]);
        j.slices[s].modes[0].push_back(c);
    }
    j.scale = 1.0;
    PohozaevReport rep = pohozaev_report(j, Variant::Extrinsic);
    const double nu = 8.0;
    for (std::size_t s = 0; s < ts.size(); ++s) {
        double e3 = std::exp(3.0 * ts[s]);
        // S = (c'''' - (2 nu + 4) c'' + nu^2 c) c' = (81 - 20*9 + 64) * 3 e^{6t}
        double src = (81.0 - (2 * nu + 4) * 9.0 + nu * nu) * 3.0 * e3 * e3;
        CHECK(rep.source[s] == doctest::Approx(src).epsilon(1e-12));
        CHECK(rep.residual[s] ==
              doctest::Approx(0.5 * (rep.Q[s] - rep.Q[0])).epsilon(1e-12));
        // dQ/dt via the closed form of Q for a single exponential branch
        // Q(t) = (a^4 - (2nu+4) a^2 + nu^2 + ... ) pattern; check numerically
    }
    // dQ/dt = 2 S by centered differences on the report itself
    double h = ts[1] - ts[0];
    for (std::size_t s = 1; s + 1 < ts.size(); s += 10) {
        double dq = (rep.Q[s + 1] - rep.Q[s - 1]) / (2.0 * h);
        // truncation of the centered difference on e^{6t} is ~ 6 h^2
        CHECK(dq == doctest::Approx(2.0 * rep.source[s]).epsilon(1e-3));
    }
}

TEST_CASE("theta: radial zero, single-mode closed form") {
    auto ts = uniform_ts(-3.0, 0.0, 11);
    BiharmonicField radial;
    radial.mean = {1.0, -0.5, 0.25, 2.0};
    JetField rj = jets_from_field(radial, ts);
    for (std::size_t s = 0; s < ts.size(); ++s) CHECK(theta(rj, s, Variant::Extrinsic) == 0.0);

    for (int n : {1, 2, 5}) {
        BiharmonicField f;
        f.insert({n, 1}, {1.0, 0.0, 0.0, 0.0, n});
        JetField j = jets_from_field(f, ts);
        double nu = eigenvalue(n);
        for (std::size_t s = 0; s < ts.size(); s += 3) {
            double expect = std::exp(2.0 * n * ts[s]) * nu * (n * n - nu / 2.0);
            CHECK(theta(j, s, Variant::Extrinsic) == doctest::Approx(expect).epsilon(1e-12));
        }
    }
}

TEST_CASE("energy-identity bookkeeping over the cylinder") {
    std::mt19937_64 rng(97);
    BiharmonicField f = random_field(rng, 4, -6.0, 0.0);
    // integrate the per-slice radial energy density two ways
    auto density = [&](double t) {
        JetField j = jets_from_field(f, {t});
        return radial_energy_density(j, 0);
    };
    double direct = num::integrate_panels(density, -6.0, 0.0, 8, 24);
    // bookkeeping: E2 = dI1/dt - theta - conserved, so
    // ∫E2 = I1(T1) - I1(T0) - ∫theta - ∫conserved
    auto I1 = [&](double t) {
        JetField j = jets_from_field(f, {t});
        const auto& jet = j.slices[0];
        double v = kVolS3 * jet.mean[0][1] * jet.mean[0][2];
        for (const auto& c : jet.modes[0]) v += c[1] * c[2];
        return v;
    };
    auto rhs_integrand = [&](double t) {
        JetField j = jets_from_field(f, {t});
        PohozaevReport rep = pohozaev_report(j, Variant::Extrinsic);
        return rep.theta[0] + rep.conserved0;
    };
    double bookkept = I1(0.0) - I1(-6.0) - num::integrate_panels(rhs_integrand, -6.0, 0.0, 8, 24);
    CHECK(bookkept == doctest::Approx(direct).epsilon(1e-9));
}

TEST_CASE("grid-backed jets agree with analytic jets") {
    BiharmonicField f;
    f.mean = {0.4, 0.2, -0.1, 0.3};
    f.insert({2, 4}, {0.5, -0.2, 0.1, 0.7, 2});
    AnnulusChain chain(3.0, 0, 1);
    CylinderGrid tg(chain, 32);
    auto sg = std::make_shared<S3Grid>(4);
    CylinderField c = analyze(synthesize(f, tg, sg), 2);
    JetField gj = jets_from_cylinder(c);
    JetField aj = jets_from_field(f, tg.all_nodes());
    PohozaevReport grep = pohozaev_report(gj, Variant::Extrinsic);
    PohozaevReport arep = pohozaev_report(aj, Variant::Extrinsic);
    for (std::size_t s = 0; s < gj.t.size(); s += 9) {
        CHECK(grep.Q[s] == doctest::Approx(arep.Q[s]).epsilon(1e-7).scale(arep.scale));
        CHECK(std::abs(grep.residual[s]) < 1e-7 * grep.scale);
    }
}

TEST_CASE("sphere projection and second fundamental form") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> gauss;
    for (int trial = 0; trial < 40; ++trial) {
        int K = 3 + static_cast<int>(rng() % 3);
        Eigen::VectorXd y(K);
        for (int i = 0; i < K; ++i) y[i] = gauss(rng);
        y.normalize();
        Eigen::MatrixXd P = sphere_P(y);
        CHECK((P * y).norm() < 1e-12);
        // random tangent vectors
        Eigen::VectorXd X(K), Y(K);
        for (int i = 0; i < K; ++i) {
            X[i] = gauss(rng);
            Y[i] = gauss(rng);
        }
        X = P * X;
        Y = P * Y;
        Eigen::VectorXd B = sphere_B(y, X, Y);
        CHECK((P * B).norm() < 1e-10);                                // normal-valued
        CHECK(B.dot(y) == doctest::Approx(-X.dot(Y)).epsilon(1e-10));  // <B, y> = -<X, Y>
    }
    Eigen::VectorXd bad(3);
    bad << 2.0, 0.0, 0.0;
    CHECK_THROWS_AS(sphere_P(bad), std::invalid_argument);
}

TEST_CASE("divergence decomposition: position field, constants, random polynomials") {
    // X = x: div = 4 = 1 + 3 + 0
    PolyVectorField pos;
    for (int v = 0; v < 4; ++v) {
        std::array<int, 4> e{0, 0, 0, 0};
        e[static_cast<std::size_t>(v)] = 1;
        pos.comp[static_cast<std::size_t>(v)].terms[e] = 1.0;
    }
    std::mt19937_64 rng(3);
    std::normal_distribution<double> gauss;
    std::vector<Eigen::Vector4d> samples;
    for (int i = 0; i < 12; ++i) {
        Eigen::Vector4d x(gauss(rng), gauss(rng), gauss(rng), gauss(rng));
        samples.push_back(x.normalized() * (0.5 + 1.5 * (rng() % 1000) / 999.0));
    }
    for (double r : div_decompose(pos, samples)) CHECK(r < 1e-10);

    PolyVectorField c1;
    c1.comp[0].terms[{0, 0, 0, 0}] = 1.0;
    for (double r : div_decompose(c1, samples)) CHECK(r < 1e-10);

    for (int trial = 0; trial < 20; ++trial) {
        PolyVectorField f = PolyVectorField::random(3, rng);
        for (double r : div_decompose(f, samples)) CHECK(r < 1e-8);
    }
}

TEST_CASE("intrinsic brackets: geodesic circle field closed forms") {
    auto ts = uniform_ts(-4.0, 0.0, 17);
    MeanModeQuadruple s_prof{0.3, 0.05, -0.02, 0.4};
    JetField j = jets_from_geodesic(mean_quadruple_jet(s_prof), ts, 3);
    for (std::size_t s = 0; s < ts.size(); s += 4) {
        double sp = s_prof.deriv(1, ts[s]);
        // B(pu,pu) = -(s')^2 u for radial fields: bracket = -3 (s')^4
        CHECK(intrinsic_boundary_terms(j, s, Variant::IntrinsicLaplace) ==
              doctest::Approx(-3.0 * kVolS3 * sp * sp * sp * sp).epsilon(1e-11));
        CHECK(intrinsic_boundary_terms(j, s, Variant::IntrinsicHessian) == 0.0);
        CHECK(theta(j, s, Variant::IntrinsicLaplace) == 0.0);
    }
    CHECK(intrinsic_boundary_terms(j, 0, Variant::Extrinsic) == 0.0);
}

TEST_CASE("intrinsic ode: rotationally symmetric fields with biharmonic radial profile") {
    auto ts = uniform_ts(-5.0, 0.0, 21);
    std::mt19937_64 rng(19);
    std::normal_distribution<double> gauss;
    for (int trial = 0; trial < 10; ++trial) {
        MeanModeQuadruple s_prof{gauss(rng), 0.1 * gauss(rng), 0.05 * gauss(rng), 0.3 * gauss(rng)};
        JetField j = jets_from_geodesic(mean_quadruple_jet(s_prof), ts, 4);
        for (Variant v : {Variant::IntrinsicLaplace, Variant::IntrinsicHessian}) {
            PohozaevReport rep = pohozaev_report(j, v);
            for (std::size_t s = 0; s < ts.size(); ++s)
                CHECK(std::abs(rep.residual[s]) < 1e-9 * rep.scale);
        }
    }
}

TEST_CASE("intrinsic ode: saturating radial profile has the explicit conserved defect") {
    // s(t) = 2 eps e^{t/2} does not solve s'''' = 4 s''; the conserved
    // quantity is 2 pi^2 (s' s''' - (1/2) s''^2 - 2 s'^2) and the report
    // must reproduce it exactly
    const double eps = 0.05;
    auto jet = [eps](double t) {
        std::array<double, 5> out;
        for (std::size_t p = 0; p < 5; ++p)
            out[p] = 2.0 * eps * std::pow(0.5, static_cast<double>(p)) * std::exp(0.5 * t);
        return out;
    };
    auto ts = uniform_ts(-8.0, 0.0, 33);
    JetField j = jets_from_geodesic(jet, ts, 3);
    PohozaevReport rep = pohozaev_report(j, Variant::IntrinsicLaplace);
    auto conserved = [&](double t) {
        double s1 = 2.0 * eps * 0.5 * std::exp(0.5 * t);
        double s2 = s1 * 0.5, s3 = s2 * 0.5;
        return kVolS3 * (s1 * s3 - 0.5 * s2 * s2 - 2.0 * s1 * s1);
    };
    for (std::size_t s = 0; s < ts.size(); s += 4)
        CHECK(rep.residual[s] ==
              doctest::Approx(conserved(ts[s]) - conserved(ts[0])).epsilon(1e-10));
}

TEST_CASE("intrinsic variants reject non-sphere-valued fields") {
    auto ts = uniform_ts(-2.0, 0.0, 9);
    BiharmonicField f;
    f.mean.A0 = 2.0;  // |u| = 2, not on the sphere
    JetField j = jets_from_field(f, ts);
    CHECK_THROWS_AS(theta(j, 0, Variant::IntrinsicLaplace), std::invalid_argument);
    CHECK_THROWS_AS(pohozaev_report(j, Variant::IntrinsicHessian), std::invalid_argument);
}

TEST_CASE("tangentially varying sphere field: brackets vs slow-path quadrature") {
    // u = (cos s, sin s, 0) with s(t, x) = a t + eps sin(t) phi_1(x),
    // projected onto modes of degree <= 3 (the truncation breaks unit
    // norm only at order eps^4)
    auto ts = uniform_ts(-1.0, 0.0, 4);
    S3Grid grid(7);
    const double eps = 0.05;
    JetField j;
    j.t = ts;
    j.K = 3;
    j.unit_norm = true;
    j.labels = modes_up_to(3);
    j.slices.resize(ts.size());
    const auto& tab1 = grid.table({1, 0, 0});
    for (std::size_t si = 0; si < ts.size(); ++si) {
        double t = ts[si];
        SliceJet& sj = j.slices[si];
        sj.mean.assign(3, {0, 0, 0, 0, 0});
        sj.modes.assign(3, std::vector<std::array<double, 5>>(j.labels.size(), {0, 0, 0, 0, 0}));
        for (std::size_t p = 0; p < grid.size(); ++p) {
            double phi = grid.value(tab1, p);
            std::array<double, 5> s{};
            s[0] = 0.2 * t + eps * std::sin(t) * phi;
            s[1] = 0.2 + eps * std::cos(t) * phi;
            s[2] = -eps * std::sin(t) * phi;
            s[3] = -eps * std::cos(t) * phi;
            s[4] = eps * std::sin(t) * phi;
            double w = grid.weight(p);
            for (int comp = 0; comp < 2; ++comp) {
                auto uj = comp == 0 ? jet_cos(s) : jet_sin(s);
                for (std::size_t d = 0; d < 5; ++d)
                    sj.mean[static_cast<std::size_t>(comp)][d] += w * uj[d] / kVolS3;
                for (std::size_t m = 0; m < j.labels.size(); ++m) {
                    double phim = grid.value(grid.table(j.labels[m]), p);
                    for (std::size_t d = 0; d < 5; ++d)
                        sj.modes[static_cast<std::size_t>(comp)][m][d] += w * uj[d] * phim;
                }
            }
        }
    }
    j.scale = 1.0;
    // slow-path oracle: rebuild the quartic integrals from harmonic_value /
    // harmonic_gradient point by point
    for (std::size_t s = 0; s < ts.size(); ++s) {
        double lb_oracle = 0.0, hess_oracle = 0.0;
        for (std::size_t p = 0; p < grid.size(); ++p) {
            const S3Point& pt = grid.point(p);
            Eigen::MatrixXd G = Eigen::MatrixXd::Zero(4, 3);
            for (int k = 0; k < 3; ++k) {
                double v1 = j.slices[s].mean[static_cast<std::size_t>(k)][1];
                double gr[3] = {0, 0, 0};
                for (std::size_t m = 0; m < j.labels.size(); ++m) {
                    double phim = harmonic_value(j.labels[m], pt);
                    double dphi[3];
                    harmonic_gradient(j.labels[m], pt, dphi);
                    v1 += j.slices[s].modes[static_cast<std::size_t>(k)][m][1] * phim;
                    for (int c = 0; c < 3; ++c)
                        gr[c] += j.slices[s].modes[static_cast<std::size_t>(k)][m][0] * dphi[c];
                }
                G(0, k) = v1;
                for (int c = 0; c < 3; ++c) G(c + 1, k) = gr[c];
            }
            Eigen::Matrix4d gram = G * G.transpose();
            double p2 = gram(0, 0), q2 = gram(1, 1) + gram(2, 2) + gram(3, 3);
            lb_oracle += grid.weight(p) * (-4.0 * (p2 + q2) * p2 + (p2 + q2) * (p2 + q2));
            double t1 = 0.0, t2 = 0.0;
            for (int a = 0; a < 4; ++a) t1 += gram(0, a) * gram(0, a) - gram(0, 0) * gram(a, a);
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) t2 += gram(a, b) * gram(a, b) - gram(a, a) * gram(b, b);
            hess_oracle += grid.weight(p) * (-4.0 * t1 + t2);
        }
        CHECK(intrinsic_boundary_terms(j, s, Variant::IntrinsicLaplace, &grid) ==
              doctest::Approx(lb_oracle).epsilon(1e-10));
        CHECK(intrinsic_boundary_terms(j, s, Variant::IntrinsicHessian, &grid) ==
              doctest::Approx(hess_oracle).epsilon(1e-10));
        // the tangential part is genuinely active
        CHECK(std::abs(theta(j, s, Variant::Extrinsic)) > 0.0);
    }
}
