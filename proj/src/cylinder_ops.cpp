#include "necklab/cylinder_ops.hpp"

#include <cmath>
#include <stdexcept>

namespace necklab::pohozaev {

using spectral::eigenvalue;
using spectral::kVolS3;
using spectral::ModeLabel;
using spectral::SliceJet;

const char* to_string(Variant v) {
    switch (v) {
        case Variant::Extrinsic: return "extrinsic";
        case Variant::IntrinsicLaplace: return "intrinsic-laplace";
        default: return "intrinsic-hessian";
    }
}

CylinderField cylinder_laplacian(const CylinderField& u) {
    if (u.tgrid.points_per_band < 10)
        throw std::invalid_argument("cylinder_laplacian: under-resolved t-grid");
    CylinderField d1 = u.t_derivative(1);
    CylinderField d2 = u.t_derivative(2);
    CylinderField out = u;
    std::vector<double> ts = u.tgrid.all_nodes();
    for (std::size_t k = 0; k < static_cast<std::size_t>(u.K); ++k) {
        Eigen::MatrixXd& c = out.coeffs[k];
        for (Eigen::Index j = 0; j < c.rows(); ++j) {
            double w = std::exp(-2.0 * ts[static_cast<std::size_t>(j)]);
            c(j, 0) = w * (d2.coeffs[k](j, 0) + 2.0 * d1.coeffs[k](j, 0));
            for (std::size_t m = 0; m < u.labels.size(); ++m) {
                double nu = eigenvalue(u.labels[m].n);
                Eigen::Index col = static_cast<Eigen::Index>(1 + m);
                c(j, col) = w * (d2.coeffs[k](j, col) + 2.0 * d1.coeffs[k](j, col) -
                                 nu * u.coeffs[k](j, col));
            }
        }
    }
    out.unit_norm = false;
    return out;
}

CylinderField cylinder_bilaplacian(const CylinderField& u) {
    if (u.tgrid.points_per_band < 12)
        throw std::invalid_argument("cylinder_bilaplacian: under-resolved t-grid");
    CylinderField d2 = u.t_derivative(2);
    CylinderField d4 = u.t_derivative(4);
    CylinderField out = u;
    std::vector<double> ts = u.tgrid.all_nodes();
    for (std::size_t k = 0; k < static_cast<std::size_t>(u.K); ++k) {
        Eigen::MatrixXd& c = out.coeffs[k];
        for (Eigen::Index j = 0; j < c.rows(); ++j) {
            double w = std::exp(-4.0 * ts[static_cast<std::size_t>(j)]);
            c(j, 0) = w * (d4.coeffs[k](j, 0) - 4.0 * d2.coeffs[k](j, 0));
            for (std::size_t m = 0; m < u.labels.size(); ++m) {
                double nu = eigenvalue(u.labels[m].n);
                Eigen::Index col = static_cast<Eigen::Index>(1 + m);
                c(j, col) = w * (d4.coeffs[k](j, col) - (2.0 * nu + 4.0) * d2.coeffs[k](j, col) +
                                 nu * nu * u.coeffs[k](j, col));
            }
        }
    }
    out.unit_norm = false;
    return out;
}

namespace {

struct QTerms {
    double value = 0.0;
    double magnitude = 0.0;  // sum of absolute term sizes, for tolerances
};

QTerms q_terms(const JetField& jets, std::size_t slice) {
    const SliceJet& jet = jets.slices[slice];
    QTerms out;
    auto add = [&](double nu, const std::array<double, 5>& c, double weight) {
        out.value += weight * (2.0 * c[1] * c[3] - c[2] * c[2] + nu * nu * c[0] * c[0] -
                               2.0 * nu * c[1] * c[1] - 4.0 * c[1] * c[1]);
        out.magnitude += weight * (2.0 * std::abs(c[1] * c[3]) + c[2] * c[2] +
                                   nu * nu * c[0] * c[0] + 2.0 * nu * c[1] * c[1] +
                                   4.0 * c[1] * c[1]);
    };
    for (std::size_t k = 0; k < jet.mean.size(); ++k) {
        add(0.0, jet.mean[k], kVolS3);
        for (std::size_t m = 0; m < jet.modes[k].size(); ++m)
            add(eigenvalue(jets.labels[m].n), jet.modes[k][m], 1.0);
    }
    return out;
}

double theta_spectral(const JetField& jets, std::size_t slice) {
    const SliceJet& jet = jets.slices[slice];
    double th = 0.0;
    for (std::size_t k = 0; k < jet.mean.size(); ++k)
        for (std::size_t m = 0; m < jet.modes[k].size(); ++m) {
            double nu = eigenvalue(jets.labels[m].n);
            const auto& c = jet.modes[k][m];
            th += -0.5 * nu * nu * c[0] * c[0] + nu * c[1] * c[1];
        }
    return th;
}

struct QuarticBrackets {
    double psi = 0.0;            // (3/2) ∫ |u_t|^4
    double theta_corr = 0.0;     // ∫ -|u_t|^2 |grad u|^2 + (1/2)|grad u|^4
    double hessian = 0.0;        // curvature bracket (round sphere)
    double laplace_bndry = 0.0;  // ∫ -4(p2+q2) p2 + (p2+q2)^2
    double unit_dev = 0.0;       // max | |u| - 1 | over the slice
};

QuarticBrackets quartic_brackets(const JetField& jets, std::size_t slice, const S3Grid* grid) {
    const SliceJet& jet = jets.slices[slice];
    const std::size_t K = jet.mean.size();
    QuarticBrackets out;
    if (jets.labels.empty()) {
        // radial fast path: tangential gradients vanish, everything is a
        // slice constant
        double p2 = 0.0, norm2 = 0.0;
        for (std::size_t k = 0; k < K; ++k) {
            p2 += jet.mean[k][1] * jet.mean[k][1];
            norm2 += jet.mean[k][0] * jet.mean[k][0];
        }
        out.psi = kVolS3 * 1.5 * p2 * p2;
        out.laplace_bndry = kVolS3 * (-3.0) * p2 * p2;
        out.unit_dev = std::abs(std::sqrt(norm2) - 1.0);
        return out;
    }
    if (!grid)
        throw std::invalid_argument("intrinsic brackets of a non-radial field need an S3 grid");
    const S3Grid& g = *grid;
    const std::size_t nm = jets.labels.size();
    std::vector<const S3Grid::ModeTable*> tabs(nm);
    for (std::size_t m = 0; m < nm; ++m) tabs[m] = &g.table(jets.labels[m]);
    for (std::size_t p = 0; p < g.size(); ++p) {
        // G row 0 = u_t, rows 1..3 = tangential frame gradient of u
        Eigen::MatrixXd G = Eigen::MatrixXd::Zero(4, static_cast<Eigen::Index>(K));
        double norm2 = 0.0;
        for (std::size_t k = 0; k < K; ++k) {
            double v0 = jet.mean[k][0], v1 = jet.mean[k][1];
            double gr[3] = {0.0, 0.0, 0.0};
            for (std::size_t m = 0; m < nm; ++m) {
                double phi = g.value(*tabs[m], p);
                double dphi[3];
                g.gradient(*tabs[m], p, dphi);
                v0 += jet.modes[k][m][0] * phi;
                v1 += jet.modes[k][m][1] * phi;
                for (int c = 0; c < 3; ++c) gr[c] += jet.modes[k][m][0] * dphi[c];
            }
            G(0, static_cast<Eigen::Index>(k)) = v1;
            for (int c = 0; c < 3; ++c) G(c + 1, static_cast<Eigen::Index>(k)) = gr[c];
            norm2 += v0 * v0;
        }
        out.unit_dev = std::max(out.unit_dev, std::abs(std::sqrt(norm2) - 1.0));
        Eigen::Matrix4d gram = G * G.transpose();
        double p2 = gram(0, 0);
        double q2 = gram(1, 1) + gram(2, 2) + gram(3, 3);
        double w = g.weight(p);
        out.psi += w * 1.5 * p2 * p2;
        out.theta_corr += w * (-p2 * q2 + 0.5 * q2 * q2);
        out.laplace_bndry += w * (-4.0 * (p2 + q2) * p2 + (p2 + q2) * (p2 + q2));
        double term1 = 0.0, term2 = 0.0;
        for (int i = 0; i < 4; ++i) term1 += gram(0, i) * gram(0, i) - gram(0, 0) * gram(i, i);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) term2 += gram(i, j) * gram(i, j) - gram(i, i) * gram(j, j);
        out.hessian += w * (-4.0 * term1 + term2);
    }
    return out;
}

void require_unit_norm(const JetField& jets, double dev) {
    if (!jets.unit_norm || dev > 1e-6)
        throw std::invalid_argument("intrinsic variant requires a sphere-valued field");
}

}  // namespace

double boundary_quantity_Q(const JetField& jets, std::size_t slice) {
    return q_terms(jets, slice).value;
}

double equation_pairing(const JetField& jets, std::size_t slice) {
    const SliceJet& jet = jets.slices[slice];
    double s = 0.0;
    for (std::size_t k = 0; k < jet.mean.size(); ++k) {
        const auto& m = jet.mean[k];
        s += kVolS3 * (m[4] - 4.0 * m[2]) * m[1];
        for (std::size_t j = 0; j < jet.modes[k].size(); ++j) {
            const auto& c = jet.modes[k][j];
            double nu = eigenvalue(jets.labels[j].n);
            s += (c[4] - (2.0 * nu + 4.0) * c[2] + nu * nu * c[0]) * c[1];
        }
    }
    return s;
}

double radial_energy_density(const JetField& jets, std::size_t slice) {
    const SliceJet& jet = jets.slices[slice];
    double s = 0.0;
    for (std::size_t k = 0; k < jet.mean.size(); ++k) {
        const auto& m = jet.mean[k];
        s += kVolS3 * (1.5 * m[2] * m[2] + 2.0 * m[1] * m[1]);
        for (const auto& c : jet.modes[k]) s += 1.5 * c[2] * c[2] + 2.0 * c[1] * c[1];
    }
    return s;
}

double theta(const JetField& jets, std::size_t slice, Variant v, const S3Grid* grid) {
    double th = theta_spectral(jets, slice);
    if (v == Variant::Extrinsic) return th;
    QuarticBrackets qb = quartic_brackets(jets, slice, grid);
    require_unit_norm(jets, qb.unit_dev);
    return th + qb.theta_corr;
}

double intrinsic_boundary_terms(const JetField& jets, std::size_t slice, Variant v,
                                const S3Grid* grid) {
    if (v == Variant::Extrinsic) return 0.0;
    QuarticBrackets qb = quartic_brackets(jets, slice, grid);
    require_unit_norm(jets, qb.unit_dev);
    return v == Variant::IntrinsicLaplace ? qb.laplace_bndry : qb.hessian;
}

PohozaevReport pohozaev_report(const JetField& jets, Variant v, const S3Grid* grid) {
    PohozaevReport rep;
    rep.variant = v;
    rep.t = jets.t;
    const std::size_t S = jets.slices.size();
    rep.Q.resize(S);
    rep.theta.resize(S);
    rep.lhs.resize(S);
    rep.residual.resize(S);
    rep.source.resize(S);
    double scale = 0.0;
    std::vector<double> conserved(S);
    for (std::size_t s = 0; s < S; ++s) {
        QTerms q = q_terms(jets, s);
        rep.Q[s] = q.value;
        scale = std::max(scale, q.magnitude);
        rep.source[s] = equation_pairing(jets, s);
        const SliceJet& jet = jets.slices[s];
        // d/dt ∫ u_t u_tt = ∫ u_tt^2 + u_t u_ttt
        double dI1 = 0.0;
        for (std::size_t k = 0; k < jet.mean.size(); ++k) {
            const auto& m = jet.mean[k];
            dI1 += kVolS3 * (m[2] * m[2] + m[1] * m[3]);
            for (const auto& c : jet.modes[k]) dI1 += c[2] * c[2] + c[1] * c[3];
        }
        double lhs = dI1 - radial_energy_density(jets, s);
        double th = theta_spectral(jets, s);
        double extra = 0.0;
        if (v != Variant::Extrinsic) {
            QuarticBrackets qb = quartic_brackets(jets, s, grid);
            require_unit_norm(jets, qb.unit_dev);
            lhs += qb.psi;
            th += qb.theta_corr;
            if (v == Variant::IntrinsicHessian) extra = qb.hessian;
        }
        rep.theta[s] = th;
        rep.lhs[s] = lhs;
        conserved[s] = lhs - th + extra;
    }
    rep.conserved0 = conserved.empty() ? 0.0 : conserved[0];
    for (std::size_t s = 0; s < S; ++s) rep.residual[s] = conserved[s] - rep.conserved0;
    rep.scale = std::max({scale, jets.scale, 1e-300});
    return rep;
}

// ── unit-sphere target geometry ──────────────────────────────────────────

Eigen::MatrixXd sphere_P(const Eigen::VectorXd& y, double tol) {
    if (std::abs(y.norm() - 1.0) > tol)
        throw std::invalid_argument("sphere_P: point is not on the unit sphere");
    return Eigen::MatrixXd::Identity(y.size(), y.size()) - y * y.transpose();
}

Eigen::VectorXd sphere_B(const Eigen::VectorXd& y, const Eigen::VectorXd& X,
                         const Eigen::VectorXd& Y, double tol) {
    if (std::abs(y.norm() - 1.0) > tol)
        throw std::invalid_argument("sphere_B: point is not on the unit sphere");
    return -X.dot(Y) * y;
}

// ── divergence decomposition ─────────────────────────────────────────────

double Poly4::eval(const Eigen::Vector4d& x) const {
    double s = 0.0;
    for (const auto& [e, c] : terms) {
        double m = c;
        for (int v = 0; v < 4; ++v)
            for (int p = 0; p < e[static_cast<std::size_t>(v)]; ++p) m *= x[v];
        s += m;
    }
    return s;
}

Poly4 Poly4::partial(int axis) const {
    Poly4 out;
    for (const auto& [e, c] : terms) {
        if (e[static_cast<std::size_t>(axis)] == 0) continue;
        auto d = e;
        d[static_cast<std::size_t>(axis)] -= 1;
        out.terms[d] += c * e[static_cast<std::size_t>(axis)];
    }
    return out;
}

Poly4 Poly4::random(int max_degree, int nterms, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    std::uniform_int_distribution<int> deg(0, max_degree);
    Poly4 p;
    for (int t = 0; t < nterms; ++t) {
        int d = deg(rng);
        std::array<int, 4> e{0, 0, 0, 0};
        for (int j = 0; j < d; ++j) e[rng() % 4] += 1;
        p.terms[e] += gauss(rng);
    }
    return p;
}

Eigen::Vector4d PolyVectorField::eval(const Eigen::Vector4d& x) const {
    return {comp[0].eval(x), comp[1].eval(x), comp[2].eval(x), comp[3].eval(x)};
}

double PolyVectorField::divergence(const Eigen::Vector4d& x) const {
    double s = 0.0;
    for (int v = 0; v < 4; ++v) s += comp[static_cast<std::size_t>(v)].partial(v).eval(x);
    return s;
}

PolyVectorField PolyVectorField::random(int max_degree, std::mt19937_64& rng) {
    PolyVectorField f;
    for (int v = 0; v < 4; ++v)
        f.comp[static_cast<std::size_t>(v)] = Poly4::random(max_degree, 6, rng);
    return f;
}

namespace {

// sixth-order central first derivative at 0
template <class F>
double fd6(const F& f, double h) {
    return (45.0 * (f(h) - f(-h)) - 9.0 * (f(2 * h) - f(-2 * h)) + (f(3 * h) - f(-3 * h))) /
           (60.0 * h);
}

}  // namespace

std::vector<double> div_decompose(const PolyVectorField& X,
                                  const std::vector<Eigen::Vector4d>& samples) {
    std::vector<double> residuals;
    residuals.reserve(samples.size());
    const double h = 8e-3;
    for (const auto& x : samples) {
        double r = x.norm();
        if (r < 1e-8) throw std::invalid_argument("div_decompose: sample at the origin");
        Eigen::Vector4d rhat = x / r;
        std::vector<Eigen::Vector4d> frame;
        for (int v = 0; v < 4 && frame.size() < 3; ++v) {
            Eigen::Vector4d e = Eigen::Vector4d::Unit(v);
            e -= e.dot(rhat) * rhat;
            for (const auto& f : frame) e -= e.dot(f) * f;
            if (e.norm() > 1e-6) frame.push_back(e.normalized());
        }
        double dXr = fd6(
            [&](double s) {
                Eigen::Vector4d y = (r + s) * rhat;
                return X.eval(y).dot(rhat);
            },
            h);
        double divS3 = 0.0;
        for (const auto& e : frame) {
            auto f = [&](double s) {
                // great circle through x toward e with parallel tangent
                Eigen::Vector4d y = r * (std::cos(s) * rhat + std::sin(s) * e);
                Eigen::Vector4d tang = -std::sin(s) * rhat + std::cos(s) * e;
                Eigen::Vector4d yhat = y / y.norm();
                Eigen::Vector4d Xy = X.eval(y);
                Eigen::Vector4d XT = Xy - Xy.dot(yhat) * yhat;
                return XT.dot(tang);
            };
            divS3 += fd6(f, h) / r;
        }
        double Xr = X.eval(x).dot(rhat);
        residuals.push_back(std::abs(X.divergence(x) - (dXr + 3.0 / r * Xr + divS3)));
    }
    return residuals;
}

}  // namespace necklab::pohozaev
