#include "necklab/field_grid.hpp"

#include <cmath>
#include <stdexcept>

namespace necklab::spectral {

CylinderGrid::CylinderGrid(const AnnulusChain& c, int M) : chain(c), points_per_band(M) {
    if (M < 8) throw std::invalid_argument("CylinderGrid: need at least 8 points per band");
    bands.reserve(static_cast<std::size_t>(chain.count()));
    // ascending t: leftmost band is the innermost annulus l_hi
    for (int l = chain.l_hi; l >= chain.l_lo; --l) {
        auto b = chain.band(l);
        bands.push_back(num::chebyshev_grid(M, b[0], b[1]));
    }
}

std::size_t CylinderGrid::node_count() const {
    return bands.size() * static_cast<std::size_t>(points_per_band + 1);
}

double CylinderGrid::node(std::size_t flat) const {
    auto [b, j] = locate(flat);
    return bands[b].nodes[j];
}

std::vector<double> CylinderGrid::all_nodes() const {
    std::vector<double> out;
    out.reserve(node_count());
    for (const auto& b : bands) out.insert(out.end(), b.nodes.begin(), b.nodes.end());
    return out;
}

std::pair<std::size_t, std::size_t> CylinderGrid::locate(std::size_t flat) const {
    std::size_t per = static_cast<std::size_t>(points_per_band + 1);
    return {flat / per, flat % per};
}

int CylinderField::truncation() const {
    int N = 0;
    for (const auto& lab : labels) N = std::max(N, lab.n);
    return N;
}

CylinderField CylinderField::t_derivative(int p) const {
    CylinderField out = *this;
    const Eigen::Index per = tgrid.points_per_band + 1;
    for (int k = 0; k < K; ++k) {
        Eigen::MatrixXd v = coeffs[static_cast<std::size_t>(k)];
        for (int rep = 0; rep < p; ++rep) {
            for (std::size_t b = 0; b < tgrid.bands.size(); ++b) {
                Eigen::MatrixXd block = v.middleRows(static_cast<Eigen::Index>(b) * per, per);
                v.middleRows(static_cast<Eigen::Index>(b) * per, per) =
                    tgrid.bands[b].deriv * block;
            }
        }
        out.coeffs[static_cast<std::size_t>(k)] = v;
    }
    return out;
}

GridSamples synthesize(const BiharmonicField& field, const CylinderGrid& tgrid,
                       std::shared_ptr<S3Grid> sgrid) {
    GridSamples out;
    out.tgrid = tgrid;
    out.sgrid = std::move(sgrid);
    out.K = 1;
    const std::size_t nn = tgrid.node_count(), np = out.sgrid->size();
    Eigen::MatrixXd v =
        Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(nn), static_cast<Eigen::Index>(np));
    std::vector<double> ts = tgrid.all_nodes();
    for (std::size_t j = 0; j < nn; ++j) {
        double m = field.mean(ts[j]);
        for (std::size_t p = 0; p < np; ++p) v(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(p)) = m;
    }
    for (const auto& [idx, q] : field.modes) {
        const auto& tab = out.sgrid->table(to_label(idx));
        for (std::size_t j = 0; j < nn; ++j) {
            double c = q.deriv(0, ts[j]);
            if (c == 0.0) continue;
            for (std::size_t p = 0; p < np; ++p)
                v(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(p)) += c * out.sgrid->value(tab, p);
        }
    }
    out.values.push_back(std::move(v));
    return out;
}

CylinderField analyze(const GridSamples& samples, int N) {
    if (N > samples.sgrid->pair_degree())
        throw std::invalid_argument(
            "analyze: grid does not resolve degree " + std::to_string(N) +
            " (pair_degree = " + std::to_string(samples.sgrid->pair_degree()) + ")");
    CylinderField out;
    out.tgrid = samples.tgrid;
    out.K = samples.K;
    out.labels = modes_up_to(N);
    const std::size_t nn = samples.tgrid.node_count();
    const std::size_t nm = out.labels.size();
    const S3Grid& g = *samples.sgrid;
    for (int k = 0; k < samples.K; ++k) {
        const Eigen::MatrixXd& v = samples.values[static_cast<std::size_t>(k)];
        Eigen::MatrixXd c =
            Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(nn), static_cast<Eigen::Index>(1 + nm));
        for (std::size_t j = 0; j < nn; ++j) {
            double mean = 0.0;
            for (std::size_t p = 0; p < g.size(); ++p)
                mean += g.weight(p) * v(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(p));
            c(static_cast<Eigen::Index>(j), 0) = mean / kVolS3;
        }
        for (std::size_t m = 0; m < nm; ++m) {
            const auto& tab = g.table(out.labels[m]);
            for (std::size_t j = 0; j < nn; ++j) {
                double ip = 0.0;
                for (std::size_t p = 0; p < g.size(); ++p)
                    ip += g.weight(p) * v(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(p)) *
                          g.value(tab, p);
                c(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(1 + m)) = ip;
            }
        }
        out.coeffs.push_back(std::move(c));
    }
    return out;
}

// ── Jets ────────────────────────────────────────────────────────────────

namespace {

// derivative-jet <-> Taylor coefficients
std::array<double, 5> to_taylor(const std::array<double, 5>& d) {
    return {d[0], d[1], d[2] / 2.0, d[3] / 6.0, d[4] / 24.0};
}
std::array<double, 5> from_taylor(const std::array<double, 5>& a) {
    return {a[0], a[1], 2.0 * a[2], 6.0 * a[3], 24.0 * a[4]};
}
std::array<double, 5> series_mul(const std::array<double, 5>& a, const std::array<double, 5>& b) {
    std::array<double, 5> c{};
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; i + j < 5; ++j) c[i + j] += a[i] * b[j];
    return c;
}

std::array<double, 5> jet_trig(const std::array<double, 5>& s, bool cosine) {
    auto a = to_taylor(s);
    std::array<double, 5> d{0.0, a[1], a[2], a[3], a[4]};
    auto d2 = series_mul(d, d);
    auto d3 = series_mul(d2, d);
    auto d4 = series_mul(d2, d2);
    double c0 = std::cos(a[0]), s0 = std::sin(a[0]);
    std::array<double, 5> out{};
    for (std::size_t i = 0; i < 5; ++i) {
        double cosd = (i == 0 ? 1.0 : 0.0) - d2[i] / 2.0 + d4[i] / 24.0;
        double sind = d[i] - d3[i] / 6.0;
        out[i] = cosine ? c0 * cosd - s0 * sind : s0 * cosd + c0 * sind;
    }
    return from_taylor(out);
}

}  // namespace

std::array<double, 5> jet_cos(const std::array<double, 5>& s) { return jet_trig(s, true); }
std::array<double, 5> jet_sin(const std::array<double, 5>& s) { return jet_trig(s, false); }

JetField jets_from_field(const BiharmonicField& field, const std::vector<double>& ts) {
    JetField out;
    out.t = ts;
    out.K = 1;
    out.labels.reserve(field.modes.size());
    for (const auto& [idx, q] : field.modes) out.labels.push_back(to_label(idx));
    out.slices.resize(ts.size());
    double scale = 0.0;
    for (std::size_t s = 0; s < ts.size(); ++s) {
        SliceJet& jet = out.slices[s];
        jet.mean.resize(1);
        jet.modes.resize(1);
        jet.modes[0].resize(out.labels.size());
        for (std::size_t p = 0; p <= 4; ++p) jet.mean[0][p] = field.mean.deriv(static_cast<int>(p), ts[s]);
        std::size_t m = 0;
        for (const auto& [idx, q] : field.modes) {
            for (std::size_t p = 0; p <= 4; ++p) jet.modes[0][m][p] = q.deriv(static_cast<int>(p), ts[s]);
            ++m;
        }
        for (std::size_t p = 0; p <= 3; ++p) {
            scale = std::max(scale, jet.mean[0][p] * jet.mean[0][p]);
            for (const auto& md : jet.modes[0]) scale = std::max(scale, md[p] * md[p]);
        }
    }
    out.scale = std::max(scale, 1e-300);
    return out;
}

JetField jets_from_cylinder(const CylinderField& field) {
    JetField out;
    out.t = field.tgrid.all_nodes();
    out.labels = field.labels;
    out.K = field.K;
    out.unit_norm = field.unit_norm;
    std::vector<CylinderField> der;
    der.push_back(field);
    for (int p = 1; p <= 4; ++p) der.push_back(field.t_derivative(p));
    const std::size_t nn = field.tgrid.node_count();
    out.slices.resize(nn);
    double scale = 0.0;
    for (std::size_t j = 0; j < nn; ++j) {
        SliceJet& jet = out.slices[j];
        jet.mean.resize(static_cast<std::size_t>(field.K));
        jet.modes.resize(static_cast<std::size_t>(field.K));
        for (std::size_t k = 0; k < static_cast<std::size_t>(field.K); ++k) {
            jet.modes[k].resize(field.labels.size());
            for (std::size_t p = 0; p <= 4; ++p) {
                const Eigen::MatrixXd& c = der[p].coeffs[k];
                jet.mean[k][p] = c(static_cast<Eigen::Index>(j), 0);
                for (std::size_t m = 0; m < field.labels.size(); ++m)
                    jet.modes[k][m][p] = c(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(1 + m));
                if (p <= 3) {
                    scale = std::max(scale, jet.mean[k][p] * jet.mean[k][p]);
                    for (std::size_t m = 0; m < field.labels.size(); ++m)
                        scale = std::max(scale, jet.modes[k][m][p] * jet.modes[k][m][p]);
                }
            }
        }
    }
    out.scale = std::max(scale, 1e-300);
    return out;
}

JetField jets_from_geodesic(const ProfileJet& jet, const std::vector<double>& ts, int K,
                            int axis_a, int axis_b) {
    if (K < 2 || axis_a == axis_b || axis_a >= K || axis_b >= K || axis_a < 0 || axis_b < 0)
        throw std::invalid_argument("jets_from_geodesic: bad axes");
    JetField out;
    out.t = ts;
    out.K = K;
    out.unit_norm = true;
    out.slices.resize(ts.size());
    double scale = 0.0;
    for (std::size_t s = 0; s < ts.size(); ++s) {
        auto sj = jet(ts[s]);
        SliceJet& slice = out.slices[s];
        slice.mean.assign(static_cast<std::size_t>(K), {0, 0, 0, 0, 0});
        slice.modes.resize(static_cast<std::size_t>(K));
        slice.mean[static_cast<std::size_t>(axis_a)] = jet_cos(sj);
        slice.mean[static_cast<std::size_t>(axis_b)] = jet_sin(sj);
        for (std::size_t p = 1; p <= 3; ++p) scale = std::max(scale, sj[p] * sj[p]);
    }
    out.scale = std::max(scale, 1e-300);
    return out;
}

ProfileJet mean_quadruple_jet(const MeanModeQuadruple& m) {
    return [m](double t) {
        std::array<double, 5> out;
        for (std::size_t p = 0; p <= 4; ++p) out[p] = m.deriv(static_cast<int>(p), t);
        return out;
    };
}

}  // namespace necklab::spectral
