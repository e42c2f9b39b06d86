#include "necklab/modes.hpp"

#include <json.hpp>

#include <cmath>
#include <stdexcept>

namespace necklab::spectral {

using json = nlohmann::json;

double RadialQuadruple::deriv(int p, double t) const {
    const double a1 = n, a2 = -(n + 2.0), a3 = n + 2.0, a4 = -static_cast<double>(n);
    auto term = [&](double coef, double a) {
        return coef == 0.0 ? 0.0 : coef * std::pow(a, p) * std::exp(a * t);
    };
    double v = 0.0;
    v += (p == 0) ? A * std::exp(a1 * t) : term(A, a1);
    v += (p == 0) ? B * std::exp(a2 * t) : term(B, a2);
    v += (p == 0) ? C * std::exp(a3 * t) : term(C, a3);
    v += (p == 0) ? D * std::exp(a4 * t) : term(D, a4);
    return v;
}

double MeanModeQuadruple::deriv(int p, double t) const {
    double v = 0.0;
    if (p == 0) v += A0 + D0 * t;
    if (p == 1) v += D0;
    v += B0 * std::pow(2.0, p) * std::exp(2.0 * t);
    v += C0 * std::pow(-2.0, p) * std::exp(-2.0 * t);
    return v;
}

double BiharmonicField::scale() const {
    double s = std::max({std::abs(mean.A0), std::abs(mean.B0), std::abs(mean.C0), std::abs(mean.D0)});
    for (const auto& [idx, q] : modes)
        s = std::max({s, std::abs(q.A), std::abs(q.B), std::abs(q.C), std::abs(q.D)});
    return s;
}

double BiharmonicField::evaluate(double t, const S3Point& p) const {
    double v = mean(t);
    for (const auto& [idx, q] : modes) v += q.deriv(0, t) * harmonic_value(to_label(idx), p);
    return v;
}

BiharmonicField BiharmonicField::rescaled(double L) const {
    BiharmonicField out;
    out.truncation = truncation;
    out.mean.A0 = mean.A0 - mean.D0 * L;
    out.mean.B0 = mean.B0 * std::exp(-2.0 * L);
    out.mean.C0 = mean.C0 * std::exp(2.0 * L);
    out.mean.D0 = mean.D0;
    for (const auto& [idx, q] : modes) {
        RadialQuadruple r = q;
        r.A = q.A * std::exp(-q.n * L);
        r.B = q.B * std::exp((q.n + 2.0) * L);
        r.C = q.C * std::exp(-(q.n + 2.0) * L);
        r.D = q.D * std::exp(q.n * L);
        out.modes.emplace(idx, r);
    }
    return out;
}

void BiharmonicField::insert(const ModeIndex& idx, const RadialQuadruple& q) {
    if (q.n != idx.n) throw std::invalid_argument("BiharmonicField::insert: degree mismatch");
    if (idx.l < 1 || idx.l > multiplicity(idx.n))
        throw std::invalid_argument("BiharmonicField::insert: slot out of range");
    modes[idx] = q;
    truncation = std::max(truncation, idx.n);
}

AnnulusChain::AnnulusChain(double L_, int lo, int hi) : L(L_), l_lo(lo), l_hi(hi) {
    if (L <= 0.0) throw std::invalid_argument("AnnulusChain: gap L must be > 0");
    if (lo > hi) throw std::invalid_argument("AnnulusChain: l_lo > l_hi");
}

std::string field_to_json(const BiharmonicField& f, double L) {
    json j;
    j["L"] = L;
    j["N"] = f.truncation;
    j["mean"] = {f.mean.A0, f.mean.B0, f.mean.C0, f.mean.D0};
    j["modes"] = json::array();
    for (const auto& [idx, q] : f.modes) {
        json m;
        m["n"] = idx.n;
        m["l"] = idx.l;
        m["ABCD"] = {q.A, q.B, q.C, q.D};
        j["modes"].push_back(m);
    }
    return j.dump(2);
}

BiharmonicField field_from_json(const std::string& text, double* L_out) {
    json j = json::parse(text);
    BiharmonicField f;
    if (L_out) *L_out = j.value("L", 3.0);
    auto mean = j.value("mean", std::vector<double>{0, 0, 0, 0});
    if (mean.size() != 4) throw std::invalid_argument("field_from_json: mean needs 4 entries");
    f.mean = {mean[0], mean[1], mean[2], mean[3]};
    for (const auto& m : j.value("modes", json::array())) {
        ModeIndex idx{m.at("n").get<int>(), m.at("l").get<int>()};
        auto abcd = m.at("ABCD").get<std::vector<double>>();
        if (abcd.size() != 4) throw std::invalid_argument("field_from_json: ABCD needs 4 entries");
        RadialQuadruple q{abcd[0], abcd[1], abcd[2], abcd[3], idx.n};
        f.insert(idx, q);
    }
    return f;
}

}  // namespace necklab::spectral
