#include "necklab/three_circle.hpp"

#include <json.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <random>
#include <thread>

namespace necklab::threecircle {

using num::Interval;
using num::Real;
using spectral::BiharmonicField;
using spectral::g_beta_log;

const char* to_string(CertStatus s) {
    switch (s) {
        case CertStatus::PositiveDefinite: return "PositiveDefinite";
        case CertStatus::NotPositiveDefinite: return "NotPositiveDefinite";
        default: return "Indeterminate";
    }
}

const char* to_string(CertMethod m) {
    return m == CertMethod::IntervalCholesky ? "IntervalCholesky" : "AnalyticTailBound";
}

std::string Certificate::to_json() const {
    nlohmann::json j;
    j["L"] = L;
    if (tail)
        j["n_range"] = {n_min, "inf"};
    else
        j["n_range"] = {n_min, n_max};
    j["status"] = to_string(status);
    j["lambda_min_lower"] = lambda_min_lower;
    j["lambda_min_lower_log"] = lambda_min_lower_log;
    j["method"] = to_string(method);
    j["precision_bits"] = precision_bits;
    if (!diagnostics.empty()) j["diagnostics"] = diagnostics;
    return j.dump(2);
}

CertStatus interval_cholesky_pd(const std::vector<std::vector<Interval>>& a) {
    const std::size_t n = a.size();
    const int bits = a[0][0].bits();
    std::vector<std::vector<Interval>> l(n, std::vector<Interval>(n, Interval(bits)));
    for (std::size_t j = 0; j < n; ++j) {
        Interval pivot = a[j][j];
        for (std::size_t k = 0; k < j; ++k) pivot = pivot - l[j][k] * l[j][k];
        if (pivot.definitely_negative()) return CertStatus::NotPositiveDefinite;
        if (!pivot.definitely_positive()) return CertStatus::Indeterminate;
        Interval root = sqrt(pivot);
        l[j][j] = root;
        for (std::size_t i = j + 1; i < n; ++i) {
            Interval s = a[i][j];
            for (std::size_t k = 0; k < j; ++k) s = s - l[i][k] * l[j][k];
            l[i][j] = s / root;
        }
    }
    return CertStatus::PositiveDefinite;
}

namespace {

std::vector<std::vector<Interval>> tc_matrix_vec(double L, int n, int bits) {
    auto m = spectral::three_circle_matrix_interval(L, n, bits);
    std::vector<std::vector<Interval>> a(4, std::vector<Interval>(4, Interval(bits)));
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) a[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = m[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
    return a;
}

// PD test of A - e^{logshift} I.
CertStatus shifted_pd(const std::vector<std::vector<Interval>>& a, double logshift, int bits) {
    Interval shift = exp(Interval(logshift, bits));
    auto b = a;
    for (std::size_t j = 0; j < b.size(); ++j) b[j][j] = b[j][j] - shift;
    return interval_cholesky_pd(b);
}

// Largest certified log-shift such that A - e^m I stays PD; requires A PD.
std::optional<double> lambda_min_lower_log_bisect(const std::vector<std::vector<Interval>>& a,
                                                  int bits) {
    // upper bound: lambda_min <= min diagonal entry
    double hi = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (!a[j][j].definitely_positive()) return std::nullopt;
        hi = std::min(hi, a[j][j].log_lower());
    }
    double lo = hi - 80.0;
    for (int widen = 0; widen < 6 && shifted_pd(a, lo, bits) != CertStatus::PositiveDefinite;
         ++widen)
        lo -= 160.0;
    if (shifted_pd(a, lo, bits) != CertStatus::PositiveDefinite) return std::nullopt;
    for (int it = 0; it < 50; ++it) {
        double mid = 0.5 * (lo + hi);
        if (shifted_pd(a, mid, bits) == CertStatus::PositiveDefinite)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

}  // namespace

Certificate certify_matrix(double L, int n, int bits, int max_retries) {
    if (n < 1) throw std::domain_error("certify_matrix: n must be >= 1");
    if (L <= 0.0) throw std::domain_error("certify_matrix: L must be > 0");
    Certificate cert;
    cert.L = L;
    cert.n_min = cert.n_max = n;
    cert.method = CertMethod::IntervalCholesky;
    int b = bits;
    for (int attempt = 0; attempt <= max_retries; ++attempt, b *= 2) {
        auto a = tc_matrix_vec(L, n, b);
        CertStatus st = interval_cholesky_pd(a);
        cert.precision_bits = b;
        cert.status = st;
        if (st == CertStatus::Indeterminate) continue;
        if (st == CertStatus::PositiveDefinite) {
            auto lml = lambda_min_lower_log_bisect(a, b);
            if (lml) {
                cert.lambda_min_lower_log = *lml;
                cert.lambda_min_lower = std::exp(*lml);  // may round to inf, log is canonical
            }
        }
        return cert;
    }
    cert.diagnostics = "precision exhausted after " + std::to_string(max_retries) + " retries";
    cert.status = CertStatus::Indeterminate;
    return cert;
}

double smallest_eigenvalue_2x2(double a, double b, double c) {
    double disc = std::sqrt((a - c) * (a - c) + 4.0 * b * b);
    double den = 2.0 * (a + c + disc);
    if (den == 0.0) return 0.0;  // zero matrix
    return 4.0 * (a * c - b * b) / den;
}

Interval smallest_eigenvalue_2x2(const Interval& a, const Interval& b, const Interval& c) {
    const int bits = a.bits();
    Interval four(4.0, bits), two(2.0, bits);
    Interval diff = a - c;
    Interval disc = sqrt(diff * diff + four * b * b);
    return four * (a * c - b * b) / (two * (a + c + disc));
}

double paper_lambda_bound_log(int n, double L) {
    if (n < 2) throw std::domain_error("paper_lambda_bound: n >= 2 required");
    return (4.0 * n - 1.0) * L - std::log(24.0 * n * (n + 1.0) * (n + 1.0));
}

double paper_lambda_bound(int n, double L) { return std::exp(paper_lambda_bound_log(n, L)); }

double paper_mu_bound_log(int n, double L) {
    if (n < 2) throw std::domain_error("paper_mu_bound: n >= 2 required");
    return (2.0 * n - 1.0) * L - std::log(12.0 * n * (n + 1.0) * (n + 1.0));
}

double paper_mu_bound(int n, double L) { return std::exp(paper_mu_bound_log(n, L)); }

double paper_m_bound(double L) { return 0.5 * std::exp(3.0 * L); }

Interval paper_lambda_bound(int n, double L, int bits) {
    if (n < 2) throw std::domain_error("paper_lambda_bound: n >= 2 required");
    Interval e = exp(Interval(4.0 * n - 1.0, bits) * Interval(L, bits));
    return e / Interval(24.0 * n * (n + 1.0) * (n + 1.0), bits);
}

Interval paper_mu_bound(int n, double L, int bits) {
    if (n < 2) throw std::domain_error("paper_mu_bound: n >= 2 required");
    Interval e = exp(Interval(2.0 * n - 1.0, bits) * Interval(L, bits));
    return e / Interval(12.0 * n * (n + 1.0) * (n + 1.0), bits);
}

Interval paper_m_bound(double L, int bits) {
    return Interval(0.5, bits) * exp(Interval(3.0 * L, bits));
}

std::optional<double> block_lambda_min_log(double L, int n, int block, int bits) {
    auto a4 = tc_matrix_vec(L, n, bits);
    std::size_t off = block == 0 ? 0 : 2;
    std::vector<std::vector<Interval>> a(2, std::vector<Interval>(2, Interval(bits)));
    for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t k = 0; k < 2; ++k) a[j][k] = a4[off + j][off + k];
    if (interval_cholesky_pd(a) != CertStatus::PositiveDefinite) return std::nullopt;
    return lambda_min_lower_log_bisect(a, bits);
}

bool block_dominance_holds(double L, int n, int bits) {
    auto a = tc_matrix_vec(L, n, bits);
    Interval d_ba = a[0][1] - a[0][0];  // b - a
    Interval d_cb = a[1][1] - a[0][1];  // c - b
    return d_ba.definitely_positive() && d_cb.definitely_positive();
}

TailBoundReport certify_tail(double L, int n_threshold, int bits) {
    if (n_threshold < 2)
        throw std::domain_error("certify_tail: n_threshold >= 2 required (n = 1 belongs to the matrix branch)");
    TailBoundReport rep;
    rep.L = L;
    rep.n_threshold = n_threshold;
    Interval lam = paper_lambda_bound(n_threshold, L, bits);
    Interval mu = paper_mu_bound(n_threshold, L, bits);
    Interval m = paper_m_bound(L, bits);
    rep.lambda_lower_log = lam.log_lower();
    rep.mu_lower_log = mu.log_lower();
    rep.m_upper = m.upper_double();
    Interval gap = lam * mu - m * m;
    bool at_threshold = gap.definitely_positive();
    rep.gap_log = at_threshold ? (lam * mu).log_lower() - 2.0 * std::log(rep.m_upper) : 0.0;
    // per-step growth of the bound product lambda(n) mu(n):
    //   e^{6L} n^2 (n+1)^2 / (n+2)^4,
    // increasing in n, so certifying > 1 at the threshold covers the tail;
    // m^2 does not depend on n.
    const double nt = n_threshold;
    Interval growth = exp(Interval(6.0 * L, bits)) *
                      Interval(nt * nt * (nt + 1.0) * (nt + 1.0), bits) /
                      Interval(std::pow(nt + 2.0, 4.0), bits);
    bool monotone = (growth - Interval(1.0, bits)).definitely_positive();
    rep.growth_factor = growth.lower_double();
    rep.certified = at_threshold && monotone;
    if (!at_threshold) rep.diagnostics = "m^2 < lambda*mu fails at the threshold";
    else if (!monotone) rep.diagnostics = "bound product is not certified to grow";
    return rep;
}

TheoremCertificate certify_theorem(double L, int n_switch, int bits) {
    auto t0 = std::chrono::steady_clock::now();
    TheoremCertificate out;
    out.tail = certify_tail(L, n_switch, std::max(bits, 192));

    int threads = static_cast<int>(std::thread::hardware_concurrency());
    if (const char* env = std::getenv("NECKLAB_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1) threads = std::min(threads, cap);
    }
    threads = std::max(1, std::min(threads, n_switch));

    std::vector<Certificate> certs(static_cast<std::size_t>(n_switch));
    std::vector<std::thread> pool;
    std::atomic<int> next{1};
    auto worker = [&]() {
        for (;;) {
            int n = next.fetch_add(1);
            if (n > n_switch) return;
            certs[static_cast<std::size_t>(n - 1)] = certify_matrix(L, n, bits);
        }
    };
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    Certificate& s = out.summary;
    s.L = L;
    s.n_min = 1;
    s.n_max = n_switch;
    s.tail = true;
    s.method = CertMethod::IntervalCholesky;
    s.precision_bits = bits;
    s.status = CertStatus::PositiveDefinite;
    s.lambda_min_lower_log = std::numeric_limits<double>::infinity();
    for (const auto& c : certs) {
        if (c.status != CertStatus::PositiveDefinite) {
            out.failures.push_back(c);
            s.status = c.status;
        }
        s.lambda_min_lower_log = std::min(s.lambda_min_lower_log, c.lambda_min_lower_log);
    }
    if (!out.tail.certified && s.status == CertStatus::PositiveDefinite)
        s.status = CertStatus::Indeterminate;
    s.lambda_min_lower = std::exp(s.lambda_min_lower_log);
    if (s.status != CertStatus::PositiveDefinite && s.diagnostics.empty())
        s.diagnostics = out.tail.certified ? "matrix branch failed" : out.tail.diagnostics;
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

// ── Monte-Carlo falsifier ────────────────────────────────────────────────

double three_circle_ratio(const BiharmonicField& field, double L) {
    if (!field.mean_zero())
        throw std::invalid_argument("three_circle_ratio: field must have zero spherical mean");
    double f0 = spectral::F_energy(field, 0, L);
    double fm = spectral::F_energy(field, -1, L);
    double fp = spectral::F_energy(field, 1, L);
    if (f0 == 0.0 && fm == 0.0 && fp == 0.0)
        throw std::invalid_argument("three_circle_ratio: zero field");
    return 2.0 * f0 / (fm + fp);
}

namespace {

// Gram matrices of annuli -1, 0, 1 in the scaled basis
//   (e^{-nL} r^n, e^{-(n+2)L} r^{n+2}, r^{-n}, r^{-(n+2)}),
// which keeps every entry inside double range for n up to ~50 at L = 3.
struct ScaledTriple {
    Eigen::Matrix4d m[3];  // i = -1, 0, 1
    double worst_ratio;    // max generalized eigenvalue of 2 M_0 x = r (M_-1 + M_1) x
};

ScaledTriple scaled_triple(double L, int n) {
    ScaledTriple out;
    auto beta = spectral::beta_matrix(n);
    const double s[4] = {-n * L, -(n + 2.0) * L, 0.0, 0.0};
    for (int i = -1; i <= 1; ++i) {
        Eigen::Matrix4d& m = out.m[i + 1];
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                m(j, k) = std::exp(g_beta_log(i, L, beta[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]) + s[j] + s[k]);
    }
    Eigen::Matrix4d a = 2.0 * out.m[1];
    Eigen::Matrix4d b = out.m[0] + out.m[2];
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::Matrix4d> es(a, b);
    out.worst_ratio = es.eigenvalues().maxCoeff();
    return out;
}

}  // namespace

FalsifyReport falsify_inequality(double L, int n_max, long samples, unsigned long long seed) {
    if (L <= 0.0) throw std::domain_error("falsify_inequality: L must be > 0");
    if (n_max < 1 || samples < 1) throw std::domain_error("falsify_inequality: bad arguments");
    FalsifyReport rep;
    rep.L = L;
    rep.n_max = n_max;
    rep.samples = samples;
    rep.seed = seed;
    rep.threshold = std::exp(-L);

    std::vector<ScaledTriple> grams;
    grams.reserve(static_cast<std::size_t>(n_max));
    rep.analytic_max_ratio = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        grams.push_back(scaled_triple(L, n));
        if (grams.back().worst_ratio > rep.analytic_max_ratio) {
            rep.analytic_max_ratio = grams.back().worst_ratio;
            rep.argmax_n = n;
        }
    }

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    std::uniform_int_distribution<int> mode_count(1, 8);
    std::uniform_int_distribution<int> degree(1, n_max);
    for (long s = 0; s < samples; ++s) {
        int nmodes = (s % 4 == 0) ? 1 : mode_count(rng);
        double f[3] = {0.0, 0.0, 0.0};
        for (int m = 0; m < nmodes; ++m) {
            int n = degree(rng);
            Eigen::Vector4d x(gauss(rng), gauss(rng), gauss(rng), gauss(rng));
            const ScaledTriple& g = grams[static_cast<std::size_t>(n - 1)];
            for (int i = 0; i < 3; ++i) f[i] += x.dot(g.m[i] * x);
        }
        if (f[0] + f[2] == 0.0) continue;
        double ratio = 2.0 * f[1] / (f[0] + f[2]);
        rep.max_ratio = std::max(rep.max_ratio, ratio);
    }
    rep.pass = rep.max_ratio < rep.threshold;
    return rep;
}

}  // namespace necklab::threecircle
