#include "necklab/chebyshev.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace necklab::num {

ChebyshevGrid chebyshev_grid(int M, double a, double b) {
    if (M < 1) throw std::invalid_argument("chebyshev_grid: need M >= 1");
    ChebyshevGrid g;
    g.a = a;
    g.b = b;
    const int N = M;
    // standard CGL nodes x_j = cos(j pi / M) descending; store ascending in [a,b]
    std::vector<double> x(N + 1);
    for (int j = 0; j <= N; ++j) x[j] = std::cos(j * std::numbers::pi / N);

    Eigen::MatrixXd D(N + 1, N + 1);
    std::vector<double> c(N + 1, 1.0);
    c[0] = 2.0;
    c[N] = 2.0;
    for (int i = 0; i <= N; ++i)
        for (int j = 0; j <= N; ++j) {
            if (i != j) {
                double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
                D(i, j) = (c[i] / c[j]) * sign / (x[i] - x[j]);
            }
        }
    for (int i = 0; i <= N; ++i) {
        double s = 0.0;
        for (int j = 0; j <= N; ++j)
            if (i != j) s += D(i, j);
        D(i, i) = -s;  // negative row sums: exact on constants
    }

    // Clenshaw–Curtis weights on [-1, 1] (Trefethen, Spectral Methods ch. 12)
    std::vector<double> w(N + 1, 0.0);
    if (N % 2 == 0) {
        w[0] = w[N] = 1.0 / (N * N - 1.0);
        for (int j = 1; j < N; ++j) {
            double s = 0.0;
            for (int k = 1; k <= N / 2 - 1; ++k)
                s += 2.0 / (1.0 - 4.0 * k * k) * std::cos(2.0 * k * j * std::numbers::pi / N);
            s += 1.0 / (1.0 - N * N) * std::cos(j * std::numbers::pi);
            w[j] = 2.0 / N * (1.0 + s);
        }
    } else {
        w[0] = w[N] = 1.0 / (N * N);
        for (int j = 1; j < N; ++j) {
            double s = 0.0;
            for (int k = 1; k <= (N - 1) / 2; ++k)
                s += 2.0 / (1.0 - 4.0 * k * k) * std::cos(2.0 * k * j * std::numbers::pi / N);
            w[j] = 2.0 / N * (1.0 + s);
        }
    }

    // map to [a, b], flipping to ascending order
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    g.nodes.resize(N + 1);
    g.cc_weights.resize(N + 1);
    g.deriv.resize(N + 1, N + 1);
    for (int i = 0; i <= N; ++i) {
        g.nodes[i] = mid - half * x[i] * 1.0;  // x descending -> nodes ascending
        g.cc_weights[i] = half * w[i];
    }
    // derivative matrix in ascending order: conjugate by the flip, scale by 1/half
    for (int i = 0; i <= N; ++i)
        for (int j = 0; j <= N; ++j) g.deriv(i, j) = -D(i, j) / half;
    // flip rows and columns (node i ascending corresponds to CGL index i because
    // cos is decreasing; mapping x -> mid - half*x reverses orientation, hence
    // the sign above and no index flip needed)
    return g;
}

double chebyshev_eval(const ChebyshevGrid& grid, const std::vector<double>& values, double x) {
    const int N = grid.degree();
    if (static_cast<int>(values.size()) != N + 1)
        throw std::invalid_argument("chebyshev_eval: values size mismatch");
    // barycentric weights for CGL nodes: (-1)^j, halved at the ends
    double num = 0.0, den = 0.0;
    for (int j = 0; j <= N; ++j) {
        double d = x - grid.nodes[j];
        if (d == 0.0) return values[j];
        double wj = (j % 2 == 0) ? 1.0 : -1.0;
        if (j == 0 || j == N) wj *= 0.5;
        double q = wj / d;
        num += q * values[j];
        den += q;
    }
    return num / den;
}

}  // namespace necklab::num
