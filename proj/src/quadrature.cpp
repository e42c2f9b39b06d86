#include "necklab/quadrature.hpp"

#include <numbers>

namespace necklab::num {

QuadratureRule gauss_legendre(int points) {
    if (points < 1) throw std::invalid_argument("gauss_legendre: points < 1");
    QuadratureRule rule;
    rule.nodes.resize(points);
    rule.weights.resize(points);
    const int n = points;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Chebyshev initial guess, then Newton on P_n(x)
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

QuadratureRule gauss_chebyshev2(int points) {
    if (points < 1) throw std::invalid_argument("gauss_chebyshev2: points < 1");
    QuadratureRule rule;
    rule.nodes.resize(points);
    rule.weights.resize(points);
    for (int j = 1; j <= points; ++j) {
        double a = j * std::numbers::pi / (points + 1);
        rule.nodes[j - 1] = std::cos(a);
        rule.weights[j - 1] = std::numbers::pi / (points + 1) * std::sin(a) * std::sin(a);
    }
    return rule;
}

QuadratureRule map_to_interval(const QuadratureRule& rule, double a, double b) {
    QuadratureRule out = rule;
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (std::size_t i = 0; i < out.nodes.size(); ++i) {
        out.nodes[i] = mid + half * rule.nodes[i];
        out.weights[i] = half * rule.weights[i];
    }
    return out;
}

double integrate_panels(const std::function<double(double)>& f, double a, double b,
                        int panels, int points) {
    const QuadratureRule base = gauss_legendre(points);
    double total = 0.0;
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const QuadratureRule r = map_to_interval(base, a + p * h, a + (p + 1) * h);
        for (std::size_t i = 0; i < r.nodes.size(); ++i) total += r.weights[i] * f(r.nodes[i]);
    }
    return total;
}

}  // namespace necklab::num
