#include "cdklab/numerics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cdklab {

void PhaseAccumulator::add(double theta) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double y = theta - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
    while (s >= two_pi) {
        y = -two_pi - c;
        t = s + y;
        c = (t - s) - y;
        s = t;
    }
}

QuadratureRule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
    QuadratureRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev guess, then Newton on P_n.
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        rule.x[i] = -z;
        rule.x[n - 1 - i] = z;
        rule.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.w[n - 1 - i] = rule.w[i];
    }
    return rule;
}

QuadratureRule gauss_chebyshev_u(int n) {
    if (n < 1) throw std::invalid_argument("gauss_chebyshev_u: n must be positive");
    QuadratureRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    for (int k = 1; k <= n; ++k) {
        const double t = k * std::numbers::pi / (n + 1.0);
        const double s = std::sin(t);
        rule.x[k - 1] = std::cos(t);
        rule.w[k - 1] = std::numbers::pi / (n + 1.0) * s * s;
    }
    return rule;
}

double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("loglog_slope: need two aligned samples");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t m = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) continue;
        const double lx = std::log(xs[i]);
        const double ly = std::log(ys[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++m;
    }
    if (m < 2) return 0.0;
    const double denom = m * sxx - sx * sx;
    if (denom == 0.0) return 0.0;
    return (m * sxy - sx * sy) / denom;
}

}  // namespace cdklab
