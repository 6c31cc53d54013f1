#include "cdklab/oscsum.hpp"

#include <cmath>
#include <stdexcept>

#include "cdklab/numerics.hpp"

namespace cdklab::oscsum {

std::complex<double> weighted_exponential_sum(const OscSpec& spec, long n, double x) {
    if (n < 0) throw std::invalid_argument("weighted_exponential_sum: n must be >= 0");
    PhaseAccumulator phase;
    KahanSum re, im;
    for (long k = 0; k <= n; ++k) {
        phase.add(spec.theta(k, x));
        const double p = phase.value();
        const double g = spec.gamma(k);
        re.add(g * std::cos(p));
        im.add(g * std::sin(p));
    }
    return {re.value(), im.value()};
}

double normalized_exponential_sum_abs(const OscSpec& spec, long n, double x) {
    KahanSum gsum;
    for (long k = 0; k <= n; ++k) gsum.add(spec.gamma(k));
    return std::abs(weighted_exponential_sum(spec, n, x)) / gsum.value();
}

double summation_by_parts_bound(const OscSpec& spec, long n, double x) {
    const double limit = spec.theta_limit(x);
    KahanSum bound;
    double g = spec.gamma(0);
    for (long k = 0; k + 1 <= n; ++k) {
        const double gn = spec.gamma(k + 1);
        bound.add(std::abs(gn - g));
        bound.add(gn * std::abs(spec.theta(k + 1, x) - limit));
        g = gn;
    }
    return bound.value();
}

double sinc_limit_sum(const OscSpec& spec, long n, double x, double a, double b) {
    KahanSum gsum;
    for (long k = 0; k <= n; ++k) gsum.add(spec.gamma(k));
    const double G = gsum.value();
    const double xn = x + a / G;
    const double yn = x + b / G;
    const double sx = spec.sigma(xn);
    const double sy = spec.sigma(yn);

    PhaseAccumulator px, py;
    KahanSum sum;
    for (long k = 0; k <= n; ++k) {
        px.add(spec.theta(k, xn));
        py.add(spec.theta(k, yn));
        sum.add(spec.gamma(k) * std::sin(px.value() + sx) * std::sin(py.value() + sy));
    }
    return sum.value() / G;
}

double cos_sum_average(const OscSpec& spec, long n, double x, double a, double b) {
    KahanSum gsum;
    for (long k = 0; k <= n; ++k) gsum.add(spec.gamma(k));
    const double G = gsum.value();
    const double xn = x + a / G;
    const double yn = x + b / G;
    const double off = spec.sigma(xn) + spec.sigma(yn);

    PhaseAccumulator phase;
    KahanSum sum;
    for (long k = 0; k <= n; ++k) {
        phase.add(spec.theta(k, xn));
        phase.add(spec.theta(k, yn));
        sum.add(spec.gamma(k) * std::cos(phase.value() + off));
    }
    return sum.value() / G;
}

OscSpec canonical_fixture(double c0) {
    OscSpec spec;
    spec.gamma = [](long k) { return 1.0 / std::sqrt(static_cast<double>(k) + 1.0); };
    spec.theta = [c0](long k, double x) {
        return c0 + x / std::sqrt(static_cast<double>(k) + 1.0);
    };
    spec.theta_limit = [c0](double) { return c0; };
    spec.psi = [](double) { return 1.0; };
    spec.sigma = [](double) { return 0.0; };
    spec.k_lo = 0.0;
    spec.k_hi = 2.0;
    return spec;
}

}  // namespace cdklab::oscsum
