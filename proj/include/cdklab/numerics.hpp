#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace cdklab {

/// Kahan compensated accumulator.
struct KahanSum {
    double s = 0.0;
    double c = 0.0;

    void add(double x) {
        const double y = x - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    double value() const { return s; }
};

/// Accumulates a phase sum mod 2*pi with Kahan compensation, so that
/// sin/cos of the running phase stay accurate over ~1e6 additions.
/// Incoming increments are expected in (0, 2*pi).
struct PhaseAccumulator {
    double s = 0.0;
    double c = 0.0;

    void add(double theta);
    double value() const { return s + c; }
};

/// Gauss-Legendre nodes and weights on [-1, 1] (Newton iteration on P_n).
struct QuadratureRule {
    std::vector<double> x;
    std::vector<double> w;
};

QuadratureRule gauss_legendre(int n);

/// Gauss-Chebyshev rule of the second kind: integrates f against
/// sqrt(1-x^2) dx on [-1, 1] exactly for polynomials of degree <= 2n-1.
QuadratureRule gauss_chebyshev_u(int n);

/// Least-squares slope of log(y) vs log(x); used for tail-decay fits.
double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace cdklab
