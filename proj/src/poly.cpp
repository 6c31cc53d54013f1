#include "cdklab/poly.hpp"

#include <cmath>

namespace cdklab::poly {

PolySample eval_poly_sequence(const ParameterModel& model, int k, double x, long n_max) {
    if (!std::isfinite(x)) throw std::invalid_argument("eval_poly_sequence: non-finite x");
    if (n_max < 0 || k < 0)
        throw std::invalid_argument("eval_poly_sequence: n_max and k must be >= 0");

    PolySample out;
    out.x = x;
    out.shift = k;
    out.values.reserve(n_max + 1);
    out.values.push_back(1.0);
    if (n_max == 0) return out;

    double pm1 = 1.0;
    double p = (x - model.b(k)) / model.a(k);
    out.values.push_back(p);
    for (long n = 1; n < n_max; ++n) {
        // a_{n+k} p_{n+1} = (x - b_{n+k}) p_n - a_{n+k-1} p_{n-1}
        const double num = std::fma(x - model.b(n + k), p, -model.a(n + k - 1) * pm1);
        const double next = num / model.a(n + k);
        if (std::abs(next) > kOverflowGuard) {
            out.overflow = true;
            return out;
        }
        pm1 = p;
        p = next;
        out.values.push_back(p);
    }
    return out;
}

PolySample eval_poly_derivative(const ParameterModel& model, double x, long n_max) {
    if (n_max < 1) throw std::invalid_argument("eval_poly_derivative: n_max must be >= 1");
    PolySample p = eval_poly_sequence(model, 0, x, n_max);
    PolySample q = eval_poly_sequence(model, 1, x, n_max);
    const long len = std::min(p.n_max(), q.n_max());
    if (p.overflow || q.overflow) {
        p.overflow = true;
        p.values.resize(len + 1);
    }

    // p_n' = (q_{n-1} S_n - p_n T_n)/a_0 with running S_n = sum_{m<n} p_m^2,
    // T_n = sum_{m<n} q_{m-1} p_m and q_{-1} = 0.
    p.deriv_values.assign(len + 1, 0.0);
    const double a0 = model.a(0);
    double S = 0.0, T = 0.0;
    for (long n = 1; n <= len; ++n) {
        S += p.values[n - 1] * p.values[n - 1];
        T += (n >= 2 ? q.values[n - 2] : 0.0) * p.values[n - 1];
        p.deriv_values[n] = (q.values[n - 1] * S - p.values[n] * T) / a0;
    }
    return p;
}

ClosedFormAtZero closed_form_p2n_zero(long n) {
    if (n < 0) throw std::invalid_argument("closed_form_p2n_zero: n must be >= 0");
    ClosedFormAtZero out;
    const double ln2 = std::log(2.0);
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    out.even_value =
        sign * std::exp(0.5 * std::lgamma(2.0 * n + 1.0) - n * ln2 - std::lgamma(n + 1.0));
    out.odd_square = std::exp(std::log(n + 1.0) + std::lgamma(2.0 * n + 3.0) -
                              2.0 * std::lgamma(n + 2.0) - (2.0 * n + 1.0) * ln2);
    return out;
}

}  // namespace cdklab::poly
