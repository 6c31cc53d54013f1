#pragma once

#include <vector>

#include "cdklab/params.hpp"

namespace cdklab::poly {

using params::ParameterModel;

/// Values p^{[k]}_n(x) for n = 0..n_max. When |p_n| passes 1e280 the sample
/// is truncated and overflow is set instead of producing non-finite values;
/// callers must check the flag.
struct PolySample {
    double x = 0.0;
    int shift = 0;  // k
    std::vector<double> values;
    std::vector<double> deriv_values;  // filled by eval_poly_derivative
    bool overflow = false;

    long n_max() const { return static_cast<long>(values.size()) - 1; }
};

inline constexpr double kOverflowGuard = 1e280;

/// Forward three-term recurrence for the kth associated polynomials:
///   p^{[k]}_0 = 1,  p^{[k]}_1 = (x - b_k)/a_k,
///   a_{n+k} p^{[k]}_{n+1} = (x - b_{n+k}) p^{[k]}_n - a_{n+k-1} p^{[k]}_{n-1}.
PolySample eval_poly_sequence(const ParameterModel& model, int k, double x, long n_max);

/// Plain polynomials together with derivatives
///   p_n'(x) = (1/a_0) sum_{m<n} (p_m p^{[1]}_{n-1} - p_n p^{[1]}_{m-1}) p_m,
/// with p^{[1]}_{-1} := 0, evaluated with running sums (O(n) total).
PolySample eval_poly_derivative(const ParameterModel& model, double x, long n_max);

/// Closed forms of the alternating-diagonal example at x = 0, computed via
/// log-gamma:  p_{2n}(0) = (-1)^n sqrt((2n)!)/(2^n n!)  and
/// p^2_{2n+1}(0) = (n+1)(2n+2)!/(((n+1)!)^2 2^{2n+1}).
struct ClosedFormAtZero {
    double even_value = 0.0;  // p_{2n}(0)
    double odd_square = 0.0;  // p^2_{2n+1}(0)
};

ClosedFormAtZero closed_form_p2n_zero(long n);

}  // namespace cdklab::poly
