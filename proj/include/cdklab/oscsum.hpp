#pragma once

#include <complex>
#include <functional>

namespace cdklab::oscsum {

/// Weighted oscillatory sum data: positive weights gamma_k, phase functions
/// theta_k(x) with values in (0, 2pi) on the compact interval [k_lo, k_hi],
/// their uniform limit, the frequency scale psi and the offset sigma.
struct OscSpec {
    std::function<double(long)> gamma;
    std::function<double(long, double)> theta;
    std::function<double(double)> theta_limit;
    std::function<double(double)> psi;
    std::function<double(double)> sigma;
    double k_lo = 0.0;
    double k_hi = 1.0;
};

/// sum_{k=0}^{n} gamma_k exp(i sum_{j=0}^{k} theta_j(x)), phases accumulated
/// mod 2pi with compensation.
std::complex<double> weighted_exponential_sum(const OscSpec& spec, long n, double x);

/// |weighted_exponential_sum| / sum_k gamma_k.
double normalized_exponential_sum_abs(const OscSpec& spec, long n, double x);

/// sum_{k=0}^{n-1} |gamma_{k+1}-gamma_k| + gamma_{k+1} |theta_{k+1}(x) - theta(x)|,
/// the computable bound side used for the fitted-constant checks.
double summation_by_parts_bound(const OscSpec& spec, long n, double x);

/// The double-sine sum at the moving points x_n = x + a/sum gamma,
/// y_n = x + b/sum gamma:
///   sum_k (gamma_k / sum gamma) sin(Sum theta(x_n)+sigma(x_n)) sin(Sum theta(y_n)+sigma(y_n)).
double sinc_limit_sum(const OscSpec& spec, long n, double x, double a, double b);

/// Same structure with cos of the SUM of phases; tends to zero.
double cos_sum_average(const OscSpec& spec, long n, double x, double a, double b);

/// theta_j(x) = c0 + gamma_j x with gamma_k = 1/sqrt(k+1) on K = [0, 2]:
/// satisfies the sinc-limit hypotheses exactly with psi == 1 and closed-form
/// derivatives.
OscSpec canonical_fixture(double c0 = 1.0);

}  // namespace cdklab::oscsum
