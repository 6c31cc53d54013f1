#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "cdklab/params.hpp"

namespace cdklab::oracles {

/// Closed-form reference density, used by tests as ground truth. Only
/// textbook densities ship here.
struct DensityOracle {
    std::string name;
    std::vector<std::pair<double, double>> support;
    std::function<double(double)> mu_prime;
};

/// a == 1/2, b == 0: support [-1,1], mu'(x) = (2/pi) sqrt(1-x^2); the
/// polynomials are the second-kind Chebyshev polynomials.
DensityOracle constant_coefficient_oracle();

/// The corresponding model.
params::ParameterModel constant_coefficient_model();

/// The alternating-diagonal example: a_n = sqrt(n+1), b_n = 1 for even n and
/// 0 otherwise. Satisfies the 1-periodic modulation conditions but not the
/// Stolz regularity on (b_n/a_n); the normalized Christoffel sum at x = 0
/// diverges.
struct Section43 {
    params::ParameterModel model;
    /// p_{2n}(0) via log-gamma.
    static double even_p_at_zero(long n);
    /// p^2_{2n+1}(0) via log-gamma.
    static double odd_p_squared_at_zero(long n);
    /// lim p^2_{2n+1}(0)/sqrt(n+1) = 2/sqrt(pi).
    static double odd_square_limit();
    /// The point where the normalized Christoffel sum blows up.
    static constexpr double divergence_point = 0.0;
};

Section43 section43_example();

}  // namespace cdklab::oracles
