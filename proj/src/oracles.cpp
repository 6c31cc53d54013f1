#include "cdklab/oracles.hpp"

#include <cmath>
#include <numbers>

#include "cdklab/poly.hpp"

namespace cdklab::oracles {

DensityOracle constant_coefficient_oracle() {
    DensityOracle oracle;
    oracle.name = "chebyshev-u";
    oracle.support = {{-1.0, 1.0}};
    oracle.mu_prime = [](double x) {
        if (x <= -1.0 || x >= 1.0) return 0.0;
        return 2.0 / std::numbers::pi * std::sqrt(1.0 - x * x);
    };
    return oracle;
}

params::ParameterModel constant_coefficient_model() {
    params::PeriodicEnvelope env({0.5}, {0.0});
    return params::make_periodic(env);
}

Section43 section43_example() {
    params::PeriodicEnvelope env({1.0}, {0.0});
    // Satisfies the modulation conditions with this envelope; built directly
    // because the diagonal alternates instead of following beta * growth.
    params::ParameterModel model(
        params::ClassTag::PeriodicallyModulated, env,
        [](long n) { return std::sqrt(static_cast<double>(n) + 1.0); },
        [](long n) { return n % 2 == 0 ? 1.0 : 0.0; });
    return Section43{std::move(model)};
}

double Section43::even_p_at_zero(long n) { return poly::closed_form_p2n_zero(n).even_value; }

double Section43::odd_p_squared_at_zero(long n) {
    return poly::closed_form_p2n_zero(n).odd_square;
}

double Section43::odd_square_limit() { return 2.0 / std::sqrt(std::numbers::pi); }

}  // namespace cdklab::oracles
