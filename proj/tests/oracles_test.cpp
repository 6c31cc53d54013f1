#include <cmath>
#include <numbers>

#include "doctest.h"

#include "cdklab/kernel.hpp"
#include "cdklab/numerics.hpp"
#include "cdklab/oracles.hpp"
#include "cdklab/params.hpp"
#include "cdklab/poly.hpp"

using namespace cdklab;
using namespace cdklab::oracles;

TEST_CASE("constant-coefficient oracle") {
    const auto oracle = constant_coefficient_oracle();
    SUBCASE("density integrates to one") {
        const auto rule = gauss_chebyshev_u(512);
        double mass = 0.0;
        for (std::size_t q = 0; q < rule.x.size(); ++q)
            mass += rule.w[q] * 2.0 / std::numbers::pi;  // weight already sqrt(1-x^2)
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
    }
    SUBCASE("omega over mu at the origin feeds the kernel acceptance") {
        const double omega0 = 1.0 / std::numbers::pi;  // arcsine density on [-1,1]
        CHECK(omega0 / oracle.mu_prime(0.0) == doctest::Approx(0.5).epsilon(1e-14));
    }
    SUBCASE("support and positivity") {
        CHECK(oracle.mu_prime(0.999) > 0.0);
        CHECK(oracle.mu_prime(1.5) == 0.0);
    }
}

TEST_CASE("alternating-diagonal example") {
    const auto s43 = section43_example();
    SUBCASE("closed forms") {
        CHECK(Section43::even_p_at_zero(1) ==
              doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-14));
        const long n = 1000000;
        CHECK(Section43::odd_p_squared_at_zero(n) / std::sqrt(n + 1.0) ==
              doctest::Approx(Section43::odd_square_limit()).epsilon(1e-6));
    }
    SUBCASE("normalized Christoffel sum at zero diverges") {
        double prev = 0.0;
        for (long n : {100L, 1000L, 10000L}) {
            const auto rep = kernel::kernel(s43.model, n, 0.0, 0.0);
            const double normalized =
                rep.K_direct / params::carleman_partial_sum(s43.model, n);
            CHECK(normalized > 3.0 * prev);
            prev = normalized;
        }
    }
    SUBCASE("violates the r=1 regularity on b/a while a-ratios are fine") {
        const auto& m = s43.model;
        auto ba = [&m](long n) { return m.b(n) / m.a(n); };
        const auto d = params::dr_diagnostic(ba, 1, 20000);
        CHECK(d.verdict == params::DrVerdict::Diverging);
        auto inva = [&m](long n) { return 1.0 / m.a(n); };
        CHECK(params::dr_diagnostic(inva, 1, 20000).verdict ==
              params::DrVerdict::Converging);
    }
    SUBCASE("classified as periodically modulated") {
        CHECK(s43.model.tag() == params::ClassTag::PeriodicallyModulated);
        CHECK(s43.model.envelope().period() == 1);
    }
}
