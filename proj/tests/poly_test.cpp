#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"

#include "cdklab/numerics.hpp"
#include "cdklab/oracles.hpp"
#include "cdklab/params.hpp"
#include "cdklab/poly.hpp"

using namespace cdklab;
using namespace cdklab::params;
using namespace cdklab::poly;

namespace {

ParameterModel chebyshev_u() { return oracles::constant_coefficient_model(); }

ParameterModel random_model(std::mt19937_64& rng, long len = 64) {
    std::uniform_real_distribution<double> ua(0.1, 10.0);
    std::uniform_real_distribution<double> ub(-5.0, 5.0);
    auto a = std::make_shared<std::vector<double>>();
    auto b = std::make_shared<std::vector<double>>();
    for (long i = 0; i < len; ++i) {
        a->push_back(ua(rng));
        b->push_back(ub(rng));
    }
    return make_custom(PeriodicEnvelope({1.0}, {0.0}),
                       [a](long n) { return a->at(static_cast<std::size_t>(n)); },
                       [b](long n) { return b->at(static_cast<std::size_t>(n)); });
}

}  // namespace

TEST_CASE("second-kind Chebyshev values at zero") {
    const auto s = eval_poly_sequence(chebyshev_u(), 0, 0.0, 4);
    const double expect[] = {1.0, 0.0, -1.0, 0.0, 1.0};
    for (int i = 0; i <= 4; ++i) CHECK(s.values[i] == doctest::Approx(expect[i]));
}

TEST_CASE("alternating-diagonal model hits the closed form at n=2") {
    const auto s43 = oracles::section43_example();
    const auto s = eval_poly_sequence(s43.model, 0, 0.0, 2);
    CHECK(s.values[2] == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("associated polynomials start at one") {
    std::mt19937_64 rng(3);
    const auto m = random_model(rng);
    for (int k : {0, 1, 2, 7}) {
        const auto s = eval_poly_sequence(m, k, 0.37, 5);
        CHECK(s.values[0] == 1.0);
    }
}

TEST_CASE("recurrence residual invariant on random models") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> ux(-2.0, 2.0);
    for (int t = 0; t < 25; ++t) {
        const auto m = random_model(rng, 1100);
        const double x = ux(rng);
        const int k = static_cast<int>(rng() % 3);
        const auto s = eval_poly_sequence(m, k, x, 1000);
        if (s.overflow) continue;
        double amax = 0.0;
        for (long j = 0; j <= 1000 + k; ++j) amax = std::max(amax, m.a(j));
        for (long n = 1; n < s.n_max(); ++n) {
            const double resid = m.a(n + k) * s.values[n + 1] +
                                 (m.b(n + k) - x) * s.values[n] +
                                 m.a(n + k - 1) * s.values[n - 1];
            const double scale =
                std::max({1.0, std::abs(s.values[n + 1]), std::abs(s.values[n]),
                          std::abs(s.values[n - 1])});
            CHECK(std::abs(resid) <= 1e-10 * scale * amax);
        }
    }
}

TEST_CASE("derivatives") {
    SUBCASE("p_1' is constant 2 for the Chebyshev model") {
        for (double x : {-0.9, 0.0, 0.4}) {
            const auto s = eval_poly_derivative(chebyshev_u(), x, 3);
            CHECK(s.deriv_values[1] == doctest::Approx(2.0).epsilon(1e-14));
        }
    }
    SUBCASE("p_2'(0.3) = 2.4") {
        const auto s = eval_poly_derivative(chebyshev_u(), 0.3, 3);
        CHECK(s.deriv_values[2] == doctest::Approx(2.4).epsilon(1e-13));
    }
    SUBCASE("matches central finite differences on random models") {
        std::mt19937_64 rng(23);
        std::uniform_real_distribution<double> ux(-1.5, 1.5);
        for (int t = 0; t < 10; ++t) {
            const auto m = random_model(rng);
            const double x = ux(rng);
            const double h = 1e-5;
            const auto d = eval_poly_derivative(m, x, 30);
            const auto up = eval_poly_sequence(m, 0, x + h, 30);
            const auto dn = eval_poly_sequence(m, 0, x - h, 30);
            if (d.overflow || up.overflow || dn.overflow) continue;
            for (long n = 1; n <= 30; ++n) {
                const double fd = (up.values[n] - dn.values[n]) / (2.0 * h);
                const double scale = std::max(1.0, std::abs(d.deriv_values[n]));
                CHECK(std::abs(d.deriv_values[n] - fd) <= 1e-6 * scale);
            }
        }
    }
}

TEST_CASE("closed forms at zero via log-gamma") {
    SUBCASE("n=1 gives -sqrt(2)/2") {
        CHECK(closed_form_p2n_zero(1).even_value ==
              doctest::Approx(-std::sqrt(2.0) / 2.0).epsilon(1e-14));
    }
    SUBCASE("n=0 matches p_0 and p_1") {
        const auto cf = closed_form_p2n_zero(0);
        CHECK(cf.even_value == doctest::Approx(1.0));
        CHECK(cf.odd_square == doctest::Approx(1.0));
    }
    SUBCASE("Stirling limit of the odd squares") {
        // the limit constant is 2/sqrt(pi); see oracles::Section43
        const long n = 1000000;
        const double ratio = closed_form_p2n_zero(n).odd_square / std::sqrt(n + 1.0);
        const double limit = 2.0 / std::sqrt(std::numbers::pi);
        CHECK(std::abs(ratio - limit) < 1e-6 * limit);
    }
    SUBCASE("no overflow at large n") {
        CHECK(std::isfinite(closed_form_p2n_zero(100000000).even_value));
        CHECK(std::isfinite(closed_form_p2n_zero(100000000).odd_square));
    }
}

TEST_CASE("recurrence matches closed forms deep into the sequence") {
    const auto s43 = oracles::section43_example();
    const auto s = eval_poly_sequence(s43.model, 0, 0.0, 20001);
    for (long n : {10L, 100L, 1000L, 10000L}) {
        const auto cf = closed_form_p2n_zero(n);
        CHECK(std::abs(s.values[2 * n] - cf.even_value) <= 1e-10 * std::abs(cf.even_value));
        const double odd2 = s.values[2 * n + 1] * s.values[2 * n + 1];
        CHECK(std::abs(odd2 - cf.odd_square) <= 1e-10 * cf.odd_square);
    }
}

TEST_CASE("orthonormality under the Chebyshev weight") {
    // Gram matrix through the second-kind Gauss-Chebyshev rule
    const auto m = chebyshev_u();
    const auto rule = gauss_chebyshev_u(64);
    std::vector<PolySample> at_node;
    for (double xq : rule.x) at_node.push_back(eval_poly_sequence(m, 0, xq, 20));
    for (int i = 0; i <= 20; ++i) {
        for (int j = i; j <= 20; ++j) {
            double g = 0.0;
            for (std::size_t q = 0; q < rule.x.size(); ++q)
                g += rule.w[q] * at_node[q].values[i] * at_node[q].values[j] * 2.0 /
                     std::numbers::pi;
            CHECK(std::abs(g - (i == j ? 1.0 : 0.0)) < 1e-10);
        }
    }
}

TEST_CASE("overflow sets the flag and truncates") {
    const auto s = eval_poly_sequence(chebyshev_u(), 0, 10.0, 4000);
    CHECK(s.overflow);
    CHECK(s.n_max() < 4000);
    for (double v : s.values) CHECK(std::isfinite(v));
    CHECK_THROWS_AS(
        eval_poly_sequence(chebyshev_u(), 0, std::numeric_limits<double>::infinity(), 4),
        std::invalid_argument);
}
