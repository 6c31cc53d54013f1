#include <cmath>
#include <random>

#include "doctest.h"

#include "cdklab/numerics.hpp"
#include "cdklab/params.hpp"

using namespace cdklab;
using namespace cdklab::params;

TEST_CASE("envelope wraps indices over Z") {
    PeriodicEnvelope env({1.0, 2.0, 3.0}, {0.1, 0.2, 0.3});
    CHECK(env.alpha(0) == 1.0);
    CHECK(env.alpha(4) == 2.0);
    CHECK(env.alpha(-1) == 3.0);
    CHECK(env.alpha(-3) == 1.0);
    CHECK(env.beta(-2) == 0.2);
    CHECK_THROWS_AS(PeriodicEnvelope({1.0, 0.0}, {0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(PeriodicEnvelope({}, {}), std::invalid_argument);
}

TEST_CASE("make_periodic reproduces the envelope") {
    SUBCASE("constant half") {
        auto m = make_periodic(PeriodicEnvelope({0.5}, {0.0}));
        for (long n = 0; n < 10; ++n) {
            CHECK(m.a(n) == 0.5);
            CHECK(m.b(n) == 0.0);
        }
    }
    SUBCASE("period two") {
        auto m = make_periodic(PeriodicEnvelope({1.0, 2.0}, {0.0, 0.0}));
        CHECK(m.a(0) == 1.0);
        CHECK(m.a(1) == 2.0);
        CHECK(m.a(2) == 1.0);
        CHECK(m.a(3) == 2.0);
    }
    SUBCASE("constant diagonal") {
        auto m = make_periodic(PeriodicEnvelope({1.0}, {1.0}));
        for (long n = 0; n < 5; ++n) CHECK(m.b(n) == 1.0);
    }
}

TEST_CASE("make_modulated builds alpha*growth and self-diagnoses") {
    SUBCASE("sqrt growth") {
        auto m = make_modulated(PeriodicEnvelope({1.0}, {0.0}),
                                [](long n) { return std::sqrt(n + 1.0); });
        CHECK(m.a(3) == doctest::Approx(2.0));
        CHECK(m.b(3) == 0.0);
        CHECK_FALSE(m.diagnostic_flagged());
        // definition condition (b) at the window end
        const long n = 1000000;
        CHECK(std::abs(m.a(n - 1) / m.a(n) - 1.0) < 1e-6);
    }
    SUBCASE("linear growth with constant b/a ratio") {
        auto m = make_modulated(PeriodicEnvelope({1.0}, {1.0}),
                                [](long n) { return n + 1.0; });
        for (long n : {1L, 10L, 100L}) CHECK(m.b(n) / m.a(n) == doctest::Approx(1.0));
    }
    SUBCASE("bad growth gets flagged, not rejected") {
        auto m = make_modulated(PeriodicEnvelope({1.0}, {0.0}),
                                [](long n) { return n % 2 == 0 ? 1.0 : 2.0; }, 1000);
        CHECK(m.diagnostic_flagged());
    }
}

TEST_CASE("make_blend splices per the index rules") {
    auto inner = make_periodic(PeriodicEnvelope({1.0}, {0.0}));
    auto m = make_blend(inner, [](long n) { return n + 2.0; });
    // N=1: a = 1,2,3, 1,4,5, 1,6,7, ...
    const double expect[] = {1, 2, 3, 1, 4, 5, 1, 6, 7};
    for (int i = 0; i < 9; ++i) CHECK(m.a(i) == expect[i]);
    CHECK(m.window() == 3);

    SUBCASE("b vanishes at inserted slots") {
        for (long k = 0; k < 40; ++k) {
            CHECK(m.b(3 * k + 1) == 0.0);
            CHECK(m.b(3 * k + 2) == 0.0);
        }
    }
    SUBCASE("splicing identities hold exactly on a window") {
        for (long k = 0; k < 50; ++k) {
            CHECK(m.a(3 * k) == inner.a(k));
            CHECK(m.a(3 * k + 1) == 2.0 * k + 2.0);
            CHECK(m.a(3 * k + 2) == 2.0 * k + 3.0);
        }
    }
    SUBCASE("insertion ratio tends to one") {
        const long mth = 100000;
        CHECK(m.blend_c(2 * mth + 1) / m.blend_c(2 * mth) ==
              doctest::Approx(1.0).epsilon(1e-4));
    }
    SUBCASE("non-positive c rejected") {
        CHECK_THROWS_AS(make_blend(inner, [](long n) { return n - 5.0; }),
                        std::invalid_argument);
    }
}

TEST_CASE("carleman partial sums") {
    SUBCASE("constant half") {
        auto m = make_periodic(PeriodicEnvelope({0.5}, {0.0}));
        CHECK(carleman_partial_sum(m, 9) == doctest::Approx(20.0).epsilon(1e-14));
    }
    SUBCASE("sqrt growth vs integral comparison") {
        auto m = make_modulated(PeriodicEnvelope({1.0}, {0.0}),
                                [](long n) { return std::sqrt(n + 1.0); });
        const long n = 10000;
        const double s = carleman_partial_sum(m, n);
        const double integral = 2.0 * std::sqrt(n + 2.0) - 2.0;
        CHECK(std::abs(s - integral) / integral < 0.01);
    }
    SUBCASE("quadratic growth stays below pi^2/6") {
        auto m = make_custom(PeriodicEnvelope({1.0}, {0.0}),
                             [](long n) { return (n + 1.0) * (n + 1.0); },
                             [](long) { return 0.0; });
        const double s = carleman_partial_sum(m, 100000);
        CHECK(s < 1.6449340668482264);
        CHECK(s > 1.64492);
    }
    SUBCASE("nondecreasing in n and matches a long-double reference at 1e6") {
        auto m = make_modulated(PeriodicEnvelope({1.0}, {0.0}),
                                [](long n) { return std::sqrt(n + 1.0); });
        long double ref = 0.0L;
        for (long k = 0; k <= 1000000; ++k) ref += 1.0L / std::sqrt(k + 1.0L);
        const double s = carleman_partial_sum(m, 1000000);
        CHECK(std::abs(s - static_cast<double>(ref)) / static_cast<double>(ref) < 1e-12);
        CHECK(carleman_partial_sum(m, 1001) > carleman_partial_sum(m, 1000));
    }
}

TEST_CASE("finite differences and the Stolz diagnostic") {
    SUBCASE("recursive differences equal the binomial form on integer data") {
        std::mt19937_64 rng(7);
        std::uniform_int_distribution<int> u(-8, 8);
        std::vector<double> xs(40);
        for (auto& v : xs) v = u(rng);
        auto x = [&xs](long n) { return xs[static_cast<std::size_t>(n)]; };
        auto d = dr_diagnostic(x, 2, 30);
        // Delta^2 x_n = x_{n+2} - 2 x_{n+1} + x_n exactly; compare through
        // the partial-sum increments of |Delta^2|^{r/j} with r=j=2 -> power 1
        for (long n = 1; n <= 30; ++n) {
            const double inc =
                d.per_j_partial_sums[1][n] - d.per_j_partial_sums[1][n - 1];
            const double direct = std::abs(xs[n + 2] - 2 * xs[n + 1] + xs[n]);
            CHECK(inc == direct);
        }
    }
    SUBCASE("x = 1/sqrt(n+1), r=1 telescopes to 1") {
        auto x = [](long n) { return 1.0 / std::sqrt(n + 1.0); };
        auto d = dr_diagnostic(x, 1, 100000);
        CHECK(d.per_j_partial_sums[0].back() == doctest::Approx(1.0).epsilon(1e-2));
        CHECK(d.verdict == DrVerdict::Converging);
    }
    SUBCASE("constant sequence: all partial sums zero") {
        auto d = dr_diagnostic([](long) { return 3.25; }, 3, 500);
        for (const auto& sums : d.per_j_partial_sums) CHECK(sums.back() == 0.0);
        CHECK(d.verdict == DrVerdict::Converging);
    }
    SUBCASE("alternating sequence diverges linearly") {
        auto d = dr_diagnostic([](long n) { return n % 2 == 0 ? 1.0 : -1.0; }, 1, 10000);
        CHECK(d.verdict == DrVerdict::Diverging);
        CHECK(d.per_j_partial_sums[0].back() == doctest::Approx(2.0 * 10001).epsilon(1e-3));
    }
    SUBCASE("partial sums are nondecreasing") {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        std::vector<double> xs(600);
        for (auto& v : xs) v = u(rng);
        auto d = dr_diagnostic([&xs](long n) { return xs[static_cast<std::size_t>(n)]; },
                               3, 500);
        for (const auto& sums : d.per_j_partial_sums)
            for (std::size_t i = 1; i < sums.size(); ++i) CHECK(sums[i] >= sums[i - 1]);
    }
    SUBCASE("r < 1 rejected") {
        CHECK_THROWS_AS(dr_diagnostic([](long) { return 0.0; }, 0, 100),
                        std::invalid_argument);
    }
}

TEST_CASE("modulated reduction has unit tilde ratios") {
    // a-tilde_n = a_n/alpha_n; the ratio a-tilde_{n-1}/a-tilde_n -> 1
    PeriodicEnvelope env({1.0, 2.0}, {0.0, 0.5});
    auto m = make_modulated(env, [](long n) { return std::sqrt(n + 1.0); });
    const long n = 1000000;
    const double tilde_ratio = (m.a(n - 1) / env.alpha(n - 1)) / (m.a(n) / env.alpha(n));
    CHECK(std::abs(tilde_ratio - 1.0) < 1e-6);
}
