#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"

#include "cdklab/equilibrium.hpp"
#include "cdklab/transfer.hpp"

using namespace cdklab;
using namespace cdklab::params;
using namespace cdklab::equilibrium;

TEST_CASE("band sets of simple envelopes") {
    SUBCASE("free envelope gives (-2, 2)") {
        const auto bands = band_set(PeriodicEnvelope({1.0}, {0.0}), BandKind::Periodic);
        REQUIRE(bands.intervals().size() == 1);
        CHECK(bands.intervals()[0].first == doctest::Approx(-2.0).epsilon(1e-9));
        CHECK(bands.intervals()[0].second == doctest::Approx(2.0).epsilon(1e-9));
    }
    SUBCASE("diagonal shift moves the band") {
        for (double q : {-0.7, 1.3}) {
            const auto bands = band_set(PeriodicEnvelope({1.0}, {q}), BandKind::Periodic);
            REQUIRE(bands.intervals().size() == 1);
            CHECK(bands.intervals()[0].first == doctest::Approx(q - 2.0).epsilon(1e-9));
            CHECK(bands.intervals()[0].second == doctest::Approx(q + 2.0).epsilon(1e-9));
        }
    }
    SUBCASE("touching bands split at the tangency point") {
        // alpha = (1,1), beta = (0,0) doubles the free period: tr = x^2 - 2,
        // tangent to -2 at x = 0
        const auto bands = band_set(PeriodicEnvelope({1.0, 1.0}, {0.0, 0.0}),
                                    BandKind::Periodic);
        REQUIRE(bands.intervals().size() == 2);
        CHECK(bands.intervals()[0].first == doctest::Approx(-2.0).epsilon(1e-9));
        CHECK(std::abs(bands.intervals()[0].second) < 1e-6);
        CHECK(std::abs(bands.intervals()[1].first) < 1e-6);
        CHECK(bands.intervals()[1].second == doctest::Approx(2.0).epsilon(1e-9));
    }
    SUBCASE("blend band of the free envelope is a single interval") {
        const auto bands = band_set(PeriodicEnvelope({1.0}, {0.0}), BandKind::Blend);
        REQUIRE(bands.intervals().size() == 1);
        CHECK(bands.intervals()[0].first == doctest::Approx(-1.0).epsilon(1e-9));
        CHECK(bands.intervals()[0].second == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("periodic density closed forms") {
    SUBCASE("free envelope at zero") {
        const auto w = omega_prime_periodic(PeriodicEnvelope({1.0}, {0.0}), 0.0);
        CHECK(w.value == doctest::Approx(1.0 / (2.0 * std::numbers::pi)).epsilon(1e-13));
    }
    SUBCASE("arcsine law on [-1, 1]") {
        PeriodicEnvelope env({0.5}, {0.0});
        for (double x : {0.0, 0.3, -0.8}) {
            const auto w = omega_prime_periodic(env, x);
            CHECK(w.value ==
                  doctest::Approx(1.0 / (std::numbers::pi * std::sqrt(1.0 - x * x)))
                      .epsilon(1e-12));
        }
    }
    SUBCASE("band-edge error outside") {
        CHECK_THROWS_AS(omega_prime_periodic(PeriodicEnvelope({1.0}, {0.0}), 2.5),
                        transfer::BandEdgeError);
    }
}

TEST_CASE("density route identities on random envelopes") {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> ua(0.3, 3.0), ub(-1.5, 1.5), ut(0.1, 0.9);
    for (int t = 0; t < 12; ++t) {
        const int N = 1 + static_cast<int>(rng() % 4);
        std::vector<double> alpha, beta;
        for (int i = 0; i < N; ++i) {
            alpha.push_back(ua(rng));
            beta.push_back(ub(rng));
        }
        PeriodicEnvelope env(alpha, beta);
        const auto bands = band_set(env, BandKind::Periodic);
        CHECK(static_cast<int>(bands.intervals().size()) <= N);
        for (int s = 0; s < 5; ++s) {
            const auto [l, r] = bands.intervals()[rng() % bands.intervals().size()];
            const double x = l + ut(rng) * (r - l);
            const auto w = omega_prime_periodic(env, x);
            CHECK(std::abs(w.value - w.via_trace) <= 1e-10 * w.via_trace);
            CHECK(w.value > 0.0);
        }
    }
}

TEST_CASE("blend densities") {
    SUBCASE("N=1 halved-envelope form") {
        PeriodicEnvelope env({1.0}, {0.0});
        // tilde envelope (alpha/2, beta/2) reproduces the blend density
        const auto tilde = blend_tilde_envelope(env);
        CHECK(tilde.alpha(0) == doctest::Approx(0.5));
        for (double x : {0.0, 0.4, -0.7}) {
            const auto wb = omega_prime_blend(env, x);
            const auto wp = omega_prime_periodic(tilde, x);
            CHECK(wb.value == doctest::Approx(wp.value).epsilon(1e-12));
        }
    }
    SUBCASE("explicit sum agrees with the trace route") {
        std::mt19937_64 rng(67);
        std::uniform_real_distribution<double> ua(0.3, 3.0), ub(-1.5, 1.5), ut(0.1, 0.9);
        for (int t = 0; t < 10; ++t) {
            const int N = 1 + static_cast<int>(rng() % 4);
            std::vector<double> alpha, beta;
            for (int i = 0; i < N; ++i) {
                alpha.push_back(ua(rng));
                beta.push_back(ub(rng));
            }
            PeriodicEnvelope env(alpha, beta);
            const auto bands = band_set(env, BandKind::Blend);
            CHECK(static_cast<int>(bands.intervals().size()) == N);
            for (int s = 0; s < 4; ++s) {
                const auto [l, r] = bands.intervals()[rng() % bands.intervals().size()];
                const double x = l + ut(rng) * (r - l);
                const auto w = omega_prime_blend(env, x);
                CHECK(std::abs(w.value - w.via_trace) <= 1e-10 * w.via_trace);
            }
        }
    }
    SUBCASE("tilde-envelope equivalence for larger periods") {
        std::mt19937_64 rng(71);
        std::uniform_real_distribution<double> ua(0.3, 3.0), ub(-1.5, 1.5), ut(0.1, 0.9);
        for (int t = 0; t < 8; ++t) {
            const int N = 2 + static_cast<int>(rng() % 3);
            std::vector<double> alpha, beta;
            for (int i = 0; i < N; ++i) {
                alpha.push_back(ua(rng));
                beta.push_back(ub(rng));
            }
            PeriodicEnvelope env(alpha, beta);
            const auto tilde = blend_tilde_envelope(env);
            const auto bands = band_set(env, BandKind::Blend);
            for (int s = 0; s < 4; ++s) {
                const auto [l, r] = bands.intervals()[rng() % bands.intervals().size()];
                const double x = l + ut(rng) * (r - l);
                CHECK(std::abs(omega_prime_blend(env, x).value -
                               omega_prime_periodic(tilde, x).value) <=
                      1e-10 * omega_prime_blend(env, x).value);
            }
        }
    }
}

TEST_CASE("density normalization and edge growth") {
    SUBCASE("probability mass on simple and random envelopes") {
        CHECK(std::abs(integrate_density(band_set(PeriodicEnvelope({1.0}, {0.0}),
                                                  BandKind::Periodic)) -
                       1.0) < 1e-3);
        CHECK(std::abs(integrate_density(band_set(PeriodicEnvelope({1.0, 2.0}, {0.3, -0.2}),
                                                  BandKind::Periodic)) -
                       1.0) < 1e-3);
        CHECK(std::abs(integrate_density(band_set(PeriodicEnvelope({1.0, 0.8}, {0.1, 0.4}),
                                                  BandKind::Blend)) -
                       1.0) < 1e-3);
    }
    SUBCASE("density grows near the edges") {
        PeriodicEnvelope env({1.0}, {0.0});
        const auto bands = band_set(env, BandKind::Periodic);
        const auto [l, r] = bands.intervals()[0];
        // interior median scale vs near-edge values
        double interior = omega_prime_periodic(env, 0.5 * (l + r)).value;
        CHECK(omega_prime_periodic(env, r - 1e-3 * (r - l)).value > 10.0 * interior);
        CHECK(omega_prime_periodic(env, l + 1e-3 * (r - l)).value > 10.0 * interior);
    }
}
