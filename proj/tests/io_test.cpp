#include <cmath>
#include <fstream>

#include "doctest.h"
#include "json.hpp"

#include "cdklab/equilibrium.hpp"
#include "cdklab/model_io.hpp"
#include "cdklab/params.hpp"

using namespace cdklab;
using nlohmann::json;

TEST_CASE("model construction from JSON") {
    SUBCASE("periodic") {
        const auto m = io::model_from_json(
            json::parse(R"({"class":"periodic","N":2,"alpha":[1.0,2.0],"beta":[0.0,0.5]})"));
        CHECK(m.tag() == params::ClassTag::ExactPeriodic);
        CHECK(m.a(3) == 2.0);
        CHECK(m.b(2) == 0.0);
    }
    SUBCASE("modulated sqrt") {
        const auto m = io::model_from_json(json::parse(
            R"({"class":"modulated","alpha":[1.0],"beta":[0.0],"growth":{"kind":"sqrt"}})"));
        CHECK(m.a(8) == doctest::Approx(3.0));
    }
    SUBCASE("asymptotically periodic with power decay") {
        const auto m = io::model_from_json(json::parse(
            R"({"class":"asymptotically-periodic","alpha":[1.0],"beta":[0.0],
                "perturb":{"amp_a":0.5,"exponent":1.0}})"));
        CHECK(m.a(0) == doctest::Approx(1.5));
        CHECK(m.a(999) == doctest::Approx(1.0005));
    }
    SUBCASE("blend with linear insertions") {
        const auto m = io::model_from_json(json::parse(
            R"({"class":"blend","alpha":[1.0],"beta":[0.0],
                "blend":{"c":{"kind":"linear","scale":1.0,"offset":2.0}}})"));
        CHECK(m.tag() == params::ClassTag::PeriodicBlend);
        CHECK(m.window() == 3);
        CHECK(m.a(1) == 2.0);
        CHECK(m.a(4) == 4.0);
    }
    SUBCASE("sec43 preset") {
        const auto m = io::model_from_json(json::parse(R"({"class":"sec43"})"));
        CHECK(m.b(0) == 1.0);
        CHECK(m.b(1) == 0.0);
        CHECK(m.a(3) == doctest::Approx(2.0));
    }
    SUBCASE("errors are invalid_argument") {
        CHECK_THROWS_AS(io::model_from_json(json::parse(R"({"class":"nope"})")),
                        std::invalid_argument);
        CHECK_THROWS_AS(
            io::model_from_json(json::parse(
                R"({"class":"periodic","N":3,"alpha":[1.0],"beta":[0.0]})")),
            std::invalid_argument);
        CHECK_THROWS_AS(
            io::model_from_json(json::parse(
                R"({"class":"modulated","alpha":[1.0],"beta":[0.0],
                    "growth":{"kind":"pow","exponent":-1.0}})")),
            std::invalid_argument);
    }
}

TEST_CASE("shipped model files load") {
    const std::string dir = CDKLAB_MODELS_DIR;
    for (const char* name : {"chebyshev-like.json", "chebyshev-u.json", "ignjatovic.json",
                             "sec43.json", "blend-n2.json", "periodic-n2.json"}) {
        const auto m = io::load_model(dir + "/" + name);
        CHECK(m.a(0) > 0.0);
    }
    CHECK_THROWS_AS(io::load_model(dir + "/missing.json"), std::invalid_argument);
}

TEST_CASE("normalized recipe round-trips") {
    const json j = json::parse(
        R"({"class":"blend","alpha":[1.0],"beta":[0.0],"blend":{}})");
    const json norm = io::normalized_model_json(j);
    CHECK(norm.at("N") == 1);
    CHECK(norm.at("blend").contains("c"));
    // normalizing twice is stable
    CHECK(io::normalized_model_json(norm) == norm);
}

TEST_CASE("band structure serialization") {
    const auto bands =
        equilibrium::band_set(params::PeriodicEnvelope({1.0}, {0.0}),
                              equilibrium::BandKind::Periodic);
    const json j = io::bands_to_json(bands, 8);
    REQUIRE(j.contains("intervals"));
    REQUIRE(j.contains("samples"));
    CHECK(j.at("intervals").size() == 1);
    CHECK(j.at("samples").size() == 8);
    for (const auto& s : j.at("samples")) {
        CHECK(s.at(0).get<double>() > -2.0);
        CHECK(s.at(0).get<double>() < 2.0);
        CHECK(s.at(1).get<double>() > 0.0);
    }
}
