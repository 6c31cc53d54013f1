#include "cdklab/model_io.hpp"

#include <cmath>
#include <fstream>

#include "cdklab/oracles.hpp"
#include "cdklab/transfer.hpp"

namespace cdklab::io {

using nlohmann::json;
using params::ParameterModel;
using params::PeriodicEnvelope;

namespace {

ParameterModel::Sequence growth_from_json(const json& g) {
    const std::string kind = g.value("kind", "sqrt");
    if (kind == "sqrt")
        return [](long n) { return std::sqrt(static_cast<double>(n) + 1.0); };
    if (kind == "pow") {
        const double e = g.at("exponent").get<double>();
        if (!(e > 0.0)) throw std::invalid_argument("growth.exponent must be positive");
        return [e](long n) { return std::pow(static_cast<double>(n) + 1.0, e); };
    }
    if (kind == "log")
        return [](long n) { return std::log(static_cast<double>(n) + 2.0); };
    throw std::invalid_argument("unknown growth.kind: " + kind);
}

ParameterModel::Sequence c_from_json(const json& c) {
    const std::string kind = c.value("kind", "linear");
    const double scale = c.value("scale", 1.0);
    const double offset = c.value("offset", 2.0);
    if (!(offset > 0.0)) throw std::invalid_argument("c.offset must be positive");
    if (kind == "linear")
        return [scale, offset](long n) { return offset + scale * static_cast<double>(n); };
    if (kind == "pow") {
        const double e = c.value("exponent", 1.0);
        return [scale, offset, e](long n) {
            return offset + scale * std::pow(static_cast<double>(n) + 1.0, e);
        };
    }
    throw std::invalid_argument("unknown c.kind: " + kind);
}

PeriodicEnvelope envelope_from_json(const json& j) {
    const auto alpha = j.at("alpha").get<std::vector<double>>();
    const auto beta = j.at("beta").get<std::vector<double>>();
    if (j.contains("N") && j.at("N").get<std::size_t>() != alpha.size())
        throw std::invalid_argument("N does not match alpha length");
    return PeriodicEnvelope(alpha, beta);
}

ParameterModel asymptotic_from(const PeriodicEnvelope& env, const json& perturb) {
    const double amp_a = perturb.value("amp_a", 0.0);
    const double amp_b = perturb.value("amp_b", 0.0);
    const double e = perturb.value("exponent", 1.0);
    if (!(e > 0.0)) throw std::invalid_argument("perturb.exponent must be positive");
    PeriodicEnvelope env_copy = env;
    return params::make_asymptotically_periodic(
        env,
        [env_copy, amp_a, e](long n) {
            return env_copy.alpha(n) + amp_a * std::pow(static_cast<double>(n) + 1.0, -e);
        },
        [env_copy, amp_b, e](long n) {
            return env_copy.beta(n) + amp_b * std::pow(static_cast<double>(n) + 1.0, -e);
        });
}

}  // namespace

ParameterModel model_from_json(const json& j) {
    const std::string cls = j.at("class").get<std::string>();
    if (cls == "sec43") return oracles::section43_example().model;

    const PeriodicEnvelope env = envelope_from_json(j);
    if (cls == "periodic") return params::make_periodic(env);
    if (cls == "asymptotically-periodic")
        return asymptotic_from(env, j.value("perturb", json::object()));
    if (cls == "modulated") return params::make_modulated(env, growth_from_json(j.value("growth", json::object())));
    if (cls == "blend") {
        const json b = j.value("blend", json::object());
        ParameterModel inner = b.contains("perturb")
                                   ? asymptotic_from(env, b.at("perturb"))
                                   : params::make_periodic(env);
        return params::make_blend(inner, c_from_json(b.value("c", json::object())));
    }
    throw std::invalid_argument("unknown model class: " + cls);
}

ParameterModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open model file: " + path);
    json j;
    in >> j;
    return model_from_json(j);
}

json normalized_model_json(const json& j) {
    json out = j;
    const std::string cls = j.at("class").get<std::string>();
    if (cls == "sec43") return json{{"class", "sec43"}};
    out["N"] = j.at("alpha").size();
    if (cls == "modulated" && !out.contains("growth")) out["growth"] = {{"kind", "sqrt"}};
    if (cls == "blend") {
        json b = j.value("blend", json::object());
        if (!b.contains("c")) b["c"] = {{"kind", "linear"}, {"scale", 1.0}, {"offset", 2.0}};
        out["blend"] = b;
    }
    return out;
}

json bands_to_json(const equilibrium::BandStructure& bands, int samples_per_interval) {
    json intervals = json::array();
    for (auto [l, r] : bands.intervals()) intervals.push_back({l, r});
    json samples = json::array();
    for (auto [l, r] : bands.intervals()) {
        const double mid = 0.5 * (l + r), half = 0.5 * (r - l);
        for (int k = 0; k < samples_per_interval; ++k) {
            // sine-spaced interior points; endpoints excluded
            const double t = (k + 0.5) / samples_per_interval * M_PI - M_PI / 2.0;
            const double x = mid + half * std::sin(t);
            samples.push_back({x, bands.density(x)});
        }
    }
    return json{{"intervals", intervals}, {"samples", samples}};
}

}  // namespace cdklab::io
