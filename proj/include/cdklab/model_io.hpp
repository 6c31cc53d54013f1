#pragma once

#include <string>

#include "json.hpp"

#include "cdklab/equilibrium.hpp"
#include "cdklab/params.hpp"

namespace cdklab::io {

/// Builds a model from its JSON description. Schema (README documents the
/// full set):
///   {"class": "periodic" | "asymptotically-periodic" | "modulated"
///             | "blend" | "sec43",
///    "N": 1, "alpha": [..], "beta": [..],
///    "growth":  {"kind": "sqrt"|"pow"|"log", "exponent": e},
///    "perturb": {"amp_a": .., "amp_b": .., "exponent": ..},
///    "blend":   {"perturb": {..}, "c": {"kind": "linear"|"pow",
///                "scale": .., "offset": .., "exponent": ..}}}
/// Only these named families are constructible from config.
params::ParameterModel model_from_json(const nlohmann::json& j);

params::ParameterModel load_model(const std::string& path);

/// Round-trips the recipe, normalized (defaults filled in).
nlohmann::json normalized_model_json(const nlohmann::json& j);

nlohmann::json bands_to_json(const equilibrium::BandStructure& bands, int samples_per_interval = 32);

}  // namespace cdklab::io
