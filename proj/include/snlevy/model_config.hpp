#pragma once

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "snlevy/levy_model.hpp"

namespace snlevy {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

// The config schema is fixed: unknown fields are rejected, not ignored, so a
// typo cannot silently fall back to a default.
inline void require_exact_keys(const nlohmann::json& j, std::initializer_list<const char*> keys,
                               const char* ctx) {
    if (!j.is_object()) throw ConfigError(std::string(ctx) + ": expected a JSON object");
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* k : keys)
            if (item.key() == k) known = true;
        if (!known) throw ConfigError(std::string(ctx) + ": unknown field '" + item.key() + "'");
    }
    for (const char* k : keys)
        if (!j.contains(k)) throw ConfigError(std::string(ctx) + ": missing field '" + k + "'");
}

inline double number_field(const nlohmann::json& j, const char* key, const char* ctx) {
    if (!j.at(key).is_number())
        throw ConfigError(std::string(ctx) + ": field '" + key + "' must be a number");
    return j.at(key).get<double>();
}

inline ClaimDistribution claim_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
        throw ConfigError("claim: expected an object with a string 'type'");
    const std::string type = j.at("type").get<std::string>();
    try {
        if (type == "exp") {
            require_exact_keys(j, {"type", "mu"}, "claim(exp)");
            return ClaimDistribution::exponential(number_field(j, "mu", "claim(exp)"));
        }
        if (type == "hyperexp") {
            require_exact_keys(j, {"type", "weights", "rates"}, "claim(hyperexp)");
            auto get_array = [&](const char* key) {
                const auto& a = j.at(key);
                if (!a.is_array()) throw ConfigError(std::string("claim(hyperexp): '") + key + "' must be an array");
                std::vector<double> out;
                for (const auto& v : a) {
                    if (!v.is_number())
                        throw ConfigError(std::string("claim(hyperexp): '") + key + "' must hold numbers");
                    out.push_back(v.get<double>());
                }
                return out;
            };
            return ClaimDistribution::hyper_exponential(get_array("weights"), get_array("rates"));
        }
        if (type == "erlang") {
            require_exact_keys(j, {"type", "k", "mu"}, "claim(erlang)");
            if (!j.at("k").is_number_integer())
                throw ConfigError("claim(erlang): 'k' must be an integer");
            return ClaimDistribution::erlang(j.at("k").get<int>(),
                                             number_field(j, "mu", "claim(erlang)"));
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("claim: ") + e.what());
    }
    throw ConfigError("claim: 'type' must be one of \"exp\", \"hyperexp\", \"erlang\"");
}

}  // namespace detail

inline LevyModel model_from_json(const nlohmann::json& j) {
    detail::require_exact_keys(j, {"gamma", "sigma", "jumps"}, "model");
    double gamma = detail::number_field(j, "gamma", "model");
    double sigma = detail::number_field(j, "sigma", "model");
    const auto& jumps = j.at("jumps");
    try {
        if (jumps.is_null()) return LevyModel(gamma, sigma);
        detail::require_exact_keys(jumps, {"rate", "claim"}, "jumps");
        double rate = detail::number_field(jumps, "rate", "jumps");
        return LevyModel(gamma, sigma, rate, detail::claim_from_json(jumps.at("claim")));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("model: ") + e.what());
    }
}

inline LevyModel load_model_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return model_from_json(j);
}

}  // namespace snlevy
