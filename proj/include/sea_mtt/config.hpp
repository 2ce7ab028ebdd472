#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "sea_mtt/errors.hpp"
#include "sea_mtt/model.hpp"
#include "sea_mtt/mtt.hpp"

namespace sea {

struct SimSettings {
    double dt = 1e-4;
    std::optional<double> duration;  // default: 20 reference periods
    double derate_band = 0.05;
};

struct AppConfig {
    SeaParams params;
    ControllerParams controller;
    FrequencyGrid grid;
    SimSettings sim;
};

// Malformed or invalid configuration. key() is empty for syntax errors.
class ConfigError : public Error {
public:
    ConfigError(std::string key, const std::string& what) : Error(what), key_(std::move(key)) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

// Parses a JSON config document. Unknown keys, wrong types, missing required
// keys and out-of-range values all raise ConfigError.
AppConfig parse_config(std::string_view text);
AppConfig load_config(const std::filesystem::path& path);

// Built-in identified parameter set, n_m = 8, PD gains k_p = 0.8, k_d = 0.05, dynamic load.
AppConfig default_config();

}  // namespace sea
