#include "sea_mtt/config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

namespace sea {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed,
                    std::string_view scope) {
    for (const auto& [key, _] : obj.items()) {
        bool known = false;
        for (auto a : allowed) known = known || key == a;
        if (!known) {
            std::string full = scope.empty() ? key : std::string(scope) + "." + key;
            throw ConfigError(full, "unknown config key \"" + full + "\"");
        }
    }
}

double number(const json& obj, const std::string& key, std::string_view scope,
              std::optional<double> fallback = std::nullopt) {
    const std::string full = scope.empty() ? key : std::string(scope) + "." + key;
    auto it = obj.find(key);
    if (it == obj.end()) {
        if (fallback) return *fallback;
        throw ConfigError(full, "missing required config key \"" + full + "\"");
    }
    if (!it->is_number()) {
        throw ConfigError(full, "config key \"" + full + "\" must be a number");
    }
    return it->get<double>();
}

}  // namespace

AppConfig default_config() { return AppConfig{}; }

AppConfig parse_config(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("", "config must be a JSON object");

    reject_unknown(doc, {"jm", "jl", "bm", "bl", "ks", "nm", "tmc", "vp", "load_case", "kp", "kd",
                         "grid", "sim"},
                   "");

    AppConfig cfg;
    SeaParams& p = cfg.params;

    auto lc = doc.find("load_case");
    if (lc == doc.end()) throw ConfigError("load_case", "missing required config key \"load_case\"");
    if (*lc == "dynamic") {
        p.load_case = LoadCase::Dynamic;
    } else if (*lc == "static") {
        p.load_case = LoadCase::Static;
    } else {
        throw ConfigError("load_case", "load_case must be \"dynamic\" or \"static\"");
    }

    const bool is_static = p.load_case == LoadCase::Static;
    const SeaParams table_defaults;
    p.j_m = number(doc, "jm", "");
    p.j_l = number(doc, "jl", "", is_static ? std::optional(table_defaults.j_l) : std::nullopt);
    p.b_m = number(doc, "bm", "");
    p.b_l = number(doc, "bl", "", is_static ? std::optional(table_defaults.b_l) : std::nullopt);
    p.k_s = number(doc, "ks", "");
    p.n_m = number(doc, "nm", "");
    p.t_mc = number(doc, "tmc", "");
    p.v_p = number(doc, "vp", "");
    cfg.controller.k_p = number(doc, "kp", "");
    cfg.controller.k_d = number(doc, "kd", "");

    if (auto g = doc.find("grid"); g != doc.end()) {
        if (!g->is_object()) throw ConfigError("grid", "\"grid\" must be an object");
        reject_unknown(*g, {"omega_min", "omega_max", "points"}, "grid");
        cfg.grid.omega_min = number(*g, "omega_min", "grid", cfg.grid.omega_min);
        cfg.grid.omega_max = number(*g, "omega_max", "grid", cfg.grid.omega_max);
        const double pts = number(*g, "points", "grid", static_cast<double>(cfg.grid.points));
        if (pts < 2 || pts != static_cast<double>(static_cast<long long>(pts))) {
            throw ConfigError("grid.points", "grid.points must be an integer >= 2");
        }
        cfg.grid.points = static_cast<std::size_t>(pts);
    }
    if (auto s = doc.find("sim"); s != doc.end()) {
        if (!s->is_object()) throw ConfigError("sim", "\"sim\" must be an object");
        reject_unknown(*s, {"dt", "duration", "derate_band"}, "sim");
        cfg.sim.dt = number(*s, "dt", "sim", cfg.sim.dt);
        if (s->contains("duration")) cfg.sim.duration = number(*s, "duration", "sim");
        cfg.sim.derate_band = number(*s, "derate_band", "sim", cfg.sim.derate_band);
        if (!(cfg.sim.dt > 0.0)) throw ConfigError("sim.dt", "sim.dt must be > 0");
        if (cfg.sim.duration && !(*cfg.sim.duration > 0.0)) {
            throw ConfigError("sim.duration", "sim.duration must be > 0");
        }
        if (!(cfg.sim.derate_band > 0.0)) {
            throw ConfigError("sim.derate_band", "sim.derate_band must be > 0");
        }
    }

    try {
        p.validate();
        cfg.controller.validate();
    } catch (const InvalidParams& e) {
        throw ConfigError(e.key(), std::string("invalid config: ") + e.what());
    }
    if (!(cfg.grid.omega_min > 0.0) || !(cfg.grid.omega_max > cfg.grid.omega_min)) {
        throw ConfigError("grid", "grid requires 0 < omega_min < omega_max");
    }
    return cfg;
}

AppConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("", "cannot open config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_config(buf.str());
    } catch (const ConfigError& e) {
        throw ConfigError(e.key(), path.string() + ": " + e.what());
    }
}

}  // namespace sea
