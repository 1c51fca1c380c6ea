// SPDX-License-Identifier: Apache-2.0
//
// simris: link-level simulator for RIS-assisted mmWave channels
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef SIMRIS_CONFIG_HPP
#define SIMRIS_CONFIG_HPP

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "simris/channel.hpp"
#include "simris/errors.hpp"
#include "simris/metrics.hpp"
#include "simris/ris.hpp"

namespace simris {

inline constexpr const char *kVersion = "0.1.0";

/// Optional replacement for the built-in path loss profile pair.
struct CustomProfiles {
    std::optional<PathLossParams> los;
    std::optional<PathLossParams> nlos;

    friend bool operator==(const CustomProfiles &, const CustomProfiles &) = default;
};

/// Full user-facing run configuration. parse_config validates everything and
/// fills defaults; make_channel_model resolves it into a ChannelModel.
struct SimConfig {
    Environment environment = Environment::Indoor;
    MountingScenario scenario = MountingScenario::SideWall;
    double frequency_ghz = 28.0;
    std::size_t n_elements = 256;
    Point3 tx{0.0, 25.0, 2.0};
    Point3 rx{38.0, 48.0, 1.0};
    Point3 ris{40.0, 50.0, 2.0};
    RoomBounds room{};
    std::size_t realizations = 1000;
    std::uint64_t seed = 0;
    int workers = 1;
    PhaseControl phase{};
    LinkBudget budget{};
    bool include_direct_link = true;
    std::optional<double> element_spacing; // meters; default lambda/2
    double pattern_q = ElementPattern::default_q();
    std::optional<double> lambda_p; // required away from the 28/73 GHz presets
    CustomProfiles custom_profiles{};

    friend bool operator==(const SimConfig &a, const SimConfig &b) {
        return a.environment == b.environment && a.scenario == b.scenario &&
               a.frequency_ghz == b.frequency_ghz && a.n_elements == b.n_elements &&
               a.tx == b.tx && a.rx == b.rx && a.ris == b.ris &&
               a.room.x_max == b.room.x_max && a.room.y_max == b.room.y_max &&
               a.room.z_max == b.room.z_max && a.realizations == b.realizations &&
               a.seed == b.seed && a.workers == b.workers && a.phase.mode == b.phase.mode &&
               a.phase.q_bits == b.phase.q_bits && a.phase.kappa == b.phase.kappa &&
               a.budget.pt_dbm == b.budget.pt_dbm && a.budget.pn_dbm == b.budget.pn_dbm &&
               a.include_direct_link == b.include_direct_link &&
               a.element_spacing == b.element_spacing && a.pattern_q == b.pattern_q &&
               a.lambda_p == b.lambda_p && a.custom_profiles == b.custom_profiles;
    }
};

namespace detail {

using json = nlohmann::json;

inline double require_number(const json &j, const std::string &path) {
    if (!j.is_number())
        throw ConfigError(path, "expected a number");
    return j.get<double>();
}

inline Point3 parse_point(const json &j, const std::string &path) {
    if (!j.is_array() || j.size() != 3)
        throw ConfigError(path, "expected [x, y, z]");
    return Point3{require_number(j[0], path + "[0]"), require_number(j[1], path + "[1]"),
                  require_number(j[2], path + "[2]")};
}

inline PathLossParams parse_profile(const json &j, const std::string &path) {
    PathLossParams p;
    bool have_n = false;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string key = it.key();
        if (key == "n") {
            p.n = require_number(*it, path + ".n");
            have_n = true;
        } else if (key == "sigma_db") {
            p.sigma_db = require_number(*it, path + ".sigma_db");
        } else if (key == "b") {
            p.b = require_number(*it, path + ".b");
        } else if (key == "f0_ghz") {
            p.f0_hz = require_number(*it, path + ".f0_ghz") * 1e9;
        } else {
            throw ConfigError(path + "." + key, "unknown key");
        }
    }
    if (!have_n)
        throw ConfigError(path + ".n", "missing path loss exponent");
    if (p.n <= 0.0)
        throw ConfigError(path + ".n", "exponent must be positive");
    if (p.sigma_db < 0.0)
        throw ConfigError(path + ".sigma_db", "shadow std cannot be negative");
    return p;
}

} // namespace detail

struct ParseReport {
    std::vector<std::string> warnings;
};

/// Parse and validate a JSON configuration. Unknown keys are rejected with
/// their field path; a missing seed defaults to 0 with a warning. A run
/// manifest (object with a "config" member written by this tool) is accepted
/// directly, which is what makes exact reruns from a manifest work.
inline SimConfig parse_config(const std::string &text, ParseReport *report = nullptr) {
    using detail::json;
    json root;
    try {
        root = json::parse(text);
    } catch (const std::exception &e) {
        throw ConfigError("", std::string("invalid JSON: ") + e.what());
    }
    if (!root.is_object())
        throw ConfigError("", "top level must be an object");
    if (root.contains("config") && root.contains("simris_version"))
        root = root["config"]; // manifest wrapper

    SimConfig cfg;
    bool seed_given = false;

    for (auto it = root.begin(); it != root.end(); ++it) {
        const std::string key = it.key();
        const json &v = *it;
        if (key == "environment") {
            const auto s = v.get<std::string>();
            if (s == "InH")
                cfg.environment = Environment::Indoor;
            else if (s == "UMi")
                cfg.environment = Environment::Outdoor;
            else
                throw ConfigError("environment", "must be 'InH' or 'UMi'");
        } else if (key == "scenario") {
            const auto s = v.get<std::string>();
            if (s == "side_wall")
                cfg.scenario = MountingScenario::SideWall;
            else if (s == "opposite_wall")
                cfg.scenario = MountingScenario::OppositeWall;
            else
                throw ConfigError("scenario", "must be 'side_wall' or 'opposite_wall'");
        } else if (key == "frequency_ghz") {
            cfg.frequency_ghz = detail::require_number(v, key);
        } else if (key == "n_elements") {
            if (!v.is_number_unsigned())
                throw ConfigError(key, "expected a positive integer");
            cfg.n_elements = v.get<std::size_t>();
        } else if (key == "tx_position") {
            cfg.tx = detail::parse_point(v, key);
        } else if (key == "rx_position") {
            cfg.rx = detail::parse_point(v, key);
        } else if (key == "ris_position") {
            cfg.ris = detail::parse_point(v, key);
        } else if (key == "room") {
            const Point3 p = detail::parse_point(v, key);
            cfg.room = RoomBounds{p.x, p.y, p.z};
        } else if (key == "realizations") {
            if (!v.is_number_unsigned() || v.get<std::size_t>() == 0)
                throw ConfigError(key, "expected a positive integer");
            cfg.realizations = v.get<std::size_t>();
        } else if (key == "seed") {
            if (!v.is_number_unsigned())
                throw ConfigError(key, "expected a nonnegative integer");
            cfg.seed = v.get<std::uint64_t>();
            seed_given = true;
        } else if (key == "workers") {
            if (!v.is_number_unsigned() || v.get<int>() < 1)
                throw ConfigError(key, "expected a positive integer");
            cfg.workers = v.get<int>();
        } else if (key == "phase") {
            for (auto pit = v.begin(); pit != v.end(); ++pit) {
                const std::string pkey = pit.key();
                if (pkey == "mode") {
                    const auto s = pit->get<std::string>();
                    if (s == "ideal")
                        cfg.phase.mode = PhaseMode::Ideal;
                    else if (s == "quantized")
                        cfg.phase.mode = PhaseMode::Quantized;
                    else if (s == "noisy")
                        cfg.phase.mode = PhaseMode::Noisy;
                    else if (s == "quantized_noisy")
                        cfg.phase.mode = PhaseMode::QuantizedNoisy;
                    else
                        throw ConfigError("phase.mode", "unknown phase mode '" + s + "'");
                } else if (pkey == "q_bits") {
                    if (!pit->is_number_unsigned() || pit->get<int>() < 1)
                        throw ConfigError("phase.q_bits", "expected a positive integer");
                    cfg.phase.q_bits = pit->get<int>();
                } else if (pkey == "kappa") {
                    cfg.phase.kappa = detail::require_number(*pit, "phase.kappa");
                    if (cfg.phase.kappa < 0.0)
                        throw ConfigError("phase.kappa", "must be nonnegative");
                } else {
                    throw ConfigError("phase." + pkey, "unknown key");
                }
            }
        } else if (key == "budget") {
            for (auto bit = v.begin(); bit != v.end(); ++bit) {
                const std::string bkey = bit.key();
                if (bkey == "pt_dbm")
                    cfg.budget.pt_dbm = detail::require_number(*bit, "budget.pt_dbm");
                else if (bkey == "pn_dbm")
                    cfg.budget.pn_dbm = detail::require_number(*bit, "budget.pn_dbm");
                else
                    throw ConfigError("budget." + bkey, "unknown key");
            }
        } else if (key == "include_direct_link") {
            if (!v.is_boolean())
                throw ConfigError(key, "expected true or false");
            cfg.include_direct_link = v.get<bool>();
        } else if (key == "element_spacing") {
            const double s = detail::require_number(v, key);
            if (s <= 0.0)
                throw ConfigError(key, "must be positive");
            cfg.element_spacing = s;
        } else if (key == "pattern_q") {
            cfg.pattern_q = detail::require_number(v, key);
            if (cfg.pattern_q <= -0.5)
                throw ConfigError(key, "must exceed -1/2");
        } else if (key == "lambda_p") {
            const double l = detail::require_number(v, key);
            if (l <= 0.0)
                throw ConfigError(key, "must be positive");
            cfg.lambda_p = l;
        } else if (key == "path_loss_profiles") {
            for (auto pit = v.begin(); pit != v.end(); ++pit) {
                const std::string pkey = pit.key();
                if (pkey == "los")
                    cfg.custom_profiles.los = detail::parse_profile(*pit, "path_loss_profiles.los");
                else if (pkey == "nlos")
                    cfg.custom_profiles.nlos =
                        detail::parse_profile(*pit, "path_loss_profiles.nlos");
                else
                    throw ConfigError("path_loss_profiles." + pkey, "unknown key");
            }
        } else {
            throw ConfigError(key, "unknown key");
        }
    }

    // cross-field validation
    if (cfg.frequency_ghz <= 0.0)
        throw ConfigError("frequency_ghz", "must be positive");
    const auto side = std::size_t(std::llround(std::sqrt(double(cfg.n_elements))));
    if (cfg.n_elements == 0 || side * side != cfg.n_elements)
        throw ConfigError("n_elements", "must be a positive perfect square");
    if (cfg.room.x_max <= 0.0 || cfg.room.y_max <= 0.0 || cfg.room.z_max <= 0.0)
        throw ConfigError("room", "all bounds must be positive");
    if (cfg.tx.z < 0.0 || cfg.rx.z < 0.0 || cfg.ris.z < 0.0)
        throw ConfigError("", "terminal heights cannot be negative");
    if (cfg.environment == Environment::Indoor) {
        auto check_inside = [&](const Point3 &p, const char *name) {
            if (!inside_bounds(p, cfg.room, Environment::Indoor))
                throw ConfigError(name, "position lies outside the room bounds");
        };
        check_inside(cfg.tx, "tx_position");
        check_inside(cfg.rx, "rx_position");
        check_inside(cfg.ris, "ris_position");
    }
    if (!cfg.lambda_p && cfg.frequency_ghz != 28.0 && cfg.frequency_ghz != 73.0)
        throw ConfigError("lambda_p",
                          "required for frequencies other than the 28/73 GHz presets");

    if (!seed_given && report)
        report->warnings.push_back("no seed given; defaulting to seed 0");
    return cfg;
}

inline SimConfig load_config_file(const std::string &path, ParseReport *report = nullptr) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("", "cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), report);
}

namespace detail {

inline json config_to_json(const SimConfig &cfg) {
    json j;
    j["environment"] = cfg.environment == Environment::Indoor ? "InH" : "UMi";
    j["scenario"] =
        cfg.scenario == MountingScenario::SideWall ? "side_wall" : "opposite_wall";
    j["frequency_ghz"] = cfg.frequency_ghz;
    j["n_elements"] = cfg.n_elements;
    j["tx_position"] = {cfg.tx.x, cfg.tx.y, cfg.tx.z};
    j["rx_position"] = {cfg.rx.x, cfg.rx.y, cfg.rx.z};
    j["ris_position"] = {cfg.ris.x, cfg.ris.y, cfg.ris.z};
    j["room"] = {cfg.room.x_max, cfg.room.y_max, cfg.room.z_max};
    j["realizations"] = cfg.realizations;
    j["seed"] = cfg.seed;
    j["workers"] = cfg.workers;
    switch (cfg.phase.mode) {
    case PhaseMode::Ideal:
        j["phase"]["mode"] = "ideal";
        break;
    case PhaseMode::Quantized:
        j["phase"]["mode"] = "quantized";
        break;
    case PhaseMode::Noisy:
        j["phase"]["mode"] = "noisy";
        break;
    case PhaseMode::QuantizedNoisy:
        j["phase"]["mode"] = "quantized_noisy";
        break;
    }
    j["phase"]["q_bits"] = cfg.phase.q_bits;
    j["phase"]["kappa"] = cfg.phase.kappa;
    j["budget"]["pt_dbm"] = cfg.budget.pt_dbm;
    j["budget"]["pn_dbm"] = cfg.budget.pn_dbm;
    j["include_direct_link"] = cfg.include_direct_link;
    if (cfg.element_spacing)
        j["element_spacing"] = *cfg.element_spacing;
    j["pattern_q"] = cfg.pattern_q;
    if (cfg.lambda_p)
        j["lambda_p"] = *cfg.lambda_p;
    auto profile_json = [](const PathLossParams &p) {
        json pj;
        pj["n"] = p.n;
        pj["sigma_db"] = p.sigma_db;
        pj["b"] = p.b;
        pj["f0_ghz"] = p.f0_hz / 1e9;
        return pj;
    };
    if (cfg.custom_profiles.los)
        j["path_loss_profiles"]["los"] = profile_json(*cfg.custom_profiles.los);
    if (cfg.custom_profiles.nlos)
        j["path_loss_profiles"]["nlos"] = profile_json(*cfg.custom_profiles.nlos);
    return j;
}

} // namespace detail

inline std::string serialize_config(const SimConfig &cfg) {
    return detail::config_to_json(cfg).dump(2);
}

/// Cluster arrival intensity at the preset bands: 1.8 at 28 GHz, 1.9 at
/// 73 GHz. Other frequencies must supply their own.
inline double resolve_lambda_p(const SimConfig &cfg) {
    if (cfg.lambda_p)
        return *cfg.lambda_p;
    if (cfg.frequency_ghz == 28.0)
        return 1.8;
    if (cfg.frequency_ghz == 73.0)
        return 1.9;
    throw ConfigError("lambda_p", "no preset for this frequency");
}

/// Resolve a validated configuration into the runtime scene description.
inline ChannelModel make_channel_model(const SimConfig &cfg, ParseReport *report = nullptr) {
    ChannelModel m;
    m.env = cfg.environment;
    m.bounds = cfg.room;
    m.tx = cfg.tx;
    m.rx = cfg.rx;
    m.freq_hz = cfg.frequency_ghz * 1e9;
    m.wavelength = wavelength_for(m.freq_hz);
    m.wavenumber = wavenumber_for(m.freq_hz);
    m.lambda_p = resolve_lambda_p(cfg);
    m.include_direct = cfg.include_direct_link;

    m.panel.n_elements = cfg.n_elements;
    m.panel.spacing = cfg.element_spacing.value_or(m.wavelength / 2.0);
    m.panel.pattern.q = cfg.pattern_q;
    m.panel.scenario = cfg.scenario;
    m.panel.position = cfg.ris;
    (void)m.panel.side();

    m.profiles.nlos = cfg.custom_profiles.nlos.value_or(path_loss_profile(m.env, false));
    m.profiles.los = cfg.custom_profiles.los.value_or(path_loss_profile(m.env, true));

    if (report) {
        const double d = distance(m.tx, m.panel.position);
        if (!far_field_ok(m.panel, d, m.wavelength))
            report->warnings.push_back(
                "Tx-RIS distance " + std::to_string(d) +
                " m does not satisfy the far-field condition d > N*lambda/2 = " +
                std::to_string(double(m.panel.n_elements) * m.wavelength / 2.0) + " m");
    }
    return m;
}

} // namespace simris

#endif // SIMRIS_CONFIG_HPP
