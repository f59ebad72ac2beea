#pragma once

#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "gyrosim/sim.hpp"

namespace gyrosim {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

using nlohmann::json;

inline void reject_unknown_keys(const json& obj, const std::string& path,
                                std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* k : allowed)
            if (item.key() == k) {
                known = true;
                break;
            }
        if (!known)
            throw ConfigError("unknown key: " + (path.empty() ? item.key()
                                                              : path + "." + item.key()));
    }
}

inline double get_number(const json& obj, const std::string& path, const char* key) {
    if (!obj.contains(key))
        throw ConfigError("missing key: " + path + key);
    const json& v = obj.at(key);
    if (!v.is_number())
        throw ConfigError(path + key + ": expected a number");
    return v.get<double>();
}

inline Vec2 get_vec2(const json& obj, const std::string& path, const char* key) {
    if (!obj.contains(key))
        throw ConfigError("missing key: " + path + key);
    const json& v = obj.at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw ConfigError(path + key + ": expected an array of 2 numbers");
    return {v[0].get<double>(), v[1].get<double>()};
}

inline json to_json(Vec2 v) { return json::array({v.x, v.y}); }

}  // namespace detail

/// Parse the experiment document. Unknown keys anywhere are rejected with
/// the offending key named; types are checked per field. Validation of the
/// numeric ranges is a separate step (validate(SimConfig)).
inline SimConfig parse_config(const nlohmann::json& j) {
    using detail::get_number;
    using detail::get_vec2;
    using detail::reject_unknown_keys;
    using nlohmann::json;

    if (!j.is_object())
        throw ConfigError("config: expected a JSON object");
    reject_unknown_keys(j, "",
                        {"dt", "horizon", "controller", "gains", "stc", "plant",
                         "initial", "reference", "disturbance", "disturbance_mode",
                         "u_max", "memory_len"});

    SimConfig c;
    c.dt = get_number(j, "", "dt");
    c.horizon = get_number(j, "", "horizon");

    if (!j.contains("controller"))
        throw ConfigError("missing key: controller");
    const std::string kind = j.at("controller").get<std::string>();
    if (kind == "fosmc")
        c.controller = ControllerKind::fosmc;
    else if (kind == "fosmc_stc")
        c.controller = ControllerKind::fosmc_stc;
    else
        throw ConfigError("controller: expected \"fosmc\" or \"fosmc_stc\"");

    if (!j.contains("gains") || !j.at("gains").is_object())
        throw ConfigError("missing key: gains");
    {
        const json& g = j.at("gains");
        reject_unknown_keys(g, "gains",
                            {"alpha", "beta", "gamma", "k_s", "mu", "r_exp", "m_exp"});
        c.gains.alpha = get_vec2(g, "gains.", "alpha");
        c.gains.beta = get_vec2(g, "gains.", "beta");
        c.gains.gamma = get_vec2(g, "gains.", "gamma");
        c.gains.k_s = get_vec2(g, "gains.", "k_s");
        c.gains.mu = get_number(g, "gains.", "mu");
        c.gains.r_exp = get_number(g, "gains.", "r_exp");
        c.gains.m_exp = get_number(g, "gains.", "m_exp");
    }

    if (j.contains("stc")) {
        const json& s = j.at("stc");
        reject_unknown_keys(s, "stc", {"k1", "k2"});
        c.stc.k1 = get_vec2(s, "stc.", "k1");
        c.stc.k2 = get_vec2(s, "stc.", "k2");
    }

    if (!j.contains("plant") || !j.at("plant").is_object())
        throw ConfigError("missing key: plant");
    {
        const json& p = j.at("plant");
        if (!p.contains("type"))
            throw ConfigError("missing key: plant.type");
        const std::string type = p.at("type").get<std::string>();
        if (type == "physical") {
            reject_unknown_keys(p, "plant",
                                {"type", "mass", "k_xx", "k_yy", "k_xy", "d_xx",
                                 "d_yy", "d_xy", "angular_rate", "ref_freq",
                                 "ref_length"});
            PhysicalParams ph;
            ph.mass = get_number(p, "plant.", "mass");
            ph.k_xx = get_number(p, "plant.", "k_xx");
            ph.k_yy = get_number(p, "plant.", "k_yy");
            ph.k_xy = get_number(p, "plant.", "k_xy");
            ph.d_xx = get_number(p, "plant.", "d_xx");
            ph.d_yy = get_number(p, "plant.", "d_yy");
            ph.d_xy = get_number(p, "plant.", "d_xy");
            ph.angular_rate = get_number(p, "plant.", "angular_rate");
            ph.ref_freq = get_number(p, "plant.", "ref_freq");
            ph.ref_length = get_number(p, "plant.", "ref_length");
            c.physical = ph;
        } else if (type == "nondim") {
            reject_unknown_keys(p, "plant",
                                {"type", "omega_x2", "omega_y2", "omega_xy", "d_xx",
                                 "d_yy", "d_xy", "omega_z"});
            NondimParams nd;
            nd.omega_x2 = get_number(p, "plant.", "omega_x2");
            nd.omega_y2 = get_number(p, "plant.", "omega_y2");
            nd.omega_xy = get_number(p, "plant.", "omega_xy");
            nd.d_xx = get_number(p, "plant.", "d_xx");
            nd.d_yy = get_number(p, "plant.", "d_yy");
            nd.d_xy = get_number(p, "plant.", "d_xy");
            nd.omega_z = get_number(p, "plant.", "omega_z");
            c.nondim = nd;
        } else {
            throw ConfigError("plant.type: expected \"physical\" or \"nondim\"");
        }
    }

    if (!j.contains("initial") || !j.at("initial").is_object())
        throw ConfigError("missing key: initial");
    {
        const json& i = j.at("initial");
        reject_unknown_keys(i, "initial", {"q", "qdot"});
        c.q0 = get_vec2(i, "initial.", "q");
        c.qdot0 = get_vec2(i, "initial.", "qdot");
    }

    if (!j.contains("reference") || !j.at("reference").is_object())
        throw ConfigError("missing key: reference");
    {
        const json& r = j.at("reference");
        reject_unknown_keys(r, "reference", {"amplitude", "frequency"});
        c.reference.amplitude = get_vec2(r, "reference.", "amplitude");
        c.reference.frequency = get_vec2(r, "reference.", "frequency");
    }

    if (j.contains("disturbance")) {
        const json& d = j.at("disturbance");
        reject_unknown_keys(d, "disturbance", {"amplitude", "frequency"});
        c.disturbance.amplitude = get_vec2(d, "disturbance.", "amplitude");
        c.disturbance.frequency = get_vec2(d, "disturbance.", "frequency");
    }

    if (j.contains("disturbance_mode")) {
        const std::string mode = j.at("disturbance_mode").get<std::string>();
        if (mode == "known")
            c.disturbance_mode = DisturbanceMode::known;
        else if (mode == "unknown")
            c.disturbance_mode = DisturbanceMode::unknown;
        else
            throw ConfigError("disturbance_mode: expected \"known\" or \"unknown\"");
    }

    if (j.contains("u_max"))
        c.u_max = get_number(j, "", "u_max");
    if (j.contains("memory_len")) {
        const json& v = j.at("memory_len");
        if (!v.is_number_unsigned())
            throw ConfigError("memory_len: expected a non-negative integer");
        c.memory_len = v.get<std::size_t>();
    }
    return c;
}

inline nlohmann::json serialize_config(const SimConfig& c) {
    using detail::to_json;
    nlohmann::json j;
    j["dt"] = c.dt;
    j["horizon"] = c.horizon;
    j["controller"] = c.controller == ControllerKind::fosmc ? "fosmc" : "fosmc_stc";
    j["gains"] = {{"alpha", to_json(c.gains.alpha)}, {"beta", to_json(c.gains.beta)},
                  {"gamma", to_json(c.gains.gamma)}, {"k_s", to_json(c.gains.k_s)},
                  {"mu", c.gains.mu},                {"r_exp", c.gains.r_exp},
                  {"m_exp", c.gains.m_exp}};
    j["stc"] = {{"k1", to_json(c.stc.k1)}, {"k2", to_json(c.stc.k2)}};
    if (c.physical) {
        j["plant"] = {{"type", "physical"},
                      {"mass", c.physical->mass},
                      {"k_xx", c.physical->k_xx},
                      {"k_yy", c.physical->k_yy},
                      {"k_xy", c.physical->k_xy},
                      {"d_xx", c.physical->d_xx},
                      {"d_yy", c.physical->d_yy},
                      {"d_xy", c.physical->d_xy},
                      {"angular_rate", c.physical->angular_rate},
                      {"ref_freq", c.physical->ref_freq},
                      {"ref_length", c.physical->ref_length}};
    } else if (c.nondim) {
        j["plant"] = {{"type", "nondim"},
                      {"omega_x2", c.nondim->omega_x2},
                      {"omega_y2", c.nondim->omega_y2},
                      {"omega_xy", c.nondim->omega_xy},
                      {"d_xx", c.nondim->d_xx},
                      {"d_yy", c.nondim->d_yy},
                      {"d_xy", c.nondim->d_xy},
                      {"omega_z", c.nondim->omega_z}};
    }
    j["initial"] = {{"q", to_json(c.q0)}, {"qdot", to_json(c.qdot0)}};
    j["reference"] = {{"amplitude", to_json(c.reference.amplitude)},
                      {"frequency", to_json(c.reference.frequency)}};
    j["disturbance"] = {{"amplitude", to_json(c.disturbance.amplitude)},
                        {"frequency", to_json(c.disturbance.frequency)}};
    j["disturbance_mode"] =
        c.disturbance_mode == DisturbanceMode::known ? "known" : "unknown";
    if (c.u_max)
        j["u_max"] = *c.u_max;
    if (c.memory_len)
        j["memory_len"] = *c.memory_len;
    return j;
}

inline SimConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }
    return parse_config(j);
}

inline void save_config_file(const SimConfig& c, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw ConfigError("cannot write config file: " + path);
    out << serialize_config(c).dump(2) << "\n";
}

}  // namespace gyrosim
