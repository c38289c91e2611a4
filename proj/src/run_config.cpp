#include "psryd/run_config.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

namespace psryd {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

void require_keys(const json& j, const std::string& where,
                  const std::set<std::string>& allowed) {
    if (!j.is_object())
        throw std::invalid_argument("config: expected an object at " + where);
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw std::invalid_argument("config: unknown key \"" + it.key() +
                                        "\" in " + where);
}

PulseOverride parse_pulse(const json& j, const std::string& where) {
    require_keys(j, where,
                 {"wavelength_nm", "dlambda_nm", "duration_ns",
                  "fluence_uJ_cm2", "t_center_ns"});
    PulseOverride p;
    if (j.contains("wavelength_nm"))
        p.wavelength_nm = j.at("wavelength_nm").get<double>();
    if (j.contains("dlambda_nm"))
        p.dlambda_nm = j.at("dlambda_nm").get<double>();
    if (j.contains("duration_ns"))
        p.duration_ns = j.at("duration_ns").get<double>();
    if (j.contains("fluence_uJ_cm2"))
        p.fluence_uJ_cm2 = j.at("fluence_uJ_cm2").get<double>();
    if (j.contains("t_center_ns"))
        p.t_center_ns = j.at("t_center_ns").get<double>();
    return p;
}

void apply_pulse(LaserPulse& pulse, const PulseOverride& ov) {
    if (ov.wavelength_nm && *ov.wavelength_nm > 0.0)
        pulse.lambda0 = *ov.wavelength_nm * 1.0e-9;
    if (ov.dlambda_nm)
        pulse.dlambda = *ov.dlambda_nm * 1.0e-9;
    if (ov.duration_ns)
        pulse.duration = *ov.duration_ns * 1.0e-9;
    if (ov.fluence_uJ_cm2)
        pulse.fluence = uJ_cm2_to_J_m2(*ov.fluence_uJ_cm2);
    if (ov.t_center_ns)
        pulse.t_center = *ov.t_center_ns * 1.0e-9;
}

} // namespace

RunConfig RunConfig::from_json(const json& j) {
    require_keys(j, "top level",
                 {"environment", "scheme", "pulses", "simulation",
                  "ionization", "output"});
    RunConfig cfg;

    if (j.contains("environment")) {
        const json& e = j.at("environment");
        require_keys(e, "environment", {"temperature_K", "bfield_T"});
        if (e.contains("temperature_K"))
            cfg.temperature_K = e.at("temperature_K").get<double>();
        if (e.contains("bfield_T"))
            cfg.bfield_T = e.at("bfield_T").get<double>();
    }
    if (j.contains("scheme")) {
        const json& s = j.at("scheme");
        require_keys(s, "scheme", {"ladder", "n_final"});
        if (s.contains("ladder"))
            cfg.ladder = s.at("ladder").get<std::string>();
        if (s.contains("n_final"))
            cfg.n_final = s.at("n_final").get<int>();
    }
    if (j.contains("pulses")) {
        const json& p = j.at("pulses");
        if (!p.is_array() || p.size() > 2)
            throw std::invalid_argument(
                "config: \"pulses\" must be an array of at most two objects");
        if (p.size() >= 1)
            cfg.pulse_first = parse_pulse(p.at(0), "pulses[0]");
        if (p.size() == 2)
            cfg.pulse_second = parse_pulse(p.at(1), "pulses[1]");
    }
    if (j.contains("simulation")) {
        const json& s = j.at("simulation");
        require_keys(s, "simulation",
                     {"seed", "realizations", "dt_ns", "sample_velocity",
                      "copropagating", "record_points", "lifetime_mid_ns"});
        if (s.contains("seed"))
            cfg.seed = s.at("seed").get<std::uint64_t>();
        if (s.contains("realizations"))
            cfg.realizations = s.at("realizations").get<int>();
        if (s.contains("dt_ns"))
            cfg.dt_ns = s.at("dt_ns").get<double>();
        if (s.contains("sample_velocity"))
            cfg.sample_velocity = s.at("sample_velocity").get<bool>();
        if (s.contains("copropagating"))
            cfg.copropagating = s.at("copropagating").get<bool>();
        if (s.contains("record_points"))
            cfg.record_points = s.at("record_points").get<int>();
        if (s.contains("lifetime_mid_ns"))
            cfg.lifetime_mid_ns = s.at("lifetime_mid_ns").get<double>();
    }
    if (j.contains("ionization")) {
        const json& s = j.at("ionization");
        require_keys(s, "ionization", {"sigma_mid_cm2", "sigma_ryd_cm2"});
        if (s.contains("sigma_mid_cm2"))
            cfg.sigma_mid_cm2 = s.at("sigma_mid_cm2").get<double>();
        if (s.contains("sigma_ryd_cm2"))
            cfg.sigma_ryd_cm2 = s.at("sigma_ryd_cm2").get<double>();
    }
    if (j.contains("output")) {
        const json& o = j.at("output");
        require_keys(o, "output", {"format", "path"});
        if (o.contains("format")) {
            cfg.format = o.at("format").get<std::string>();
            if (*cfg.format != "csv" && *cfg.format != "json")
                throw std::invalid_argument(
                    "config: output format must be \"csv\" or \"json\"");
        }
        if (o.contains("path"))
            cfg.path = o.at("path").get<std::string>();
    }
    return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("config: cannot open \"" + path + "\"");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("config: JSON parse error in \"" + path +
                                    "\": " + e.what());
    }
    return from_json(j);
}

LadderConfig RunConfig::ladder_config() const {
    Scheme scheme = Scheme::ladder_1_3_n;
    if (ladder) {
        if (*ladder == "1-3-n")
            scheme = Scheme::ladder_1_3_n;
        else if (*ladder == "1-2-n")
            scheme = Scheme::ladder_1_2_n;
        else
            throw std::invalid_argument(
                "config: ladder must be \"1-3-n\" or \"1-2-n\"");
    }
    LadderConfig cfg = make_default_config(scheme, n_final.value_or(25));
    if (temperature_K)
        cfg.env.temperature = *temperature_K;
    if (bfield_T)
        cfg.env.bfield = *bfield_T;
    apply_pulse(cfg.pulse_first, pulse_first);
    apply_pulse(cfg.pulse_second, pulse_second);
    if (seed)
        cfg.seed = *seed;
    if (realizations)
        cfg.n_realizations = *realizations;
    if (dt_ns)
        cfg.dt = *dt_ns * 1.0e-9;
    if (sample_velocity)
        cfg.sample_velocity = *sample_velocity;
    if (copropagating)
        cfg.copropagating = *copropagating;
    if (record_points)
        cfg.record_points = *record_points;
    if (lifetime_mid_ns)
        cfg.lifetime_mid = *lifetime_mid_ns * 1.0e-9;
    if (sigma_mid_cm2)
        cfg.sigma_ion_mid = cm2_to_m2(*sigma_mid_cm2);
    if (sigma_ryd_cm2)
        cfg.sigma_ion_ryd = cm2_to_m2(*sigma_ryd_cm2);
    return cfg;
}

ordered_json RunConfig::echo() const {
    const LadderConfig cfg = ladder_config();
    ordered_json j;
    j["environment"] = {{"temperature_K", cfg.env.temperature},
                        {"bfield_T", cfg.env.bfield}};
    j["scheme"] = {
        {"ladder", cfg.scheme == Scheme::ladder_1_3_n ? "1-3-n" : "1-2-n"},
        {"n_final", cfg.n_final}};
    auto pulse_json = [](const LaserPulse& p) {
        return ordered_json{{"wavelength_nm", p.lambda0 * 1.0e9},
                            {"dlambda_nm", p.dlambda * 1.0e9},
                            {"duration_ns", p.duration * 1.0e9},
                            {"fluence_uJ_cm2", J_m2_to_uJ_cm2(p.fluence)},
                            {"t_center_ns", p.t_center * 1.0e9}};
    };
    j["pulses"] = {pulse_json(cfg.pulse_first), pulse_json(cfg.pulse_second)};
    j["simulation"] = {{"seed", cfg.seed},
                       {"realizations", cfg.n_realizations},
                       {"dt_ns", cfg.dt * 1.0e9},
                       {"sample_velocity", cfg.sample_velocity},
                       {"copropagating", cfg.copropagating},
                       {"record_points", cfg.record_points},
                       {"lifetime_mid_ns", cfg.lifetime_mid * 1.0e9}};
    j["ionization"] = {{"sigma_mid_cm2", m2_to_cm2(cfg.sigma_ion_mid)},
                       {"sigma_ryd_cm2", m2_to_cm2(cfg.sigma_ion_ryd)}};
    j["output"] = {{"format", output_format()}, {"path", output_path()}};
    return j;
}

} // namespace psryd
