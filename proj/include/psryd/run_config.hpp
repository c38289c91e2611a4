#pragma once

// Run configuration: a JSON document with CLI-friendly units (K, T, nm,
// ns, uJ/cm^2, mm) resolved into the SI LadderConfig. Unknown keys are
// rejected, not ignored; flags win over file values.

#include <optional>
#include <string>

#include <json.hpp>

#include "psryd/bloch.hpp"

namespace psryd {

struct PulseOverride {
    std::optional<double> wavelength_nm; // 0 or absent = exact resonance
    std::optional<double> dlambda_nm;
    std::optional<double> duration_ns;
    std::optional<double> fluence_uJ_cm2;
    std::optional<double> t_center_ns;
};

struct RunConfig {
    std::optional<double> temperature_K;
    std::optional<double> bfield_T;
    std::optional<std::string> ladder; // "1-3-n" | "1-2-n"
    std::optional<int> n_final;
    PulseOverride pulse_first;
    PulseOverride pulse_second;
    std::optional<std::uint64_t> seed;
    std::optional<int> realizations;
    std::optional<double> dt_ns;
    std::optional<bool> sample_velocity;
    std::optional<bool> copropagating;
    std::optional<int> record_points;
    std::optional<double> lifetime_mid_ns;
    std::optional<double> sigma_mid_cm2;
    std::optional<double> sigma_ryd_cm2;
    std::optional<std::string> format; // "csv" | "json"
    std::optional<std::string> path;   // "-" = stdout

    static RunConfig from_json(const nlohmann::json& j);
    static RunConfig load(const std::string& path);

    // Fully resolved SI simulation config (defaults filled in).
    LadderConfig ladder_config() const;

    std::string output_format() const { return format.value_or("csv"); }
    std::string output_path() const { return path.value_or("-"); }

    // Canonical resolved echo; parseable back by from_json and stable in
    // field order, so a rerun from the echoed document is byte-identical.
    nlohmann::ordered_json echo() const;
};

// Unit helpers used at the I/O boundary.
inline double uJ_cm2_to_J_m2(double f) { return f * 1.0e-2; }
inline double J_m2_to_uJ_cm2(double f) { return f * 1.0e2; }
inline double cm2_to_m2(double s) { return s * 1.0e-4; }
inline double m2_to_cm2(double s) { return s * 1.0e4; }

} // namespace psryd
