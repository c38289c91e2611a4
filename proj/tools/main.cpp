// Command-line front end: every subcommand emits a machine-readable table
// (CSV or JSON) with the tool version, the fully resolved configuration
// and the seed embedded, so any output can be reproduced exactly.

#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "psryd/bloch.hpp"
#include "psryd/run_config.hpp"
#include "psryd/saturation.hpp"
#include "psryd/table_io.hpp"
#include "psryd/version.hpp"

namespace {

using namespace psryd;

constexpr int exit_ok = 0;
constexpr int exit_config_error = 2;
constexpr int exit_numeric_error = 3;

struct CommonFlags {
    std::string config_path;
    std::optional<std::string> out;
    std::optional<std::string> format;
    std::optional<double> temperature;
    std::optional<double> bfield;
    std::optional<std::string> scheme;
    std::optional<int> n_final;
    std::optional<std::uint64_t> seed;
    std::optional<int> realizations;
    int threads = 0;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config_path, "JSON config file");
    cmd->add_option("--out", f.out, "output path ('-' = stdout)");
    cmd->add_option("--format", f.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--temperature", f.temperature, "cloud temperature [K]");
    cmd->add_option("--bfield", f.bfield, "magnetic field [T]");
    cmd->add_option("--scheme", f.scheme, "ladder: 1-3-n|1-2-n")
        ->check(CLI::IsMember({"1-3-n", "1-2-n"}));
    cmd->add_option("--n-final", f.n_final, "final principal quantum number");
    cmd->add_option("--seed", f.seed, "master RNG seed");
    cmd->add_option("--realizations", f.realizations, "Monte-Carlo count");
    cmd->add_option("--threads", f.threads,
                    "max worker threads (0 = auto, PS_RYDBERG_THREADS caps)");
}

RunConfig resolve(const CommonFlags& f) {
    RunConfig cfg;
    if (!f.config_path.empty())
        cfg = RunConfig::load(f.config_path);
    if (f.temperature)
        cfg.temperature_K = f.temperature;
    if (f.bfield)
        cfg.bfield_T = f.bfield;
    if (f.scheme)
        cfg.ladder = f.scheme;
    if (f.n_final)
        cfg.n_final = f.n_final;
    if (f.seed)
        cfg.seed = f.seed;
    if (f.realizations)
        cfg.realizations = f.realizations;
    if (f.out)
        cfg.path = f.out;
    if (f.format)
        cfg.format = f.format;
    return cfg;
}

nlohmann::ordered_json base_metadata(const RunConfig& run,
                                     const std::string& command) {
    nlohmann::ordered_json meta;
    meta["schema_version"] = output_schema_version;
    meta["tool_version"] = tool_version;
    meta["command"] = command;
    meta["seed"] = run.ladder_config().seed;
    meta["config"] = run.echo();
    return meta;
}

void emit(const RunConfig& run, const OutputTable& table) {
    write_table(table, run.output_format(), run.output_path());
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings)
        std::cerr << "warning: " << w << "\n";
}

int cmd_structure(const CommonFlags& flags, int n_min, int n_max) {
    const RunConfig run = resolve(flags);
    const LadderConfig lad = run.ladder_config();
    const Environment& env = lad.env;

    const auto rows = structure_table(env, n_min, n_max);
    const auto markers = structure_markers(env);

    OutputTable table;
    table.metadata = base_metadata(run, "structure");
    table.metadata["n_min"] = n_min;
    table.metadata["n_max"] = n_max;
    table.metadata["interleaving_onset_n"] =
        markers.interleave_onset ? nlohmann::ordered_json(*markers.interleave_onset)
                                 : nlohmann::ordered_json(nullptr);
    table.metadata["ionization_onset_n"] =
        markers.ionize_onset ? nlohmann::ordered_json(*markers.ionize_onset)
                             : nlohmann::ordered_json(nullptr);
    table.metadata["useful_range"] = {markers.useful_lo, markers.useful_hi};
    {
        const DopplerWidth d13 = doppler_fwhm(env, transition_wavelength(1, 3));
        table.metadata["zeeman_scale_below_doppler_13"] =
            zeeman_scale(env) < d13.denergy;
    }

    table.columns = {"n",          "E_n_eV",       "dlambda_doppler_nm",
                     "dlambda_stark_nm", "dlambda_splitting_nm", "N_n",
                     "rho_s",      "ionizing"};
    bool regime_warning = false;
    for (const auto& r : rows) {
        table.rows.push_back({static_cast<long long>(r.band.n),
                              r.band.energy / constants::eV,
                              r.dlambda_doppler * 1e9, r.dlambda_stark * 1e9,
                              r.dlambda_splitting * 1e9, r.band.n_interleaved,
                              r.band.density,
                              static_cast<long long>(r.band.ionizing ? 1 : 0)});
        if (r.band.n_interleaved < 1.0)
            regime_warning = true;
    }
    if (regime_warning)
        std::cerr << "warning: rows with N_n < 1 are outside the interleaved "
                     "regime; the sublevel density there is nominal\n";
    emit(run, table);
    return exit_ok;
}

int cmd_fluence(const CommonFlags& flags, double spot_mm, double overdrive) {
    const RunConfig run = resolve(flags);
    const LadderConfig lad = run.ladder_config();
    const double spot = spot_mm * 1.0e-3;
    const int n_mid = lad.n_mid();

    const double fsat1 = fsat_first_step(lad.env, n_mid);
    const double fsat1_ov = fsat_first_step_overlap(lad.env, n_mid);
    const double fsat2 = fsat_second_step(n_mid, lad.n_final);

    OutputTable table;
    table.metadata = base_metadata(run, "fluence");
    table.metadata["spot_fwhm_mm"] = spot_mm;
    table.metadata["overdrive"] = overdrive;
    table.columns = {"leg",           "lambda_nm",      "f_sat_uJ_cm2",
                     "f_sat_overlap_uJ_cm2", "pulse_energy_uJ"};
    table.rows.push_back(
        {std::string("1->") + std::to_string(n_mid),
         transition_wavelength(1, n_mid) * 1e9, J_m2_to_uJ_cm2(fsat1),
         J_m2_to_uJ_cm2(fsat1_ov),
         pulse_energy(fsat1, spot, overdrive) * 1e6});
    table.rows.push_back(
        {std::to_string(n_mid) + "->" + std::to_string(lad.n_final),
         transition_wavelength(n_mid, lad.n_final) * 1e9,
         J_m2_to_uJ_cm2(fsat2), J_m2_to_uJ_cm2(fsat2),
         pulse_energy(fsat2, spot, overdrive) * 1e6});
    emit(run, table);
    return exit_ok;
}

int cmd_rate(const CommonFlags& flags, std::optional<double> fsat_uJ_cm2,
             int steps) {
    const RunConfig run = resolve(flags);
    const LadderConfig lad = run.ladder_config();
    const LaserPulse& pulse = lad.pulse_first;
    const double fsat = fsat_uJ_cm2 ? uJ_cm2_to_J_m2(*fsat_uJ_cm2)
                                    : fsat_first_step(lad.env, lad.n_mid());

    const auto series = rate_population_series(pulse, fsat, steps);
    double max_err = 0.0;
    for (const auto& pt : series)
        max_err = std::max(max_err, std::abs(pt.analytic - pt.numeric));
    if (max_err > 1.0e-6) {
        std::cerr << "error: rate-equation integration did not converge "
                     "(max |analytic - numeric| = "
                  << max_err << ")\n";
        return exit_numeric_error;
    }

    OutputTable table;
    table.metadata = base_metadata(run, "rate");
    table.metadata["f_sat_uJ_cm2"] = J_m2_to_uJ_cm2(fsat);
    table.metadata["max_abs_difference"] = max_err;
    table.columns = {"t_ns", "fluence_uJ_cm2", "P_analytic", "P_numeric"};
    for (const auto& pt : series)
        table.rows.push_back({pt.t * 1e9,
                              J_m2_to_uJ_cm2(pulse.cumulative_fluence(pt.t)),
                              pt.analytic, pt.numeric});
    emit(run, table);
    return exit_ok;
}

int cmd_simulate(const CommonFlags& flags, bool single) {
    const RunConfig run = resolve(flags);
    const LadderConfig lad = run.ladder_config();
    print_warnings(lad.validate());

    OutputTable table;
    table.metadata = base_metadata(run, single ? "simulate-single"
                                               : "simulate-ensemble");
    if (single) {
        const SimRecord rec = simulate_one(lad, realization_seed(lad.seed, 0));
        table.metadata["velocity_m_s"] = rec.velocity;
        table.columns = {"t_ns", "p1", "p_mid", "p_ryd", "p_ion"};
        for (std::size_t i = 0; i < rec.times.size(); ++i)
            table.rows.push_back({rec.times[i] * 1e9, rec.p_ground[i],
                                  rec.p_mid[i], rec.p_ryd[i], rec.p_ion[i]});
    } else {
        const EnsembleResult res = simulate_ensemble(lad, flags.threads);
        table.metadata["realizations"] = res.n_realizations;
        table.metadata["final_rydberg_fraction"] = res.final_ryd;
        table.metadata["final_rydberg_se"] = res.final_ryd_se;
        table.metadata["final_ionized_fraction"] = res.final_ion;
        table.metadata["final_ionized_se"] = res.final_ion_se;
        table.columns = {"t_ns",  "p1",    "p_mid", "p_ryd", "p_ion",
                         "se_p1", "se_p_mid", "se_p_ryd", "se_p_ion"};
        for (std::size_t i = 0; i < res.times.size(); ++i)
            table.rows.push_back(
                {res.times[i] * 1e9, res.mean_ground[i], res.mean_mid[i],
                 res.mean_ryd[i], res.mean_ion[i], res.se_ground[i],
                 res.se_mid[i], res.se_ryd[i], res.se_ion[i]});
    }
    emit(run, table);
    return exit_ok;
}

int cmd_scan(const CommonFlags& flags, const std::string& axis,
             const std::vector<double>& grid) {
    if (grid.empty())
        throw std::invalid_argument("scan: empty grid");
    const RunConfig run = resolve(flags);

    OutputTable table;
    table.metadata = base_metadata(run, "scan");
    table.metadata["axis"] = axis;
    table.columns = {axis,        "final_ryd", "final_ryd_se",
                     "final_ion", "final_ion_se", "realizations"};

    for (double value : grid) {
        LadderConfig lad = run.ladder_config();
        if (axis == "temperature")
            lad.env.temperature = value;
        else if (axis == "bfield")
            lad.env.bfield = value;
        else if (axis == "n_final") {
            lad.n_final = static_cast<int>(std::lround(value));
            lad.pulse_second.lambda0 =
                transition_wavelength(lad.n_mid(), lad.n_final);
        } else if (axis == "fluence2")
            lad.pulse_second.fluence = uJ_cm2_to_J_m2(value);
        else if (axis == "dlambda2")
            lad.pulse_second.dlambda = value * 1.0e-9;
        else
            throw std::invalid_argument("scan: unknown axis \"" + axis + "\"");
        print_warnings(lad.validate());
        const EnsembleResult res = simulate_ensemble(lad, flags.threads);
        table.rows.push_back({value, res.final_ryd, res.final_ryd_se,
                              res.final_ion, res.final_ion_se,
                              static_cast<long long>(res.n_realizations)});
    }
    emit(run, table);
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-step positronium Rydberg excitation toolkit"};
    app.require_subcommand(1);

    CommonFlags flags;

    auto* structure = app.add_subcommand(
        "structure", "level broadenings, interleaving and ionization limits");
    int n_min = 10, n_max = 35;
    structure->add_option("--n-min", n_min, "first level (default 10)");
    structure->add_option("--n-max", n_max, "last level (default 35)");
    add_common(structure, flags);

    auto* fluence = app.add_subcommand(
        "fluence", "saturation fluences and pulse energies for both legs");
    double spot_mm = 2.8, overdrive = 2.0;
    fluence->add_option("--spot-mm", spot_mm, "transverse FWHM [mm]");
    fluence->add_option("--overdrive", overdrive,
                        "peak fluence in units of F_sat");
    add_common(fluence, flags);

    auto* rate = app.add_subcommand(
        "rate", "incoherent two-level population, analytic vs numeric");
    std::optional<double> fsat_opt;
    int steps = 2000;
    rate->add_option("--fsat-uJ-cm2", fsat_opt,
                     "saturation fluence (default: derived for leg one)");
    rate->add_option("--steps", steps, "integration steps");
    add_common(rate, flags);

    auto* simulate = app.add_subcommand(
        "simulate", "stochastic three-level ladder simulation");
    bool single = false;
    simulate->add_flag("--single", single,
                       "one realization time series (default: ensemble)");
    add_common(simulate, flags);

    auto* scan = app.add_subcommand(
        "scan", "ensemble final fractions across a parameter grid");
    std::string axis;
    std::vector<double> grid;
    scan->add_option("--axis", axis,
                     "temperature|bfield|n_final|fluence2|dlambda2")
        ->required()
        ->check(CLI::IsMember(
            {"temperature", "bfield", "n_final", "fluence2", "dlambda2"}));
    scan->add_option("--grid", grid, "grid values (axis units)")
        ->required()
        ->delimiter(',');
    add_common(scan, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e);
        app.exit(e);
        return exit_config_error;
    }

    try {
        if (structure->parsed())
            return cmd_structure(flags, n_min, n_max);
        if (fluence->parsed())
            return cmd_fluence(flags, spot_mm, overdrive);
        if (rate->parsed())
            return cmd_rate(flags, fsat_opt, steps);
        if (simulate->parsed())
            return cmd_simulate(flags, single);
        if (scan->parsed())
            return cmd_scan(flags, axis, grid);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config_error;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_numeric_error;
    }
    return exit_ok;
}
