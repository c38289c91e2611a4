#pragma once

// Stochastic three-level ladder density-matrix simulator: phase-diffusing
// broadband fields, spontaneous decay of the intermediate level,
// intensity-proportional photoionization, Monte-Carlo averaging over
// noise realizations and Doppler velocity classes.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "psryd/level_structure.hpp"
#include "psryd/saturation.hpp"

namespace psryd {

enum class Scheme { ladder_1_3_n, ladder_1_2_n };

struct LadderConfig {
    Scheme scheme = Scheme::ladder_1_3_n;
    int n_final = 25;

    LaserPulse pulse_first;  // ground -> intermediate
    LaserPulse pulse_second; // intermediate -> Rydberg band

    Environment env;

    double lifetime_mid = 10.5e-9; // s; 10.5 ns for n=3, 3 ns for n=2
    double sigma_ion_mid = 0.0;    // m^2
    double sigma_ion_ryd = 0.0;    // m^2

    std::uint64_t seed = 12345;
    int n_realizations = 300;

    // 0 = automatic step (phase interval / 12, capped by the fastest
    // rotation rate); an explicit value must satisfy dt <= t_coh / 10.
    double dt = 0.0;

    // 1-D Maxwell velocity draw per realization (Doppler detuning on both
    // legs). Off in the reference configs: the matched laser bandwidth is
    // the baseline ensemble-level Doppler treatment, and class-resolved
    // sampling lowers the final fractions by the uncovered velocity tails.
    bool sample_velocity = true;
    bool copropagating = true;   // Doppler shifts of the two legs add
    double detuning_first = 0.0;  // rad/s offset from exact resonance
    double detuning_second = 0.0; // rad/s

    int record_points = 400;

    int n_mid() const { return scheme == Scheme::ladder_1_3_n ? 3 : 2; }

    // Throws std::invalid_argument on hard errors; returns soft warnings
    // (coherence-time ratio, non-overlapping pulses).
    std::vector<std::string> validate() const;
};

// Reference pulse parameters for either ladder; n_final defaults to 25.
LadderConfig make_default_config(Scheme scheme = Scheme::ladder_1_3_n,
                                 int n_final = 25);

struct SimRecord {
    std::vector<double> times;    // s, shared grid across realizations
    std::vector<double> p_ground;
    std::vector<double> p_mid;
    std::vector<double> p_ryd;
    std::vector<double> p_ion;    // cumulative ionization loss
    double velocity = 0.0;        // sampled atom velocity, m/s
};

struct EnsembleResult {
    std::vector<double> times;
    std::vector<double> mean_ground, mean_mid, mean_ryd, mean_ion;
    std::vector<double> se_ground, se_mid, se_ryd, se_ion;
    double final_ryd = 0.0, final_ryd_se = 0.0;
    double final_ion = 0.0, final_ion_se = 0.0;
    double final_ground = 0.0, final_mid = 0.0;
    int n_realizations = 0;
    std::uint64_t seed = 0;
};

// Phase-jump interval such that the piecewise-constant random-phase field
// has a power spectrum of FWHM domega_fwhm (sinc^2 spectrum).
double phase_interval(double domega_fwhm);

// Samples of exp(i phi(t)) of the stochastic phase process on a uniform
// grid of spacing dt_sample; used by the spectral-calibration test.
std::vector<std::complex<double>> stochastic_phase_samples(double domega_fwhm,
                                                           double dt_sample,
                                                           int n_samples,
                                                           std::uint64_t seed);

// Deterministic per-realization seed stream.
std::uint64_t realization_seed(std::uint64_t master_seed, int index);

SimRecord simulate_one(const LadderConfig& config,
                       std::uint64_t realization_seed);

// Independent realizations with fresh phase noise (and, when enabled, a
// Maxwell-sampled velocity); aggregation is index-ordered, so results do
// not depend on scheduling. max_threads = 0 picks hardware concurrency
// (capped by PS_RYDBERG_THREADS).
EnsembleResult simulate_ensemble(const LadderConfig& config,
                                 int max_threads = 0);

double ionization_fraction(const EnsembleResult& result);

} // namespace psryd
