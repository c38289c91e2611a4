#pragma once

// Saturation fluences for both excitation steps, the incoherent
// rate-equation solution and pulse-energy budgeting against a Gaussian
// transverse profile.

#include <vector>

#include "psryd/constants.hpp"
#include "psryd/dipole.hpp"
#include "psryd/level_structure.hpp"

namespace psryd {

struct LaserPulse {
    double lambda0 = 0.0;  // centre wavelength, m
    double dlambda = 0.0;  // spectral FWHM, m
    double duration = 0.0; // temporal FWHM, s
    double fluence = 0.0;  // J/m^2 at the transverse profile peak
    double t_center = 0.0; // arrival time, s

    // Correlation time lambda0^2 / (c dlambda) of the broadband field.
    double coherence_time() const;
    // Spectral FWHM in angular frequency, rad/s.
    double angular_fwhm() const;
    double photon_energy() const; // J
    // Gaussian temporal envelope, W/m^2.
    double intensity(double t) const;
    // F(t) = integral of intensity up to t, J/m^2.
    double cumulative_fluence(double t) const;
    // True when coherence_time exceeds duration/10: the incoherent
    // (rate-equation) description stops being trustworthy.
    bool coherence_warning() const;

    void validate() const;
};

struct FluenceReport {
    double f_sat = 0.0;         // J/m^2 (reported convention, see below)
    double f_sat_overlap = 0.0; // J/m^2, strict Gaussian-Gaussian overlap
    double pulse_energy = 0.0;  // J at the given spot
    double spot_fwhm = 0.0;     // m
};

// Overlap integral of two unit-area Gaussians (FWHMs dw1, dw2) at zero
// mutual detuning: 1 / sqrt(2 pi (s1^2 + s2^2)). Units: s.
double gaussian_overlap(double dw1_fwhm, double dw2_fwhm);

// Absorption probability rate W = B * I * overlap / c for a Gaussian
// laser line of FWHM dw_laser crossed with a Gaussian atomic line of
// FWHM dw_atom, both in angular frequency.
double absorption_rate(double intensity, double einstein_b, double dw_laser,
                       double dw_atom);

// Saturation fluence of the Doppler-broadened first step with the laser
// bandwidth matched to the Doppler FWHM:
//   F_sat = (c^2 / B) * (pi^(3/2) / ln 2) * dlambda_D / lambda^2.
// This is the tool's reported convention; the strict Gaussian-Gaussian
// overlap value (fsat_first_step_overlap) is larger by exactly
// sqrt(2 ln 2) ~ 1.1774. Both are emitted by the fluence report.
double fsat_first_step(const Environment& env, int n_mid = 3);

// Same matched-bandwidth fluence from the lineshape-peak form
// c sqrt(2) / (B g0); numerically identical to fsat_first_step.
double fsat_first_step_peakform(const Environment& env, int n_mid = 3);

// Strict overlap convention: c / (B * gaussian_overlap(dw_D, dw_D)).
double fsat_first_step_overlap(const Environment& env, int n_mid = 3);

inline double fsat_13(const Environment& env) { return fsat_first_step(env, 3); }

// Band saturation fluence F_sat = c * 13.6 eV / (B_mid->n hbar n^3);
// independent of T and B and nearly constant across n = 20..30.
double fsat_second_step(int n_mid, int n);
double fsat_3n(int n); // n_mid = 3, valid for 16 <= n <= n_cap

// E = pi (overdrive f_sat / 2) (spot_fwhm / 1.177)^2 for a Gaussian
// transverse profile whose peak fluence is overdrive * f_sat.
double pulse_energy(double f_sat, double spot_fwhm, double overdrive = 2.0);

// Closed-form incoherent two-level population
//   P(t) = (1/2) [1 - exp(-2 F(t) / f_sat)].
double rate_population(double t, const LaserPulse& pulse, double f_sat);

struct RatePoint {
    double t = 0.0;
    double analytic = 0.0;
    double numeric = 0.0;
};

// Numerical integration of dP/dt = (1 - 2P) I(t)/f_sat alongside the
// closed form, over t_center +- 4 FWHM.
std::vector<RatePoint> rate_population_series(const LaserPulse& pulse,
                                              double f_sat, int n_steps = 2000);

} // namespace psryd
