#pragma once

// Level-structure quantities for a positronium cloud in a magnetic field:
// Doppler widths, motional-Stark fan widths, adjacent-level splitting,
// interleaving count, sublevel density, Zeeman scale and the
// field-ionization limit of the fan.

#include <optional>
#include <vector>

#include "psryd/constants.hpp"

namespace psryd {

struct Environment {
    double temperature = 100.0; // K
    double bfield = 1.0;        // T, along z

    // Thermal transverse speed sqrt(kB T / m); the single velocity
    // convention used by every Stark quantity.
    double thermal_velocity() const;
    // Motional electric field |v x B| seen in the atom frame, V/m.
    double motional_field() const;

    void validate() const; // throws std::invalid_argument
};

struct DopplerWidth {
    double dlambda; // FWHM, m
    double denergy; // corresponding photon-energy FWHM, J
};

struct LevelBand {
    int n = 0;
    double energy = 0.0;        // J
    double stark_width = 0.0;   // Delta E_S, J
    double splitting = 0.0;     // Delta E_n to the adjacent level, J
    double n_interleaved = 0.0; // N_n = stark_width / splitting
    double density = 0.0;       // states per unit angular frequency, s
    bool ionizing = false;      // motional field exceeds red-state threshold
};

// Gaussian Doppler FWHM: dlambda = lambda0 sqrt(8 ln2 kB T / (m c^2)).
DopplerWidth doppler_fwhm(const Environment& env, double lambda0);

// Delta E_S = 6 e a0 n (n-1) B sqrt(kB T / m); zero for n=1 or B=0 or T=0.
double stark_width(const Environment& env, int n);

// Delta E_n = 13.6 eV / n^3 (n >= 2).
double level_splitting(int n);

// N_n = Delta E_S / Delta E_n, the number of unperturbed levels whose
// fans interleave with the reference n-level.
double interleaving_count(const Environment& env, int n);

// rho = n^5 hbar / 13.6 eV; independent of T and B. Meaningful in the
// strongly interleaved regime (N_n >~ 1); callers police the regime.
double sublevel_density(int n);

// Red-state field-ionization threshold |E_min| = e/(16 pi eps0 a0^2) / (9 n^4).
double ionization_threshold_field(int n);

// True when the motional field exceeds the red-state threshold of level n.
bool is_ionizing(const Environment& env, int n);

// Ortho-para Zeeman mixing scale, 1.2e-4 eV per tesla. Diagnostic only:
// it is well below the Doppler width of the first transition.
double zeeman_scale(const Environment& env);

// Level index nearest the continuous crossing of the Stark fan width with
// the adjacent-level splitting, i.e. round((13.6 eV / (6 e a0 |E|))^(1/5)).
// Empty when B = 0 or T = 0 (fans never open).
std::optional<int> interleaving_onset(const Environment& env);

// Smallest n in [2, n_cap] whose fan starts to field-ionize; empty if none.
std::optional<int> ionization_onset(const Environment& env);

LevelBand level_band(const Environment& env, int n);

struct StructureRow {
    LevelBand band;
    double lambda_3n = 0.0;       // wavelength of the 3->n transition, m
    double dlambda_doppler = 0.0; // Doppler FWHM on 3->n, m
    double dlambda_stark = 0.0;   // Delta E_S as wavelength broadening, m
    double dlambda_splitting = 0.0;
};

// Per-n rows over [n_lo, n_hi] (n = 3 excluded: the 3->n conversion is
// singular there). Wavelength broadenings use the linearization
// dlambda = dE lambda^2 / (2 pi c hbar).
std::vector<StructureRow> structure_table(const Environment& env, int n_lo,
                                          int n_hi);

struct StructureMarkers {
    std::optional<int> interleave_onset;
    std::optional<int> ionize_onset;
    int useful_lo = 0; // max(20, interleave onset)
    int useful_hi = 0; // ionization onset (or n_cap when none)
};

StructureMarkers structure_markers(const Environment& env);

} // namespace psryd
