#pragma once

// Physical constants and the positronium level ladder shared by every
// other module. All values are SI; unit conversions (eV, nm, uJ/cm^2)
// belong to the I/O boundary, not here.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace psryd {
namespace constants {

// CODATA 2018.
inline constexpr double c = 299792458.0;                // m/s
inline constexpr double hbar = 1.054571817e-34;         // J s
inline constexpr double e_charge = 1.602176634e-19;     // C
inline constexpr double bohr_radius = 5.29177210903e-11; // m
inline constexpr double eps0 = 8.8541878128e-12;        // F/m
inline constexpr double k_boltzmann = 1.380649e-23;     // J/K
inline constexpr double m_electron = 9.1093837015e-31;  // kg

inline constexpr double eV = e_charge;                  // J

// Positronium: two electron masses, doubled ground-state radius (2 a0),
// halved Rydberg energy.
inline constexpr double m_ps = 2.0 * m_electron;        // kg
inline constexpr double ry_ps = 6.8 * eV;               // J

// Scale of the level ladder E_n = -level_scale / (2 n^2). Kept as the
// exact 13.6 eV literal the derived quantities (splitting, sublevel
// density, band saturation) are anchored to.
inline constexpr double level_scale = 13.6 * eV;        // J

// Guard against silent overflow in n^5-type expressions.
inline constexpr int n_cap = 200;

} // namespace constants

inline int check_n(int n, int n_min = 1) {
    if (n < n_min || n > constants::n_cap)
        throw std::domain_error("principal quantum number out of range [" +
                                std::to_string(n_min) + ", " +
                                std::to_string(constants::n_cap) +
                                "]: n = " + std::to_string(n));
    return n;
}

// E_n = -13.6 eV / (2 n^2): -6.8 eV at n=1, -0.7556 eV at n=3.
inline double level_energy(int n) {
    check_n(n);
    return -constants::level_scale / (2.0 * n * n);
}

inline double transition_energy(int n_lo, int n_hi) {
    check_n(n_lo);
    check_n(n_hi);
    if (n_lo >= n_hi)
        throw std::domain_error("transition requires n_lo < n_hi");
    return level_energy(n_hi) - level_energy(n_lo);
}

inline double transition_angular_frequency(int n_lo, int n_hi) {
    return transition_energy(n_lo, n_hi) / constants::hbar;
}

// lambda = 2 pi hbar c / (E_hi - E_lo); 205 nm for 1->3, ~1670 nm for 3->25.
inline double transition_wavelength(int n_lo, int n_hi) {
    return 2.0 * std::numbers::pi * constants::hbar * constants::c /
           transition_energy(n_lo, n_hi);
}

} // namespace psryd
