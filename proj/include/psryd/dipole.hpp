#pragma once

// Hydrogenic dipole matrix elements (Gordon closed form), rescaled to
// positronium, plus Einstein absorption coefficients, the band-absorption
// coefficient of a Stark-mixed Rydberg manifold and absorption cross
// sections for both excitation steps.

#include "psryd/constants.hpp"
#include "psryd/level_structure.hpp"

namespace psryd {

struct StateLabel {
    int n = 1;
    int l = 0;
    int m = 0;

    void validate() const; // 0 <= l < n, |m| <= l
};

enum class Polarization { linear_z };

// |<n1 l1| r |n2 l2>| for hydrogen, in units of a0. Evaluated in the
// log-Gamma domain with the terminating hypergeometric sums done in long
// double (naive factorials overflow near n ~ 20).
double gordon_radial_hydrogen(int n1, int l1, int n2, int l2);

// Positronium radial element in metres: 2 a0 times the hydrogen value.
double radial_matrix_element(int n1, int l1, int n2, int l2);

// Squared angular part of <l2 m2| z/r |l1 m1> for linear-z polarization;
// 0 when m1 != m2, throws when |l1-l2| != 1.
double angular_factor(int l1, int m1, int l2, int m2,
                      Polarization pol = Polarization::linear_z);

// e * r_radial * sqrt(angular), C m; phase convention: >= 0.
double dipole_moment(const StateLabel& lower, const StateLabel& upper,
                     Polarization pol = Polarization::linear_z);

// Absorption coefficient B = pi |d|^2 / (eps0 hbar^2).
double einstein_b(const StateLabel& lower, const StateLabel& upper,
                  Polarization pol = Polarization::linear_z);

// Per-sublevel coefficient of the mixed band: B_S = B(lower -> (n, l+1, m)) / n^2.
double band_b(int n, const StateLabel& lower = {3, 1, 0});

// sigma_13(omega) = (hbar omega / c) g_D(omega - omega_13) B_13 with a
// unit-area Gaussian Doppler lineshape in angular frequency.
double cross_section_13(double omega, const Environment& env);

// sigma_3n(omega) = (hbar omega / c) rho(n) B_S(n): flat across the band.
double cross_section_3n(double omega, const Environment& env, int n);

struct TransitionSpec {
    StateLabel lower;
    StateLabel upper;
    Polarization polarization = Polarization::linear_z;
    double dipole = 0.0;             // C m
    double einstein = 0.0;           // B coefficient
    double cross_section_peak = 0.0; // m^2, at line center
};

TransitionSpec make_transition(const StateLabel& lower, const StateLabel& upper,
                               const Environment& env,
                               Polarization pol = Polarization::linear_z);

} // namespace psryd
