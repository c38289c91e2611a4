#include "psryd/level_structure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace psryd {

using namespace constants;

namespace {

constexpr double pi = std::numbers::pi;

// Full fan width per unit n(n-1) and unit field: 6 e a0 (the doubled
// positronium radius is folded into the 6 = 2 * 3).
constexpr double stark_coeff = 6.0 * e_charge * bohr_radius; // C m

} // namespace

void Environment::validate() const {
    if (!(temperature > 0.0))
        throw std::invalid_argument("temperature must be > 0 K");
    if (!(bfield >= 0.0))
        throw std::invalid_argument("magnetic field must be >= 0 T");
}

double Environment::thermal_velocity() const {
    validate();
    return std::sqrt(k_boltzmann * temperature / m_ps);
}

double Environment::motional_field() const {
    return thermal_velocity() * bfield;
}

DopplerWidth doppler_fwhm(const Environment& env, double lambda0) {
    env.validate();
    if (!(lambda0 > 0.0))
        throw std::invalid_argument("wavelength must be > 0");
    const double rel =
        std::sqrt(8.0 * std::log(2.0) * k_boltzmann * env.temperature /
                  (m_ps * c * c));
    const double dlambda = lambda0 * rel;
    const double photon_energy = 2.0 * pi * hbar * c / lambda0;
    return {dlambda, photon_energy * rel};
}

double stark_width(const Environment& env, int n) {
    check_n(n);
    return stark_coeff * static_cast<double>(n) * (n - 1.0) *
           env.motional_field();
}

double level_splitting(int n) {
    check_n(n, 2);
    const double dn = n;
    return level_scale / (dn * dn * dn);
}

double interleaving_count(const Environment& env, int n) {
    check_n(n, 2);
    return stark_width(env, n) / level_splitting(n);
}

double sublevel_density(int n) {
    check_n(n, 2);
    const double dn = n;
    return dn * dn * dn * dn * dn * hbar / level_scale;
}

double ionization_threshold_field(int n) {
    check_n(n);
    const double dn = n;
    return e_charge / (16.0 * pi * eps0 * bohr_radius * bohr_radius) /
           (9.0 * dn * dn * dn * dn);
}

bool is_ionizing(const Environment& env, int n) {
    return env.motional_field() > ionization_threshold_field(n);
}

double zeeman_scale(const Environment& env) {
    env.validate();
    return 1.2e-4 * eV * env.bfield;
}

std::optional<int> interleaving_onset(const Environment& env) {
    const double field = env.motional_field();
    if (field <= 0.0)
        return std::nullopt;
    // Continuous solution of n^5 (6 e a0 / 13.6 eV) |E| = 1.
    const double n_star = std::pow(level_scale / (stark_coeff * field), 0.2);
    const int n = static_cast<int>(std::lround(n_star));
    return std::clamp(n, 2, n_cap);
}

std::optional<int> ionization_onset(const Environment& env) {
    for (int n = 2; n <= n_cap; ++n)
        if (is_ionizing(env, n))
            return n;
    return std::nullopt;
}

LevelBand level_band(const Environment& env, int n) {
    check_n(n, 2);
    LevelBand band;
    band.n = n;
    band.energy = level_energy(n);
    band.stark_width = stark_width(env, n);
    band.splitting = level_splitting(n);
    band.n_interleaved = band.stark_width / band.splitting;
    band.density = sublevel_density(n);
    band.ionizing = is_ionizing(env, n);
    return band;
}

std::vector<StructureRow> structure_table(const Environment& env, int n_lo,
                                          int n_hi) {
    check_n(n_lo, 2);
    check_n(n_hi, 2);
    if (n_lo > n_hi)
        throw std::invalid_argument("structure table requires n_lo <= n_hi");
    if (n_lo <= 3 && n_hi >= 3)
        throw std::invalid_argument(
            "structure table range may not include n = 3 "
            "(3->n broadening undefined there)");

    std::vector<StructureRow> rows;
    rows.reserve(n_hi - n_lo + 1);
    for (int n = n_lo; n <= n_hi; ++n) {
        StructureRow row;
        row.band = level_band(env, n);
        const int lo = std::min(3, n), hi = std::max(3, n);
        row.lambda_3n = transition_wavelength(lo, hi);
        // dlambda = dE lambda^2 / (2 pi c hbar)
        const double conv =
            row.lambda_3n * row.lambda_3n / (2.0 * pi * c * hbar);
        row.dlambda_doppler = doppler_fwhm(env, row.lambda_3n).dlambda;
        row.dlambda_stark = row.band.stark_width * conv;
        row.dlambda_splitting = row.band.splitting * conv;
        rows.push_back(row);
    }
    return rows;
}

StructureMarkers structure_markers(const Environment& env) {
    StructureMarkers m;
    m.interleave_onset = interleaving_onset(env);
    m.ionize_onset = ionization_onset(env);
    m.useful_lo = std::max(20, m.interleave_onset.value_or(2));
    m.useful_hi = m.ionize_onset.value_or(n_cap);
    return m;
}

} // namespace psryd
