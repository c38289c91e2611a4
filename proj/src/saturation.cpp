#include "psryd/saturation.hpp"

#include <cmath>
#include <stdexcept>

namespace psryd {

using namespace constants;

namespace {

constexpr double pi = std::numbers::pi;
const double ln2 = std::log(2.0);
const double fwhm_to_sigma = 1.0 / (2.0 * std::sqrt(2.0 * ln2));

double first_step_einstein_b(int n_mid) {
    check_n(n_mid, 2);
    return einstein_b({1, 0, 0}, {n_mid, 1, 0});
}

} // namespace

void LaserPulse::validate() const {
    if (!(lambda0 > 0.0))
        throw std::invalid_argument("pulse wavelength must be > 0");
    if (!(dlambda > 0.0))
        throw std::invalid_argument("pulse spectral FWHM must be > 0");
    if (!(duration > 0.0))
        throw std::invalid_argument("pulse duration must be > 0");
    if (fluence < 0.0)
        throw std::invalid_argument("pulse fluence must be >= 0");
}

double LaserPulse::coherence_time() const {
    return lambda0 * lambda0 / (c * dlambda);
}

double LaserPulse::angular_fwhm() const {
    return 2.0 * pi * c * dlambda / (lambda0 * lambda0);
}

double LaserPulse::photon_energy() const {
    return 2.0 * pi * hbar * c / lambda0;
}

double LaserPulse::intensity(double t) const {
    const double sigma_t = duration * fwhm_to_sigma;
    const double peak = fluence / (sigma_t * std::sqrt(2.0 * pi));
    const double arg = (t - t_center) / sigma_t;
    return peak * std::exp(-0.5 * arg * arg);
}

double LaserPulse::cumulative_fluence(double t) const {
    const double sigma_t = duration * fwhm_to_sigma;
    return fluence * 0.5 *
           (1.0 + std::erf((t - t_center) / (sigma_t * std::sqrt(2.0))));
}

bool LaserPulse::coherence_warning() const {
    return coherence_time() > 0.1 * duration;
}

double gaussian_overlap(double dw1_fwhm, double dw2_fwhm) {
    if (!(dw1_fwhm > 0.0) || !(dw2_fwhm > 0.0))
        throw std::invalid_argument("overlap requires positive widths");
    const double s1 = dw1_fwhm * fwhm_to_sigma;
    const double s2 = dw2_fwhm * fwhm_to_sigma;
    return 1.0 / std::sqrt(2.0 * pi * (s1 * s1 + s2 * s2));
}

double absorption_rate(double intensity, double b, double dw_laser,
                       double dw_atom) {
    return b * intensity * gaussian_overlap(dw_laser, dw_atom) / c;
}

double fsat_first_step(const Environment& env, int n_mid) {
    const double b = first_step_einstein_b(n_mid);
    const double lambda = transition_wavelength(1, n_mid);
    const double dlambda = doppler_fwhm(env, lambda).dlambda;
    return (c * c / b) * (std::pow(pi, 1.5) / ln2) * dlambda /
           (lambda * lambda);
}

double fsat_first_step_peakform(const Environment& env, int n_mid) {
    const double b = first_step_einstein_b(n_mid);
    const double lambda = transition_wavelength(1, n_mid);
    const double domega =
        2.0 * pi * c * doppler_fwhm(env, lambda).dlambda / (lambda * lambda);
    // Lineshape-peak convention matching fsat_first_step exactly.
    const double g0 = 2.0 * std::sqrt(2.0 / pi) * ln2 / domega;
    return c * std::sqrt(2.0) / (b * g0);
}

double fsat_first_step_overlap(const Environment& env, int n_mid) {
    const double b = first_step_einstein_b(n_mid);
    const double lambda = transition_wavelength(1, n_mid);
    const double domega =
        2.0 * pi * c * doppler_fwhm(env, lambda).dlambda / (lambda * lambda);
    return c / (b * gaussian_overlap(domega, domega));
}

double fsat_second_step(int n_mid, int n) {
    check_n(n_mid, 2);
    check_n(n, n_mid + 1);
    const double b = einstein_b({n_mid, 1, 0}, {n, 2, 0});
    const double dn = n;
    return c * level_scale / (b * hbar * dn * dn * dn);
}

double fsat_3n(int n) {
    if (n < 16)
        throw std::domain_error("band saturation fluence defined for n >= 16");
    return fsat_second_step(3, n);
}

double pulse_energy(double f_sat, double spot_fwhm, double overdrive) {
    if (!(spot_fwhm > 0.0))
        throw std::invalid_argument("spot FWHM must be > 0");
    if (overdrive < 0.0)
        throw std::invalid_argument("overdrive factor must be >= 0");
    const double r = spot_fwhm / 1.177;
    return pi * (overdrive * f_sat / 2.0) * r * r;
}

double rate_population(double t, const LaserPulse& pulse, double f_sat) {
    pulse.validate();
    if (!(f_sat > 0.0))
        throw std::invalid_argument("saturation fluence must be > 0");
    return 0.5 * (1.0 - std::exp(-2.0 * pulse.cumulative_fluence(t) / f_sat));
}

std::vector<RatePoint> rate_population_series(const LaserPulse& pulse,
                                              double f_sat, int n_steps) {
    pulse.validate();
    if (!(f_sat > 0.0))
        throw std::invalid_argument("saturation fluence must be > 0");
    if (n_steps < 10)
        throw std::invalid_argument("rate integration needs >= 10 steps");

    const double t0 = pulse.t_center - 4.0 * pulse.duration;
    const double t1 = pulse.t_center + 4.0 * pulse.duration;
    const double h = (t1 - t0) / n_steps;
    const auto rhs = [&](double t, double p) {
        return (1.0 - 2.0 * p) * pulse.intensity(t) / f_sat;
    };

    std::vector<RatePoint> out;
    out.reserve(n_steps + 1);
    double p = 0.0;
    out.push_back({t0, rate_population(t0, pulse, f_sat), p});
    for (int i = 0; i < n_steps; ++i) {
        const double t = t0 + i * h;
        const double k1 = rhs(t, p);
        const double k2 = rhs(t + 0.5 * h, p + 0.5 * h * k1);
        const double k3 = rhs(t + 0.5 * h, p + 0.5 * h * k2);
        const double k4 = rhs(t + h, p + h * k3);
        p += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        const double tn = t + h;
        out.push_back({tn, rate_population(tn, pulse, f_sat), p});
    }
    return out;
}

} // namespace psryd
