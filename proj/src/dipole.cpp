#include "psryd/dipole.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace psryd {

using namespace constants;

namespace {

constexpr double pi = std::numbers::pi;

// Terminating 2F1(a, b; c; x) with a (and possibly b) a non-positive
// integer. Terms grow up to ~|x|^kmax, so accumulate in long double with
// Neumaier compensation; the result feeds a log-domain prefactor.
long double hyp2f1_terminating(int a, int b, int c, long double x) {
    long double term = 1.0L;
    long double sum = 1.0L;
    long double comp = 0.0L;
    for (int k = 0;; ++k) {
        if (a + k == 0 || b + k == 0)
            break;
        term *= static_cast<long double>(a + k) *
                static_cast<long double>(b + k) * x /
                (static_cast<long double>(c + k) * (k + 1));
        const long double t = sum + term;
        if (std::fabs(sum) >= std::fabs(term))
            comp += (sum - t) + term;
        else
            comp += (term - t) + sum;
        sum = t;
        if (k > 4 * n_cap)
            throw std::runtime_error("hypergeometric sum failed to terminate");
    }
    return sum + comp;
}

} // namespace

void StateLabel::validate() const {
    check_n(n);
    if (l < 0 || l >= n)
        throw std::domain_error("orbital quantum number requires 0 <= l < n");
    if (std::abs(m) > l)
        throw std::domain_error("magnetic quantum number requires |m| <= l");
}

// <n' l-1| r |n l> where (n, l) is the state carrying the larger l.
// Prefactor via lgamma, bracket of two terminating 2F1 sums.
double gordon_radial_hydrogen(int n1, int l1, int n2, int l2) {
    StateLabel{n1, l1, 0}.validate();
    StateLabel{n2, l2, 0}.validate();
    if (std::abs(l1 - l2) != 1)
        throw std::domain_error("dipole-forbidden pair: |l1 - l2| must be 1");
    if (n1 == n2)
        throw std::domain_error("same-n radial elements not supported");

    const bool first_has_larger_l = l1 > l2;
    const int n = first_has_larger_l ? n1 : n2;
    const int l = first_has_larger_l ? l1 : l2;
    const int np = first_has_larger_l ? n2 : n1;

    const long double x = -4.0L * n * np /
                          (static_cast<long double>(n - np) *
                           static_cast<long double>(n - np));
    const long double f1 = hyp2f1_terminating(-(n - l - 1), -(np - l), 2 * l, x);
    const long double f2 = hyp2f1_terminating(-(n - l + 1), -(np - l), 2 * l, x);
    const long double xi =
        static_cast<long double>(n - np) / static_cast<long double>(n + np);
    const long double bracket = f1 - xi * xi * f2;
    if (bracket == 0.0L)
        return 0.0;

    double log_pre = -std::log(4.0) - std::lgamma(2.0 * l) +
                     0.5 * (std::lgamma(n + l + 1.0) + std::lgamma(np + l + 0.0) -
                            std::lgamma(n - l + 0.0) - std::lgamma(np - l + 1.0)) +
                     (l + 1.0) * std::log(4.0 * n * np) +
                     (n + np - 2.0 * l - 2.0) * std::log(std::abs(n - np)) -
                     (n + np) * std::log(n + np + 0.0);

    const double log_mag =
        log_pre + static_cast<double>(std::log(std::fabs(bracket)));
    return std::exp(log_mag);
}

double radial_matrix_element(int n1, int l1, int n2, int l2) {
    return 2.0 * bohr_radius * gordon_radial_hydrogen(n1, l1, n2, l2);
}

double angular_factor(int l1, int m1, int l2, int m2, Polarization) {
    if (l1 < 0 || l2 < 0)
        throw std::domain_error("negative orbital quantum number");
    if (std::abs(l1 - l2) != 1)
        throw std::domain_error("dipole-forbidden pair: |l1 - l2| must be 1");
    if (m1 != m2)
        return 0.0; // linear-z selection rule, delta m = 0
    const int l = std::min(l1, l2); // transition l <-> l+1
    const double num = (l + 1.0) * (l + 1.0) - static_cast<double>(m1) * m1;
    if (num <= 0.0)
        return 0.0;
    return num / ((2.0 * l + 1.0) * (2.0 * l + 3.0));
}

double dipole_moment(const StateLabel& lower, const StateLabel& upper,
                     Polarization pol) {
    lower.validate();
    upper.validate();
    const double ang = angular_factor(lower.l, lower.m, upper.l, upper.m, pol);
    const double rad = radial_matrix_element(lower.n, lower.l, upper.n, upper.l);
    return e_charge * rad * std::sqrt(ang);
}

double einstein_b(const StateLabel& lower, const StateLabel& upper,
                  Polarization pol) {
    const double d = dipole_moment(lower, upper, pol);
    return pi * d * d / (eps0 * hbar * hbar);
}

double band_b(int n, const StateLabel& lower) {
    check_n(n, lower.n + 1);
    const StateLabel upper{n, lower.l + 1, lower.m};
    return einstein_b(lower, upper) / (static_cast<double>(n) * n);
}

double cross_section_13(double omega, const Environment& env) {
    if (!(omega > 0.0))
        throw std::invalid_argument("angular frequency must be > 0");
    const double omega13 = transition_angular_frequency(1, 3);
    const double lambda13 = transition_wavelength(1, 3);
    // FWHM in angular frequency mirrors the fractional Doppler width.
    const double dlambda = doppler_fwhm(env, lambda13).dlambda;
    const double domega = omega13 * dlambda / lambda13;
    const double sigma = domega / (2.0 * std::sqrt(2.0 * std::log(2.0)));
    const double arg = (omega - omega13) / sigma;
    const double g = std::exp(-0.5 * arg * arg) / (sigma * std::sqrt(2.0 * pi));
    const double b13 = einstein_b({1, 0, 0}, {3, 1, 0});
    return hbar * omega / c * g * b13;
}

double cross_section_3n(double omega, const Environment& env, int n) {
    if (!(omega > 0.0))
        throw std::invalid_argument("angular frequency must be > 0");
    env.validate();
    return hbar * omega / c * sublevel_density(n) * band_b(n);
}

TransitionSpec make_transition(const StateLabel& lower, const StateLabel& upper,
                               const Environment& env, Polarization pol) {
    TransitionSpec spec;
    spec.lower = lower;
    spec.upper = upper;
    spec.polarization = pol;
    spec.dipole = dipole_moment(lower, upper, pol);
    spec.einstein = einstein_b(lower, upper, pol);
    if (lower.n == 1 && upper.n == 3)
        spec.cross_section_peak =
            cross_section_13(transition_angular_frequency(1, 3), env);
    else if (lower.n == 3)
        spec.cross_section_peak = cross_section_3n(
            transition_angular_frequency(3, upper.n), env, upper.n);
    return spec;
}

} // namespace psryd
