#include "psryd/bloch.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <thread>

#include "psryd/dipole.hpp"

namespace psryd {

using namespace constants;
using cplx = std::complex<double>;

namespace {

constexpr double pi = std::numbers::pi;

// FWHM of the sinc^2 spectrum of a piecewise-constant random phase is
// 4 x* / interval with sinc(x*)^2 = 1/2.
constexpr double sinc2_fwhm_const = 5.566229512255578; // 4 * 1.391557378...

// Photoionization cross section shipped as default for both the
// intermediate and the Rydberg level; calibrated against the reference
// 1->3->25 ensemble so that the total ionized fraction is ~0.3%.
constexpr double default_sigma_ion = 8.4e-23; // m^2

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

struct State {
    double p1 = 1.0, p2 = 0.0, p3 = 0.0, pion = 0.0;
    cplx r21{0.0, 0.0}, r32{0.0, 0.0}, r31{0.0, 0.0};
};

State axpy(const State& s, double h, const State& d) {
    State out;
    out.p1 = s.p1 + h * d.p1;
    out.p2 = s.p2 + h * d.p2;
    out.p3 = s.p3 + h * d.p3;
    out.pion = s.pion + h * d.pion;
    out.r21 = s.r21 + h * d.r21;
    out.r32 = s.r32 + h * d.r32;
    out.r31 = s.r31 + h * d.r31;
    return out;
}

// One pulse as seen by the integrator.
struct Drive {
    bool active = false;
    double rabi_coef = 0.0;   // Omega = rabi_coef * sqrt(I(t))
    double sigma_t = 0.0;
    double t_center = 0.0;
    double peak_intensity = 0.0;
    double flux_mid = 0.0; // sigma_ion_mid / (hbar omega), m^2 s / J units
    double flux_ryd = 0.0;
    double jump_interval = 0.0;
    cplx uphase{1.0, 0.0};

    double intensity(double t) const {
        if (!active)
            return 0.0;
        const double arg = (t - t_center) / sigma_t;
        return peak_intensity * std::exp(-0.5 * arg * arg);
    }
};

struct Rates {
    double gamma_sp = 0.0; // mid -> ground spontaneous rate
    double delta1 = 0.0, delta2 = 0.0;
};

void derivative(double i1, double i2, const Drive& d1, const Drive& d2,
                const Rates& rt, const State& s, State& ds) {
    const cplx a = 0.5 * d1.rabi_coef * std::sqrt(i1) * d1.uphase;
    const cplx b = 0.5 * d2.rabi_coef * std::sqrt(i2) * d2.uphase;
    const double g2 = d1.flux_mid * i1 + d2.flux_mid * i2;
    const double g3 = d1.flux_ryd * i1 + d2.flux_ryd * i2;

    const double pump1 = 2.0 * std::imag(std::conj(a) * s.r21);
    const double pump2 = 2.0 * std::imag(std::conj(b) * s.r32);
    const cplx iunit{0.0, 1.0};

    ds.p1 = pump1 + rt.gamma_sp * s.p2;
    ds.p2 = -pump1 + pump2 - (rt.gamma_sp + g2) * s.p2;
    ds.p3 = -pump2 - g3 * s.p3;
    ds.pion = g2 * s.p2 + g3 * s.p3;
    ds.r21 = -iunit * (a * (s.p1 - s.p2) - rt.delta1 * s.r21 +
                       std::conj(b) * s.r31) -
             0.5 * (rt.gamma_sp + g2) * s.r21;
    ds.r32 = -iunit * (b * (s.p2 - s.p3) - rt.delta2 * s.r32 -
                       std::conj(a) * s.r31) -
             0.5 * (rt.gamma_sp + g2 + g3) * s.r32;
    ds.r31 = -iunit * (b * s.r21 - (rt.delta1 + rt.delta2) * s.r31 -
                       a * s.r32) -
             0.5 * g3 * s.r31;
}

void rk4_step(double t, double h, const Drive& d1, const Drive& d2,
              const Rates& rt, State& s) {
    State k1, k2, k3, k4;
    const double im1 = d1.intensity(t + 0.5 * h);
    const double im2 = d2.intensity(t + 0.5 * h);
    derivative(d1.intensity(t), d2.intensity(t), d1, d2, rt, s, k1);
    derivative(im1, im2, d1, d2, rt, axpy(s, 0.5 * h, k1), k2);
    derivative(im1, im2, d1, d2, rt, axpy(s, 0.5 * h, k2), k3);
    derivative(d1.intensity(t + h), d2.intensity(t + h), d1, d2, rt,
               axpy(s, h, k3), k4);
    s.p1 += h / 6.0 * (k1.p1 + 2.0 * k2.p1 + 2.0 * k3.p1 + k4.p1);
    s.p2 += h / 6.0 * (k1.p2 + 2.0 * k2.p2 + 2.0 * k3.p2 + k4.p2);
    s.p3 += h / 6.0 * (k1.p3 + 2.0 * k2.p3 + 2.0 * k3.p3 + k4.p3);
    s.pion += h / 6.0 * (k1.pion + 2.0 * k2.pion + 2.0 * k3.pion + k4.pion);
    s.r21 += h / 6.0 * (k1.r21 + 2.0 * k2.r21 + 2.0 * k3.r21 + k4.r21);
    s.r32 += h / 6.0 * (k1.r32 + 2.0 * k2.r32 + 2.0 * k3.r32 + k4.r32);
    s.r31 += h / 6.0 * (k1.r31 + 2.0 * k2.r31 + 2.0 * k3.r31 + k4.r31);
}

int env_thread_cap() {
    if (const char* s = std::getenv("PS_RYDBERG_THREADS")) {
        const int v = std::atoi(s);
        if (v > 0)
            return v;
    }
    return 0;
}

} // namespace

double phase_interval(double domega_fwhm) {
    if (!(domega_fwhm > 0.0))
        throw std::invalid_argument("spectral width must be > 0");
    return sinc2_fwhm_const / domega_fwhm;
}

std::vector<cplx> stochastic_phase_samples(double domega_fwhm,
                                           double dt_sample, int n_samples,
                                           std::uint64_t seed) {
    const double interval = phase_interval(domega_fwhm);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 2.0 * pi);

    std::vector<cplx> out;
    out.reserve(n_samples);
    double next_jump = 0.0;
    cplx u{1.0, 0.0};
    for (int i = 0; i < n_samples; ++i) {
        const double t = i * dt_sample;
        while (t >= next_jump) {
            const double phi = uni(rng);
            u = cplx{std::cos(phi), std::sin(phi)};
            next_jump += interval;
        }
        out.push_back(u);
    }
    return out;
}

std::uint64_t realization_seed(std::uint64_t master_seed, int index) {
    return splitmix64(master_seed + 0x632BE59BD9B4E019ull *
                                        static_cast<std::uint64_t>(index + 1));
}

LadderConfig make_default_config(Scheme scheme, int n_final) {
    LadderConfig cfg;
    cfg.scheme = scheme;
    cfg.n_final = n_final;
    const int n_mid = cfg.n_mid();
    check_n(n_final, n_mid + 1);

    cfg.pulse_first.lambda0 = transition_wavelength(1, n_mid);
    cfg.pulse_first.duration = 4.0e-9;
    cfg.pulse_first.t_center = 0.0;
    cfg.pulse_second.lambda0 = transition_wavelength(n_mid, n_final);
    cfg.pulse_second.duration = 2.0e-9;
    cfg.pulse_second.t_center = 0.0;

    if (scheme == Scheme::ladder_1_3_n) {
        cfg.pulse_first.dlambda = 0.045e-9;
        cfg.pulse_first.fluence = 2.0;  // 200 uJ/cm^2
        cfg.pulse_second.dlambda = 0.72e-9;
        cfg.pulse_second.fluence = 20.0; // 2.0 mJ/cm^2
        cfg.lifetime_mid = 10.5e-9;
    } else {
        cfg.pulse_first.dlambda = 0.054e-9;
        cfg.pulse_first.fluence = 0.257; // 25.7 uJ/cm^2
        cfg.pulse_second.dlambda = 0.36e-9;
        cfg.pulse_second.fluence = 80.0; // 8.0 mJ/cm^2
        cfg.lifetime_mid = 3.0e-9;
    }
    cfg.sigma_ion_mid = default_sigma_ion;
    cfg.sigma_ion_ryd = default_sigma_ion;
    // Baseline ensembles average over field phase noise; the matched laser
    // bandwidth is the ensemble-level Doppler treatment. Velocity-class
    // resolution stays available via sample_velocity and lowers the final
    // Rydberg fraction by the uncovered tails of the Maxwell distribution.
    cfg.sample_velocity = false;
    return cfg;
}

std::vector<std::string> LadderConfig::validate() const {
    env.validate();
    const int nm = n_mid();
    check_n(n_final, nm + 1);
    pulse_first.validate();
    pulse_second.validate();
    if (lifetime_mid < 0.0)
        throw std::invalid_argument("intermediate lifetime must be >= 0");
    if (sigma_ion_mid < 0.0 || sigma_ion_ryd < 0.0)
        throw std::invalid_argument("ionization cross sections must be >= 0");
    if (n_realizations < 1)
        throw std::invalid_argument("need at least one realization");
    if (record_points < 2)
        throw std::invalid_argument("need at least two record points");

    double t_coh_min = -1.0;
    for (const LaserPulse* p : {&pulse_first, &pulse_second}) {
        if (p->fluence <= 0.0)
            continue;
        const double tc = p->coherence_time();
        if (t_coh_min < 0.0 || tc < t_coh_min)
            t_coh_min = tc;
    }
    if (dt > 0.0 && t_coh_min > 0.0 && dt > 0.1 * t_coh_min)
        throw std::invalid_argument(
            "integrator step too coarse: dt must be <= coherence_time/10 "
            "of the broader-band pulse");

    std::vector<std::string> warnings;
    for (const LaserPulse* p : {&pulse_first, &pulse_second})
        if (p->fluence > 0.0 && p->coherence_warning())
            warnings.push_back(
                "pulse coherence time exceeds duration/10; the incoherent "
                "field model is marginal");
    if (pulse_first.fluence > 0.0 && pulse_second.fluence > 0.0) {
        const double gap = std::abs(pulse_first.t_center - pulse_second.t_center);
        if (gap > 0.5 * (pulse_first.duration + pulse_second.duration) +
                      std::max(pulse_first.duration, pulse_second.duration))
            warnings.push_back("laser pulses do not overlap in time");
    }
    return warnings;
}

SimRecord simulate_one(const LadderConfig& config, std::uint64_t seed) {
    config.validate();
    const int nm = config.n_mid();

    // Couplings: bare dipole elements of the unperturbed transitions.
    const double d1 = dipole_moment({1, 0, 0}, {nm, 1, 0});
    const double d2 = dipole_moment({nm, 1, 0}, {config.n_final, 2, 0});
    const double fwhm_to_sigma = 1.0 / (2.0 * std::sqrt(2.0 * std::log(2.0)));

    Drive drives[2];
    const LaserPulse* pulses[2] = {&config.pulse_first, &config.pulse_second};
    const double dips[2] = {d1, d2};
    const double bind_mid = std::abs(level_energy(nm));
    const double bind_ryd = std::abs(level_energy(config.n_final));
    for (int i = 0; i < 2; ++i) {
        Drive& d = drives[i];
        const LaserPulse& p = *pulses[i];
        d.active = p.fluence > 0.0;
        if (!d.active)
            continue;
        d.sigma_t = p.duration * fwhm_to_sigma;
        d.t_center = p.t_center;
        d.peak_intensity = p.fluence / (d.sigma_t * std::sqrt(2.0 * pi));
        d.rabi_coef = dips[i] / hbar * std::sqrt(2.0 / (eps0 * c));
        d.jump_interval = phase_interval(p.angular_fwhm());
        const double photon = p.photon_energy();
        // A photon contributes to a level's ionization only above threshold.
        d.flux_mid = photon > bind_mid ? config.sigma_ion_mid / photon : 0.0;
        d.flux_ryd = photon > bind_ryd ? config.sigma_ion_ryd / photon : 0.0;
    }

    // Simulation window: +-2.5 FWHM around every active pulse.
    double t0 = 0.0, t1 = 1.0e-9;
    bool any = false;
    for (int i = 0; i < 2; ++i) {
        if (!drives[i].active)
            continue;
        const double lo = pulses[i]->t_center - 2.5 * pulses[i]->duration;
        const double hi = pulses[i]->t_center + 2.5 * pulses[i]->duration;
        t0 = any ? std::min(t0, lo) : lo;
        t1 = any ? std::max(t1, hi) : hi;
        any = true;
    }

    std::mt19937_64 rng_vel(splitmix64(seed));
    std::mt19937_64 rng_ph1(splitmix64(seed ^ 0x517CC1B727220A95ull));
    std::mt19937_64 rng_ph2(splitmix64(seed ^ 0x2545F4914F6CDD1Dull));
    std::uniform_real_distribution<double> uni(0.0, 2.0 * pi);

    double velocity = 0.0;
    if (config.sample_velocity) {
        std::normal_distribution<double> maxwell(0.0,
                                                 config.env.thermal_velocity());
        velocity = maxwell(rng_vel);
    }

    Rates rates;
    rates.gamma_sp = config.lifetime_mid > 0.0 ? 1.0 / config.lifetime_mid : 0.0;
    const double k1 = 2.0 * pi / config.pulse_first.lambda0;
    const double k2 = 2.0 * pi / config.pulse_second.lambda0;
    const double omega_l1 =
        2.0 * pi * c / config.pulse_first.lambda0 + config.detuning_first;
    const double omega_l2 =
        2.0 * pi * c / config.pulse_second.lambda0 + config.detuning_second;
    const double dir2 = config.copropagating ? 1.0 : -1.0;
    rates.delta1 = omega_l1 - transition_angular_frequency(1, nm) -
                   k1 * velocity;
    rates.delta2 = omega_l2 - transition_angular_frequency(nm, config.n_final) -
                   dir2 * k2 * velocity;

    // Automatic step: a fraction of the shortest phase interval, capped by
    // the fastest rotation rate in the equations.
    double dt = config.dt;
    if (dt <= 0.0) {
        dt = 0.25 * (t1 - t0);
        for (const Drive& d : drives)
            if (d.active)
                dt = std::min(dt, d.jump_interval / 12.0);
        double rate = std::abs(rates.delta1) + std::abs(rates.delta2) +
                      rates.gamma_sp;
        for (const Drive& d : drives)
            if (d.active)
                rate += d.rabi_coef * std::sqrt(d.peak_intensity);
        if (rate > 0.0)
            dt = std::min(dt, 0.25 / rate);
    }
    if ((t1 - t0) / dt > 2.0e8)
        throw std::invalid_argument("integrator step implies > 2e8 steps");

    SimRecord rec;
    rec.velocity = velocity;
    const int n_rec = config.record_points;
    rec.times.reserve(n_rec + 1);
    rec.p_ground.reserve(n_rec + 1);
    rec.p_mid.reserve(n_rec + 1);
    rec.p_ryd.reserve(n_rec + 1);
    rec.p_ion.reserve(n_rec + 1);

    State s;
    double next_jump[2] = {t0, t0}; // fresh phase at the window start
    const double rec_dt = (t1 - t0) / n_rec;
    int rec_idx = 0;
    double t = t0;

    auto record = [&](double tr) {
        rec.times.push_back(tr);
        rec.p_ground.push_back(s.p1);
        rec.p_mid.push_back(s.p2);
        rec.p_ryd.push_back(s.p3);
        rec.p_ion.push_back(s.pion);
    };

    while (true) {
        // Next event: phase jump of either drive, record time, or the end.
        for (int i = 0; i < 2; ++i) {
            if (!drives[i].active)
                continue;
            while (t >= next_jump[i] - 1e-18 * std::abs(next_jump[i]) - 1e-30) {
                const double phi = (i == 0 ? uni(rng_ph1) : uni(rng_ph2));
                drives[i].uphase = cplx{std::cos(phi), std::sin(phi)};
                next_jump[i] += drives[i].jump_interval;
            }
        }
        if (rec_idx <= n_rec && t >= t0 + rec_idx * rec_dt - 1e-15 * (t1 - t0)) {
            record(t);
            ++rec_idx;
        }
        if (t >= t1 - 1e-15 * (t1 - t0))
            break;

        double t_event = t1;
        for (int i = 0; i < 2; ++i)
            if (drives[i].active)
                t_event = std::min(t_event, next_jump[i]);
        if (rec_idx <= n_rec)
            t_event = std::min(t_event, t0 + rec_idx * rec_dt);

        const double span = t_event - t;
        const int n_sub = std::max(1, static_cast<int>(std::ceil(span / dt)));
        const double h = span / n_sub;
        for (int k = 0; k < n_sub; ++k)
            rk4_step(t + k * h, h, drives[0], drives[1], rates, s);
        t = t_event;
    }

    return rec;
}

EnsembleResult simulate_ensemble(const LadderConfig& config, int max_threads) {
    config.validate();
    const int n = config.n_realizations;

    std::vector<SimRecord> records(n);
    std::atomic<int> next{0};
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1)
        hw = 1;
    const int cap = env_thread_cap();
    int n_threads = max_threads > 0 ? max_threads : hw;
    if (cap > 0)
        n_threads = std::min(n_threads, cap);
    n_threads = std::min(n_threads, n);

    auto worker = [&]() {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n)
                return;
            records[i] = simulate_one(config, realization_seed(config.seed, i));
        }
    };
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (int i = 0; i < n_threads; ++i)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }

    // Index-ordered reduction keeps the result independent of scheduling.
    EnsembleResult res;
    res.n_realizations = n;
    res.seed = config.seed;
    res.times = records.front().times;
    const std::size_t m = res.times.size();
    auto reduce = [&](auto field, std::vector<double>& mean,
                      std::vector<double>& se) {
        mean.assign(m, 0.0);
        se.assign(m, 0.0);
        for (const SimRecord& r : records) {
            const auto& v = r.*field;
            for (std::size_t j = 0; j < m; ++j)
                mean[j] += v[j];
        }
        for (std::size_t j = 0; j < m; ++j)
            mean[j] /= n;
        if (n > 1) {
            for (const SimRecord& r : records) {
                const auto& v = r.*field;
                for (std::size_t j = 0; j < m; ++j) {
                    const double d = v[j] - mean[j];
                    se[j] += d * d;
                }
            }
            for (std::size_t j = 0; j < m; ++j)
                se[j] = std::sqrt(se[j] / (n - 1.0) / n);
        }
    };
    reduce(&SimRecord::p_ground, res.mean_ground, res.se_ground);
    reduce(&SimRecord::p_mid, res.mean_mid, res.se_mid);
    reduce(&SimRecord::p_ryd, res.mean_ryd, res.se_ryd);
    reduce(&SimRecord::p_ion, res.mean_ion, res.se_ion);

    res.final_ryd = res.mean_ryd.back();
    res.final_ryd_se = res.se_ryd.back();
    res.final_ion = res.mean_ion.back();
    res.final_ion_se = res.se_ion.back();
    res.final_ground = res.mean_ground.back();
    res.final_mid = res.mean_mid.back();
    return res;
}

double ionization_fraction(const EnsembleResult& result) {
    return result.final_ion;
}

} // namespace psryd
