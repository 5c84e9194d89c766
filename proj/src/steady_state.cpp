#include "agsim/steady_state.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "agsim/negativity.hpp"

namespace agsim {

namespace {

// Parabolic refinement of a sampled periodic maximum; returns the peak
// position as a fraction of the period.
double peak_phase(const std::vector<double>& samples) {
    const int n = static_cast<int>(samples.size());
    if (n < 3) return 0.0;
    int imax = 0;
    for (int i = 1; i < n; ++i)
        if (samples[i] > samples[imax]) imax = i;
    const double ym = samples[(imax + n - 1) % n];
    const double y0 = samples[imax];
    const double yp = samples[(imax + 1) % n];
    const double denom = ym - 2.0 * y0 + yp;
    double shift = 0.0;
    if (std::abs(denom) > 1e-300) shift = 0.5 * (ym - yp) / denom;
    shift = std::clamp(shift, -0.5, 0.5);
    double phase = (imax + shift) / n;
    if (phase < 0.0) phase += 1.0;
    return phase;
}

} // namespace

Eigen::MatrixXcd build_period_map(const RabiParams& params, int steps_per_period) {
    params.validate();
    const int d = 2 * params.n_fock;
    const int d2 = d * d;
    const double period = params.drive_period();
    const double dt = period / steps_per_period;

    Eigen::MatrixXcd map(d2, d2);
#pragma omp parallel if (!omp_in_parallel())
    {
        LindbladEvolver evolver(params, Frame::rotating);
        Eigen::MatrixXcd basis(d, d);
#pragma omp for schedule(dynamic, 8)
        for (int j = 0; j < d2; ++j) {
            basis.setZero();
            basis(j % d, j / d) = 1.0;
            double t = 0.0;
            for (int s = 0; s < steps_per_period; ++s) evolver.rk4_step(basis, t, dt);
            map.col(j) = Eigen::Map<const Eigen::VectorXcd>(basis.data(), d2);
        }
    }

    // Rotating -> lab at t = T_m: rho_lab = U^dag rho_rot U with
    // U = exp(i T_m (n + s/2)); as a superoperator this scales the output
    // entry (r,c) by conj(u_r) u_c.
    Eigen::VectorXcd u(d);
    for (int r = 0; r < d; ++r) {
        const double phase = period * ((r % params.n_fock) + 0.5 * (r >= params.n_fock));
        u(r) = std::exp(std::complex<double>(0.0, phase));
    }
    Eigen::VectorXcd scale(d2);
    for (int c = 0; c < d; ++c)
        for (int r = 0; r < d; ++r) scale(c * d + r) = std::conj(u(r)) * u(c);
    return scale.asDiagonal() * map;
}

SteadyStateResult steady_state_observables(const RabiParams& params,
                                           const SteadyStateOptions& options) {
    params.validate();
    const double gamma_min = std::min(params.gamma_c_ratio, params.gamma_qb_ratio);
    if (!(gamma_min > 0.0))
        throw domain_error("steady state requires positive decay rates");
    const int d = 2 * params.n_fock;
    const double period = params.drive_period();
    const int steps_per_period =
        std::max(4, static_cast<int>(std::ceil(period / options.dt_target)));

    const Eigen::MatrixXcd map = build_period_map(params, steps_per_period);

    const double lifetime = 1.0 / gamma_min;
    const long periods_per_window =
        std::max<long>(1, std::lround(options.window_lifetimes * lifetime / period));
    // W = map^periods_per_window by binary exponentiation.
    Eigen::MatrixXcd window_map = Eigen::MatrixXcd::Identity(d * d, d * d);
    {
        Eigen::MatrixXcd base = map;
        long e = periods_per_window;
        while (e > 0) {
            if (e & 1) window_map = window_map * base;
            base = base * base;
            e >>= 1;
        }
    }

    LindbladEvolver evolver(params, Frame::rotating);
    auto period_mean_photon = [&](const Eigen::MatrixXcd& rho_lab) {
        // Lab generator is T_m-periodic: evaluate the period starting at
        // drive phase 0, where the rotating and lab frames coincide.
        Eigen::MatrixXcd rho = rho_lab;
        double t = 0.0;
        double acc = 0.0;
        const double dt = period / steps_per_period;
        for (int s = 0; s < steps_per_period; ++s) {
            acc += evolver.mean_photon(rho);
            evolver.rk4_step(rho, t, dt);
        }
        return acc / steps_per_period;
    };

    SteadyStateResult res;
    Eigen::MatrixXcd rho = qubit_cavity_ground(params.n_fock).rho;
    Eigen::Map<Eigen::VectorXcd> rho_vec(rho.data(), d * d);
    double window_avg = period_mean_photon(rho);
    double t_now = 0.0;
    const double t_min = options.min_lifetimes * lifetime;
    for (int w = 0; w < options.max_windows; ++w) {
        rho_vec = (window_map * rho_vec).eval();
        t_now += periods_per_window * period;
        const double avg = period_mean_photon(rho);
        const double rel =
            std::abs(avg - window_avg) / std::max(std::abs(avg), 1e-300);
        window_avg = avg;
        res.windows_used = w + 1;
        if (rel < options.convergence_tol && t_now >= t_min) {
            res.converged = true;
            break;
        }
    }
    res.t_reached = t_now;

    // Hygiene on the steady state.
    res.trace_error = std::abs(rho.trace() - std::complex<double>(1.0));
    res.hermiticity_error = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    {
        Eigen::MatrixXcd sym = 0.5 * (rho + rho.adjoint());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sym, Eigen::EigenvaluesOnly);
        res.min_eigenvalue = es.eigenvalues().minCoeff();
    }
    res.steady_state = DensityMatrix{rho, t_now};

    // Fine two-period trace from the steady state (drive phase 0).
    const int fine_steps = steps_per_period * std::max(1, options.fine_substeps);
    const double dt_fine = period / fine_steps;
    Eigen::MatrixXcd r2 = rho;
    double t = 0.0;
    std::vector<double> n_first;
    for (int s = 0; s < 2 * fine_steps; ++s) {
        res.steady_trace.times.push_back(t);
        res.steady_trace.mean_photon.push_back(evolver.mean_photon(r2));
        res.steady_trace.a_squared.push_back(evolver.a_squared(r2));
        res.steady_trace.qubit_excitation.push_back(evolver.qubit_excitation(r2));
        res.steady_trace.log_negativity.push_back(log_negativity(r2, params.n_fock));
        evolver.rk4_step(r2, t, dt_fine);
    }

    double n_acc = 0.0, q_acc = 0.0, a2_acc = 0.0, en_acc = 0.0, en_max = 0.0;
    std::vector<double> n_samples(fine_steps), en_samples(fine_steps);
    double n_min = 1e300, n_max = -1e300, per_err = 0.0;
    for (int s = 0; s < fine_steps; ++s) {
        const double n1 = res.steady_trace.mean_photon[s];
        n_acc += n1;
        q_acc += res.steady_trace.qubit_excitation[s];
        a2_acc += std::abs(res.steady_trace.a_squared[s]);
        const double en = res.steady_trace.log_negativity[s];
        en_acc += en;
        en_max = std::max(en_max, en);
        n_samples[s] = n1;
        en_samples[s] = en;
        n_min = std::min(n_min, n1);
        n_max = std::max(n_max, n1);
        per_err = std::max(per_err,
                           std::abs(res.steady_trace.mean_photon[s + fine_steps] - n1));
    }
    res.mean_photon = n_acc / fine_steps;
    res.qubit_excitation = q_acc / fine_steps;
    res.a_squared_mag = a2_acc / fine_steps;
    res.e_n_mean = en_acc / fine_steps;
    res.e_n_max = en_max;
    res.photon_rate_si = params.gamma_c_ratio * params.omega_c_si * res.mean_photon;
    res.photon_peak_phase = peak_phase(n_samples);
    res.e_n_peak_phase = peak_phase(en_samples);
    res.periodicity_error = per_err / std::max(n_max - n_min, 1e-300);
    return res;
}

std::vector<double> dressed_transition_frequencies(const RabiParams& params, double lo,
                                                   double hi) {
    RabiParams undriven = params;
    undriven.gm_ratio = 0.0;
    // Static part of the lab-frame Hamiltonian in units of hbar omega_c.
    Eigen::MatrixXcd h = rabi_hamiltonian(0.0, undriven) /
                         (constants::hbar * params.omega_c_si);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    std::vector<double> out;
    const double e0 = es.eigenvalues()(0);
    for (int j = 1; j < es.eigenvalues().size(); ++j) {
        const double f = es.eigenvalues()(j) - e0;
        if (f >= lo && f <= hi) out.push_back(f);
    }
    return out;
}

SweepResult resonance_sweep(const RabiParams& base, const SweepOptions& options) {
    base.validate();
    if (!(options.omega_m_hi > options.omega_m_lo) || !(options.step > 0.0))
        throw config_error("sweep range/step invalid");

    // Deduplicated grid: coarse scan plus refinement clusters.
    std::map<long long, double> grid; // key = round(omega * 1e9)
    auto add = [&](double omega) {
        if (omega < options.omega_m_lo || omega > options.omega_m_hi) return;
        grid.emplace(std::llround(omega * 1e9), omega);
    };
    for (double w = options.omega_m_lo; w <= options.omega_m_hi + 1e-12;
         w += options.step)
        add(w);
    if (options.auto_refine) {
        const auto candidates =
            dressed_transition_frequencies(base, options.omega_m_lo, options.omega_m_hi);
        const double offsets[] = {0.0,    1e-6,  -1e-6, 2e-6,  -2e-6, 4e-6, -4e-6,
                                  8e-6,  -8e-6,  1.6e-5, -1.6e-5, 3e-5, -3e-5,
                                  1e-4,  -1e-4,  3e-4,  -3e-4};
        for (double c : candidates)
            for (double off : offsets) add(c + off);
    }

    std::vector<double> omegas;
    omegas.reserve(grid.size());
    for (auto& kv : grid) omegas.push_back(kv.second);

    SweepResult res;
    res.points.resize(omegas.size());
    const int npts = static_cast<int>(omegas.size());
#pragma omp parallel for schedule(dynamic) if (!omp_in_parallel())
    for (int i = 0; i < npts; ++i) {
        RabiParams p = base;
        p.omega_m_ratio = omegas[i];
        const SteadyStateResult ss = steady_state_observables(p, options.steady);
        res.points[i] = SweepPoint{omegas[i], ss.mean_photon, ss.e_n_max};
    }

    const auto best = std::max_element(
        res.points.begin(), res.points.end(),
        [](const SweepPoint& a, const SweepPoint& b) { return a.mean_photon < b.mean_photon; });
    res.argmax_omega_m = best->omega_m_ratio;
    return res;
}

} // namespace agsim
