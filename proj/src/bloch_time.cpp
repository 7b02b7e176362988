#include "obe/bloch_time.hpp"

#include <cmath>

namespace obe {

namespace {

RotatingState axpy(const RotatingState& y, double a, const RotatingState& k) {
    RotatingState r;
    r.rho_ee = y.rho_ee + a * k.rho_ee;
    r.rho_11 = y.rho_11 + a * k.rho_11;
    r.rho_00 = y.rho_00 + a * k.rho_00;
    r.rho_m1m1 = y.rho_m1m1 + a * k.rho_m1m1;
    r.sigma_e0 = y.sigma_e0 + a * k.sigma_e0;
    r.sigma_e1 = y.sigma_e1 + a * k.sigma_e1;
    r.sigma_em1 = y.sigma_em1 + a * k.sigma_em1;
    r.sigma_10 = y.sigma_10 + a * k.sigma_10;
    r.sigma_m10 = y.sigma_m10 + a * k.sigma_m10;
    r.sigma_1m1 = y.sigma_1m1 + a * k.sigma_1m1;
    return r;
}

RotatingState rk4_combine(const RotatingState& y, double dt,
                          const RotatingState& k1, const RotatingState& k2,
                          const RotatingState& k3, const RotatingState& k4) {
    RotatingState r = y;
    const double w = dt / 6.0;
    r = axpy(r, w, k1);
    r = axpy(r, 2.0 * w, k2);
    r = axpy(r, 2.0 * w, k3);
    r = axpy(r, w, k4);
    return r;
}

} // namespace

RotatingState rotating_frame_rhs(const RotatingState& s, const SystemParams& p,
                                 double delta) {
    const DetuningSet d = level_detunings(p, delta);
    const cplx I(0.0, 1.0);
    const cplx Vc = p.Vc, Vp = p.Vp;
    const cplx Vcs = std::conj(Vc), Vps = std::conj(Vp);

    const double pump_m1 = 2.0 * std::imag(Vps * s.sigma_em1);
    const double pump_p1 = 2.0 * std::imag(Vps * s.sigma_e1);
    const double pump_0 = 2.0 * std::imag(Vcs * s.sigma_e0);

    RotatingState f;
    f.rho_ee = pump_m1 + pump_p1 + pump_0 - 3.0 * p.Gamma * s.rho_ee;
    f.rho_m1m1 = -pump_m1 - 2.0 * p.Gamma0 * s.rho_m1m1 +
                 p.Gamma * s.rho_ee + p.Gamma0 * s.rho_00 +
                 p.Gamma0 * s.rho_11;
    f.rho_11 = -pump_p1 - 2.0 * p.Gamma0 * s.rho_11 + p.Gamma * s.rho_ee +
               p.Gamma0 * s.rho_00 + p.Gamma0 * s.rho_m1m1;
    f.rho_00 = -pump_0 - 2.0 * p.Gamma0 * s.rho_00 + p.Gamma * s.rho_ee +
               p.Gamma0 * s.rho_m1m1 + p.Gamma0 * s.rho_11;

    f.sigma_e0 = (I * d.d_e0 - p.gamma) * s.sigma_e0 -
                 I * Vc * (s.rho_ee - s.rho_00) +
                 I * Vp * (s.sigma_10 + s.sigma_m10);
    f.sigma_em1 = (I * d.d_em1 - p.gamma) * s.sigma_em1 -
                  I * Vp * (s.rho_ee - s.rho_m1m1) + I * Vp * s.sigma_1m1 +
                  I * Vc * std::conj(s.sigma_m10);
    f.sigma_e1 = (I * d.d_e1 - p.gamma) * s.sigma_e1 -
                 I * Vp * (s.rho_ee - s.rho_11) +
                 I * Vp * std::conj(s.sigma_1m1) +
                 I * Vc * std::conj(s.sigma_10);
    f.sigma_10 = (I * d.d_10 - p.gamma0) * s.sigma_10 -
                 I * (Vc * std::conj(s.sigma_e1) - Vps * s.sigma_e0);
    f.sigma_m10 = (I * d.d_m10 - p.gamma0) * s.sigma_m10 -
                  I * (Vc * std::conj(s.sigma_em1) - Vps * s.sigma_e0);
    f.sigma_1m1 = -(I * p.omega_1m1 + p.gamma0) * s.sigma_1m1 -
                  I * (Vp * std::conj(s.sigma_e1) - Vps * s.sigma_em1);
    return f;
}

double derivative_sup_norm(const RotatingState& f) {
    auto cmax = [](const cplx& z) {
        return std::max(std::abs(z.real()), std::abs(z.imag()));
    };
    double n = std::abs(f.rho_ee);
    n = std::max(n, std::abs(f.rho_11));
    n = std::max(n, std::abs(f.rho_00));
    n = std::max(n, std::abs(f.rho_m1m1));
    n = std::max(n, cmax(f.sigma_e0));
    n = std::max(n, cmax(f.sigma_e1));
    n = std::max(n, cmax(f.sigma_em1));
    n = std::max(n, cmax(f.sigma_10));
    n = std::max(n, cmax(f.sigma_m10));
    n = std::max(n, cmax(f.sigma_1m1));
    return n;
}

IntegrationResult integrate_to_steady(const SystemParams& p, double delta,
                                      const IntegratorOptions& opts) {
    if (opts.dt <= 0.0 || opts.t_max <= 0.0 || opts.convergence_tol <= 0.0)
        throw std::invalid_argument("integrate_to_steady: dt, t_max and "
                                    "convergence_tol must be positive");

    RotatingState y;
    if (opts.initial_state) {
        y = *opts.initial_state;
    } else {
        y.rho_11 = y.rho_00 = y.rho_m1m1 = 1.0 / 3.0;
    }

    IntegrationResult res;
    const double dt = opts.dt;
    const long n_steps = static_cast<long>(std::ceil(opts.t_max / dt));
    double t = 0.0;
    for (long step = 0; step < n_steps; ++step) {
        const RotatingState k1 = rotating_frame_rhs(y, p, delta);
        const double norm = derivative_sup_norm(k1);
        if (norm < opts.convergence_tol) {
            res.state = y;
            res.t_final = t;
            res.derivative_norm = norm;
            res.converged = true;
            return res;
        }
        const RotatingState k2 = rotating_frame_rhs(axpy(y, 0.5 * dt, k1), p, delta);
        const RotatingState k3 = rotating_frame_rhs(axpy(y, 0.5 * dt, k2), p, delta);
        const RotatingState k4 = rotating_frame_rhs(axpy(y, dt, k3), p, delta);
        y = rk4_combine(y, dt, k1, k2, k3, k4);
        t += dt;
        res.max_trace_drift =
            std::max(res.max_trace_drift, std::abs(y.trace() - 1.0));
    }
    res.state = y;
    res.t_final = t;
    res.derivative_norm = derivative_sup_norm(rotating_frame_rhs(y, p, delta));
    res.converged = res.derivative_norm < opts.convergence_tol;
    return res;
}

FourierSolution extract_amplitudes(const RotatingState& s) {
    FourierSolution sol;
    sol.rho_ee_dc = s.rho_ee;
    sol.rho_11_dc = s.rho_11;
    sol.rho_m1m1_dc = s.rho_m1m1;
    sol.rho_m11_dc = std::conj(s.sigma_1m1);
    sol.a_e0 = s.sigma_e0;
    sol.a_em1 = s.sigma_em1;
    sol.a_e1 = s.sigma_e1;
    sol.a_10 = s.sigma_10;
    sol.a_m10 = s.sigma_m10;
    return sol;
}

} // namespace obe
