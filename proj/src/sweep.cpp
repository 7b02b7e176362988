#include "obe/sweep.hpp"

#include <algorithm>

#include "obe/steady_fourier.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace obe {

namespace {

SpectralPoint make_point(double delta, const FourierSolution& sol,
                         const SystemParams& p) {
    const cplx chi = susceptibility_proxy(sol, p);
    return SpectralPoint{delta,          chi.real(),     chi.imag(),
                         sol.rho_ee_dc,  sol.rho_11_dc,  sol.rho_00_dc(),
                         sol.rho_m1m1_dc};
}

std::vector<double> uniform_grid(double delta_min, double delta_max, int n) {
    std::vector<double> grid(n);
    const double step = (delta_max - delta_min) / (n - 1);
    for (int i = 0; i < n; ++i)
        grid[i] = delta_min + i * step;
    grid.front() = delta_min;
    grid.back() = delta_max;
    return grid;
}

// A gap is recorded for a singular solve or an unconverged integration;
// anything else propagates.
std::optional<SpectralPoint> try_point(const SystemParams& p, double delta,
                                       SolverKind solver,
                                       const IntegratorOptions& iopts) {
    try {
        return solve_point(p, delta, solver, iopts);
    } catch (const SingularSystemError&) {
        return std::nullopt;
    } catch (const NonConvergenceError&) {
        return std::nullopt;
    }
}

} // namespace

SpectralPoint solve_point(const SystemParams& p, double delta,
                          SolverKind solver, const IntegratorOptions& iopts) {
    if (solver == SolverKind::Fourier)
        return make_point(delta, solve_steady_state(p, delta), p);
    const IntegrationResult res = integrate_to_steady(p, delta, iopts);
    if (!res.converged)
        throw NonConvergenceError(
            "time-domain integration did not converge at delta=" +
            std::to_string(delta) + " (derivative norm " +
            std::to_string(res.derivative_norm) + ")");
    return make_point(delta, extract_amplitudes(res.state), p);
}

SpectralSeries sweep_delta(const SystemParams& p, double delta_min,
                           double delta_max, int n, const SweepOptions& opts) {
    if (n < 2)
        throw std::invalid_argument("sweep_delta: need n >= 2 grid points");
    if (!(delta_min < delta_max))
        throw std::invalid_argument("sweep_delta: need delta_min < delta_max");
    if (p.Vp == cplx{})
        throw std::invalid_argument(
            "sweep_delta: probe amplitude is zero, susceptibility proxy "
            "undefined");

    SpectralSeries series;
    series.params = p;
    series.provenance = opts.solver;
    series.grid = uniform_grid(delta_min, delta_max, n);
    series.points.resize(n);

    if (opts.exec == ExecMode::Parallel) {
#ifdef _OPENMP
        const int nt = opts.threads > 0 ? opts.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nt)
        for (int i = 0; i < n; ++i)
            series.points[i] =
                try_point(p, series.grid[i], opts.solver, opts.integrator);
#else
        for (int i = 0; i < n; ++i)
            series.points[i] =
                try_point(p, series.grid[i], opts.solver, opts.integrator);
#endif
    } else {
        for (int i = 0; i < n; ++i)
            series.points[i] =
                try_point(p, series.grid[i], opts.solver, opts.integrator);
    }

    if (std::none_of(series.points.begin(), series.points.end(),
                     [](const auto& pt) { return pt.has_value(); }))
        throw EmptySeriesError("sweep_delta: every grid point was singular");
    return series;
}

std::vector<SpectralSeries> scan_drive(const SystemParams& p,
                                       const std::vector<double>& vc_values,
                                       double delta_min, double delta_max,
                                       int n, const SweepOptions& opts) {
    if (vc_values.empty())
        throw std::invalid_argument("scan_drive: empty drive amplitude list");
    for (double vc : vc_values)
        if (!(vc > 0.0))
            throw std::invalid_argument(
                "scan_drive: drive amplitudes must be positive, got " +
                std::to_string(vc));

    std::vector<SpectralSeries> out;
    out.reserve(vc_values.size());
    for (double vc : vc_values) {
        SystemParams q = p;
        q.Vc = cplx(vc, 0.0);
        q.Vp = 0.01 * q.Vc;
        out.push_back(sweep_delta(q, delta_min, delta_max, n, opts));
    }
    return out;
}

} // namespace obe
