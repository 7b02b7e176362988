#pragma once

#include <optional>
#include <vector>

#include "obe/bloch_time.hpp"
#include "obe/model.hpp"
#include "obe/observables.hpp"

namespace obe {

enum class SolverKind { Fourier, TimeDomain };
enum class ExecMode { Parallel, Serial };

struct EmptySeriesError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SweepOptions {
    SolverKind solver = SolverKind::Fourier;
    ExecMode exec = ExecMode::Parallel;
    int threads = 0; // 0 = available parallelism
    IntegratorOptions integrator{};
};

// Per-detuning observables over a uniform grid. A singular point leaves a
// gap (nullopt) instead of failing the sweep, so points.size() always
// equals grid.size().
struct SpectralSeries {
    SystemParams params;
    std::vector<double> grid;
    std::vector<std::optional<SpectralPoint>> points;
    SolverKind provenance = SolverKind::Fourier;
};

SpectralPoint solve_point(const SystemParams& params, double delta,
                          SolverKind solver,
                          const IntegratorOptions& iopts = {});

// Uniform inclusive grid of n >= 2 points; every point solved independently.
// Parallel and serial execution produce bit-identical series. Throws
// EmptySeriesError when every point is singular.
SpectralSeries sweep_delta(const SystemParams& params, double delta_min,
                           double delta_max, int n,
                           const SweepOptions& opts = {});

// One series per drive amplitude, identical grids, order preserved. The
// probe is re-derived as Vp = 0.01 * Vc for each entry.
std::vector<SpectralSeries> scan_drive(const SystemParams& params,
                                       const std::vector<double>& vc_values,
                                       double delta_min, double delta_max,
                                       int n, const SweepOptions& opts = {});

} // namespace obe
