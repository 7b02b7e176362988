// Compares the serial reference sweep against the OpenMP-parallel kernel
// and verifies that the two produce identical output.

#include <chrono>
#include <cstring>
#include <iostream>
#include <string>

#include "obe/io.hpp"
#include "obe/sweep.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace obe;
using clk = std::chrono::steady_clock;

namespace {

double seconds(clk::time_point a, clk::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

struct Timing {
    double serial;
    double parallel;
    bool identical;
};

Timing time_sweep(const SystemParams& p, double lo, double hi, int n,
                  SolverKind solver) {
    SweepOptions serial_opts;
    serial_opts.solver = solver;
    serial_opts.exec = ExecMode::Serial;
    SweepOptions parallel_opts;
    parallel_opts.solver = solver;
    parallel_opts.exec = ExecMode::Parallel;

    const auto t0 = clk::now();
    const SpectralSeries s = sweep_delta(p, lo, hi, n, serial_opts);
    const auto t1 = clk::now();
    const SpectralSeries q = sweep_delta(p, lo, hi, n, parallel_opts);
    const auto t2 = clk::now();

    return Timing{seconds(t0, t1), seconds(t1, t2),
                  write_csv(s) == write_csv(q)};
}

void report(const char* name, const Timing& t, int n) {
    std::cout << name << ": n=" << n << "  serial " << t.serial << " s,  "
              << "parallel " << t.parallel << " s,  speedup "
              << (t.parallel > 0 ? t.serial / t.parallel : 0.0)
              << (t.identical ? "  [outputs identical]"
                              : "  [OUTPUT MISMATCH]")
              << "\n";
}

} // namespace

int main(int argc, char** argv) {
    int n_fourier = 20001;
    int n_timedomain = 8;
    for (int i = 1; i + 1 < argc; i += 2) {
        if (std::strcmp(argv[i], "--n") == 0)
            n_fourier = std::atoi(argv[i + 1]);
        else if (std::strcmp(argv[i], "--td-n") == 0)
            n_timedomain = std::atoi(argv[i + 1]);
        else {
            std::cerr << "usage: obesim_bench [--n N] [--td-n N]\n";
            return 1;
        }
    }

#ifdef _OPENMP
    std::cout << "OpenMP threads: " << omp_get_max_threads() << "\n";
#else
    std::cout << "built without OpenMP; parallel mode runs serially\n";
#endif

    SystemParams p;
    p.Vc = cplx(2.5, 0.0);
    p.Vp = cplx(0.025, 0.0);

    bool ok = true;
    {
        const Timing t = time_sweep(p, -10.0, 10.0, n_fourier,
                                    SolverKind::Fourier);
        report("fourier   ", t, n_fourier);
        ok = ok && t.identical;
    }
    if (n_timedomain >= 2) {
        const Timing t = time_sweep(p, -5.0, 5.0, n_timedomain,
                                    SolverKind::TimeDomain);
        report("timedomain", t, n_timedomain);
        ok = ok && t.identical;
    }
    return ok ? 0 : 1;
}
