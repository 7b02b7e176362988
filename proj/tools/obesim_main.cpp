#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "obe/io.hpp"
#include "obe/steady_fourier.hpp"

namespace {

using namespace obe;

struct ParamFlags {
    std::optional<double> vc, vp, omega_1m1, delta_c;
    std::optional<std::string> config;
    std::optional<std::string> preset;
    bool strict = false;
    int threads = -1; // -1: not set on the command line
};

void add_param_flags(CLI::App* cmd, ParamFlags& f) {
    cmd->add_option("--vc", f.vc, "Drive half-Rabi amplitude |Vc| (units of gamma)");
    cmd->add_option("--vp", f.vp, "Probe half-Rabi amplitude |Vp| (default 0.01*|Vc|)");
    cmd->add_option("--omega-1m1", f.omega_1m1, "Zeeman splitting omega_1m1");
    cmd->add_option("--delta-c", f.delta_c, "Drive detuning Delta_c");
    cmd->add_option("--config", f.config, "Config file (key=value lines); flags override");
    cmd->add_option("--preset", f.preset, "Figure preset fig2..fig6 (overrides params/sweep)");
    cmd->add_flag("--strict", f.strict, "Enforce rate-consistency and weak-probe checks");
    cmd->add_option("--threads", f.threads, "Worker threads (0 = all cores)");
}

RunConfig load_config(const ParamFlags& f) {
    RunConfig cfg;
    if (f.config) {
        std::ifstream in(*f.config);
        if (!in)
            throw ConfigError(0, "", "cannot open config file '" + *f.config + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        cfg = parse_config(ss.str());
    }
    if (f.vc)
        cfg.param_overrides["Vc"] = *f.vc;
    if (f.vp)
        cfg.param_overrides["Vp"] = *f.vp;
    if (f.omega_1m1)
        cfg.param_overrides["omega_1m1"] = *f.omega_1m1;
    if (f.delta_c)
        cfg.param_overrides["Delta_c"] = *f.delta_c;
    if (f.strict)
        cfg.strict = true;
    if (f.threads >= 0)
        cfg.threads = f.threads;
    if (f.preset)
        apply_preset(cfg, *f.preset);
    else if (cfg.preset)
        apply_preset(cfg, *cfg.preset);
    return cfg;
}

bool parse_range(const std::string& s, RunConfig& cfg) {
    std::istringstream ss(s);
    double lo, hi;
    int n;
    char c1, c2;
    if (!(ss >> lo >> c1 >> hi >> c2 >> n) || c1 != ':' || c2 != ':' ||
        !ss.eof())
        return false;
    cfg.delta_min = lo;
    cfg.delta_max = hi;
    cfg.n = n;
    return true;
}

SystemParams build_params_reporting(const RunConfig& cfg) {
    std::vector<std::string> warnings;
    SystemParams p = cfg.build_params(&warnings);
    for (const std::string& w : warnings)
        std::cerr << "warning: " << w << "\n";
    return p;
}

void emit(const std::optional<std::string>& path, const std::string& content) {
    if (!path)
        return;
    if (*path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(*path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open '" + *path + "' for writing");
    out << content;
}

int run_sweep(const ParamFlags& flags, const std::string& range,
              const std::string& solver, const std::string& panel,
              double delta0, std::optional<double> gv_omega,
              const std::optional<std::string>& out_csv,
              const std::optional<std::string>& out_json,
              const std::optional<std::string>& out_svg) {
    RunConfig cfg = load_config(flags);
    if (!range.empty() && !parse_range(range, cfg))
        throw ConfigError(0, "range", "cannot parse --range '" + range +
                                          "' (expected min:max:n)");
    if (!solver.empty())
        cfg.solver = solver == "timedomain" ? SolverKind::TimeDomain
                                            : SolverKind::Fourier;
    if (gv_omega)
        cfg.gv_omega = gv_omega;
    if (out_csv)
        cfg.out_csv = out_csv;
    if (out_json)
        cfg.out_json = out_json;
    if (out_svg)
        cfg.out_svg = out_svg;
    if (!cfg.out_csv && !cfg.out_json && !cfg.out_svg)
        throw ConfigError(0, "", "no output requested; pass --out-csv, "
                                 "--out-json and/or --out-svg");

    const SystemParams params = build_params_reporting(cfg);
    SweepOptions sopts;
    sopts.solver = cfg.solver;
    sopts.threads = cfg.threads;
    const SpectralSeries series =
        sweep_delta(params, cfg.delta_min, cfg.delta_max, cfg.n, sopts);

    emit(cfg.out_csv, write_csv(series));
    emit(cfg.out_svg, render_svg(series, panel == "populations"
                                             ? Panel::Populations
                                             : Panel::Chi));
    if (cfg.out_json) {
        const FeatureReport report =
            make_feature_report(params, series, delta0, cfg.gv_omega);
        emit(cfg.out_json, write_report_json(cfg.preset.value_or("custom"),
                                             delta0, report,
                                             cfg.gv_omega.has_value()));
    }
    return 0;
}

int run_figure(const std::string& name, const std::string& outdir,
               std::optional<double> gv_omega, int threads) {
    for (const std::string& path :
         run_figure_preset(name, outdir, gv_omega, threads < 0 ? 0 : threads))
        std::cout << path << "\n";
    return 0;
}

int run_point(const ParamFlags& flags, double delta, const std::string& solver,
              std::optional<double> gv_omega) {
    RunConfig cfg = load_config(flags);
    if (!solver.empty())
        cfg.solver = solver == "timedomain" ? SolverKind::TimeDomain
                                            : SolverKind::Fourier;
    if (gv_omega)
        cfg.gv_omega = gv_omega;
    const SystemParams params = build_params_reporting(cfg);

    const SpectralPoint pt = solve_point(params, delta, cfg.solver);
    SweepOptions sopts;
    sopts.solver = cfg.solver;
    sopts.threads = cfg.threads;
    const SpectralSeries window =
        sweep_delta(params, delta - 2.0, delta + 2.0, 201, sopts);
    const FeatureReport report =
        make_feature_report(params, window, delta, cfg.gv_omega);
    std::cout << write_point_json(pt, report, cfg.gv_omega.has_value());
    return 0;
}

int run_scan(const ParamFlags& flags, const std::string& vc_list,
             const std::string& range, const std::string& outdir) {
    RunConfig cfg = load_config(flags);
    if (!range.empty() && !parse_range(range, cfg))
        throw ConfigError(0, "range", "cannot parse --range '" + range +
                                          "' (expected min:max:n)");
    std::vector<double> vcs;
    std::istringstream ss(vc_list);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            vcs.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw ConfigError(0, "vc-list",
                              "cannot parse drive amplitude '" + tok + "'");
        }
    }

    const SystemParams params = build_params_reporting(cfg);
    SweepOptions sopts;
    sopts.solver = cfg.solver;
    sopts.threads = cfg.threads;
    const std::vector<SpectralSeries> scans =
        scan_drive(params, vcs, cfg.delta_min, cfg.delta_max, cfg.n, sopts);

    std::filesystem::create_directories(outdir);
    for (size_t i = 0; i < scans.size(); ++i) {
        const std::string path =
            (std::filesystem::path(outdir) /
             ("scan_vc" + format_double(vcs[i]) + ".csv")).string();
        emit(path, write_csv(scans[i]));
        std::cout << path << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pump-probe spectra of a driven degenerate two-level atomic "
                 "ensemble (Fe=0 <-> Fg=1)"};
    app.require_subcommand(1);

    ParamFlags flags;
    std::string range, solver, panel = "chi", vc_list;
    std::string figure_name, outdir = ".";
    double delta = 0.0, delta0 = 0.0;
    std::optional<double> gv_omega;
    std::optional<std::string> out_csv, out_json, out_svg;

    CLI::App* sweep = app.add_subcommand(
        "sweep", "Solve a detuning sweep and write CSV/SVG/JSON outputs");
    add_param_flags(sweep, flags);
    sweep->add_option("--range", range, "Detuning grid min:max:n (default -10:10:1001)");
    sweep->add_option("--solver", solver, "fourier|timedomain")
        ->check(CLI::IsMember({"fourier", "timedomain"}));
    sweep->add_option("--out-csv", out_csv, "CSV output path ('-' for stdout)");
    sweep->add_option("--out-json", out_json, "Feature-report JSON path ('-' for stdout)");
    sweep->add_option("--out-svg", out_svg, "SVG output path ('-' for stdout)");
    sweep->add_option("--panel", panel, "SVG panel: chi|populations")
        ->check(CLI::IsMember({"chi", "populations"}));
    sweep->add_option("--delta0", delta0, "Report evaluation detuning (default 0)");
    sweep->add_option("--gv-omega", gv_omega,
                      "Lumped prefactor Omega for c/V_g = 1 + Omega*D");

    CLI::App* figure = app.add_subcommand(
        "figure", "Reproduce a figure preset (fig2..fig6)");
    figure->add_option("name", figure_name, "fig2..fig6")->required();
    figure->add_option("--outdir", outdir, "Output directory (default .)");
    figure->add_option("--gv-omega", gv_omega, "Omega for the JSON report");
    figure->add_option("--threads", flags.threads, "Worker threads (0 = all cores)");

    CLI::App* point = app.add_subcommand(
        "point", "Solve one detuning and print a JSON point + feature report");
    add_param_flags(point, flags);
    point->add_option("--delta", delta, "Pump-probe detuning")->required();
    point->add_option("--solver", solver, "fourier|timedomain")
        ->check(CLI::IsMember({"fourier", "timedomain"}));
    point->add_option("--gv-omega", gv_omega, "Omega for the report");

    CLI::App* scan = app.add_subcommand(
        "scan", "Sweep each drive amplitude in a list; one CSV per entry");
    add_param_flags(scan, flags);
    scan->add_option("--vc-list", vc_list, "Comma-separated |Vc| values")->required();
    scan->add_option("--range", range, "Detuning grid min:max:n");
    scan->add_option("--outdir", outdir, "Output directory (default .)");

    try {
        app.parse(argc, argv);
        if (sweep->parsed())
            return run_sweep(flags, range, solver, panel, delta0, gv_omega,
                             out_csv, out_json, out_svg);
        if (figure->parsed())
            return run_figure(figure_name, outdir, gv_omega, flags.threads);
        if (point->parsed())
            return run_point(flags, delta, solver, gv_omega);
        if (scan->parsed())
            return run_scan(flags, vc_list, range, outdir);
        return 1;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const SingularSystemError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NonConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const EmptySeriesError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const SingularMatrixError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
