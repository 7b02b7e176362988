#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "obe/observables.hpp"
#include "obe/sweep.hpp"

namespace obe {

struct ConfigError : std::runtime_error {
    int line;        // 1-based; 0 when not tied to a line
    std::string key; // empty when not tied to a key
    ConfigError(int line_, std::string key_, const std::string& msg)
        : std::runtime_error(msg), line(line_), key(std::move(key_)) {}
};

struct RunConfig {
    std::map<std::string, double> param_overrides; // build_system_params keys
    bool strict = false;
    double delta_min = -10.0;
    double delta_max = 10.0;
    int n = 1001;
    SolverKind solver = SolverKind::Fourier;
    std::optional<std::string> preset; // fig2..fig6
    std::optional<double> gv_omega;
    std::optional<std::string> out_csv;
    std::optional<std::string> out_json;
    std::optional<std::string> out_svg;
    int threads = 0;

    SystemParams build_params(std::vector<std::string>* warnings = nullptr) const;
};

// Plain key=value lines; '#' starts a comment; blank lines ignored.
// Recognized keys: gamma, Gamma, Gamma0, gamma0, vc, vc_im, vp, vp_im,
// omega_1m1, delta_c, sweep (min:max:n), solver (fourier|timedomain),
// preset (fig2..fig6), gv_omega, strict (0|1|true|false), threads,
// out_csv, out_json, out_svg. Unknown keys, malformed lines and unparsable
// values are rejected with the line number and key named.
RunConfig parse_config(const std::string& text);

// Figure presets: fig2 (omega_1m1=0, Vc=1), fig3 (5, 1), fig4 (5, 2.5),
// fig5 (5, 5), fig6 (5, 10); probe derived as Vp = 0.01*Vc, drive on
// resonance, grid [-10, 10] x 1001, Fourier solver. Overrides any
// previously set parameter or sweep values.
void apply_preset(RunConfig& cfg, const std::string& name);

// Shortest decimal representation that parses back to the same double,
// capped at 12 significant digits. Locale-independent.
std::string format_double(double x);

// Header `delta,chi_re,chi_im,rho_ee,rho_11,rho_00,rho_m1m1`, one row per
// grid point in grid order, gaps as empty fields.
std::string write_csv(const SpectralSeries& series);

// Inverse of write_csv on the numeric content (params/provenance are not
// stored in the CSV).
SpectralSeries read_csv(const std::string& text);

enum class Panel { Chi, Populations };

// Standalone deterministic SVG line plot: chi panel draws Re/Im curves,
// populations panel the four populations, axes autoscaled with 5% margin.
std::string render_svg(const SpectralSeries& series, Panel panel);

// Dispersion, classification at delta0 and, when gv_omega is given, the
// group-velocity factor computed from the series and its parameters.
FeatureReport make_feature_report(const SystemParams& params,
                                  const SpectralSeries& series, double delta0,
                                  std::optional<double> gv_omega);

// Flat JSON report {preset, delta0, dispersion, feature,
// group_velocity_factor?, regime?}; optional keys omitted when absent.
std::string write_report_json(const std::string& preset, double delta0,
                              const FeatureReport& report, bool with_gv);

// Single spectral point plus feature report, as flat JSON.
std::string write_point_json(const SpectralPoint& pt,
                             const FeatureReport& report, bool with_gv);

// Runs a figure preset end to end and writes <name>_spectrum.csv,
// <name>_chi.svg, <name>_populations.svg and <name>_report.json into
// outdir. Returns the emitted paths.
std::vector<std::string> run_figure_preset(
    const std::string& name, const std::string& outdir,
    std::optional<double> gv_omega = std::nullopt, int threads = 0);

} // namespace obe
