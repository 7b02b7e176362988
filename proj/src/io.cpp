#include "obe/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace obe {

namespace {

constexpr const char* kCsvHeader =
    "delta,chi_re,chi_im,rho_ee,rho_11,rho_00,rho_m1m1";

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos)
        return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

bool parse_double_strict(const std::string& s, double& out) {
    std::string t = s;
    if (!t.empty() && t.front() == '+')
        t.erase(t.begin());
    if (t.empty())
        return false;
    const char* begin = t.data();
    const char* end = begin + t.size();
    auto res = std::from_chars(begin, end, out);
    return res.ec == std::errc{} && res.ptr == end;
}

bool parse_int_strict(const std::string& s, int& out) {
    std::string t = s;
    if (!t.empty() && t.front() == '+')
        t.erase(t.begin());
    if (t.empty())
        return false;
    const char* begin = t.data();
    const char* end = begin + t.size();
    auto res = std::from_chars(begin, end, out);
    return res.ec == std::errc{} && res.ptr == end;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    size_t start = 0;
    while (true) {
        size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            parts.push_back(s.substr(start));
            break;
        }
        parts.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return parts;
}

const std::map<std::string, std::string> kParamKeyMap = {
    {"gamma", "gamma"},         {"Gamma", "Gamma"},
    {"Gamma0", "Gamma0"},       {"gamma0", "gamma0"},
    {"vc", "Vc"},               {"vc_im", "Vc_im"},
    {"vp", "Vp"},               {"vp_im", "Vp_im"},
    {"omega_1m1", "omega_1m1"}, {"delta_c", "Delta_c"}};

const std::vector<std::string> kPresetNames = {"fig2", "fig3", "fig4", "fig5",
                                               "fig6"};

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    out << content;
    if (!out)
        throw std::runtime_error("failed while writing '" + path + "'");
}

} // namespace

SystemParams RunConfig::build_params(std::vector<std::string>* warnings) const {
    return build_system_params(param_overrides, strict, warnings);
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    const std::vector<std::string> lines = split(text, '\n');
    for (size_t li = 0; li < lines.size(); ++li) {
        const int lineno = static_cast<int>(li) + 1;
        std::string line = lines[li];
        if (size_t hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(lineno, "",
                              "line " + std::to_string(lineno) +
                                  ": expected key=value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(lineno, "",
                              "line " + std::to_string(lineno) +
                                  ": missing key before '='");

        auto bad_value = [&]() {
            return ConfigError(lineno, key,
                               "line " + std::to_string(lineno) +
                                   ": cannot parse value '" + value +
                                   "' for key '" + key + "'");
        };

        if (auto it = kParamKeyMap.find(key); it != kParamKeyMap.end()) {
            double v;
            if (!parse_double_strict(value, v))
                throw bad_value();
            cfg.param_overrides[it->second] = v;
        } else if (key == "sweep") {
            const std::vector<std::string> parts = split(value, ':');
            double lo, hi;
            int n;
            if (parts.size() != 3 || !parse_double_strict(trim(parts[0]), lo) ||
                !parse_double_strict(trim(parts[1]), hi) ||
                !parse_int_strict(trim(parts[2]), n))
                throw bad_value();
            cfg.delta_min = lo;
            cfg.delta_max = hi;
            cfg.n = n;
        } else if (key == "solver") {
            if (value == "fourier")
                cfg.solver = SolverKind::Fourier;
            else if (value == "timedomain")
                cfg.solver = SolverKind::TimeDomain;
            else
                throw bad_value();
        } else if (key == "preset") {
            if (std::find(kPresetNames.begin(), kPresetNames.end(), value) ==
                kPresetNames.end())
                throw bad_value();
            cfg.preset = value;
        } else if (key == "gv_omega") {
            double v;
            if (!parse_double_strict(value, v))
                throw bad_value();
            cfg.gv_omega = v;
        } else if (key == "threads") {
            int v;
            if (!parse_int_strict(value, v) || v < 0)
                throw bad_value();
            cfg.threads = v;
        } else if (key == "strict") {
            if (value == "1" || value == "true")
                cfg.strict = true;
            else if (value == "0" || value == "false")
                cfg.strict = false;
            else
                throw bad_value();
        } else if (key == "out_csv" || key == "out_json" || key == "out_svg") {
            if (value.empty())
                throw bad_value();
            if (key == "out_csv")
                cfg.out_csv = value;
            else if (key == "out_json")
                cfg.out_json = value;
            else
                cfg.out_svg = value;
        } else {
            throw ConfigError(lineno, key,
                              "line " + std::to_string(lineno) +
                                  ": unknown key '" + key + "'");
        }
    }
    return cfg;
}

void apply_preset(RunConfig& cfg, const std::string& name) {
    double omega, vc;
    if (name == "fig2") {
        omega = 0.0;
        vc = 1.0;
    } else if (name == "fig3") {
        omega = 5.0;
        vc = 1.0;
    } else if (name == "fig4") {
        omega = 5.0;
        vc = 2.5;
    } else if (name == "fig5") {
        omega = 5.0;
        vc = 5.0;
    } else if (name == "fig6") {
        omega = 5.0;
        vc = 10.0;
    } else {
        throw std::invalid_argument("unknown figure preset '" + name +
                                    "' (expected fig2..fig6)");
    }
    cfg.preset = name;
    cfg.param_overrides.clear();
    cfg.param_overrides["omega_1m1"] = omega;
    cfg.param_overrides["Vc"] = vc; // Vp derives as 0.01*Vc
    cfg.delta_min = -10.0;
    cfg.delta_max = 10.0;
    cfg.n = 1001;
    cfg.solver = SolverKind::Fourier;
}

std::string format_double(double x) {
    if (x == 0.0)
        return "0";
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[64];
    for (int prec = 1; prec <= 12; ++prec) {
        auto res = std::to_chars(buf, buf + sizeof(buf), x,
                                 std::chars_format::general, prec);
        double back = 0.0;
        if (std::from_chars(buf, res.ptr, back).ec == std::errc{} && back == x)
            return std::string(buf, res.ptr);
    }
    auto res = std::to_chars(buf, buf + sizeof(buf), x,
                             std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

std::string write_csv(const SpectralSeries& series) {
    if (series.grid.empty())
        throw std::invalid_argument("write_csv: empty series");
    std::string out = kCsvHeader;
    out += '\n';
    for (size_t i = 0; i < series.grid.size(); ++i) {
        out += format_double(series.grid[i]);
        if (series.points[i]) {
            const SpectralPoint& pt = *series.points[i];
            for (double v : {pt.chi_re, pt.chi_im, pt.rho_ee, pt.rho_11,
                             pt.rho_00, pt.rho_m1m1}) {
                out += ',';
                out += format_double(v);
            }
        } else {
            out += ",,,,,,";
        }
        out += '\n';
    }
    return out;
}

SpectralSeries read_csv(const std::string& text) {
    std::vector<std::string> lines = split(text, '\n');
    if (!lines.empty() && lines.back().empty())
        lines.pop_back();
    if (lines.empty() || lines[0] != kCsvHeader)
        throw std::runtime_error("read_csv: missing or unexpected header");

    SpectralSeries series;
    for (size_t li = 1; li < lines.size(); ++li) {
        const std::vector<std::string> f = split(lines[li], ',');
        if (f.size() != 7)
            throw std::runtime_error("read_csv: line " + std::to_string(li + 1) +
                                     ": expected 7 fields, got " +
                                     std::to_string(f.size()));
        double delta;
        if (!parse_double_strict(f[0], delta))
            throw std::runtime_error("read_csv: line " + std::to_string(li + 1) +
                                     ": bad delta '" + f[0] + "'");
        series.grid.push_back(delta);
        const bool gap = std::all_of(f.begin() + 1, f.end(),
                                     [](const std::string& s) { return s.empty(); });
        if (gap) {
            series.points.emplace_back(std::nullopt);
            continue;
        }
        std::array<double, 6> v{};
        for (int j = 0; j < 6; ++j)
            if (!parse_double_strict(f[j + 1], v[j]))
                throw std::runtime_error(
                    "read_csv: line " + std::to_string(li + 1) +
                    ": bad value '" + f[j + 1] + "'");
        series.points.emplace_back(
            SpectralPoint{delta, v[0], v[1], v[2], v[3], v[4], v[5]});
    }
    return series;
}

// ---------------------------------------------------------------------------
// SVG rendering
// ---------------------------------------------------------------------------

namespace {

constexpr double kWidth = 960, kHeight = 600;
constexpr double kMarginL = 70, kMarginR = 24, kMarginT = 20, kMarginB = 48;
constexpr double kPlotW = kWidth - kMarginL - kMarginR;
constexpr double kPlotH = kHeight - kMarginT - kMarginB;

std::string fixed2(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v,
                             std::chars_format::fixed, 2);
    return std::string(buf, res.ptr);
}

struct Curve {
    const char* label;
    const char* color;
    std::vector<std::optional<double>> y; // aligned with the grid, gaps kept
};

struct NiceTicks {
    // tick value = k * mantissa * 10^exponent for k in [k_lo, k_hi]
    long mantissa;
    int exponent;
    long k_lo, k_hi;
    double step() const { return mantissa * std::pow(10.0, exponent); }
};

NiceTicks nice_ticks(double lo, double hi, int target) {
    const double raw = (hi - lo) / std::max(target, 2);
    const int e = static_cast<int>(std::floor(std::log10(raw)));
    const double base = raw / std::pow(10.0, e);
    long m = 10;
    if (base <= 1.0)
        m = 1;
    else if (base <= 2.0)
        m = 2;
    else if (base <= 5.0)
        m = 5;
    NiceTicks t;
    t.exponent = e + (m == 10 ? 1 : 0);
    t.mantissa = m == 10 ? 1 : m;
    const double step = t.step();
    t.k_lo = static_cast<long>(std::ceil(lo / step - 1e-9));
    t.k_hi = static_cast<long>(std::floor(hi / step + 1e-9));
    return t;
}

// Exact decimal label for k * mantissa * 10^exponent.
std::string tick_label(long k, const NiceTicks& t) {
    long long value = static_cast<long long>(k) * t.mantissa;
    if (value == 0)
        return "0";
    std::string digits = std::to_string(std::llabs(value));
    std::string s;
    if (t.exponent >= 0) {
        s = digits + std::string(t.exponent, '0');
    } else {
        const int frac = -t.exponent;
        if (static_cast<int>(digits.size()) <= frac)
            s = "0." + std::string(frac - digits.size(), '0') + digits;
        else
            s = digits.substr(0, digits.size() - frac) + "." +
                digits.substr(digits.size() - frac);
        // strip trailing zeros of the fraction
        while (s.back() == '0')
            s.pop_back();
        if (s.back() == '.')
            s.pop_back();
    }
    return (value < 0 ? "-" : "") + s;
}

} // namespace

std::string render_svg(const SpectralSeries& series, Panel panel) {
    if (series.grid.empty())
        throw std::invalid_argument("render_svg: empty series");

    std::vector<Curve> curves;
    auto pick = [&series](auto member) {
        std::vector<std::optional<double>> y(series.grid.size());
        for (size_t i = 0; i < series.grid.size(); ++i)
            if (series.points[i])
                y[i] = (*series.points[i]).*member;
        return y;
    };
    const char* y_title;
    if (panel == Panel::Chi) {
        curves.push_back({"Re chi", "#1f77b4", pick(&SpectralPoint::chi_re)});
        curves.push_back({"Im chi", "#d62728", pick(&SpectralPoint::chi_im)});
        y_title = "chi";
    } else {
        curves.push_back({"rho_ee", "#1f77b4", pick(&SpectralPoint::rho_ee)});
        curves.push_back({"rho_11", "#2ca02c", pick(&SpectralPoint::rho_11)});
        curves.push_back({"rho_00", "#ff7f0e", pick(&SpectralPoint::rho_00)});
        curves.push_back({"rho_m1m1", "#9467bd", pick(&SpectralPoint::rho_m1m1)});
        y_title = "population";
    }

    const double xmin = series.grid.front(), xmax = series.grid.back();
    double ymin = 0.0, ymax = 0.0;
    bool any = false;
    for (const Curve& c : curves)
        for (const auto& v : c.y)
            if (v) {
                ymin = any ? std::min(ymin, *v) : *v;
                ymax = any ? std::max(ymax, *v) : *v;
                any = true;
            }
    if (!any)
        throw std::invalid_argument("render_svg: series has no valid points");
    if (ymax == ymin) {
        ymin -= 1.0;
        ymax += 1.0;
    } else {
        const double pad = 0.05 * (ymax - ymin);
        ymin -= pad;
        ymax += pad;
    }
    const double xspan = xmax > xmin ? xmax - xmin : 1.0;

    auto px = [&](double x) {
        return kMarginL + (x - xmin) / xspan * kPlotW;
    };
    auto py = [&](double y) {
        return kMarginT + (ymax - y) / (ymax - ymin) * kPlotH;
    };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"960\" "
           "height=\"600\" viewBox=\"0 0 960 600\">\n";
    svg += "<rect width=\"960\" height=\"600\" fill=\"white\"/>\n";
    svg += "<rect x=\"" + fixed2(kMarginL) + "\" y=\"" + fixed2(kMarginT) +
           "\" width=\"" + fixed2(kPlotW) + "\" height=\"" + fixed2(kPlotH) +
           "\" fill=\"none\" stroke=\"black\"/>\n";

    const NiceTicks xt = nice_ticks(xmin, xmax, 8);
    for (long k = xt.k_lo; k <= xt.k_hi; ++k) {
        const double x = px(k * xt.step());
        svg += "<line x1=\"" + fixed2(x) + "\" y1=\"" +
               fixed2(kMarginT + kPlotH) + "\" x2=\"" + fixed2(x) + "\" y2=\"" +
               fixed2(kMarginT + kPlotH + 6) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + fixed2(x) + "\" y=\"" +
               fixed2(kMarginT + kPlotH + 20) +
               "\" font-family=\"sans-serif\" font-size=\"12\" "
               "text-anchor=\"middle\">" +
               tick_label(k, xt) + "</text>\n";
    }
    const NiceTicks yt = nice_ticks(ymin, ymax, 6);
    for (long k = yt.k_lo; k <= yt.k_hi; ++k) {
        const double y = py(k * yt.step());
        svg += "<line x1=\"" + fixed2(kMarginL - 6) + "\" y1=\"" + fixed2(y) +
               "\" x2=\"" + fixed2(kMarginL) + "\" y2=\"" + fixed2(y) +
               "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + fixed2(kMarginL - 9) + "\" y=\"" +
               fixed2(y + 4) +
               "\" font-family=\"sans-serif\" font-size=\"12\" "
               "text-anchor=\"end\">" +
               tick_label(k, yt) + "</text>\n";
    }
    svg += "<text x=\"" + fixed2(kMarginL + kPlotW / 2) + "\" y=\"" +
           fixed2(kHeight - 10) +
           "\" font-family=\"sans-serif\" font-size=\"14\" "
           "text-anchor=\"middle\">delta</text>\n";
    svg += "<text x=\"16\" y=\"" + fixed2(kMarginT + kPlotH / 2) +
           "\" font-family=\"sans-serif\" font-size=\"14\" "
           "text-anchor=\"middle\" transform=\"rotate(-90 16 " +
           fixed2(kMarginT + kPlotH / 2) + ")\">" + std::string(y_title) +
           "</text>\n";

    for (const Curve& c : curves) {
        std::string points;
        auto flush = [&]() {
            if (std::count(points.begin(), points.end(), ' ') >= 1)
                svg += "<polyline fill=\"none\" stroke=\"" +
                       std::string(c.color) + "\" stroke-width=\"1.5\" "
                       "points=\"" + points + "\"/>\n";
            points.clear();
        };
        for (size_t i = 0; i < series.grid.size(); ++i) {
            if (!c.y[i]) {
                flush();
                continue;
            }
            if (!points.empty())
                points += ' ';
            points += fixed2(px(series.grid[i])) + "," + fixed2(py(*c.y[i]));
        }
        flush();
    }

    double ly = kMarginT + 16;
    for (const Curve& c : curves) {
        const double lx = kMarginL + kPlotW - 150;
        svg += "<line x1=\"" + fixed2(lx) + "\" y1=\"" + fixed2(ly - 4) +
               "\" x2=\"" + fixed2(lx + 26) + "\" y2=\"" + fixed2(ly - 4) +
               "\" stroke=\"" + std::string(c.color) +
               "\" stroke-width=\"1.5\"/>\n";
        svg += "<text x=\"" + fixed2(lx + 32) + "\" y=\"" + fixed2(ly) +
               "\" font-family=\"sans-serif\" font-size=\"12\">" +
               std::string(c.label) + "</text>\n";
        ly += 18;
    }

    svg += "</svg>\n";
    return svg;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

FeatureReport make_feature_report(const SystemParams& params,
                                  const SpectralSeries& series, double delta0,
                                  std::optional<double> gv_omega) {
    FeatureReport report;
    report.dispersion = dispersion_at(params, delta0).value;
    report.feature = classify_feature(series, delta0);
    if (gv_omega) {
        const GroupVelocityParams gv{*gv_omega};
        report.group_velocity_factor = group_velocity_factor(report.dispersion, gv);
        report.regime = classify_regime(report.dispersion, gv);
    }
    return report;
}

std::string write_report_json(const std::string& preset, double delta0,
                              const FeatureReport& report, bool with_gv) {
    std::string j = "{\"preset\":\"" + preset + "\"";
    j += ",\"delta0\":" + format_double(delta0);
    j += ",\"dispersion\":" + format_double(report.dispersion);
    j += ",\"feature\":\"" + std::string(to_string(report.feature)) + "\"";
    if (with_gv) {
        j += ",\"group_velocity_factor\":" +
             format_double(report.group_velocity_factor);
        j += ",\"regime\":\"" + std::string(to_string(report.regime)) + "\"";
    }
    j += "}\n";
    return j;
}

std::string write_point_json(const SpectralPoint& pt,
                             const FeatureReport& report, bool with_gv) {
    std::string j = "{\"delta\":" + format_double(pt.delta);
    j += ",\"chi_re\":" + format_double(pt.chi_re);
    j += ",\"chi_im\":" + format_double(pt.chi_im);
    j += ",\"rho_ee\":" + format_double(pt.rho_ee);
    j += ",\"rho_11\":" + format_double(pt.rho_11);
    j += ",\"rho_00\":" + format_double(pt.rho_00);
    j += ",\"rho_m1m1\":" + format_double(pt.rho_m1m1);
    j += ",\"dispersion\":" + format_double(report.dispersion);
    j += ",\"feature\":\"" + std::string(to_string(report.feature)) + "\"";
    if (with_gv) {
        j += ",\"group_velocity_factor\":" +
             format_double(report.group_velocity_factor);
        j += ",\"regime\":\"" + std::string(to_string(report.regime)) + "\"";
    }
    j += "}\n";
    return j;
}

std::vector<std::string> run_figure_preset(const std::string& name,
                                           const std::string& outdir,
                                           std::optional<double> gv_omega,
                                           int threads) {
    RunConfig cfg;
    apply_preset(cfg, name);
    const SystemParams params = cfg.build_params();

    SweepOptions sopts;
    sopts.threads = threads;
    const SpectralSeries series =
        sweep_delta(params, cfg.delta_min, cfg.delta_max, cfg.n, sopts);
    const FeatureReport report =
        make_feature_report(params, series, 0.0, gv_omega);

    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(outdir, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory '" + outdir +
                                 "': " + ec.message());

    const std::string base = (fs::path(outdir) / name).string();
    const std::vector<std::pair<std::string, std::string>> files = {
        {base + "_spectrum.csv", write_csv(series)},
        {base + "_chi.svg", render_svg(series, Panel::Chi)},
        {base + "_populations.svg", render_svg(series, Panel::Populations)},
        {base + "_report.json",
         write_report_json(name, 0.0, report, gv_omega.has_value())}};

    std::vector<std::string> paths;
    for (const auto& [path, content] : files) {
        write_file(path, content);
        paths.push_back(path);
    }
    return paths;
}

} // namespace obe
