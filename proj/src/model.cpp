#include "obe/model.hpp"

#include <cmath>

namespace obe {

namespace {

const std::array<const char*, 10> kKnownKeys = {
    "gamma", "Gamma", "Gamma0", "gamma0", "Vc", "Vc_im", "Vp", "Vp_im",
    "omega_1m1", "Delta_c"};

double take(const std::map<std::string, double>& raw, const std::string& key,
            double fallback) {
    auto it = raw.find(key);
    return it == raw.end() ? fallback : it->second;
}

void check_rate(const std::string& key, double value, bool allow_zero) {
    if (std::isnan(value))
        throw ParamError("parameter '" + key + "' is NaN");
    if (allow_zero ? value < 0.0 : value <= 0.0)
        throw ParamError("parameter '" + key + "' must be " +
                         (allow_zero ? "non-negative" : "positive") + ", got " +
                         std::to_string(value));
}

void report(bool strict, std::vector<std::string>* warnings,
            const std::string& msg) {
    if (strict)
        throw ParamError(msg);
    if (warnings)
        warnings->push_back(msg);
}

} // namespace

SystemParams build_system_params(const std::map<std::string, double>& raw,
                                 bool strict,
                                 std::vector<std::string>* warnings) {
    for (const auto& [key, value] : raw) {
        bool known = false;
        for (const char* k : kKnownKeys)
            known = known || key == k;
        if (!known)
            throw ParamError("unknown parameter key '" + key + "'");
        (void)value;
    }

    SystemParams p;
    p.gamma = take(raw, "gamma", 1.0);
    p.Gamma0 = take(raw, "Gamma0", 0.001);
    p.Gamma = take(raw, "Gamma", 2.0 * (p.gamma - p.Gamma0) / 3.0);
    p.gamma0 = take(raw, "gamma0", 2.0 * p.Gamma0);
    p.omega_1m1 = take(raw, "omega_1m1", 5.0);
    p.Delta_c = take(raw, "Delta_c", 0.0);
    p.Vc = cplx(take(raw, "Vc", 1.0), take(raw, "Vc_im", 0.0));
    if (raw.count("Vp") || raw.count("Vp_im"))
        p.Vp = cplx(take(raw, "Vp", 0.0), take(raw, "Vp_im", 0.0));
    else
        p.Vp = 0.01 * p.Vc;

    check_rate("gamma", p.gamma, false);
    check_rate("Gamma", p.Gamma, true);
    check_rate("Gamma0", p.Gamma0, true);
    check_rate("gamma0", p.gamma0, true);

    const double tol = 1e-12;
    if (std::abs(p.gamma - (3.0 * p.Gamma + 2.0 * p.Gamma0) / 2.0) > tol)
        report(strict, warnings,
               "gamma != (3*Gamma + 2*Gamma0)/2: collisional dephasing is "
               "implied");
    if (std::abs(p.gamma0 - 2.0 * p.Gamma0) > tol)
        report(strict, warnings, "gamma0 != 2*Gamma0");
    if (std::abs(p.Vp) > 0.1 * std::abs(p.Vc))
        report(strict, warnings,
               "|Vp| > 0.1*|Vc|: outside the weak-probe regime");

    return p;
}

DetuningSet level_detunings(const SystemParams& p, double delta) {
    DetuningSet d;
    d.delta = delta;
    d.d_e0 = p.Delta_c;
    d.d_e1 = p.Delta_c + delta + 0.5 * p.omega_1m1;
    d.d_em1 = p.Delta_c + delta - 0.5 * p.omega_1m1;
    d.d_10 = -delta - 0.5 * p.omega_1m1;
    d.d_m10 = -delta + 0.5 * p.omega_1m1;
    d.w_m11 = -p.omega_1m1;
    return d;
}

} // namespace obe
