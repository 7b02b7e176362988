#include "obe/observables.hpp"

#include <algorithm>
#include <cmath>

#include "obe/steady_fourier.hpp"
#include "obe/sweep.hpp"

namespace obe {

std::string_view to_string(Feature f) {
    switch (f) {
    case Feature::EIT: return "EIT";
    case Feature::EIA: return "EIA";
    default: return "neither";
    }
}

std::string_view to_string(Regime r) {
    switch (r) {
    case Regime::Subluminal: return "subluminal";
    case Regime::Superluminal: return "superluminal";
    default: return "vacuum";
    }
}

cplx susceptibility_proxy(const FourierSolution& sol, const SystemParams& p) {
    if (p.Vp == cplx{})
        throw std::invalid_argument(
            "susceptibility_proxy: undefined for Vp = 0");
    return (sol.a_e1 + sol.a_em1) * p.gamma / p.Vp;
}

namespace {

double re_chi(const SystemParams& p, double delta) {
    return susceptibility_proxy(solve_steady_state(p, delta), p).real();
}

} // namespace

DispersionResult dispersion_at(const SystemParams& p, double delta0, double h) {
    if (h <= 0.0)
        throw std::invalid_argument("dispersion_at: h must be positive");
    const double d_h =
        (re_chi(p, delta0 + h) - re_chi(p, delta0 - h)) / (2.0 * h);
    const double d_h2 =
        (re_chi(p, delta0 + 0.5 * h) - re_chi(p, delta0 - 0.5 * h)) / h;
    DispersionResult res;
    res.value = d_h;
    const double scale = std::max({std::abs(d_h), std::abs(d_h2), 1e-300});
    res.near_singularity = std::abs(d_h - d_h2) > 1e-4 * scale;
    return res;
}

double group_velocity_factor(double dispersion, const GroupVelocityParams& gv) {
    return 1.0 + gv.Omega * dispersion;
}

Regime classify_regime(double dispersion, const GroupVelocityParams& gv) {
    if (gv.Omega * dispersion == 0.0)
        return Regime::Vacuum;
    return dispersion > 0.0 ? Regime::Subluminal : Regime::Superluminal;
}

Feature classify_feature(const SpectralSeries& series, double delta0,
                         double window, double eit_ratio, double eia_ratio) {
    std::vector<int> idx;
    for (int i = 0; i < static_cast<int>(series.grid.size()); ++i)
        if (std::abs(series.grid[i] - delta0) <= window && series.points[i])
            idx.push_back(i);
    if (idx.size() < 11)
        throw InsufficientDataError(
            "classify_feature: fewer than 11 valid points within the window");

    int i0 = idx[0];
    for (int i : idx)
        if (std::abs(series.grid[i] - delta0) < std::abs(series.grid[i0] - delta0))
            i0 = i;
    // need in-window neighbors; an edge point cannot be a local extremum
    if (i0 == idx.front() || i0 == idx.back())
        return Feature::Neither;

    auto im = [&series](int i) { return series.points[i]->chi_im; };
    if (!series.points[i0 - 1] || !series.points[i0 + 1])
        return Feature::Neither;
    const double c = im(i0), l = im(i0 - 1), r = im(i0 + 1);
    const bool local_min = c <= l && c <= r && (c < l || c < r);
    const bool local_max = c >= l && c >= r && (c > l || c > r);

    double wmax = im(idx[0]);
    for (int i : idx)
        wmax = std::max(wmax, im(i));
    const double edge_mean = 0.5 * (im(idx.front()) + im(idx.back()));

    if (local_min && c <= eit_ratio * wmax)
        return Feature::EIT;
    if (local_max && c >= eia_ratio * edge_mean)
        return Feature::EIA;
    return Feature::Neither;
}

CptMetrics cpt_metrics(const FourierSolution& sol) {
    CptMetrics m;
    m.rho_11 = sol.rho_11_dc;
    m.rho_m1m1 = sol.rho_m1m1_dc;
    m.rho_ee = sol.rho_ee_dc;
    m.rho_00 = sol.rho_00_dc();
    const double pair = m.rho_11 + m.rho_m1m1;
    m.trap_ratio = pair < 1e-12 ? 0.0 : m.rho_ee / pair;
    return m;
}

} // namespace obe
