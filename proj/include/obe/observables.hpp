#pragma once

#include <string_view>

#include "obe/model.hpp"

namespace obe {

struct SpectralPoint {
    double delta;
    double chi_re;
    double chi_im;
    double rho_ee;
    double rho_11;
    double rho_00;
    double rho_m1m1;
};

enum class Feature { EIT, EIA, Neither };
enum class Regime { Subluminal, Superluminal, Vacuum };

std::string_view to_string(Feature f);
std::string_view to_string(Regime r);

struct GroupVelocityParams {
    double Omega = 0.0; // lumped prefactor in c/V_g = 1 + Omega * D
};

struct FeatureReport {
    Feature feature = Feature::Neither;
    double dispersion = 0.0;
    double group_velocity_factor = 1.0;
    Regime regime = Regime::Vacuum;
};

struct CptMetrics {
    double rho_11;
    double rho_m1m1;
    double rho_ee;
    double rho_00;
    double trap_ratio; // rho_ee / (rho_11 + rho_m1m1), 0 on empty ground pair
};

struct SpectralSeries; // sweep.hpp

// Dimensionless refraction/absorption proxy (a_e1 + a_em1) * gamma / Vp.
// The probe amplitudes are first order in Vp, so the proxy is
// probe-normalized. Throws on Vp = 0.
cplx susceptibility_proxy(const FourierSolution& sol, const SystemParams& params);

struct DispersionResult {
    double value = 0.0;          // central difference of Re chi at step h
    bool near_singularity = false; // h and h/2 estimates disagree > 1e-4 rel
};

// d(Re chi)/d(delta) at delta0 by central differences with step h; the h/2
// estimate serves as a consistency check against unresolved spectral
// structure.
DispersionResult dispersion_at(const SystemParams& params, double delta0,
                               double h = 1e-3);

double group_velocity_factor(double dispersion, const GroupVelocityParams& gv);
Regime classify_regime(double dispersion, const GroupVelocityParams& gv);

struct InsufficientDataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// EIT if chi_im has a local minimum at the grid point nearest delta0 and the
// dip is at most eit_ratio of the window maximum; EIA if a local maximum at
// least eia_ratio above the window edge mean. The window requires >= 11
// valid points within |delta - delta0| <= window.
Feature classify_feature(const SpectralSeries& series, double delta0,
                         double window = 2.0, double eit_ratio = 0.5,
                         double eia_ratio = 1.5);

CptMetrics cpt_metrics(const FourierSolution& sol);

} // namespace obe
