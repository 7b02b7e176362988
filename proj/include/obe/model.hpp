#pragma once

#include <array>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace obe {

using cplx = std::complex<double>;

struct ParamError : std::runtime_error {
    explicit ParamError(const std::string& msg) : std::runtime_error(msg) {}
};

// All rates and frequencies are dimensionless multiples of the optical
// coherence decay rate gamma (gamma = 1 is the global unit).
struct SystemParams {
    double gamma = 1.0;                       // optical coherence decay
    double Gamma = 2.0 * (1.0 - 0.001) / 3.0; // excited -> each ground channel
    double Gamma0 = 0.001;                    // ground population exchange
    double gamma0 = 0.002;                    // ground coherence decay
    cplx Vc{1.0, 0.0};                        // drive half-Rabi amplitude
    cplx Vp{0.01, 0.0};                       // probe half-Rabi amplitude
    double omega_1m1 = 5.0;                   // Zeeman splitting w(+1) - w(-1)
    double Delta_c = 0.0;                     // drive detuning w_c - w_e0
};

// Detunings entering the coherence equations at pump-probe detuning delta.
// Ground sublevels are centered at zero: w(+-1) = +-omega_1m1/2, w(0) = 0.
struct DetuningSet {
    double delta;  // w_p - w_c
    double d_e0;   // w_c - w_e0 (= Delta_c)
    double d_em1;  // w_p - w_e-1
    double d_e1;   // w_p - w_e1
    double d_10;   // w_c - w_p - w_10
    double d_m10;  // w_c - w_p - w_-10
    double w_m11;  // w_-1 - w_1
};

// Density-matrix envelopes in the co-rotating frame:
//   rho_e0   = sigma_e0   e^{-i w_c t}
//   rho_e+-1 = sigma_e+-1 e^{-i w_p t}
//   rho_+-10 = sigma_+-10 e^{-i (w_c - w_p) t}
//   rho_1-1  = sigma_1m1  (no removal)
// In this frame the equations of motion carry no explicit time dependence.
struct RotatingState {
    double rho_ee = 0.0;
    double rho_11 = 0.0;
    double rho_00 = 0.0;
    double rho_m1m1 = 0.0;
    cplx sigma_e0{};
    cplx sigma_e1{};
    cplx sigma_em1{};
    cplx sigma_10{};
    cplx sigma_m10{};
    cplx sigma_1m1{};

    double trace() const { return rho_ee + rho_11 + rho_00 + rho_m1m1; }
};

// Steady-state Fourier amplitudes. Conjugate partners are never stored;
// they are produced on demand as conj() of the retained amplitudes.
struct FourierSolution {
    double rho_ee_dc = 0.0;
    double rho_11_dc = 0.0;
    double rho_m1m1_dc = 0.0;
    cplx rho_m11_dc{}; // ground Zeeman coherence rho_-11 (dc)
    cplx a_e0{};       // rho_e0 at w_c
    cplx a_em1{};      // rho_e-1 at w_p
    cplx a_e1{};       // rho_e1 at w_p
    cplx a_10{};       // rho_10 at w_c - w_p
    cplx a_m10{};      // rho_-10 at w_c - w_p

    double rho_00_dc() const { return 1.0 - rho_ee_dc - rho_11_dc - rho_m1m1_dc; }

    // Components in the solver's unknown order (see steady_fourier.hpp).
    std::array<double, 15> as_array() const {
        return {rho_ee_dc,        rho_m1m1_dc,      rho_11_dc,
                rho_m11_dc.real(), rho_m11_dc.imag(),
                a_e0.real(),      a_e0.imag(),
                a_em1.real(),     a_em1.imag(),
                a_e1.real(),      a_e1.imag(),
                a_10.real(),      a_10.imag(),
                a_m10.real(),     a_m10.imag()};
    }
};

// Builds validated parameters from named scalars. Omitted keys take the
// defaults gamma=1, Gamma0=0.001, Gamma=2(gamma-Gamma0)/3, gamma0=2*Gamma0,
// omega_1m1=5, Delta_c=0, Vc=1, Vp=0.01*Vc. Recognized keys: gamma, Gamma,
// Gamma0, gamma0, Vc, Vc_im, Vp, Vp_im, omega_1m1, Delta_c.
//
// Negative rates and unknown keys are rejected. The Lindblad consistency
// relations gamma = (3*Gamma + 2*Gamma0)/2 and gamma0 = 2*Gamma0, and the
// weak-probe bound |Vp| <= 0.1*|Vc|, are warnings by default and hard
// errors in strict mode.
SystemParams build_system_params(const std::map<std::string, double>& raw,
                                 bool strict = false,
                                 std::vector<std::string>* warnings = nullptr);

DetuningSet level_detunings(const SystemParams& params, double delta);

} // namespace obe
