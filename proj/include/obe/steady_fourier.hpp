#pragma once

#include <array>
#include <string_view>

#include "obe/linsolve.hpp"
#include "obe/model.hpp"

namespace obe {

struct SingularSystemError : std::runtime_error {
    double delta;
    cplx Vc;
    SingularSystemError(double delta_, cplx vc, const std::string& msg)
        : std::runtime_error(msg), delta(delta_), Vc(vc) {}
};

// The steady-state amplitude equations form a closed linear system once the
// conjugate amplitudes are rewritten in terms of the retained ones. Products
// like Vp * conj(z) are linear over the reals but not over the complexes, so
// the system is split into real and imaginary parts: 15 real unknowns in the
// order given by unknown_layout. rho_00 is eliminated by the trace
// normalization, which is where the constant Gamma0 sources in the rhs come
// from.
struct AssembledSystem {
    DenseMatrix matrix; // 15x15; entries real-valued (zero imaginary parts)
    std::vector<cplx> rhs;

    static constexpr std::array<std::string_view, 15> unknown_layout = {
        "rho_ee_dc",      "rho_m1m1_dc",    "rho_11_dc",
        "Re rho_m11_dc",  "Im rho_m11_dc",
        "Re a_e0",        "Im a_e0",
        "Re a_em1",       "Im a_em1",
        "Re a_e1",        "Im a_e1",
        "Re a_10",        "Im a_10",
        "Re a_m10",       "Im a_m10"};
};

AssembledSystem assemble_system(const SystemParams& params, double delta);

// Assembles and solves; rho_00_dc follows from normalization. A singular
// system signals a parameter degeneracy and is reported with its
// (delta, Vc) context.
FourierSolution solve_steady_state(const SystemParams& params, double delta);

// Residuals of the nine steady-state amplitude equations, evaluated in
// their original complex form. Independent of the matrix assembly path.
std::array<cplx, 9> equation_residuals(const SystemParams& params, double delta,
                                       const FourierSolution& sol);

} // namespace obe
