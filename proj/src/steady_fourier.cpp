#include "obe/steady_fourier.hpp"

namespace obe {

namespace {

// Complex unknown slots, in layout order after the three real populations.
enum ZSlot { kM11 = 0, kE0 = 1, kEm1 = 2, kE1 = 3, k10 = 4, kM10 = 5 };

constexpr int z_re(int slot) { return 3 + 2 * slot; }
constexpr int z_im(int slot) { return 4 + 2 * slot; }

// One complex equation sum(terms) = rhs, accumulated as two real rows.
struct EquationRows {
    std::array<double, 15> re{};
    std::array<double, 15> im{};
    cplx rhs{};

    void population(int idx, cplx coef) {
        re[idx] += coef.real();
        im[idx] += coef.imag();
    }
    void amplitude(int slot, cplx coef) {
        re[z_re(slot)] += coef.real();
        re[z_im(slot)] -= coef.imag();
        im[z_re(slot)] += coef.imag();
        im[z_im(slot)] += coef.real();
    }
    void conj_amplitude(int slot, cplx coef) {
        re[z_re(slot)] += coef.real();
        re[z_im(slot)] += coef.imag();
        im[z_re(slot)] += coef.imag();
        im[z_im(slot)] -= coef.real();
    }
};

void emit(AssembledSystem& sys, int& row, const EquationRows& eq,
          bool imaginary_part_only) {
    if (!imaginary_part_only) {
        for (int j = 0; j < 15; ++j)
            sys.matrix(row, j) = eq.re[j];
        sys.rhs[row] = eq.rhs.real();
        ++row;
    }
    for (int j = 0; j < 15; ++j)
        sys.matrix(row, j) = eq.im[j];
    sys.rhs[row] = eq.rhs.imag();
    ++row;
}

} // namespace

AssembledSystem assemble_system(const SystemParams& p, double delta) {
    const DetuningSet d = level_detunings(p, delta);
    const cplx I(0.0, 1.0);
    const cplx Vc = p.Vc, Vp = p.Vp;
    const cplx Vcs = std::conj(Vc), Vps = std::conj(Vp);

    AssembledSystem sys{DenseMatrix(15), std::vector<cplx>(15)};
    int row = 0;

    // Population equations relate real quantities through purely imaginary
    // combinations [V* z - V conj(z)]; only their imaginary parts carry
    // information, so each contributes a single real row.

    // 3i Gamma rho_ee = [Vp* a_em1 - Vp conj(a_em1)]
    //                 + [Vp* a_e1  - Vp conj(a_e1)]
    //                 + [Vc* a_e0  - Vc conj(a_e0)]
    {
        EquationRows eq;
        eq.population(0, 3.0 * I * p.Gamma);
        eq.amplitude(kEm1, -Vps);
        eq.conj_amplitude(kEm1, Vp);
        eq.amplitude(kE1, -Vps);
        eq.conj_amplitude(kE1, Vp);
        eq.amplitude(kE0, -Vcs);
        eq.conj_amplitude(kE0, Vc);
        emit(sys, row, eq, true);
    }
    // 3i Gamma0 rho_m1m1 = -[Vp* a_em1 - Vp conj(a_em1)]
    //                      + i(Gamma - Gamma0) rho_ee + i Gamma0
    {
        EquationRows eq;
        eq.population(1, 3.0 * I * p.Gamma0);
        eq.amplitude(kEm1, Vps);
        eq.conj_amplitude(kEm1, -Vp);
        eq.population(0, -I * (p.Gamma - p.Gamma0));
        eq.rhs = I * p.Gamma0;
        emit(sys, row, eq, true);
    }
    // 3i Gamma0 rho_11 = -[Vp* a_e1 - Vp conj(a_e1)]
    //                    + i(Gamma - Gamma0) rho_ee + i Gamma0
    {
        EquationRows eq;
        eq.population(2, 3.0 * I * p.Gamma0);
        eq.amplitude(kE1, Vps);
        eq.conj_amplitude(kE1, -Vp);
        eq.population(0, -I * (p.Gamma - p.Gamma0));
        eq.rhs = I * p.Gamma0;
        emit(sys, row, eq, true);
    }
    // (w_m11 - i gamma0) rho_m11 = Vp* a_e1 - Vp conj(a_em1)
    {
        EquationRows eq;
        eq.amplitude(kM11, cplx(d.w_m11, -p.gamma0));
        eq.amplitude(kE1, -Vps);
        eq.conj_amplitude(kEm1, Vp);
        emit(sys, row, eq, false);
    }
    // (d_e0 + i gamma) a_e0 = Vc (2 rho_ee + rho_m1m1 + rho_11 - 1)
    //                         - Vp (a_m10 + a_10)
    {
        EquationRows eq;
        eq.amplitude(kE0, cplx(d.d_e0, p.gamma));
        eq.population(0, -2.0 * Vc);
        eq.population(1, -Vc);
        eq.population(2, -Vc);
        eq.amplitude(kM10, Vp);
        eq.amplitude(k10, Vp);
        eq.rhs = -Vc;
        emit(sys, row, eq, false);
    }
    // (d_em1 + i gamma) a_em1 = -Vp (rho_m1m1 - rho_ee + conj(rho_m11))
    //                           - Vc conj(a_m10)
    {
        EquationRows eq;
        eq.amplitude(kEm1, cplx(d.d_em1, p.gamma));
        eq.population(1, Vp);
        eq.population(0, -Vp);
        eq.conj_amplitude(kM11, Vp);
        eq.conj_amplitude(kM10, Vc);
        emit(sys, row, eq, false);
    }
    // (d_e1 + i gamma) a_e1 = -Vp (rho_11 - rho_ee + rho_m11)
    //                         - Vc conj(a_10)
    {
        EquationRows eq;
        eq.amplitude(kE1, cplx(d.d_e1, p.gamma));
        eq.population(2, Vp);
        eq.population(0, -Vp);
        eq.amplitude(kM11, Vp);
        eq.conj_amplitude(k10, Vc);
        emit(sys, row, eq, false);
    }
    // (d_10 + i gamma0) a_10 = -[Vp* a_e0 - Vc conj(a_e1)]
    {
        EquationRows eq;
        eq.amplitude(k10, cplx(d.d_10, p.gamma0));
        eq.amplitude(kE0, Vps);
        eq.conj_amplitude(kE1, -Vc);
        emit(sys, row, eq, false);
    }
    // (d_m10 + i gamma0) a_m10 = -[Vp* a_e0 - Vc conj(a_em1)]
    {
        EquationRows eq;
        eq.amplitude(kM10, cplx(d.d_m10, p.gamma0));
        eq.amplitude(kE0, Vps);
        eq.conj_amplitude(kEm1, -Vc);
        emit(sys, row, eq, false);
    }

    return sys;
}

FourierSolution solve_steady_state(const SystemParams& p, double delta) {
    AssembledSystem sys = assemble_system(p, delta);
    std::vector<cplx> u;
    try {
        u = lu_solve(sys.matrix, sys.rhs);
    } catch (const SingularMatrixError& e) {
        throw SingularSystemError(
            delta, p.Vc,
            "steady-state system singular at delta=" + std::to_string(delta) +
                ", |Vc|=" + std::to_string(std::abs(p.Vc)) +
                " (parameter degeneracy): " + e.what());
    }

    auto z = [&u](int slot) {
        return cplx(u[z_re(slot)].real(), u[z_im(slot)].real());
    };
    FourierSolution sol;
    sol.rho_ee_dc = u[0].real();
    sol.rho_m1m1_dc = u[1].real();
    sol.rho_11_dc = u[2].real();
    sol.rho_m11_dc = z(kM11);
    sol.a_e0 = z(kE0);
    sol.a_em1 = z(kEm1);
    sol.a_e1 = z(kE1);
    sol.a_10 = z(k10);
    sol.a_m10 = z(kM10);
    return sol;
}

std::array<cplx, 9> equation_residuals(const SystemParams& p, double delta,
                                       const FourierSolution& s) {
    const DetuningSet d = level_detunings(p, delta);
    const cplx I(0.0, 1.0);
    const cplx Vc = p.Vc, Vp = p.Vp;
    const cplx Vcs = std::conj(Vc), Vps = std::conj(Vp);
    const cplx bracket_m1 = Vps * s.a_em1 - Vp * std::conj(s.a_em1);
    const cplx bracket_p1 = Vps * s.a_e1 - Vp * std::conj(s.a_e1);
    const cplx bracket_c = Vcs * s.a_e0 - Vc * std::conj(s.a_e0);

    std::array<cplx, 9> r;
    r[0] = 3.0 * I * p.Gamma * s.rho_ee_dc -
           (bracket_m1 + bracket_p1 + bracket_c);
    r[1] = 3.0 * I * p.Gamma0 * s.rho_m1m1_dc -
           (-bracket_m1 + I * (p.Gamma - p.Gamma0) * s.rho_ee_dc + I * p.Gamma0);
    r[2] = 3.0 * I * p.Gamma0 * s.rho_11_dc -
           (-bracket_p1 + I * (p.Gamma - p.Gamma0) * s.rho_ee_dc + I * p.Gamma0);
    r[3] = cplx(d.w_m11, -p.gamma0) * s.rho_m11_dc -
           (Vps * s.a_e1 - Vp * std::conj(s.a_em1));
    r[4] = cplx(d.d_e0, p.gamma) * s.a_e0 -
           (Vc * (2.0 * s.rho_ee_dc + s.rho_m1m1_dc + s.rho_11_dc - 1.0) -
            Vp * (s.a_m10 + s.a_10));
    r[5] = cplx(d.d_em1, p.gamma) * s.a_em1 -
           (-Vp * (s.rho_m1m1_dc - s.rho_ee_dc + std::conj(s.rho_m11_dc)) -
            Vc * std::conj(s.a_m10));
    r[6] = cplx(d.d_e1, p.gamma) * s.a_e1 -
           (-Vp * (s.rho_11_dc - s.rho_ee_dc + s.rho_m11_dc) -
            Vc * std::conj(s.a_10));
    r[7] = cplx(d.d_10, p.gamma0) * s.a_10 -
           (-(Vps * s.a_e0 - Vc * std::conj(s.a_e1)));
    r[8] = cplx(d.d_m10, p.gamma0) * s.a_m10 -
           (-(Vps * s.a_e0 - Vc * std::conj(s.a_em1)));
    return r;
}

} // namespace obe
