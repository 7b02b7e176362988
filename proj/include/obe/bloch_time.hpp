#pragma once

#include <optional>

#include "obe/model.hpp"

namespace obe {

struct IntegratorOptions {
    double dt = 0.01;              // step, units of 1/gamma
    double t_max = 5e4;            // horizon; ground-state timescales ~1/Gamma0
    double convergence_tol = 1e-10; // sup-norm threshold on the derivative
    // Default start is the unbiased 1/3-1/3-1/3 ground mixture.
    std::optional<RotatingState> initial_state{};
};

struct IntegrationResult {
    RotatingState state;
    double t_final = 0.0;
    double derivative_norm = 0.0;
    bool converged = false;
    double max_trace_drift = 0.0; // max |trace - 1| over accepted steps
};

// Time derivative of the co-rotating envelopes. The frame removes every
// explicit optical phase, so the right-hand side carries no time variable;
// the removed frequencies reappear as detuning terms on the coherences.
RotatingState rotating_frame_rhs(const RotatingState& s,
                                 const SystemParams& params, double delta);

// Classical fixed-step 4th-order integration until the derivative sup-norm
// drops below convergence_tol or t_max is reached. Non-convergence is
// reported in the result, not thrown.
IntegrationResult integrate_to_steady(const SystemParams& params, double delta,
                                      const IntegratorOptions& opts = {});

// At a fixed point of the rotating frame, the envelopes are the steady-state
// Fourier amplitudes; this is a slot-for-slot copy plus the conjugation of
// the ground Zeeman coherence.
FourierSolution extract_amplitudes(const RotatingState& s);

// max over |d rho| and max(|Re|, |Im|) of the coherence derivatives
double derivative_sup_norm(const RotatingState& deriv);

} // namespace obe
