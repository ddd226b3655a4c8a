#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pllpinn/rom.hpp"

namespace pllpinn {

struct IntegratorConfig {
    double dt = 1e-4;         ///< fixed integration step (s)
    int sample_every = 10;    ///< output decimation: 1 sample per ms at defaults
    double max_time = 1.0;    ///< horizon (s)
    double omega_blowup = 500.0; ///< |omega| beyond this marks divergence

    void validate() const;
};

/// Decimated solution of one initial-value problem. `diverged` is a flag,
/// not an error: integration stops at the first fine step where |omega|
/// exceeds the blow-up bound, and the trajectory keeps what was sampled
/// up to that point.
struct Trajectory {
    std::vector<double> times;     ///< strictly increasing, times[0] = 0
    std::vector<PllState> states;  ///< one state per time
    SystemParams params;
    bool diverged = false;
    double divergence_time = 0.0;  ///< valid only when diverged

    std::size_t size() const { return times.size(); }
    const PllState& back() const { return states.back(); }
};

/// One classic 4-stage Runge-Kutta step of an arbitrary 2-state system.
template <class Rhs>
PllState rk4_step_generic(Rhs&& f, double t, const PllState& x, double dt) {
    const StateDerivative k1 = f(t, x);
    const PllState x2{x.delta + 0.5 * dt * k1.d_delta, x.omega + 0.5 * dt * k1.d_omega};
    const StateDerivative k2 = f(t + 0.5 * dt, x2);
    const PllState x3{x.delta + 0.5 * dt * k2.d_delta, x.omega + 0.5 * dt * k2.d_omega};
    const StateDerivative k3 = f(t + 0.5 * dt, x3);
    const PllState x4{x.delta + dt * k3.d_delta, x.omega + dt * k3.d_omega};
    const StateDerivative k4 = f(t + dt, x4);
    const double sixth = dt / 6.0;
    return PllState{
        x.delta + sixth * (k1.d_delta + 2.0 * k2.d_delta + 2.0 * k3.d_delta + k4.d_delta),
        x.omega + sixth * (k1.d_omega + 2.0 * k2.d_omega + 2.0 * k3.d_omega + k4.d_omega)};
}

/// RK4 step of the reduced-order PLL model.
PllState rk4_step(const PllState& state, double dt, const SystemParams& params);

/// Integrate the ROM from x0, sampling every `sample_every` fine steps.
/// The number of fine steps is round(max_time / dt) rounded up to a whole
/// number of output intervals, so the final sample lands within one coarse
/// interval of max_time.
Trajectory integrate(const PllState& x0, const SystemParams& params,
                     const IntegratorConfig& config);

/// Integrate and capture the exact states at the given fine-step indices
/// (sorted, duplicates allowed). Returns one state per requested index; if
/// the trajectory diverges, `captured` tells how many entries are valid.
/// Because capture points sit exactly on the fine step grid, a captured
/// state is bit-identical to a fresh integration of that many steps.
struct CaptureResult {
    std::vector<PllState> states;
    std::size_t captured = 0;
    bool diverged = false;
    std::int64_t divergence_step = 0; ///< first fine step past the bound
};
CaptureResult integrate_capture(const PllState& x0, const SystemParams& params,
                                double dt, double omega_blowup,
                                std::span<const std::int64_t> step_indices);

} // namespace pllpinn
