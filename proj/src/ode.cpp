#include "pllpinn/ode.hpp"

#include <cmath>
#include <stdexcept>

namespace pllpinn {

void IntegratorConfig::validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("IntegratorConfig: dt must be > 0");
    if (!(max_time >= dt))
        throw std::invalid_argument("IntegratorConfig: max_time must be >= dt");
    if (sample_every < 1)
        throw std::invalid_argument("IntegratorConfig: sample_every must be >= 1");
    if (!(omega_blowup > 0.0))
        throw std::invalid_argument("IntegratorConfig: omega_blowup must be > 0");
}

PllState rk4_step(const PllState& state, double dt, const SystemParams& params) {
    if (!(dt > 0.0)) throw std::invalid_argument("rk4_step: dt must be > 0");
    return rk4_step_generic(
        [&params](double t, const PllState& x) { return rhs(t, x, params); },
        0.0, state, dt);
}

Trajectory integrate(const PllState& x0, const SystemParams& params,
                     const IntegratorConfig& config) {
    config.validate();
    const std::int64_t n_fine_raw =
        std::max<std::int64_t>(1, std::llround(config.max_time / config.dt));
    const std::int64_t per = config.sample_every;
    const std::int64_t n_coarse = (n_fine_raw + per - 1) / per;
    const std::int64_t n_fine = n_coarse * per;

    Trajectory traj;
    traj.params = params;
    traj.times.reserve(static_cast<std::size_t>(n_coarse) + 1);
    traj.states.reserve(static_cast<std::size_t>(n_coarse) + 1);
    traj.times.push_back(0.0);
    traj.states.push_back(x0);

    PllState x = x0;
    for (std::int64_t k = 1; k <= n_fine; ++k) {
        x = rk4_step(x, config.dt, params);
        if (std::abs(x.omega) > config.omega_blowup) {
            traj.diverged = true;
            traj.divergence_time = static_cast<double>(k) * config.dt;
            break;
        }
        if (k % per == 0) {
            traj.times.push_back(static_cast<double>(k) * config.dt);
            traj.states.push_back(x);
        }
    }
    return traj;
}

CaptureResult integrate_capture(const PllState& x0, const SystemParams& params,
                                double dt, double omega_blowup,
                                std::span<const std::int64_t> step_indices) {
    if (!(dt > 0.0)) throw std::invalid_argument("integrate_capture: dt must be > 0");
    CaptureResult result;
    result.states.resize(step_indices.size());

    PllState x = x0;
    std::int64_t step = 0;
    std::size_t i = 0;
    while (i < step_indices.size()) {
        const std::int64_t target = step_indices[i];
        if (target < step)
            throw std::invalid_argument("integrate_capture: indices must be sorted");
        while (step < target) {
            x = rk4_step(x, dt, params);
            ++step;
            if (std::abs(x.omega) > omega_blowup) {
                result.diverged = true;
                result.divergence_step = step;
                result.captured = i;
                return result;
            }
        }
        result.states[i++] = x;
    }
    result.captured = i;
    return result;
}

} // namespace pllpinn
