#include "pllpinn/rom.hpp"

#include <cmath>
#include <string>

namespace pllpinn {

void SystemParams::validate() const {
    if (!(v_g > 0.0)) throw std::invalid_argument("SystemParams: V_g must be > 0");
    if (!(k_i > 0.0)) throw std::invalid_argument("SystemParams: k_i must be > 0");
    if (!(k_p >= 0.0)) throw std::invalid_argument("SystemParams: k_p must be >= 0");
    if (!(alpha > 0.0)) throw std::invalid_argument("SystemParams: alpha must be > 0");
    if (!(l_g >= 0.0) || !(r_lg >= 0.0))
        throw std::invalid_argument("SystemParams: impedance must be >= 0");
    for (double v : {k_p, k_i, v_g, r_lg, l_g, i_d, i_q, omega_g, alpha}) {
        if (!std::isfinite(v))
            throw std::invalid_argument("SystemParams: all fields must be finite");
    }
    if (std::abs(inertia()) < kInertiaThreshold)
        throw std::invalid_argument(
            "SystemParams: |M| = |1 - k_p*L_g*i_d| below well-posedness threshold");
}

SystemParams SystemParams::from_per_unit(double kp_pu, double ki_pu, double v_g,
                                         double x_g, double x_over_r, double i_d,
                                         double i_q, double f0) {
    const double omega_base = 2.0 * M_PI * f0;
    SystemParams p;
    p.k_p = kp_pu * omega_base;
    p.k_i = ki_pu * omega_base;
    p.v_g = v_g;
    p.l_g = x_g / omega_base;
    p.r_lg = x_g / x_over_r;
    p.i_d = i_d;
    p.i_q = i_q;
    p.omega_g = omega_base;
    p.alpha = 1.0;
    p.validate();
    return p;
}

SystemParams SystemParams::benchmark(double x_g) {
    return from_per_unit(0.025, 1.5, 1.0, x_g, 16.3, 1.0, -0.1, 50.0);
}

SwingCoefficients swing_coefficients(const SystemParams& params,
                                     const PllState& state) {
    const double l_g = params.l_g_eff();
    const double r_lg = params.r_lg_eff();
    SwingCoefficients c;
    c.M = 1.0 - params.k_p * l_g * params.i_d;
    c.T_m = params.k_i * (r_lg * params.i_q + l_g * params.i_d * params.omega_g);
    c.T_e = params.k_i * params.v_g * std::sin(state.delta);
    c.D = params.k_p * params.v_g * std::cos(state.delta) -
          params.k_i * l_g * params.i_d;
    return c;
}

StateDerivative rhs(double /*t*/, const PllState& state, const SystemParams& params) {
    const SwingCoefficients c = swing_coefficients(params, state);
    if (std::abs(c.M) < kInertiaThreshold)
        throw IllPosedDynamicsError("rhs: |M| below well-posedness threshold");
    StateDerivative d;
    d.d_delta = state.omega;
    d.d_omega = (c.T_m - c.T_e - c.D * state.omega) / c.M;
    return d;
}

double equilibrium_ratio(const SystemParams& params) {
    return (params.r_lg_eff() * params.i_q +
            params.l_g_eff() * params.i_d * params.omega_g) / params.v_g;
}

std::optional<EquilibriumPoint> try_equilibrium(const SystemParams& params) {
    const double ratio = equilibrium_ratio(params);
    if (std::abs(ratio) > 1.0) return std::nullopt;
    return EquilibriumPoint{std::asin(ratio), 0.0};
}

EquilibriumPoint equilibrium(const SystemParams& params) {
    auto eq = try_equilibrium(params);
    if (!eq)
        throw NoEquilibriumError(
            "equilibrium: |T_m| exceeds peak restoring torque (ratio " +
            std::to_string(equilibrium_ratio(params)) +
            "); loss of synchronism is inevitable at alpha = " +
            std::to_string(params.alpha));
    return *eq;
}

SystemParams scale_impedance(const SystemParams& params, double alpha) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("scale_impedance: alpha must be > 0");
    SystemParams p = params;
    p.alpha = alpha;
    if (std::abs(p.inertia()) < kInertiaThreshold)
        throw std::invalid_argument(
            "scale_impedance: scaled params have |M| below threshold");
    return p;
}

} // namespace pllpinn
