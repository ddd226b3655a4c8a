#pragma once

#include <optional>
#include <stdexcept>

namespace pllpinn {

/// Raised when the post-fault operating point admits no equilibrium angle,
/// i.e. the mechanical-analog torque exceeds the peak restoring torque and
/// loss of synchronism is inevitable for this impedance.
class NoEquilibriumError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when |M| is below the well-posedness threshold and the swing
/// dynamics cannot be evaluated.
class IllPosedDynamicsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// 2-dimensional state of the reduced-order PLL model.
struct PllState {
    double delta = 0.0; ///< PLL/grid frame misalignment angle (rad)
    double omega = 0.0; ///< PLL frequency deviation (rad/s)
};

struct StateDerivative {
    double d_delta = 0.0; ///< d(delta)/dt (rad/s)
    double d_omega = 0.0; ///< d(omega)/dt (rad/s^2)
};

/// Swing-equation coefficients at a given angle.
struct SwingCoefficients {
    double M = 0.0;   ///< effective inertia, independent of state
    double T_m = 0.0; ///< mechanical-analog torque, independent of state
    double T_e = 0.0; ///< electrical-analog (restoring) torque at delta
    double D = 0.0;   ///< damping coefficient at delta
};

struct EquilibriumPoint {
    double delta_eq = 0.0; ///< equilibrium angle, principal branch (rad)
    double omega_eq = 0.0; ///< always zero (rad/s)
};

/// Electrical and control parameters of the reduced-order SRF-PLL model.
///
/// The swing dynamics are
///     d(delta)/dt = omega
///     M d(omega)/dt = T_m - T_e - D omega
/// with
///     M   = 1 - k_p L_g i_d
///     T_m = k_i (r_Lg i_q + L_g i_d omega_g)
///     T_e = k_i V_g sin(delta)
///     D   = k_p V_g cos(delta) - k_i L_g i_d
///
/// Unit convention: voltages and currents are per-unit; the state omega is
/// in rad/s. For the formulas above to be dimensionally consistent with a
/// rad/s state, the gains carry the frequency base: k_p in (rad/s)/pu,
/// k_i in (rad/s^2)/pu, L_g in pu*s (per-unit reactance divided by the base
/// frequency) and omega_g in rad/s. from_per_unit() applies the conversion
/// from the usual per-unit controller constants.
///
/// r_lg and l_g are the alpha = 1 baseline; the effective grid impedance is
/// alpha * r_lg and alpha * l_g (X/R ratio preserved by construction) and is
/// what every operation below uses.
struct SystemParams {
    double k_p = 0.0;     ///< PLL proportional gain ((rad/s)/pu)
    double k_i = 0.0;     ///< PLL integral gain ((rad/s^2)/pu)
    double v_g = 0.0;     ///< grid voltage magnitude (pu)
    double r_lg = 0.0;    ///< baseline grid resistance (pu)
    double l_g = 0.0;     ///< baseline grid inductance (pu*s)
    double i_d = 0.0;     ///< pre-disturbance active current, PLL frame (pu)
    double i_q = 0.0;     ///< pre-disturbance reactive current, PLL frame (pu)
    double omega_g = 0.0; ///< grid frequency used in the T_m term (rad/s)
    double alpha = 1.0;   ///< impedance scale factor

    /// Effective (alpha-scaled) impedance.
    double r_lg_eff() const { return alpha * r_lg; }
    double l_g_eff() const { return alpha * l_g; }

    /// Effective inertia with the alpha-scaled inductance.
    double inertia() const { return 1.0 - k_p * l_g_eff() * i_d; }

    /// Throws std::invalid_argument if any invariant is violated.
    void validate() const;

    /// Build params from per-unit controller constants: kp_pu/ki_pu are the
    /// dimensionless PLL gains, x_g the per-unit grid reactance at alpha = 1,
    /// x_over_r the grid X/R ratio and f0 the base frequency in Hz.
    static SystemParams from_per_unit(double kp_pu, double ki_pu, double v_g,
                                      double x_g, double x_over_r, double i_d,
                                      double i_q, double f0);

    /// The benchmark operating point used throughout: kp = 0.025, ki = 1.5,
    /// V_g = 1 pu, X_g = 0.3 pu at X/R = 16.3, i_d = 1.0, i_q = -0.1, 50 Hz.
    static SystemParams benchmark(double x_g = 0.3);
};

/// Well-posedness threshold on |M|.
inline constexpr double kInertiaThreshold = 1e-6;

/// Tolerance on |rhs| at a computed equilibrium.
inline constexpr double kEquilibriumResidualTol = 1e-10;

/// Swing-equation coefficients at the given state (only delta enters).
SwingCoefficients swing_coefficients(const SystemParams& params,
                                     const PllState& state);

/// State derivative f(t, x, u). The system is autonomous after fault
/// clearance, so t never enters; it is kept for the standard ODE signature.
StateDerivative rhs(double t, const PllState& state, const SystemParams& params);

/// Ratio T_m / (k_i V_g) whose arcsine is the equilibrium angle.
double equilibrium_ratio(const SystemParams& params);

/// Principal-branch equilibrium, or nullopt when |ratio| > 1.
std::optional<EquilibriumPoint> try_equilibrium(const SystemParams& params);

/// As try_equilibrium, but throws NoEquilibriumError when none exists.
EquilibriumPoint equilibrium(const SystemParams& params);

/// Copy of params with the impedance scale set to alpha (baseline fields are
/// untouched; effective r_Lg and L_g scale together). Rejects alpha <= 0.
SystemParams scale_impedance(const SystemParams& params, double alpha);

} // namespace pllpinn
