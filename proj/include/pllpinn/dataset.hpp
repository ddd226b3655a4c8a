#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "pllpinn/ode.hpp"
#include "pllpinn/rom.hpp"
#include "pllpinn/util.hpp"

namespace pllpinn {

class MalformedFileError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Sampled input domain for data generation and training.
struct DomainSpec {
    double delta_min = -M_PI, delta_max = M_PI;   ///< rad
    double omega_min = -60.0, omega_max = 60.0;   ///< rad/s
    double alpha_min = 0.1, alpha_max = 2.0;
    double window = 0.1;       ///< labeled trajectory span (s)
    double test_window = 1.0;  ///< evaluation span (s)

    void validate() const;
    bool contains(double delta, double omega, double alpha) const;
};

/// One labeled training point: predict the state at time t from (x0, alpha).
struct Sample {
    double t = 0.0;      ///< prediction time within the window (s)
    PllState x0;         ///< state at window start
    double alpha = 1.0;  ///< impedance factor
    PllState x_t;        ///< ODE solution at time t (the label)
};

/// Unlabeled physics-residual point; no ODE solve is ever attached to it.
struct CollocationPoint {
    double t = 0.0;
    PllState x0;
    double alpha = 1.0;
};

/// Standardization constants for the 4 network inputs (t, delta0, omega0, alpha),
/// computed over the training samples at generation time.
struct NormStats {
    std::array<double, 4> mean{0.0, 0.0, 0.0, 0.0};
    std::array<double, 4> scale{1.0, 1.0, 1.0, 1.0};
};

struct Dataset {
    std::vector<Sample> samples;   ///< grouped by source trajectory
    DomainSpec spec;
    std::uint64_t seed = 0;
    int samples_per_traj = 0;
    NormStats norm;
};

struct GenConfig {
    int samples_per_traj = 10;
    bool fixed_time_grid = false; ///< evenly spaced times instead of random
    double dt = 1e-4;             ///< fine solver step for labels
    double omega_blowup = 500.0;
    double window = 0.0;          ///< 0 means use spec.window
};

/// Draw one initial condition uniformly over the spec box.
/// Consumes exactly three uniforms: delta, omega, alpha in that order.
struct InitialDraw {
    PllState x0;
    double alpha;
};
InitialDraw sample_initial(Rng& rng, const DomainSpec& spec);

/// Generate a labeled dataset of n_traj independent trajectories, each
/// contributing up to cfg.samples_per_traj samples. Sample times are drawn
/// on the fine solver grid (multiples of cfg.dt), so every label is exactly
/// the solver state at that step; diverged trajectories are labeled only up
/// to the divergence step. Deterministic per (seed, spec, cfg), independent
/// of scheduling: trajectory i uses substream(seed, i). `base` supplies all
/// system parameters except alpha, which comes from the per-trajectory draw.
Dataset generate_labeled(int n_traj, const DomainSpec& spec, std::uint64_t seed,
                         const SystemParams& base, const GenConfig& cfg = {});

/// Generate unlabeled collocation points uniform over (t, delta0, omega0,
/// alpha); performs no integration. Point i uses substream(seed, i) so the
/// set is reproducible and disjoint streams never overlap with labeled
/// generation under a different seed.
std::vector<CollocationPoint> generate_collocation(int n, const DomainSpec& spec,
                                                   std::uint64_t seed,
                                                   double window = 0.0);

/// Recompute normalization stats from samples (population std; scale floors
/// at 1e-12 to keep degenerate inputs well-defined).
NormStats compute_norm_stats(const std::vector<Sample>& samples);

/// Per-component standard deviation of f(t, x_label, u) over the dataset,
/// used to balance the derivative-residual loss components.
std::array<double, 2> residual_scales(const Dataset& ds, const SystemParams& base);

// --- file I/O -------------------------------------------------------------
//
// Dataset file: text header terminated by a "binary" line, then fixed-width
// little-endian records of 6 doubles (t, delta0, omega0, alpha, delta_t,
// omega_t). Collocation file: same layout with 4-double records.

void save_dataset(const Dataset& ds, const std::string& path,
                  const std::string& config_digest = "");
Dataset load_dataset(const std::string& path);

void save_collocation(const std::vector<CollocationPoint>& points,
                      const DomainSpec& spec, std::uint64_t seed,
                      const std::string& path,
                      const std::string& config_digest = "");
struct CollocationSet {
    std::vector<CollocationPoint> points;
    DomainSpec spec;
    std::uint64_t seed = 0;
};
CollocationSet load_collocation(const std::string& path);

/// FNV-1a checksum of a whole file, for reproducibility reports.
std::uint64_t file_checksum(const std::string& path);

} // namespace pllpinn
