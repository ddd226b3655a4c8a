#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "pllpinn/dataset.hpp"
#include "pllpinn/mat.hpp"
#include "pllpinn/rom.hpp"

namespace pllpinn {

enum class Activation { Relu, Tanh };

std::string to_string(Activation a);
Activation activation_from_string(const std::string& s);

struct NetworkArch {
    int input_dim = 4;   ///< (t, delta0, omega0, alpha)
    int hidden_layers = 4;
    int hidden_width = 100;
    int output_dim = 2;  ///< (delta_hat, omega_hat)
    Activation activation = Activation::Relu;

    void validate() const;
    int n_weight_layers() const { return hidden_layers + 1; }
    int layer_in(int k) const { return k == 0 ? input_dim : hidden_width; }
    int layer_out(int k) const {
        return k == hidden_layers ? output_dim : hidden_width;
    }
};

/// Feed-forward approximator of the windowed flow map x(t; x0, alpha).
/// Hidden layers apply the activation; the output layer is affine. Inputs are
/// standardized with `norm` before the first layer. `window` is the time span
/// the network was trained on; predictions beyond it are extrapolation and
/// the rollout layer refuses them.
struct Network {
    NetworkArch arch;
    std::vector<std::vector<double>> weights; ///< [out x in] row-major per layer
    std::vector<std::vector<double>> biases;  ///< [out] per layer
    NormStats norm;
    double window = 0.1;

    std::size_t parameter_count() const;
};

struct TangentOutput {
    PllState value;
    StateDerivative dt_value; ///< exact d(value)/dt at the input point
};

/// He-style init: weights N(0, 2/fan_in), zero biases. Deterministic per seed.
Network init_network(const NetworkArch& arch, std::uint64_t seed,
                     const NormStats& norm, double window);

/// Batch forward pass. `inputs` is [n x input_dim] in raw (unnormalized)
/// units; `out` is resized to [n x output_dim].
void forward_batch(const Network& net, const Mat& inputs, Mat& out);

/// Batch forward plus the exact tangent of the outputs along the t input,
/// propagated through every affine map and activation derivative (for ReLU,
/// the mask; zero at exactly zero pre-activation), including the input
/// normalization scale on t.
void forward_with_dt_batch(const Network& net, const Mat& inputs, Mat& out,
                           Mat& out_dt);

PllState forward(const Network& net, double t, const PllState& x0, double alpha);
TangentOutput forward_with_dt(const Network& net, double t, const PllState& x0,
                              double alpha);

/// Intermediate activations kept for the backward pass.
struct ForwardCache {
    Mat z0;                      ///< normalized inputs [n x in]
    std::vector<Mat> preact;     ///< per hidden layer, before activation
    std::vector<Mat> act;        ///< per hidden layer, after activation
    Mat out;
    bool has_tangent = false;
    Mat z0_dt;                   ///< tangent of normalized inputs
    std::vector<Mat> preact_dt;  ///< tangent before activation
    std::vector<Mat> act_dt;     ///< tangent after activation
    Mat out_dt;
};

void forward_cached(const Network& net, const Mat& inputs, bool with_tangent,
                    ForwardCache& cache);

/// Gradients with the same shapes as the network parameters.
struct ParamGrads {
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<double>> biases;

    static ParamGrads zeros_like(const Network& net);
    void zero();
};

/// Reverse pass: given dL/d(out) and optionally dL/d(out_dt) for a cached
/// batch, accumulate dL/d(parameters) into `grads`. The tangent cotangent
/// path covers losses that read the forward-mode derivative, i.e. the
/// gradient of a function of d(out)/dt with respect to the parameters.
void backward(const Network& net, const ForwardCache& cache, const Mat& g_out,
              const Mat* g_out_dt, ParamGrads& grads);

// --- checkpoint I/O ---------------------------------------------------------

void save_network(const Network& net, const std::string& path,
                  const std::string& config_digest = "");
Network load_network(const std::string& path);

} // namespace pllpinn
