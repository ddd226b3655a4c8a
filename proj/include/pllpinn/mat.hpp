#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace pllpinn {

/// Dense row-major matrix of doubles. Deliberately minimal: the network
/// kernels only need contiguous rows and a handful of product shapes.
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {}

    void resize(int r, int c) {
        rows = r;
        cols = c;
        data.assign(static_cast<std::size_t>(r) * c, 0.0);
    }

    double* row(int i) { return data.data() + static_cast<std::size_t>(i) * cols; }
    const double* row(int i) const {
        return data.data() + static_cast<std::size_t>(i) * cols;
    }
    double& at(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
    double at(int i, int j) const {
        return data[static_cast<std::size_t>(i) * cols + j];
    }
    void zero() { data.assign(data.size(), 0.0); }
};

/// C = X * W^T (+ bias per output column when bias != nullptr).
/// X: [n x in], W: [out x in] row-major, C: [n x out].
/// Per-element dot products run over the `in` index sequentially, so batched
/// and single-row calls produce bit-identical values.
void linear_forward(const Mat& x, const Mat& w, const double* bias, Mat& c);

/// C = G * W. G: [n x out], W: [out x in], C: [n x in].
void linear_backprop_input(const Mat& g, const Mat& w, Mat& c);

/// dW += G^T * X. G: [n x out], X: [n x in], dW: [out x in].
/// Accumulates over the batch in increasing sample order.
void accumulate_weight_grad(const Mat& g, const Mat& x, Mat& dw);

} // namespace pllpinn
