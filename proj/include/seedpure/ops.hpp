#pragma once

#include "seedpure/tensor.hpp"

namespace seedpure {

// 2-D convolution parameters. Weights are (out_channels, in_channels, kh, kw).
// The operator computes cross-correlation (no kernel flip), the convention
// used by every mainstream CNN stack.
struct ConvSpec {
    int in_channels = 0;
    int out_channels = 0;
    int kernel_h = 0;
    int kernel_w = 0;
    int stride = 1;
    int padding = 0;
    Tensor weights;  // (out_channels, in_channels, kernel_h, kernel_w)
    Tensor bias;     // (out_channels)

    void validate() const;
};

// Inference-mode batch normalization parameters, one entry per channel.
struct BatchNormSpec {
    Tensor gamma;
    Tensor beta;
    Tensor running_mean;
    Tensor running_var;
    float epsilon = 1e-5f;

    int channels() const { return gamma.dim(0); }
    void validate() const;
};

// floor((in + 2*padding - kernel) / stride) + 1
int conv_out_dim(int in, int kernel, int stride, int padding);

// Each output element accumulates its dot product in a 64-bit accumulator
// seeded with the bias, then rounds once to float.
Tensor conv2d(const Tensor& input, const ConvSpec& spec);

// Padded cells participate as -infinity, so they never win a window.
Tensor maxpool2d(const Tensor& input, int kernel, int stride, int padding);

Tensor relu(const Tensor& input);

// y = gamma * (x - running_mean) / sqrt(running_var + epsilon) + beta
Tensor batchnorm_infer(const Tensor& input, const BatchNormSpec& spec);

// y = x W + b for x (N,D), W (D,M), b (M).
Tensor linear(const Tensor& input, const Tensor& weights, const Tensor& bias);

Tensor add(const Tensor& lhs, const Tensor& rhs);

}  // namespace seedpure
