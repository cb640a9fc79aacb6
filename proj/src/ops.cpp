#include "seedpure/ops.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <string>
#include <vector>

#include "seedpure/errors.hpp"
#include "seedpure/parallel.hpp"

namespace seedpure {

int conv_out_dim(int in, int kernel, int stride, int padding) {
    return (in + 2 * padding - kernel) / stride + 1;
}

void ConvSpec::validate() const {
    if (in_channels < 1 || out_channels < 1) {
        throw ShapeError("conv spec channels must be positive");
    }
    if (kernel_h < 1 || kernel_w < 1 || stride < 1 || padding < 0) {
        throw ShapeError("conv spec kernel/stride/padding invalid");
    }
    const std::vector<int> want{out_channels, in_channels, kernel_h, kernel_w};
    if (weights.shape() != want) {
        throw ShapeError("conv weights shape " + weights.shape_str() + " != expected " +
                         shape_to_string(want));
    }
    if (bias.rank() != 1 || bias.dim(0) != out_channels) {
        throw ShapeError("conv bias length " + std::to_string(bias.size()) +
                         " != out_channels " + std::to_string(out_channels));
    }
}

void BatchNormSpec::validate() const {
    const int c = gamma.rank() == 1 ? gamma.dim(0) : -1;
    if (c < 1) throw ShapeError("batchnorm gamma must be rank-1, non-empty");
    for (const Tensor* t : {&beta, &running_mean, &running_var}) {
        if (t->rank() != 1 || t->dim(0) != c) {
            throw ShapeError("batchnorm parameter arrays must all have length " +
                             std::to_string(c));
        }
    }
    for (float v : running_var.values()) {
        if (v < 0.0f) throw ValueError("batchnorm running_var entries must be >= 0");
    }
    if (!(epsilon > 0.0f)) throw ValueError("batchnorm epsilon must be > 0");
}

namespace {

void require_rank4(const Tensor& t, const char* op) {
    if (t.rank() != 4) {
        throw ShapeError(std::string(op) + ": input must be rank-4 (N,C,H,W), got rank " +
                         std::to_string(t.rank()));
    }
}

// Scatters one input image (C,H,W) into the column matrix col[K][P] with
// K = C*kh*kw rows and P = out_h*out_w columns. Out-of-bounds taps are zero.
void im2col(const float* img, int channels, int height, int width, int kh, int kw, int stride,
            int pad, int out_h, int out_w, float* col) {
    const std::int64_t plane = static_cast<std::int64_t>(height) * width;
    const std::int64_t cols = static_cast<std::int64_t>(out_h) * out_w;
    std::int64_t k = 0;
    for (int c = 0; c < channels; ++c) {
        const float* src = img + c * plane;
        for (int i = 0; i < kh; ++i) {
            for (int j = 0; j < kw; ++j, ++k) {
                float* dst = col + k * cols;
                for (int oh = 0; oh < out_h; ++oh) {
                    const int ih = oh * stride - pad + i;
                    float* row = dst + static_cast<std::int64_t>(oh) * out_w;
                    if (ih < 0 || ih >= height) {
                        std::memset(row, 0, sizeof(float) * static_cast<std::size_t>(out_w));
                        continue;
                    }
                    const float* srow = src + static_cast<std::int64_t>(ih) * width;
                    for (int ow = 0; ow < out_w; ++ow) {
                        const int iw = ow * stride - pad + j;
                        row[ow] = (iw >= 0 && iw < width) ? srow[iw] : 0.0f;
                    }
                }
            }
        }
    }
}

}  // namespace

Tensor conv2d(const Tensor& input, const ConvSpec& spec) {
    require_rank4(input, "conv2d");
    spec.validate();
    const int batch = input.dim(0), in_c = input.dim(1), in_h = input.dim(2), in_w = input.dim(3);
    if (in_c != spec.in_channels) {
        throw ShapeError("conv2d: input channel dimension " + std::to_string(in_c) +
                         " != spec.in_channels " + std::to_string(spec.in_channels));
    }
    if (in_h + 2 * spec.padding < spec.kernel_h) {
        throw ShapeError("conv2d: height " + std::to_string(in_h) + " + 2*padding < kernel_h " +
                         std::to_string(spec.kernel_h));
    }
    if (in_w + 2 * spec.padding < spec.kernel_w) {
        throw ShapeError("conv2d: width " + std::to_string(in_w) + " + 2*padding < kernel_w " +
                         std::to_string(spec.kernel_w));
    }
    const int out_h = conv_out_dim(in_h, spec.kernel_h, spec.stride, spec.padding);
    const int out_w = conv_out_dim(in_w, spec.kernel_w, spec.stride, spec.padding);
    const int out_c = spec.out_channels;
    const std::int64_t kdim = static_cast<std::int64_t>(in_c) * spec.kernel_h * spec.kernel_w;
    const std::int64_t cols = static_cast<std::int64_t>(out_h) * out_w;

    Tensor output({batch, out_c, out_h, out_w});
    const float* wts = spec.weights.data();
    const float* bias = spec.bias.data();
    const std::int64_t in_plane = static_cast<std::int64_t>(in_c) * in_h * in_w;
    const std::int64_t out_plane = static_cast<std::int64_t>(out_c) * cols;

    // The input is already in column form when the kernel is 1x1 with unit
    // stride and no padding (common in ResNet bottlenecks).
    const bool identity_cols =
        spec.kernel_h == 1 && spec.kernel_w == 1 && spec.stride == 1 && spec.padding == 0;
    std::vector<float> col_buf;
    if (!identity_cols) col_buf.resize(static_cast<std::size_t>(kdim * cols));

    const int threads = thread_count();
    for (int n = 0; n < batch; ++n) {
        const float* img = input.data() + n * in_plane;
        const float* col = img;
        if (!identity_cols) {
            im2col(img, in_c, in_h, in_w, spec.kernel_h, spec.kernel_w, spec.stride, spec.padding,
                   out_h, out_w, col_buf.data());
            col = col_buf.data();
        }
        float* out_base = output.data() + n * out_plane;
        // Each output element owns a double accumulator and a fixed reduction
        // order over k, so the result is bit-identical for any thread count.
#pragma omp parallel for num_threads(threads) schedule(static)
        for (int oc = 0; oc < out_c; ++oc) {
            const float* wrow = wts + static_cast<std::int64_t>(oc) * kdim;
            std::vector<double> acc(static_cast<std::size_t>(cols),
                                    static_cast<double>(bias[oc]));
            for (std::int64_t k = 0; k < kdim; ++k) {
                const double w = static_cast<double>(wrow[k]);
                const float* crow = col + k * cols;
                double* a = acc.data();
                for (std::int64_t p = 0; p < cols; ++p) {
                    a[p] += w * static_cast<double>(crow[p]);
                }
            }
            float* orow = out_base + static_cast<std::int64_t>(oc) * cols;
            for (std::int64_t p = 0; p < cols; ++p) {
                orow[p] = static_cast<float>(acc[static_cast<std::size_t>(p)]);
            }
        }
    }
    return output;
}

Tensor maxpool2d(const Tensor& input, int kernel, int stride, int padding) {
    require_rank4(input, "maxpool2d");
    if (kernel < 1 || stride < 1 || padding < 0) {
        throw ShapeError("maxpool2d: kernel/stride must be >= 1 and padding >= 0");
    }
    const int batch = input.dim(0), chans = input.dim(1), in_h = input.dim(2), in_w = input.dim(3);
    if (in_h + 2 * padding < kernel) {
        throw ShapeError("maxpool2d: height " + std::to_string(in_h) + " + 2*padding < kernel " +
                         std::to_string(kernel));
    }
    if (in_w + 2 * padding < kernel) {
        throw ShapeError("maxpool2d: width " + std::to_string(in_w) + " + 2*padding < kernel " +
                         std::to_string(kernel));
    }
    const int out_h = conv_out_dim(in_h, kernel, stride, padding);
    const int out_w = conv_out_dim(in_w, kernel, stride, padding);
    Tensor output({batch, chans, out_h, out_w});

    const std::int64_t planes = static_cast<std::int64_t>(batch) * chans;
    const std::int64_t in_plane = static_cast<std::int64_t>(in_h) * in_w;
    const std::int64_t out_plane = static_cast<std::int64_t>(out_h) * out_w;
    for (std::int64_t pl = 0; pl < planes; ++pl) {
        const float* src = input.data() + pl * in_plane;
        float* dst = output.data() + pl * out_plane;
        for (int oh = 0; oh < out_h; ++oh) {
            for (int ow = 0; ow < out_w; ++ow) {
                float best = -std::numeric_limits<float>::infinity();
                const int h0 = oh * stride - padding;
                const int w0 = ow * stride - padding;
                for (int i = 0; i < kernel; ++i) {
                    const int ih = h0 + i;
                    if (ih < 0 || ih >= in_h) continue;
                    for (int j = 0; j < kernel; ++j) {
                        const int iw = w0 + j;
                        if (iw < 0 || iw >= in_w) continue;
                        const float v = src[static_cast<std::int64_t>(ih) * in_w + iw];
                        if (v > best) best = v;
                    }
                }
                dst[static_cast<std::int64_t>(oh) * out_w + ow] = best;
            }
        }
    }
    return output;
}

Tensor relu(const Tensor& input) {
    Tensor output(input.shape());
    const float* src = input.data();
    float* dst = output.data();
    const std::int64_t n = input.size();
    for (std::int64_t i = 0; i < n; ++i) {
        dst[i] = src[i] > 0.0f ? src[i] : 0.0f;
    }
    return output;
}

Tensor batchnorm_infer(const Tensor& input, const BatchNormSpec& spec) {
    require_rank4(input, "batchnorm_infer");
    spec.validate();
    const int chans = input.dim(1);
    if (chans != spec.channels()) {
        throw ShapeError("batchnorm_infer: input channel dimension " + std::to_string(chans) +
                         " != parameter length " + std::to_string(spec.channels()));
    }
    const int batch = input.dim(0);
    const std::int64_t plane = static_cast<std::int64_t>(input.dim(2)) * input.dim(3);

    // Fold the per-channel affine into scale/shift once, in double.
    std::vector<double> scale(static_cast<std::size_t>(chans));
    std::vector<double> shift(static_cast<std::size_t>(chans));
    for (int c = 0; c < chans; ++c) {
        const double g = spec.gamma.at(c);
        const double m = spec.running_mean.at(c);
        const double v = spec.running_var.at(c);
        const double s = g / std::sqrt(v + static_cast<double>(spec.epsilon));
        scale[static_cast<std::size_t>(c)] = s;
        shift[static_cast<std::size_t>(c)] = static_cast<double>(spec.beta.at(c)) - s * m;
    }

    Tensor output(input.shape());
    for (int n = 0; n < batch; ++n) {
        for (int c = 0; c < chans; ++c) {
            const float* src = input.data() + (static_cast<std::int64_t>(n) * chans + c) * plane;
            float* dst = output.data() + (static_cast<std::int64_t>(n) * chans + c) * plane;
            const double s = scale[static_cast<std::size_t>(c)];
            const double b = shift[static_cast<std::size_t>(c)];
            for (std::int64_t i = 0; i < plane; ++i) {
                dst[i] = static_cast<float>(s * static_cast<double>(src[i]) + b);
            }
        }
    }
    return output;
}

Tensor linear(const Tensor& input, const Tensor& weights, const Tensor& bias) {
    if (input.rank() != 2) {
        throw ShapeError("linear: input must be rank-2 (N,D), got rank " +
                         std::to_string(input.rank()));
    }
    if (weights.rank() != 2) {
        throw ShapeError("linear: weights must be rank-2 (D,M)");
    }
    const int n = input.dim(0), d = input.dim(1);
    const int wd = weights.dim(0), m = weights.dim(1);
    if (d != wd) {
        throw ShapeError("linear: inner dimensions disagree, input D=" + std::to_string(d) +
                         " vs weights D=" + std::to_string(wd));
    }
    if (bias.rank() != 1 || bias.dim(0) != m) {
        throw ShapeError("linear: bias length must equal M=" + std::to_string(m));
    }
    Tensor output({n, m});
    for (int i = 0; i < n; ++i) {
        const float* xrow = input.data() + static_cast<std::int64_t>(i) * d;
        float* orow = output.data() + static_cast<std::int64_t>(i) * m;
        for (int j = 0; j < m; ++j) {
            double acc = static_cast<double>(bias.at(j));
            for (int k = 0; k < d; ++k) {
                acc += static_cast<double>(xrow[k]) *
                       static_cast<double>(weights.data()[static_cast<std::int64_t>(k) * m + j]);
            }
            orow[j] = static_cast<float>(acc);
        }
    }
    return output;
}

Tensor add(const Tensor& lhs, const Tensor& rhs) {
    if (!lhs.same_shape(rhs)) {
        throw ShapeError("add: shape mismatch " + lhs.shape_str() + " vs " + rhs.shape_str());
    }
    Tensor output(lhs.shape());
    const float* a = lhs.data();
    const float* b = rhs.data();
    float* dst = output.data();
    const std::int64_t n = lhs.size();
    for (std::int64_t i = 0; i < n; ++i) dst[i] = a[i] + b[i];
    return output;
}

}  // namespace seedpure
