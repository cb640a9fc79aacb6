#include "seedpure/model.hpp"

#include <algorithm>
#include <sstream>

#include "seedpure/errors.hpp"
#include "seedpure/ops.hpp"
#include "seedpure/weights.hpp"

namespace seedpure {

std::string to_string(ModelKind kind) {
    return kind == ModelKind::Vgg16 ? "vgg16" : "resnet50";
}

std::optional<ModelKind> parse_model_kind(std::string_view name) {
    if (name == "vgg16") return ModelKind::Vgg16;
    if (name == "resnet50") return ModelKind::ResNet50;
    return std::nullopt;
}

std::size_t ModelGraph::tap_index(const TapPoint& tap) const {
    const auto it = taps.find(tap.name);
    if (it == taps.end()) {
        std::ostringstream os;
        os << "unknown tap '" << tap.name << "' for " << to_string(kind) << "; valid taps:";
        for (const std::string& n : tap_names()) os << ' ' << n;
        throw ValueError(os.str());
    }
    return it->second;
}

std::vector<std::string> ModelGraph::tap_names() const {
    std::vector<std::string> names;
    names.reserve(taps.size());
    for (const auto& [name, idx] : taps) names.push_back(name);
    return names;
}

namespace {

struct ShapeState {
    int channels, height, width;
};

// Tracks spatial geometry while the builder appends layers, so geometry
// problems surface at build time with the layer that caused them.
void check_spatial(const ShapeState& s, const std::string& where) {
    if (s.height < 1 || s.width < 1) {
        throw ValueError("geometry too small: " + where + " would produce " +
                         std::to_string(s.height) + "x" + std::to_string(s.width));
    }
}

ShapeState after_window(const ShapeState& s, int kernel, int stride, int padding, int out_channels,
                        const std::string& where) {
    ShapeState next{out_channels, conv_out_dim(s.height, kernel, stride, padding),
                    conv_out_dim(s.width, kernel, stride, padding)};
    if (s.height + 2 * padding < kernel || s.width + 2 * padding < kernel) {
        throw ValueError("geometry too small: " + where + " kernel " + std::to_string(kernel) +
                         " does not fit " + std::to_string(s.height) + "x" +
                         std::to_string(s.width));
    }
    check_spatial(next, where);
    return next;
}

void append_bottleneck(ModelGraph& graph, ShapeState& shape, const std::string& prefix,
                       int mid_channels, int stride, bool with_projection) {
    const int in_c = shape.channels;
    const int out_c = mid_channels * 4;
    graph.layers.push_back(BlockStartDesc{});
    graph.layers.push_back(ConvDesc{prefix + ".conv1", in_c, mid_channels, 1, 1, 1, 0});
    graph.layers.push_back(BatchNormDesc{prefix + ".bn1", mid_channels});
    graph.layers.push_back(ReluDesc{});
    graph.layers.push_back(ConvDesc{prefix + ".conv2", mid_channels, mid_channels, 3, 3, stride, 1});
    graph.layers.push_back(BatchNormDesc{prefix + ".bn2", mid_channels});
    graph.layers.push_back(ReluDesc{});
    graph.layers.push_back(ConvDesc{prefix + ".conv3", mid_channels, out_c, 1, 1, 1, 0});
    graph.layers.push_back(BatchNormDesc{prefix + ".bn3", out_c});
    AddJunctionDesc junction;
    if (with_projection) {
        junction.projection = ConvDesc{prefix + ".proj", in_c, out_c, 1, 1, stride, 0};
        junction.projection_bn = BatchNormDesc{prefix + ".proj_bn", out_c};
    }
    graph.layers.push_back(std::move(junction));
    graph.layers.push_back(ReluDesc{});
    shape = after_window(shape, 3, stride, 1, out_c, prefix + ".conv2");
}

}  // namespace

ModelGraph build_vgg16(InputGeometry geometry) {
    if (geometry.channels != 3) {
        throw ValueError("vgg16 expects 3 input channels, got " +
                         std::to_string(geometry.channels));
    }
    if (geometry.height < 32 || geometry.width < 32) {
        throw ValueError("geometry too small: vgg16 needs height and width >= 32, got " +
                         std::to_string(geometry.height) + "x" + std::to_string(geometry.width));
    }
    static constexpr int kConvCounts[5] = {2, 2, 3, 3, 3};
    static constexpr int kWidths[5] = {64, 128, 256, 512, 512};

    ModelGraph graph;
    graph.kind = ModelKind::Vgg16;
    graph.input = geometry;
    ShapeState shape{geometry.channels, geometry.height, geometry.width};
    for (int b = 0; b < 5; ++b) {
        const std::string block = "vgg.block" + std::to_string(b + 1);
        for (int c = 0; c < kConvCounts[b]; ++c) {
            const std::string name = block + ".conv" + std::to_string(c + 1);
            graph.layers.push_back(ConvDesc{name, shape.channels, kWidths[b], 3, 3, 1, 1});
            graph.layers.push_back(ReluDesc{});
            shape = after_window(shape, 3, 1, 1, kWidths[b], name);
        }
        graph.layers.push_back(MaxPoolDesc{2, 2, 0});
        shape = after_window(shape, 2, 2, 0, shape.channels, block + ".pool");
        if (b >= 2) graph.taps[block] = graph.layers.size() - 1;
    }
    return graph;
}

ModelGraph build_resnet50(InputGeometry geometry) {
    if (geometry.channels != 3) {
        throw ValueError("resnet50 expects 3 input channels, got " +
                         std::to_string(geometry.channels));
    }
    if (geometry.height < 1 || geometry.width < 1) {
        throw ValueError("geometry too small: resnet50 needs positive height and width");
    }
    static constexpr int kBlockCounts[4] = {3, 4, 6, 3};

    ModelGraph graph;
    graph.kind = ModelKind::ResNet50;
    graph.input = geometry;
    ShapeState shape{geometry.channels, geometry.height, geometry.width};

    graph.layers.push_back(ConvDesc{"resnet.stem.conv", 3, 64, 7, 7, 2, 3});
    graph.layers.push_back(BatchNormDesc{"resnet.stem.bn", 64});
    graph.layers.push_back(ReluDesc{});
    shape = after_window(shape, 7, 2, 3, 64, "resnet.stem.conv");
    graph.layers.push_back(MaxPoolDesc{3, 2, 1});
    shape = after_window(shape, 3, 2, 1, shape.channels, "resnet.stem.pool");

    for (int s = 0; s < 4; ++s) {
        const int stage = s + 2;
        const int mid = 64 << s;
        for (int b = 0; b < kBlockCounts[s]; ++b) {
            const std::string prefix =
                "resnet.stage" + std::to_string(stage) + ".block" + std::to_string(b + 1);
            const int stride = (stage > 2 && b == 0) ? 2 : 1;
            // The first block of each stage changes channels (and, from
            // stage 3 on, spatial size), so only it carries a projection.
            append_bottleneck(graph, shape, prefix, mid, stride, b == 0);
            if (stage == 5) graph.taps[prefix] = graph.layers.size() - 1;
        }
    }
    return graph;
}

ModelGraph build_model(ModelKind kind, InputGeometry geometry) {
    return kind == ModelKind::Vgg16 ? build_vgg16(geometry) : build_resnet50(geometry);
}

namespace {

ConvSpec conv_spec_from(const ConvDesc& d, const WeightStore& weights) {
    ConvSpec spec;
    spec.in_channels = d.in_channels;
    spec.out_channels = d.out_channels;
    spec.kernel_h = d.kernel_h;
    spec.kernel_w = d.kernel_w;
    spec.stride = d.stride;
    spec.padding = d.padding;
    spec.weights = weights.get(d.param + ".weight");
    spec.bias = weights.get(d.param + ".bias");
    return spec;
}

BatchNormSpec bn_spec_from(const BatchNormDesc& d, const WeightStore& weights) {
    BatchNormSpec spec;
    spec.gamma = weights.get(d.param + ".gamma");
    spec.beta = weights.get(d.param + ".beta");
    spec.running_mean = weights.get(d.param + ".running_mean");
    spec.running_var = weights.get(d.param + ".running_var");
    spec.epsilon = 1e-5f;
    return spec;
}

}  // namespace

std::vector<Tensor> forward_to_taps(const ModelGraph& graph, const WeightStore& weights,
                                    const Tensor& batch, const std::vector<TapPoint>& taps) {
    if (taps.empty()) throw ValueError("forward_to_taps: no taps requested");
    if (batch.rank() != 4) {
        throw ShapeError("forward: batch must be rank-4 (N,C,H,W), got rank " +
                         std::to_string(batch.rank()));
    }
    if (batch.dim(1) != graph.input.channels || batch.dim(2) != graph.input.height ||
        batch.dim(3) != graph.input.width) {
        throw ShapeError("forward: geometry mismatch, batch is " + batch.shape_str() +
                         " but the graph expects " + std::to_string(graph.input.channels) + "x" +
                         std::to_string(graph.input.height) + "x" +
                         std::to_string(graph.input.width));
    }

    std::vector<std::size_t> indices;
    indices.reserve(taps.size());
    for (const TapPoint& tap : taps) indices.push_back(graph.tap_index(tap));
    const std::size_t last = *std::max_element(indices.begin(), indices.end());

    std::vector<Tensor> outputs(taps.size());
    Tensor current = batch;
    std::optional<Tensor> stash;
    for (std::size_t idx = 0; idx <= last; ++idx) {
        const LayerDesc& layer = graph.layers[idx];
        if (std::holds_alternative<ConvDesc>(layer)) {
            current = conv2d(current, conv_spec_from(std::get<ConvDesc>(layer), weights));
        } else if (std::holds_alternative<BatchNormDesc>(layer)) {
            current = batchnorm_infer(current, bn_spec_from(std::get<BatchNormDesc>(layer), weights));
        } else if (std::holds_alternative<ReluDesc>(layer)) {
            current = relu(current);
        } else if (std::holds_alternative<MaxPoolDesc>(layer)) {
            const auto& p = std::get<MaxPoolDesc>(layer);
            current = maxpool2d(current, p.kernel, p.stride, p.padding);
        } else if (std::holds_alternative<BlockStartDesc>(layer)) {
            stash = current;
        } else {
            const auto& j = std::get<AddJunctionDesc>(layer);
            if (!stash.has_value()) throw Error("add junction without a block start");
            Tensor skip = std::move(*stash);
            stash.reset();
            if (j.projection.has_value()) {
                skip = conv2d(skip, conv_spec_from(*j.projection, weights));
                skip = batchnorm_infer(skip, bn_spec_from(*j.projection_bn, weights));
            }
            current = add(current, skip);
        }
        for (std::size_t t = 0; t < indices.size(); ++t) {
            if (indices[t] == idx) outputs[t] = current;
        }
    }
    return outputs;
}

Tensor forward_to_tap(const ModelGraph& graph, const WeightStore& weights, const Tensor& batch,
                      const TapPoint& tap) {
    return forward_to_taps(graph, weights, batch, {tap})[0];
}

}  // namespace seedpure
