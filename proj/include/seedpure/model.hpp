#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "seedpure/tensor.hpp"

namespace seedpure {

class WeightStore;

enum class ModelKind { Vgg16, ResNet50 };

std::string to_string(ModelKind kind);
std::optional<ModelKind> parse_model_kind(std::string_view name);

struct InputGeometry {
    int channels = 3;
    int height = 75;
    int width = 170;
};

// Layer descriptors. A graph is a flat list; residual blocks are expressed
// with BlockStart (stash the current activation for the skip path) and
// AddJunction (add the stash back, through an optional projection).
struct ConvDesc {
    std::string param;  // parameter prefix, e.g. "vgg.block1.conv1"
    int in_channels = 0;
    int out_channels = 0;
    int kernel_h = 0;
    int kernel_w = 0;
    int stride = 1;
    int padding = 0;
};

struct BatchNormDesc {
    std::string param;
    int channels = 0;
};

struct ReluDesc {};

struct MaxPoolDesc {
    int kernel = 2;
    int stride = 2;
    int padding = 0;
};

struct BlockStartDesc {};

struct AddJunctionDesc {
    std::optional<ConvDesc> projection;
    std::optional<BatchNormDesc> projection_bn;
};

using LayerDesc =
    std::variant<ConvDesc, BatchNormDesc, ReluDesc, MaxPoolDesc, BlockStartDesc, AddJunctionDesc>;

// Named intermediate output. Stable public identifiers:
//   vgg.block3  vgg.block4  vgg.block5
//   resnet.stage5.block1  resnet.stage5.block2  resnet.stage5.block3
struct TapPoint {
    std::string name;
};

struct ModelGraph {
    ModelKind kind = ModelKind::Vgg16;
    InputGeometry input;
    std::vector<LayerDesc> layers;
    // Tap name -> index of the last layer whose output the tap exposes.
    std::map<std::string, std::size_t> taps;

    // Throws ValueError listing the valid taps when the name is unknown.
    std::size_t tap_index(const TapPoint& tap) const;
    std::vector<std::string> tap_names() const;
};

// VGG16 feature stack: five blocks of 3x3/s1/p1 convolutions with ReLU,
// conv counts [2,2,3,3,3] at widths [64,128,256,512,512], each block closed
// by a 2x2/s2 max pool. Taps expose the pooled outputs of blocks 3-5.
// Requires height and width >= 32 so five halvings keep at least one pixel.
ModelGraph build_vgg16(InputGeometry geometry = {});

// ResNet-50 feature stack: 7x7/s2/p3 stem conv + 3x3/s2/p1 max pool, then
// stages 2-5 of bottleneck blocks (counts [3,4,6,3], 4x channel expansion,
// stride 2 in the 3x3 conv and projection of each stage's first block from
// stage 3 on). Taps expose the post-addition, post-ReLU outputs of the three
// stage-5 blocks.
ModelGraph build_resnet50(InputGeometry geometry = {});

ModelGraph build_model(ModelKind kind, InputGeometry geometry = {});

// Runs the graph up to the tap and returns the activation there; layers
// after the tap are not executed. The batch must match the graph's input
// geometry. Missing parameters raise an Error naming the parameter.
Tensor forward_to_tap(const ModelGraph& graph, const WeightStore& weights, const Tensor& batch,
                      const TapPoint& tap);

// One pass, several taps; outputs are returned in the order requested.
std::vector<Tensor> forward_to_taps(const ModelGraph& graph, const WeightStore& weights,
                                    const Tensor& batch, const std::vector<TapPoint>& taps);

}  // namespace seedpure
