#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

#include "seedpure/tensor.hpp"

namespace seedpure {

struct ModelGraph;

// Named parameter tensors; keys are dot-separated paths such as
// "vgg.block3.conv1.weight". Immutable once built and shared across threads.
class WeightStore {
public:
    void put(std::string name, Tensor tensor);
    const Tensor& get(const std::string& name) const;  // Error("missing weight: ...")
    bool contains(const std::string& name) const;
    void erase(const std::string& name);
    std::size_t size() const { return tensors_.size(); }
    const std::map<std::string, Tensor>& tensors() const { return tensors_; }

private:
    std::map<std::string, Tensor> tensors_;
};

bool bitwise_equal(const WeightStore& a, const WeightStore& b);

inline constexpr std::uint32_t kSpwtVersion = 1;

// SPWT container, little-endian throughout:
//   "SPWT" | version u32 | tensor_count u32
//   per tensor (in lexicographic name order):
//     name_len u16 | name bytes | rank u8 | dims u32 each | f32 data
void save_weights(const WeightStore& store, const std::filesystem::path& path);
WeightStore load_weights(const std::filesystem::path& path);

// Fills every parameter the graph names: conv weights uniform in
// +-1/sqrt(fan_in), biases and batchnorm beta/mean zero, gamma/var one.
// Deterministic in the seed.
WeightStore random_init(const ModelGraph& graph, std::uint64_t seed);

}  // namespace seedpure
