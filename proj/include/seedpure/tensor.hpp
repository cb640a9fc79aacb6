#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace seedpure {

std::int64_t shape_product(const std::vector<int>& shape);
std::string shape_to_string(const std::vector<int>& shape);

// Dense rank-1..4 float tensor, row-major. Rank-4 layout is NCHW
// (batch, channel, height, width).
class Tensor {
public:
    Tensor() = default;
    explicit Tensor(std::vector<int> shape);                           // zero filled
    Tensor(std::vector<int> shape, std::vector<float> data);

    static Tensor full(std::vector<int> shape, float value);

    const std::vector<int>& shape() const { return shape_; }
    int rank() const { return static_cast<int>(shape_.size()); }
    int dim(int i) const { return shape_[static_cast<std::size_t>(i)]; }
    std::int64_t size() const { return static_cast<std::int64_t>(data_.size()); }
    bool empty() const { return data_.empty(); }

    float* data() { return data_.data(); }
    const float* data() const { return data_.data(); }
    std::vector<float>& values() { return data_; }
    const std::vector<float>& values() const { return data_; }

    float& at(int i) { return data_[static_cast<std::size_t>(i)]; }
    float at(int i) const { return data_[static_cast<std::size_t>(i)]; }
    float& at(int n, int c, int h, int w);
    float at(int n, int c, int h, int w) const;

    bool same_shape(const Tensor& other) const { return shape_ == other.shape_; }
    std::string shape_str() const { return shape_to_string(shape_); }

    friend bool operator==(const Tensor& a, const Tensor& b) {
        return a.shape_ == b.shape_ && a.data_ == b.data_;
    }

private:
    std::vector<int> shape_;
    std::vector<float> data_;
};

// Bit-level equality (distinguishes -0.0 from 0.0, unlike operator==).
bool bitwise_equal(const Tensor& a, const Tensor& b);

}  // namespace seedpure
