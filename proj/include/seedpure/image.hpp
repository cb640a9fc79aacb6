#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "seedpure/tensor.hpp"

namespace seedpure {

// Interleaved 8-bit RGB, row-major.
struct Image {
    int height = 0;
    int width = 0;
    std::vector<std::uint8_t> pixels;

    Image() = default;
    Image(int h, int w);

    std::uint8_t* pixel(int y, int x) { return pixels.data() + 3 * (static_cast<std::size_t>(y) * width + x); }
    const std::uint8_t* pixel(int y, int x) const {
        return pixels.data() + 3 * (static_cast<std::size_t>(y) * width + x);
    }

    friend bool operator==(const Image& a, const Image& b) {
        return a.height == b.height && a.width == b.width && a.pixels == b.pixels;
    }
};

// Binary PPM (P6, maxval 255), the mandatory bit-exact format.
Image load_image(const std::filesystem::path& path);
void write_image(const Image& img, const std::filesystem::path& path);

// Bilinear interpolation with half-pixel-centered sampling; resizing to the
// source dimensions reproduces the image exactly.
Image resize_bilinear(const Image& img, int out_h, int out_w);

struct Normalization {
    std::array<float, 3> mean{0.0f, 0.0f, 0.0f};
    std::array<float, 3> stddev{1.0f, 1.0f, 1.0f};
};

// Channels-first (1,3,H,W) float tensor with values pixel/255, optionally
// followed by per-channel (v - mean) / stddev.
Tensor to_tensor(const Image& img, const std::optional<Normalization>& norm = std::nullopt);

// Synthetic seed image: dark background with a centered ellipse filled with
// base_color, modulated by a sinusoid and Gaussian noise. Stands in for the
// private rice dataset at desk scale.
struct SynthSpec {
    int class_id = 0;
    std::array<std::uint8_t, 3> base_color{180, 160, 120};
    float texture_frequency = 0.0f;  // cycles per pixel
    float noise_std = 0.0f;          // fraction of full scale, in [0,1]
    std::uint64_t seed = 0;
};

// Default look for the two synthetic varieties (warm vs cool base color).
SynthSpec default_synth_spec(int class_id, std::uint64_t seed);

Image gen_synthetic(const SynthSpec& spec, int h, int w);

}  // namespace seedpure
