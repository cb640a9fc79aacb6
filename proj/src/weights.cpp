#include "seedpure/weights.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

#include "io_util.hpp"
#include "seedpure/errors.hpp"
#include "seedpure/model.hpp"
#include "seedpure/rng.hpp"

namespace seedpure {

void WeightStore::put(std::string name, Tensor tensor) {
    if (name.empty()) throw ValueError("weight name must be non-empty");
    if (tensor.empty()) throw ValueError("weight tensor '" + name + "' must be non-empty");
    const auto [it, inserted] = tensors_.emplace(std::move(name), std::move(tensor));
    if (!inserted) throw ValueError("duplicate weight name: " + it->first);
}

const Tensor& WeightStore::get(const std::string& name) const {
    const auto it = tensors_.find(name);
    if (it == tensors_.end()) throw Error("missing weight: " + name);
    return it->second;
}

bool WeightStore::contains(const std::string& name) const {
    return tensors_.count(name) != 0;
}

void WeightStore::erase(const std::string& name) {
    tensors_.erase(name);
}

bool bitwise_equal(const WeightStore& a, const WeightStore& b) {
    if (a.size() != b.size()) return false;
    auto ia = a.tensors().begin();
    auto ib = b.tensors().begin();
    for (; ia != a.tensors().end(); ++ia, ++ib) {
        if (ia->first != ib->first || !bitwise_equal(ia->second, ib->second)) return false;
    }
    return true;
}

void save_weights(const WeightStore& store, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open for writing: " + path.string());
    os.write("SPWT", 4);
    detail::write_u32le(os, kSpwtVersion);
    detail::write_u32le(os, static_cast<std::uint32_t>(store.size()));
    for (const auto& [name, tensor] : store.tensors()) {
        detail::write_u16le(os, static_cast<std::uint16_t>(name.size()));
        os.write(name.data(), static_cast<std::streamsize>(name.size()));
        detail::write_u8(os, static_cast<std::uint8_t>(tensor.rank()));
        for (int d : tensor.shape()) detail::write_u32le(os, static_cast<std::uint32_t>(d));
        for (float v : tensor.values()) detail::write_f32le(os, v);
    }
    if (!os) throw IoError("write failed: " + path.string());
}

WeightStore load_weights(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open: " + path.string());
    char magic[4];
    detail::read_exact(is, magic, 4, "SPWT magic");
    if (std::memcmp(magic, "SPWT", 4) != 0) {
        throw FormatError("bad magic: not an SPWT file: " + path.string());
    }
    const std::uint32_t version = detail::read_u32le(is, "SPWT version");
    if (version != kSpwtVersion) {
        throw FormatError("unsupported SPWT version " + std::to_string(version));
    }
    const std::uint32_t count = detail::read_u32le(is, "SPWT tensor count");
    WeightStore store;
    for (std::uint32_t i = 0; i < count; ++i) {
        const std::uint16_t name_len = detail::read_u16le(is, "tensor name length");
        std::string name(name_len, '\0');
        detail::read_exact(is, name.data(), name_len, "tensor name");
        const std::uint8_t rank = detail::read_u8(is, "tensor rank");
        if (rank < 1 || rank > 4) {
            throw FormatError("tensor '" + name + "' has invalid rank " + std::to_string(rank));
        }
        std::vector<int> shape(rank);
        for (int d = 0; d < rank; ++d) {
            shape[static_cast<std::size_t>(d)] =
                static_cast<int>(detail::read_u32le(is, "tensor dimension"));
        }
        const std::int64_t n = shape_product(shape);
        std::vector<float> data(static_cast<std::size_t>(n));
        for (std::int64_t v = 0; v < n; ++v) {
            data[static_cast<std::size_t>(v)] = detail::read_f32le(is, "tensor data");
        }
        if (store.contains(name)) throw FormatError("duplicate tensor name: " + name);
        store.put(std::move(name), Tensor(std::move(shape), std::move(data)));
    }
    return store;
}

namespace {

Tensor uniform_tensor(std::vector<int> shape, double bound, std::mt19937_64& gen) {
    Tensor t(std::move(shape));
    for (float& v : t.values()) {
        v = static_cast<float>(uniform_real(gen, -bound, bound));
    }
    return t;
}

void init_conv(WeightStore& store, const ConvDesc& d, std::mt19937_64& gen) {
    const double fan_in =
        static_cast<double>(d.in_channels) * d.kernel_h * d.kernel_w;
    const double bound = 1.0 / std::sqrt(fan_in);
    store.put(d.param + ".weight",
              uniform_tensor({d.out_channels, d.in_channels, d.kernel_h, d.kernel_w}, bound, gen));
    store.put(d.param + ".bias", Tensor({d.out_channels}));
}

void init_bn(WeightStore& store, const BatchNormDesc& d) {
    store.put(d.param + ".gamma", Tensor::full({d.channels}, 1.0f));
    store.put(d.param + ".beta", Tensor({d.channels}));
    store.put(d.param + ".running_mean", Tensor({d.channels}));
    store.put(d.param + ".running_var", Tensor::full({d.channels}, 1.0f));
}

}  // namespace

WeightStore random_init(const ModelGraph& graph, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    WeightStore store;
    for (const LayerDesc& layer : graph.layers) {
        if (std::holds_alternative<ConvDesc>(layer)) {
            init_conv(store, std::get<ConvDesc>(layer), gen);
        } else if (std::holds_alternative<BatchNormDesc>(layer)) {
            init_bn(store, std::get<BatchNormDesc>(layer));
        } else if (std::holds_alternative<AddJunctionDesc>(layer)) {
            const auto& j = std::get<AddJunctionDesc>(layer);
            if (j.projection.has_value()) {
                init_conv(store, *j.projection, gen);
                init_bn(store, *j.projection_bn);
            }
        }
    }
    return store;
}

}  // namespace seedpure
