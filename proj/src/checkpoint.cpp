#include "arena2d/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace arena2d {

namespace {

constexpr char kMagic[4] = {'A', '2', 'D', 'Q'};

void put_bytes(std::ostream& out, const void* data, std::size_t n) {
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(n));
}

template <typename T>
void put_le(std::ostream& out, T value) {
    unsigned char bytes[sizeof(T)];
    using U = std::conditional_t<sizeof(T) == 2, std::uint16_t,
                                 std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>>;
    U raw;
    std::memcpy(&raw, &value, sizeof(T));
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        bytes[i] = static_cast<unsigned char>((raw >> (8 * i)) & 0xFF);
    }
    put_bytes(out, bytes, sizeof(T));
}

void put_f32(std::ostream& out, float v) { put_le(out, std::bit_cast<std::uint32_t>(v)); }
void put_f64(std::ostream& out, double v) { put_le(out, std::bit_cast<std::uint64_t>(v)); }

void get_bytes(std::istream& in, void* data, std::size_t n) {
    in.read(static_cast<char*>(data), static_cast<std::streamsize>(n));
    if (!in.good() || in.gcount() != static_cast<std::streamsize>(n)) {
        throw std::runtime_error("checkpoint: truncated file");
    }
}

template <typename U>
U get_le(std::istream& in) {
    unsigned char bytes[sizeof(U)];
    get_bytes(in, bytes, sizeof(U));
    U raw = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) {
        raw |= static_cast<U>(bytes[i]) << (8 * i);
    }
    return raw;
}

float get_f32(std::istream& in) { return std::bit_cast<float>(get_le<std::uint32_t>(in)); }
double get_f64(std::istream& in) { return std::bit_cast<double>(get_le<std::uint64_t>(in)); }

void put_tensor(std::ostream& out, const std::string& name, const Tensor& t) {
    put_le(out, static_cast<std::uint32_t>(name.size()));
    put_bytes(out, name.data(), name.size());
    put_le(out, static_cast<std::uint32_t>(t.shape.size()));
    for (int d : t.shape) put_le(out, static_cast<std::uint32_t>(d));
    for (float v : t.data) put_f32(out, v);
}

struct NamedTensor {
    std::string name;
    Tensor tensor;
};

NamedTensor get_tensor(std::istream& in) {
    NamedTensor nt;
    const std::uint32_t name_len = get_le<std::uint32_t>(in);
    if (name_len > 4096) {
        throw std::runtime_error("checkpoint: corrupt tensor name");
    }
    nt.name.resize(name_len);
    get_bytes(in, nt.name.data(), name_len);
    const std::uint32_t rank = get_le<std::uint32_t>(in);
    if (rank > 8) {
        throw std::runtime_error("checkpoint: corrupt tensor rank");
    }
    std::uint64_t numel = 1;
    for (std::uint32_t i = 0; i < rank; ++i) {
        const std::uint32_t d = get_le<std::uint32_t>(in);
        nt.tensor.shape.push_back(static_cast<int>(d));
        numel *= d;
    }
    if (numel > (1ull << 30)) {
        throw std::runtime_error("checkpoint: corrupt tensor size");
    }
    nt.tensor.data.resize(static_cast<std::size_t>(numel));
    for (float& v : nt.tensor.data) v = get_f32(in);
    return nt;
}

void put_layers(std::ostream& out, const std::vector<DenseLayer>& layers,
                const std::string& prefix) {
    put_le(out, static_cast<std::uint32_t>(layers.size() * 2));
    for (std::size_t i = 0; i < layers.size(); ++i) {
        const std::string base = prefix + "layer" + std::to_string(i);
        put_tensor(out, base + ".weight", layers[i].weights);
        put_tensor(out, base + ".bias", layers[i].biases);
    }
}

std::vector<DenseLayer> get_layers(std::istream& in) {
    const std::uint32_t count = get_le<std::uint32_t>(in);
    if (count == 0 || count % 2 != 0 || count > 512) {
        throw std::runtime_error("checkpoint: corrupt layer count");
    }
    std::vector<DenseLayer> layers(count / 2);
    for (std::uint32_t i = 0; i < count; i += 2) {
        NamedTensor w = get_tensor(in);
        NamedTensor b = get_tensor(in);
        if (w.tensor.shape.size() != 2 || b.tensor.shape.size() != 1 ||
            w.tensor.shape[0] != b.tensor.shape[0]) {
            throw std::runtime_error("checkpoint: corrupt layer shapes");
        }
        layers[i / 2].weights = std::move(w.tensor);
        layers[i / 2].biases = std::move(b.tensor);
    }
    return layers;
}

}  // namespace

std::uint64_t config_digest(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

void save_checkpoint(const Checkpoint& ckpt, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("checkpoint: cannot open for writing: " + path);
    }
    put_bytes(out, kMagic, 4);
    put_le(out, kCheckpointVersion);
    put_layers(out, ckpt.net.layers(), "");
    put_layers(out, ckpt.adam.first_moment, "adam.m.");
    // second moments follow the first in the same record stream
    for (std::size_t i = 0; i < ckpt.adam.second_moment.size(); ++i) {
        const std::string base = "adam.v.layer" + std::to_string(i);
        put_tensor(out, base + ".weight", ckpt.adam.second_moment[i].weights);
        put_tensor(out, base + ".bias", ckpt.adam.second_moment[i].biases);
    }
    put_le(out, ckpt.adam.step_count);
    put_f64(out, ckpt.adam.lr);
    put_f64(out, ckpt.adam.beta1);
    put_f64(out, ckpt.adam.beta2);
    put_f64(out, ckpt.adam.eps);
    put_f64(out, ckpt.net.dropout_rate());
    put_le(out, ckpt.config_digest);
    if (!out.good()) {
        throw std::runtime_error("checkpoint: write failed: " + path);
    }
}

Checkpoint load_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("checkpoint: cannot open: " + path);
    }
    char magic[4];
    get_bytes(in, magic, 4);
    if (std::memcmp(magic, kMagic, 4) != 0) {
        throw std::runtime_error("checkpoint: bad magic bytes");
    }
    const std::uint16_t version = get_le<std::uint16_t>(in);
    if (version != kCheckpointVersion) {
        throw std::runtime_error("checkpoint: unsupported format version " +
                                 std::to_string(version));
    }

    Checkpoint ckpt;
    std::vector<DenseLayer> net_layers = get_layers(in);
    ckpt.adam.first_moment = get_layers(in);
    const std::size_t n = net_layers.size();
    ckpt.adam.second_moment.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        NamedTensor w = get_tensor(in);
        NamedTensor b = get_tensor(in);
        ckpt.adam.second_moment[i].weights = std::move(w.tensor);
        ckpt.adam.second_moment[i].biases = std::move(b.tensor);
    }
    ckpt.adam.step_count = get_le<std::uint64_t>(in);
    ckpt.adam.lr = get_f64(in);
    ckpt.adam.beta1 = get_f64(in);
    ckpt.adam.beta2 = get_f64(in);
    ckpt.adam.eps = get_f64(in);
    const double dropout = get_f64(in);
    ckpt.config_digest = get_le<std::uint64_t>(in);

    if (ckpt.adam.first_moment.size() != n || ckpt.adam.second_moment.size() != n) {
        throw std::runtime_error("checkpoint: optimizer state does not match network");
    }
    ckpt.net = make_network_from_layers(std::move(net_layers), dropout);
    return ckpt;
}

void require_input_width(const QNetwork& net, int expected) {
    if (net.input_size() != expected) {
        throw std::runtime_error("checkpoint network expects input width " +
                                 std::to_string(net.input_size()) + " but the environment provides " +
                                 std::to_string(expected));
    }
}

}  // namespace arena2d
