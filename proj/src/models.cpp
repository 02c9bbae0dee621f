#include "sonar/models.hpp"

#include <cstring>
#include <fstream>

namespace sonar {

namespace {

constexpr char kMagic[8] = {'S', 'O', 'N', 'A', 'R', 'C', 'K', '1'};
constexpr std::uint32_t kVersion = 1;

std::uint8_t mode_tag(FusionMode m) { return static_cast<std::uint8_t>(m); }

FusionMode tag_mode(std::uint8_t t, const std::string& path) {
    if (t > 2) throw DataError("checkpoint '" + path + "': unknown mode tag " + std::to_string(t));
    return static_cast<FusionMode>(t);
}

template <typename T>
void write_le(std::ofstream& out, T v) {
    // Host is little-endian on every supported target; serialize directly.
    out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

template <typename T>
T read_le(std::ifstream& in, const std::string& path) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof(v));
    if (!in) throw DataError("checkpoint '" + path + "': truncated");
    return v;
}

}  // namespace

void save_checkpoint_raw(const std::string& path, FusionMode mode, int dtype_bytes,
                         const std::vector<nn::LayerSpec>& specs, const void* data,
                         std::size_t n_params) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("save_checkpoint: cannot open '" + path + "' for writing");
    out.write(kMagic, sizeof(kMagic));
    write_le(out, kVersion);
    write_le(out, mode_tag(mode));
    write_le(out, static_cast<std::uint8_t>(dtype_bytes));
    write_le(out, static_cast<std::uint32_t>(specs.size()));
    for (const auto& s : specs) {
        write_le(out, static_cast<std::uint8_t>(s.kind));
        for (std::int32_t p : s.p) write_le(out, p);
    }
    write_le(out, static_cast<std::uint64_t>(n_params));
    out.write(static_cast<const char*>(data),
              static_cast<std::streamsize>(n_params * dtype_bytes));
    if (!out) throw DataError("save_checkpoint: short write to '" + path + "'");
}

RawCheckpoint load_checkpoint_raw(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("load_checkpoint: cannot open '" + path + "'");
    char magic[8];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw DataError("load_checkpoint: '" + path + "' is not a checkpoint (bad magic)");
    const auto version = read_le<std::uint32_t>(in, path);
    if (version != kVersion)
        throw DataError("load_checkpoint: '" + path + "' has version " +
                        std::to_string(version) + ", expected " + std::to_string(kVersion));
    RawCheckpoint raw;
    raw.mode = tag_mode(read_le<std::uint8_t>(in, path), path);
    raw.dtype_bytes = read_le<std::uint8_t>(in, path);
    if (raw.dtype_bytes != 4 && raw.dtype_bytes != 8)
        throw DataError("load_checkpoint: '" + path + "' has unsupported dtype width " +
                        std::to_string(raw.dtype_bytes));
    const auto n_specs = read_le<std::uint32_t>(in, path);
    for (std::uint32_t i = 0; i < n_specs; ++i) {
        nn::LayerSpec s;
        s.kind = static_cast<nn::LayerKind>(read_le<std::uint8_t>(in, path));
        for (auto& p : s.p) p = read_le<std::int32_t>(in, path);
        raw.specs.push_back(s);
    }
    raw.n_params = read_le<std::uint64_t>(in, path);
    raw.payload.resize(raw.n_params * raw.dtype_bytes);
    in.read(reinterpret_cast<char*>(raw.payload.data()),
            static_cast<std::streamsize>(raw.payload.size()));
    if (!in) throw DataError("load_checkpoint: '" + path + "': truncated payload");
    return raw;
}

FusionMode peek_checkpoint_mode(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("load_checkpoint: cannot open '" + path + "'");
    char magic[8];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw DataError("load_checkpoint: '" + path + "' is not a checkpoint (bad magic)");
    read_le<std::uint32_t>(in, path);
    return tag_mode(read_le<std::uint8_t>(in, path), path);
}

}  // namespace sonar
