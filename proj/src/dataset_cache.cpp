#include "sonar/dataset_cache.hpp"

#include <filesystem>

namespace sonar {

std::array<std::string, 3> cache_image_paths(const std::string& cache_root,
                                             const std::string& rel_wav_path) {
    namespace fs = std::filesystem;
    fs::path rel(rel_wav_path);
    rel.replace_extension();
    std::array<std::string, 3> out;
    for (int i = 0; i < 3; ++i)
        out[i] = (fs::path(cache_root) /
                  (rel.generic_string() + "." + kCacheChannelNames[i] + ".f64"))
                     .string();
    return out;
}

std::vector<int> cache_channel_indices(FusionMode mode) {
    switch (mode) {
        case FusionMode::kSingle: return {2};
        case FusionMode::kEarly: return {0, 1, 2};
        case FusionMode::kLate: return {0, 1};
    }
    throw std::invalid_argument("cache_channel_indices: bad fusion mode");
}

}  // namespace sonar
