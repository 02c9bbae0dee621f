#pragma once

// Bridges manifests to in-memory training examples: loads each clip, runs the
// preprocessing pipeline (or reads the preprocess image cache when present),
// and packs tensors for the requested fusion mode. The cache is transparent:
// cached and freshly-computed images are the same f64 values.

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "sonar/dataset_cache.hpp"
#include "sonar/manifest.hpp"
#include "sonar/models.hpp"
#include "sonar/nn/train.hpp"
#include "sonar/pipeline.hpp"

namespace sonar {

template <typename T>
nn::Example<T> load_example(const ManifestRow& row, const std::string& corpus_root,
                            const std::string& cache_root, FusionMode mode,
                            const PipelineConfig& cfg) {
    namespace fs = std::filesystem;
    ModelInput input;
    bool cached = false;
    if (!cache_root.empty()) {
        const auto paths = cache_image_paths(cache_root, row.path);
        const auto idx = cache_channel_indices(mode);
        cached = true;
        for (int k : idx)
            if (!fs::exists(paths[k])) cached = false;
        if (cached) {
            input.mode = mode;
            for (int k : idx) input.channels.push_back(read_image_f64(paths[k]));
        }
    }
    if (!cached)
        input = assemble((fs::path(corpus_root) / row.path).string(), mode, cfg);

    nn::Example<T> ex;
    ex.inputs = pack_input<T>(input);
    ex.label = static_cast<int>(row.gesture);
    return ex;
}

template <typename T>
std::vector<nn::Example<T>> load_examples(const std::vector<ManifestRow>& rows,
                                          const std::string& corpus_root,
                                          const std::string& cache_root, FusionMode mode,
                                          const PipelineConfig& cfg) {
    std::vector<nn::Example<T>> out;
    out.reserve(rows.size());
    for (const auto& row : rows)
        out.push_back(load_example<T>(row, corpus_root, cache_root, mode, cfg));
    return out;
}

}  // namespace sonar
