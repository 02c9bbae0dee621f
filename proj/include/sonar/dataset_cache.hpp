#pragma once

// Naming scheme for the preprocess image cache. For a clip at
// <split>/<code>/<stem>.wav the cache holds, under the cache root,
// <split>/<code>/<stem>.{top,bottom,mix}.f64 (lossless doubles) and matching
// .pgm renderings for eyeballing.

#include <array>
#include <string>

#include "sonar/pipeline.hpp"

namespace sonar {

inline constexpr std::array<const char*, 3> kCacheChannelNames = {"top", "bottom", "mix"};

// f64 cache paths for [top, bottom, mix], given the WAV path relative to the
// corpus root.
std::array<std::string, 3> cache_image_paths(const std::string& cache_root,
                                             const std::string& rel_wav_path);

// Indices into the [top, bottom, mix] triple, in the channel order the given
// fusion mode consumes.
std::vector<int> cache_channel_indices(FusionMode mode);

}  // namespace sonar
