#pragma once

// End-to-end clip preprocessing: WAV -> channel split/mixdown -> STFT ->
// band/time crop -> normalized 100x100 image, packed per fusion mode.

#include <string>
#include <vector>

#include "sonar/audio.hpp"
#include "sonar/image.hpp"
#include "sonar/stft.hpp"

namespace sonar {

enum class FusionMode { kSingle, kEarly, kLate };

std::string fusion_mode_name(FusionMode m);
FusionMode parse_fusion_mode(const std::string& name);

struct PipelineConfig {
    StftConfig stft;
    CropConfig crop;
    ImageConfig image;
};

// Channel layout by mode:
//   single -> [mixdown]
//   early  -> [top, bottom, mixdown]
//   late   -> [top, bottom] (fed to separate trunks)
struct ModelInput {
    FusionMode mode = FusionMode::kSingle;
    std::vector<SpectrogramImage> channels;
};

// stft -> band_time_crop -> to_image for one channel.
SpectrogramImage clip_image(const Waveform& w, const PipelineConfig& cfg);

// Rejects clips shorter than the crop window with a duration diagnostic.
ModelInput assemble(const StereoWaveform& w, FusionMode mode, const PipelineConfig& cfg);
ModelInput assemble(const std::string& clip_path, FusionMode mode, const PipelineConfig& cfg);

}  // namespace sonar
