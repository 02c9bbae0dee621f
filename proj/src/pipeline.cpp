#include "sonar/pipeline.hpp"

#include <stdexcept>

#include "sonar/errors.hpp"
#include "sonar/wav_io.hpp"

namespace sonar {

std::string fusion_mode_name(FusionMode m) {
    switch (m) {
        case FusionMode::kSingle: return "single";
        case FusionMode::kEarly: return "early";
        case FusionMode::kLate: return "late";
    }
    throw std::invalid_argument("fusion_mode_name: bad enum value");
}

FusionMode parse_fusion_mode(const std::string& name) {
    if (name == "single") return FusionMode::kSingle;
    if (name == "early") return FusionMode::kEarly;
    if (name == "late") return FusionMode::kLate;
    throw std::invalid_argument("unknown fusion mode '" + name + "' (use single|early|late)");
}

SpectrogramImage clip_image(const Waveform& w, const PipelineConfig& cfg) {
    return to_image(band_time_crop(stft(w, cfg.stft), cfg.crop), cfg.image);
}

ModelInput assemble(const StereoWaveform& w, FusionMode mode, const PipelineConfig& cfg) {
    check_stereo(w);
    const double dur = w.top.duration_s();
    if (dur < cfg.crop.t_hi_s)
        throw DataError("assemble: clip is " + std::to_string(dur) +
                        " s but the analysis window ends at " +
                        std::to_string(cfg.crop.t_hi_s) + " s");

    ModelInput in;
    in.mode = mode;
    switch (mode) {
        case FusionMode::kSingle:
            in.channels.push_back(clip_image(mixdown(w), cfg));
            break;
        case FusionMode::kEarly:
            in.channels.push_back(clip_image(w.top, cfg));
            in.channels.push_back(clip_image(w.bottom, cfg));
            in.channels.push_back(clip_image(mixdown(w), cfg));
            break;
        case FusionMode::kLate:
            in.channels.push_back(clip_image(w.top, cfg));
            in.channels.push_back(clip_image(w.bottom, cfg));
            break;
    }
    return in;
}

ModelInput assemble(const std::string& clip_path, FusionMode mode, const PipelineConfig& cfg) {
    return assemble(wav_read(clip_path), mode, cfg);
}

}  // namespace sonar
