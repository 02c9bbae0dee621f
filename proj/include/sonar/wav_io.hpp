#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "sonar/audio.hpp"

namespace sonar {

class WavError : public std::runtime_error {
public:
    explicit WavError(const std::string& msg) : std::runtime_error(msg) {}
};

// Header is not a RIFF/WAVE PCM layout at all.
class WavFormatError : public WavError {
public:
    using WavError::WavError;
};

// Valid WAV, but a codec/bit-depth/channel count this reader does not handle.
class WavUnsupportedError : public WavError {
public:
    using WavError::WavError;
};

// Data chunk shorter than its declared size.
class WavTruncatedError : public WavError {
public:
    using WavError::WavError;
};

// Canonical 44-byte-header RIFF/WAVE, PCM format tag 1, 16-bit little-endian,
// interleaved frames with channel 0 = top.
void wav_write(const StereoWaveform& s, const std::filesystem::path& path);
void wav_write_mono(const Waveform& w, const std::filesystem::path& path);

// Accepts PCM 16-bit mono or stereo; other chunks between fmt and data are
// skipped. Mono files are promoted to top = bottom = the single channel.
// Sample rates other than 44100 are accepted with a warning.
StereoWaveform wav_read(const std::filesystem::path& path);

}  // namespace sonar
