#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace sonar {

// Time-domain audio. Samples are dimensionless amplitudes, nominally in
// [-1, 1]; sample_rate_hz > 0. Immutable by convention once built.
struct Waveform {
    std::vector<double> samples;
    double sample_rate_hz = 44100.0;

    std::size_t size() const { return samples.size(); }
    double duration_s() const {
        return static_cast<double>(samples.size()) / sample_rate_hz;
    }
};

// Two time-aligned channels. Channel 0 of a WAV file is the top microphone,
// channel 1 the bottom; both must share sample rate and length.
struct StereoWaveform {
    Waveform top;
    Waveform bottom;
};

// Continuous-wave probe parameters.
struct CwConfig {
    double frequency_hz = 20000.0;
    double sample_rate_hz = 44100.0;
    double duration_s = 3.0;
    double amplitude = 0.9;
};

// samples[n] = amplitude * sin(2*pi*f*n/sr). Throws std::invalid_argument on
// frequency >= Nyquist, non-positive duration, or amplitude outside (0, 1].
Waveform generate_cw(const CwConfig& config);

// 16-bit PCM quantization. Encode clamps to [-1, 1] and rounds half away
// from zero; full scale is +/-32767 (the encoder never emits -32768).
std::int16_t pcm16_quantize(double x);
double pcm16_dequantize(std::int16_t v);

// Little-endian signed 16-bit byte stream.
std::vector<std::uint8_t> pcm16_encode(const Waveform& w);
// Throws DataError on odd-length input.
Waveform pcm16_decode(std::span<const std::uint8_t> bytes, double sample_rate_hz);

// Throws DataError if channels disagree in length or sample rate.
void check_stereo(const StereoWaveform& s);

// (top, bottom) without resampling or scaling.
std::pair<Waveform, Waveform> split_channels(const StereoWaveform& s);

// Sample-wise mean of the two channels.
Waveform mixdown(const StereoWaveform& s);

}  // namespace sonar
