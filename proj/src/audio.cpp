#include "sonar/audio.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "sonar/errors.hpp"

namespace sonar {

Waveform generate_cw(const CwConfig& config) {
    if (config.sample_rate_hz <= 0.0)
        throw std::invalid_argument("generate_cw: sample rate must be positive");
    if (config.frequency_hz <= 0.0 || config.frequency_hz >= config.sample_rate_hz / 2.0)
        throw std::invalid_argument(
            "generate_cw: frequency " + std::to_string(config.frequency_hz) +
            " Hz must lie in (0, Nyquist=" + std::to_string(config.sample_rate_hz / 2.0) + ")");
    if (config.duration_s <= 0.0)
        throw std::invalid_argument("generate_cw: duration must be positive");
    if (config.amplitude <= 0.0 || config.amplitude > 1.0)
        throw std::invalid_argument("generate_cw: amplitude must be in (0, 1]");

    const auto n = static_cast<std::size_t>(
        std::llround(config.duration_s * config.sample_rate_hz));
    Waveform w;
    w.sample_rate_hz = config.sample_rate_hz;
    w.samples.resize(n);
    const double two_pi_f = 2.0 * std::numbers::pi * config.frequency_hz;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / config.sample_rate_hz;
        w.samples[i] = config.amplitude * std::sin(two_pi_f * t);
    }
    return w;
}

std::int16_t pcm16_quantize(double x) {
    if (x > 1.0) x = 1.0;
    if (x < -1.0) x = -1.0;
    return static_cast<std::int16_t>(std::lround(x * 32767.0));
}

double pcm16_dequantize(std::int16_t v) {
    return static_cast<double>(v) / 32767.0;
}

std::vector<std::uint8_t> pcm16_encode(const Waveform& w) {
    std::vector<std::uint8_t> out(w.samples.size() * 2);
    for (std::size_t i = 0; i < w.samples.size(); ++i) {
        const auto v = static_cast<std::uint16_t>(pcm16_quantize(w.samples[i]));
        out[2 * i] = static_cast<std::uint8_t>(v & 0xFF);
        out[2 * i + 1] = static_cast<std::uint8_t>(v >> 8);
    }
    return out;
}

Waveform pcm16_decode(std::span<const std::uint8_t> bytes, double sample_rate_hz) {
    if (bytes.size() % 2 != 0)
        throw DataError("pcm16_decode: odd byte count " + std::to_string(bytes.size()));
    Waveform w;
    w.sample_rate_hz = sample_rate_hz;
    w.samples.resize(bytes.size() / 2);
    for (std::size_t i = 0; i < w.samples.size(); ++i) {
        const auto u = static_cast<std::uint16_t>(bytes[2 * i] |
                                                  (bytes[2 * i + 1] << 8));
        w.samples[i] = pcm16_dequantize(static_cast<std::int16_t>(u));
    }
    return w;
}

void check_stereo(const StereoWaveform& s) {
    if (s.top.samples.size() != s.bottom.samples.size())
        throw DataError("stereo channels differ in length: " +
                        std::to_string(s.top.samples.size()) + " vs " +
                        std::to_string(s.bottom.samples.size()));
    if (s.top.sample_rate_hz != s.bottom.sample_rate_hz)
        throw DataError("stereo channels differ in sample rate");
}

std::pair<Waveform, Waveform> split_channels(const StereoWaveform& s) {
    check_stereo(s);
    return {s.top, s.bottom};
}

Waveform mixdown(const StereoWaveform& s) {
    check_stereo(s);
    Waveform out;
    out.sample_rate_hz = s.top.sample_rate_hz;
    out.samples.resize(s.top.samples.size());
    for (std::size_t i = 0; i < out.samples.size(); ++i)
        out.samples[i] = (s.top.samples[i] + s.bottom.samples[i]) / 2.0;
    return out;
}

}  // namespace sonar
