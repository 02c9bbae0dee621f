#include "sonar/stft.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "sonar/errors.hpp"
#include "sonar/fft.hpp"

namespace sonar {

Window parse_window(const std::string& name) {
    if (name == "hann") return Window::kHann;
    if (name == "rect") return Window::kRect;
    throw std::invalid_argument("unknown window '" + name + "' (use hann|rect)");
}

Spectrogram stft(const Waveform& w, const StftConfig& cfg) {
    if (cfg.n_fft < 2 || !is_power_of_two(static_cast<std::size_t>(cfg.n_fft)))
        throw std::invalid_argument("stft: n_fft must be a power of two >= 2");
    if (cfg.hop <= 0 || cfg.hop > cfg.n_fft)
        throw std::invalid_argument("stft: hop must satisfy 0 < hop <= n_fft");
    if (w.sample_rate_hz <= 0.0)
        throw std::invalid_argument("stft: sample rate must be positive");
    const auto len = w.samples.size();
    if (len < static_cast<std::size_t>(cfg.n_fft))
        throw std::invalid_argument(
            "stft: input of " + std::to_string(len) + " samples is shorter than one frame (n_fft=" +
            std::to_string(cfg.n_fft) + ")");

    const int n_frames =
        static_cast<int>((len - cfg.n_fft) / cfg.hop) + 1;
    const int n_bins = cfg.n_fft / 2 + 1;

    // Periodic Hann: w[n] = 0.5 - 0.5 cos(2*pi*n/N).
    std::vector<double> window(cfg.n_fft, 1.0);
    if (cfg.window == Window::kHann) {
        for (int i = 0; i < cfg.n_fft; ++i)
            window[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / cfg.n_fft);
    }

    Spectrogram s;
    s.n_bins = n_bins;
    s.n_frames = n_frames;
    s.bin_hz = w.sample_rate_hz / cfg.n_fft;
    s.frame_s = cfg.hop / w.sample_rate_hz;
    s.magnitudes.resize(static_cast<std::size_t>(n_bins) * n_frames);

    RealFft fft(static_cast<std::size_t>(cfg.n_fft));
    std::vector<double> frame(cfg.n_fft);
    std::vector<std::complex<double>> spectrum(fft.bins());
    for (int f = 0; f < n_frames; ++f) {
        const double* src = w.samples.data() +
                            static_cast<std::size_t>(f) * cfg.hop;
        for (int i = 0; i < cfg.n_fft; ++i) frame[i] = src[i] * window[i];
        fft.transform(frame, spectrum.data());
        for (int b = 0; b < n_bins; ++b)
            s.at(b, f) = std::abs(spectrum[b]);
    }
    return s;
}

Spectrogram band_time_crop(const Spectrogram& s, const CropConfig& crop) {
    int b_lo = -1, b_hi = -1;
    for (int b = 0; b < s.n_bins; ++b) {
        const double fc = s.bin_center_hz(b);
        if (fc >= crop.f_lo_hz && fc <= crop.f_hi_hz) {
            if (b_lo < 0) b_lo = b;
            b_hi = b;
        }
    }
    if (b_lo < 0)
        throw DataError("band_time_crop: no bins with center in [" +
                        std::to_string(crop.f_lo_hz) + ", " +
                        std::to_string(crop.f_hi_hz) + "] Hz (frequency axis empty)");

    int f_lo = -1, f_hi = -1;
    for (int f = 0; f < s.n_frames; ++f) {
        const double ts = s.frame_start_s(f);
        if (ts >= crop.t_lo_s && ts < crop.t_hi_s) {
            if (f_lo < 0) f_lo = f;
            f_hi = f;
        }
    }
    if (f_lo < 0)
        throw DataError("band_time_crop: no frames starting in [" +
                        std::to_string(crop.t_lo_s) + ", " +
                        std::to_string(crop.t_hi_s) + ") s (time axis empty)");

    Spectrogram out;
    out.n_bins = b_hi - b_lo + 1;
    out.n_frames = f_hi - f_lo + 1;
    out.bin_hz = s.bin_hz;
    out.frame_s = s.frame_s;
    out.freq_offset_bin = s.freq_offset_bin + b_lo;
    out.time_offset_frame = s.time_offset_frame + f_lo;
    out.magnitudes.resize(static_cast<std::size_t>(out.n_bins) * out.n_frames);
    for (int b = 0; b < out.n_bins; ++b)
        for (int f = 0; f < out.n_frames; ++f)
            out.at(b, f) = s.at(b_lo + b, f_lo + f);
    return out;
}

}  // namespace sonar
