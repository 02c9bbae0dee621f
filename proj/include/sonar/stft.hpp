#pragma once

#include <string>
#include <vector>

#include "sonar/audio.hpp"

namespace sonar {

enum class Window { kHann, kRect };

struct StftConfig {
    int n_fft = 2048;  // power of two
    int hop = 512;     // 0 < hop <= n_fft
    Window window = Window::kHann;
};

Window parse_window(const std::string& name);  // "hann" | "rect"

// Magnitude time-frequency grid. Magnitudes are the one-sided unnormalized
// |DFT| of each windowed frame (no 1/N scaling), so Parseval reads
//   |X_0|^2 + |X_{N/2}|^2 + 2*sum_{0<k<N/2} |X_k|^2 = N * sum_n (w_n x_n)^2.
// freq_offset_bin / time_offset_frame are global indices of the first
// row/column, so cropped grids keep their absolute axis positions.
struct Spectrogram {
    std::vector<double> magnitudes;  // [bin][frame], bin-major
    int n_bins = 0;
    int n_frames = 0;
    double bin_hz = 0.0;    // sample_rate / n_fft
    double frame_s = 0.0;   // hop / sample_rate
    int freq_offset_bin = 0;
    int time_offset_frame = 0;

    double at(int bin, int frame) const {
        return magnitudes[static_cast<std::size_t>(bin) * n_frames + frame];
    }
    double& at(int bin, int frame) {
        return magnitudes[static_cast<std::size_t>(bin) * n_frames + frame];
    }
    // Center frequency of local bin index b.
    double bin_center_hz(int b) const { return (freq_offset_bin + b) * bin_hz; }
    // Start time of local frame index f.
    double frame_start_s(int f) const { return (time_offset_frame + f) * frame_s; }
};

// Frame count = floor((len - n_fft)/hop) + 1; bins = n_fft/2 + 1.
// Throws std::invalid_argument on a bad config or input shorter than one frame.
Spectrogram stft(const Waveform& w, const StftConfig& cfg);

struct CropConfig {
    double f_lo_hz = 19700.0;
    double f_hi_hz = 20300.0;
    double t_lo_s = 1.3;
    double t_hi_s = 2.7;
};

// Keeps bins whose center frequency lies in [f_lo, f_hi] (closed) and frames
// whose start time lies in [t_lo, t_hi) (half-open). Throws DataError naming
// the violated axis when the result would be empty.
Spectrogram band_time_crop(const Spectrogram& s, const CropConfig& crop);

}  // namespace sonar
