#include "sonar/augment.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sonar {

double gaussian_pdf(double x, double mean, double sigma) {
    if (sigma <= 0.0)
        throw std::invalid_argument("gaussian_pdf: sigma must be positive");
    const double z = (x - mean) / sigma;
    return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

SpectrogramImage add_gaussian_noise(const SpectrogramImage& img,
                                    const GaussianNoiseParams& p) {
    if (p.variance <= 0.0)
        throw std::invalid_argument("add_gaussian_noise: variance must be positive");
    const double sigma = std::sqrt(p.variance);
    Rng rng(derive_seed(p.seed, stream_tag("augment.gaussian"), 0));
    SpectrogramImage out = img;
    for (double& px : out.pixels)
        px = std::clamp(px + rng.normal(p.mean, sigma), 0.0, 1.0);
    return out;
}

Waveform inject_noise(const Waveform& w, const NoiseInjectionParams& p) {
    if (p.amplitude_fraction < 0.0)
        throw std::invalid_argument("inject_noise: amplitude fraction must be >= 0");
    double peak = 0.0;
    for (double s : w.samples) peak = std::max(peak, std::abs(s));
    const double a = p.amplitude_fraction * peak;
    Waveform out = w;
    if (a == 0.0) return out;
    Rng rng(derive_seed(p.seed, stream_tag("augment.inject"), 0));
    for (double& s : out.samples) s += rng.uniform(-a, a);
    return out;
}

int draw_width_shift(int cols, double max_fraction, Rng& rng) {
    if (max_fraction < 0.0 || max_fraction >= 1.0)
        throw std::invalid_argument("width_shift: max_fraction must be in [0, 1)");
    const int max_shift = static_cast<int>(std::floor(cols * max_fraction));
    if (max_shift == 0) return 0;
    return rng.uniform_int(-max_shift, max_shift);
}

SpectrogramImage shift_columns(const SpectrogramImage& img, int d) {
    SpectrogramImage out;
    out.rows = img.rows;
    out.cols = img.cols;
    out.pixels.assign(img.pixels.size(), 0.0);
    for (int r = 0; r < img.rows; ++r) {
        for (int c = 0; c < img.cols; ++c) {
            const int src = c - d;
            if (src >= 0 && src < img.cols) out.at(r, c) = img.at(r, src);
        }
    }
    return out;
}

SpectrogramImage width_shift(const SpectrogramImage& img, double max_fraction,
                             std::uint64_t seed) {
    Rng rng(derive_seed(seed, stream_tag("augment.shift"), 0));
    return shift_columns(img, draw_width_shift(img.cols, max_fraction, rng));
}

}  // namespace sonar
