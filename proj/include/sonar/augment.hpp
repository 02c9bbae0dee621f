#pragma once

// Training-data augmentation: uniform noise injection on raw audio, additive
// Gaussian noise on spectrogram images, and random horizontal width shifts.
// Every augmentation is a pure, deterministic function of (input, params,
// seed) and preserves the image shape and [0, 1] pixel range.

#include <cstdint>

#include "sonar/audio.hpp"
#include "sonar/image.hpp"
#include "sonar/rng.hpp"

namespace sonar {

struct GaussianNoiseParams {
    double mean = 0.0;
    double variance = 0.01;
    std::uint64_t seed = 0;
};

struct NoiseInjectionParams {
    double amplitude_fraction = 0.005;  // relative to waveform peak
    std::uint64_t seed = 0;
};

// Normal density (1/sqrt(2*pi*sigma^2)) * exp(-(x-mean)^2 / (2*sigma^2)).
// sigma is the standard deviation; throws std::invalid_argument if sigma <= 0.
double gaussian_pdf(double x, double mean, double sigma);

// pixel' = clamp(pixel + eta, 0, 1) with eta ~ Normal(mean, variance) i.i.d.
SpectrogramImage add_gaussian_noise(const SpectrogramImage& img,
                                    const GaussianNoiseParams& p);

// sample' = sample + u with u ~ Uniform(-a*peak, +a*peak) i.i.d., where peak
// is the waveform's max absolute sample. a = 0 (or a silent input) is the
// identity.
Waveform inject_noise(const Waveform& w, const NoiseInjectionParams& p);

// Draws the signed column shift used by width_shift: uniform over the integer
// range [-floor(cols*max_fraction), +floor(cols*max_fraction)].
int draw_width_shift(int cols, double max_fraction, Rng& rng);

// Translates all columns by d (positive = toward later time); vacated columns
// are zero-filled.
SpectrogramImage shift_columns(const SpectrogramImage& img, int d);

// Random horizontal translation by d ~ Uniform{-floor(cols*f) .. +floor(cols*f)}.
// Requires 0 <= max_fraction < 1.
SpectrogramImage width_shift(const SpectrogramImage& img, double max_fraction,
                             std::uint64_t seed);

}  // namespace sonar
