#pragma once

// Spectrogram-to-image conversion: log compression, per-image min-max
// normalization, and bilinear resampling to a fixed grid, plus simple
// binary-PGM and raw-float64 persistence for the resulting images.

#include <cstdint>
#include <string>
#include <vector>

#include "sonar/stft.hpp"

namespace sonar {

inline constexpr int kImageSize = 100;
inline constexpr double kLogFloor = 1e-6;

// Grayscale image with values in [0, 1]. Row-major; row 0 is the lowest
// frequency, column 0 the earliest frame.
struct SpectrogramImage {
    std::vector<double> pixels;  // rows * cols
    int rows = 0;
    int cols = 0;

    double& at(int r, int c) { return pixels[static_cast<std::size_t>(r) * cols + c]; }
    double at(int r, int c) const { return pixels[static_cast<std::size_t>(r) * cols + c]; }
};

struct ImageConfig {
    int out_rows = kImageSize;
    int out_cols = kImageSize;
    double log_floor = kLogFloor;
};

// log10(1 + m/floor), then min-max to [0, 1] (constant input -> all zeros),
// then align-corners bilinear resize. Image row r corresponds to frequency
// (increasing with r), column c to time.
SpectrogramImage to_image(const Spectrogram& s, const ImageConfig& cfg = {});

// Align-corners bilinear resample of a row-major grid.
std::vector<double> bilinear_resize(const std::vector<double>& src, int src_rows,
                                    int src_cols, int dst_rows, int dst_cols);

// Binary PGM (P5, maxval 255). Pixel (0,0) of the file is the *top-left*
// corner, so rows are flipped on write/read: the highest frequency prints
// first, matching how the spectrograms are usually displayed.
void write_pgm(const std::string& path, const SpectrogramImage& img);
SpectrogramImage read_pgm(const std::string& path);

// Raw little-endian float64 dump: i32 rows, i32 cols, then rows*cols doubles
// in storage order. Lossless round-trip of the normalized image.
void write_image_f64(const std::string& path, const SpectrogramImage& img);
SpectrogramImage read_image_f64(const std::string& path);

}  // namespace sonar
