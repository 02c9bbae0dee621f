#pragma once

// Independent spectral reference: a direct O(n^2) DFT with table-lookup unit
// roots (no butterflies, no recurrences). Used to validate the production FFT
// and STFT numerically.

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

namespace sonar::testing {

// One-sided unnormalized DFT: bins 0..n/2 of sum_j x[j] * exp(-2*pi*i*j*k/n).
inline std::vector<std::complex<double>> direct_dft(std::span<const double> x) {
    const std::size_t n = x.size();
    std::vector<std::complex<double>> roots(n);
    for (std::size_t m = 0; m < n; ++m) {
        const double angle = -2.0 * std::numbers::pi * static_cast<double>(m) /
                             static_cast<double>(n);
        roots[m] = {std::cos(angle), std::sin(angle)};
    }
    std::vector<std::complex<double>> out(n / 2 + 1);
    for (std::size_t k = 0; k <= n / 2; ++k) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) acc += x[j] * roots[(j * k) % n];
        out[k] = acc;
    }
    return out;
}

}  // namespace sonar::testing
