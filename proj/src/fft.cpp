#include "sonar/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sonar {

bool is_power_of_two(std::size_t n) {
    return n != 0 && (n & (n - 1)) == 0;
}

RealFft::RealFft(std::size_t n) : n_(n), half_(n / 2) {
    if (!is_power_of_two(n) || n < 2)
        throw std::invalid_argument("RealFft: size must be a power of two >= 2");

    bitrev_.resize(half_);
    std::size_t log2m = 0;
    while ((std::size_t{1} << log2m) < half_) ++log2m;
    for (std::size_t i = 0; i < half_; ++i) {
        std::size_t r = 0;
        for (std::size_t b = 0; b < log2m; ++b)
            if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (log2m - 1 - b);
        bitrev_[i] = r;
    }

    tw_half_.resize(half_ / 2 + 1);
    for (std::size_t k = 0; k < tw_half_.size(); ++k) {
        const double ang = -2.0 * std::numbers::pi * static_cast<double>(k) /
                           static_cast<double>(half_ == 0 ? 1 : half_);
        tw_half_[k] = {std::cos(ang), std::sin(ang)};
    }
    tw_full_.resize(half_ + 1);
    for (std::size_t k = 0; k <= half_; ++k) {
        const double ang = -2.0 * std::numbers::pi * static_cast<double>(k) /
                           static_cast<double>(n_);
        tw_full_[k] = {std::cos(ang), std::sin(ang)};
    }
    work_.resize(half_);
}

void RealFft::transform(std::span<const double> in,
                        std::complex<double>* out) const {
    if (in.size() != n_)
        throw std::invalid_argument("RealFft: input length mismatch");

    // Pack even samples into real parts, odd into imaginary parts, and run
    // a half-size complex FFT.
    auto& z = work_;
    for (std::size_t i = 0; i < half_; ++i)
        z[bitrev_[i]] = {in[2 * i], in[2 * i + 1]};

    for (std::size_t len = 2; len <= half_; len <<= 1) {
        const std::size_t step = half_ / len;
        for (std::size_t start = 0; start < half_; start += len) {
            for (std::size_t j = 0; j < len / 2; ++j) {
                const std::complex<double> w = tw_half_[j * step];
                const std::complex<double> u = z[start + j];
                const std::complex<double> v = z[start + j + len / 2] * w;
                z[start + j] = u + v;
                z[start + j + len / 2] = u - v;
            }
        }
    }

    // Untangle the packed transform into the real-input spectrum:
    //   E[k] = (Z[k] + conj(Z[m-k])) / 2     (even samples)
    //   O[k] = (Z[k] - conj(Z[m-k])) / (2i)  (odd samples)
    //   X[k] = E[k] + exp(-2*pi*i*k/n) * O[k]
    const std::size_t m = half_;
    for (std::size_t k = 0; k <= m; ++k) {
        const std::complex<double> zk = z[k % m];
        const std::complex<double> zmk = std::conj(z[(m - k) % m]);
        const std::complex<double> even = 0.5 * (zk + zmk);
        const std::complex<double> odd =
            std::complex<double>(0.0, -0.5) * (zk - zmk);
        out[k] = even + tw_full_[k] * odd;
    }
}

}  // namespace sonar
