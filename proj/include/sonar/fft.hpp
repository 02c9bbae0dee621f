#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace sonar {

// Forward DFT of real input, radix-2, unnormalized (no 1/N factor).
// Produces the one-sided spectrum, bins 0..n/2. A plan precomputes twiddle
// factors and the bit-reversal permutation so repeated transforms of the
// same size (STFT frames) are cheap.
class RealFft {
public:
    explicit RealFft(std::size_t n);  // n must be a power of two, n >= 2

    std::size_t size() const { return n_; }
    std::size_t bins() const { return n_ / 2 + 1; }

    // out must hold bins() values.
    void transform(std::span<const double> in, std::complex<double>* out) const;

private:
    std::size_t n_;                             // real length
    std::size_t half_;                          // complex FFT length n/2
    std::vector<std::size_t> bitrev_;           // permutation for half_
    std::vector<std::complex<double>> tw_half_; // exp(-2*pi*i*k/half_), k < half_/2
    std::vector<std::complex<double>> tw_full_; // exp(-2*pi*i*k/n), k <= n/2
    mutable std::vector<std::complex<double>> work_;
};

bool is_power_of_two(std::size_t n);

}  // namespace sonar
