#pragma once

// Central finite-difference gradient reference for backpropagation checks.

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace sonar::testing {

// d f / d x[i] via central differences; restores x[i] afterwards.
template <typename F>
double central_diff(F&& f, double* xi, double eps = 1e-6) {
    const double orig = *xi;
    *xi = orig + eps;
    const double fp = f();
    *xi = orig - eps;
    const double fm = f();
    *xi = orig;
    return (fp - fm) / (2.0 * eps);
}

// Relative error with an absolute guard so near-zero gradients compare on an
// absolute scale instead of dividing by noise.
inline double rel_err(double a, double b, double guard = 1e-3) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), guard});
}

}  // namespace sonar::testing
