#pragma once

// Minimal dense tensor: a shape list over a flat value buffer. The network
// code addresses data directly; Tensor exists to carry shapes across layer
// boundaries and tests.

#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace sonar::nn {

template <typename T>
struct Tensor {
    std::vector<int> shape;
    std::vector<T> data;

    Tensor() = default;
    explicit Tensor(std::vector<int> s) : shape(std::move(s)) {
        data.resize(numel(shape), T(0));
    }

    static std::size_t numel(const std::vector<int>& s) {
        std::size_t n = 1;
        for (int d : s) {
            if (d <= 0) throw std::invalid_argument("Tensor: non-positive dimension");
            n *= static_cast<std::size_t>(d);
        }
        return n;
    }

    std::size_t size() const { return data.size(); }
    int dim(std::size_t i) const { return shape.at(i); }
};

inline std::string shape_string(const std::vector<int>& s) {
    std::string out = "(";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(s[i]);
    }
    return out + ")";
}

}  // namespace sonar::nn
