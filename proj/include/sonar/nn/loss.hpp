#pragma once

// Softmax and fused softmax + categorical cross-entropy. The fused backward
// is the textbook (p - onehot) / batch, numerically stable via max
// subtraction.

#include <cmath>
#include <stdexcept>
#include <vector>

namespace sonar::nn {

template <typename T>
std::vector<T> softmax(const std::vector<T>& logits) {
    if (logits.empty()) throw std::invalid_argument("softmax: empty logits");
    T m = logits[0];
    for (T v : logits) m = std::max(m, v);
    std::vector<T> p(logits.size());
    T z = 0;
    for (std::size_t i = 0; i < logits.size(); ++i) {
        p[i] = std::exp(logits[i] - m);
        z += p[i];
    }
    for (T& v : p) v /= z;
    return p;
}

template <typename T>
struct SoftmaxCeResult {
    T loss;
    std::vector<T> probs;
};

// loss = -log p[label], computed as log(sum exp(l - m)) - (l[label] - m).
template <typename T>
SoftmaxCeResult<T> softmax_crossentropy(const std::vector<T>& logits, int label) {
    if (label < 0 || static_cast<std::size_t>(label) >= logits.size())
        throw std::invalid_argument("softmax_crossentropy: label out of range");
    T m = logits[0];
    for (T v : logits) m = std::max(m, v);
    std::vector<T> e(logits.size());
    T z = 0;
    for (std::size_t i = 0; i < logits.size(); ++i) {
        e[i] = std::exp(logits[i] - m);
        z += e[i];
    }
    SoftmaxCeResult<T> r;
    r.loss = std::log(z) - (logits[label] - m);
    r.probs = std::move(e);
    for (T& v : r.probs) v /= z;
    return r;
}

// d loss / d logits for a batch-mean loss: (p - onehot) / batch_size.
template <typename T>
std::vector<T> softmax_crossentropy_grad(const std::vector<T>& probs, int label,
                                         int batch_size) {
    if (batch_size <= 0)
        throw std::invalid_argument("softmax_crossentropy_grad: batch_size must be positive");
    std::vector<T> d(probs.size());
    const T inv = T(1) / static_cast<T>(batch_size);
    for (std::size_t i = 0; i < probs.size(); ++i) d[i] = probs[i] * inv;
    d[label] -= inv;
    return d;
}

}  // namespace sonar::nn
