#pragma once

// Network structure: layer specs (for checkpoints and shape bookkeeping) and
// the shared convolutional trunk — five conv(3x3, same) -> relu -> maxpool2x2
// blocks with channels [8, 16, 32, 64, 64], flattened to a feature vector.
// Parameters live in an external flat buffer; the trunk only describes the
// layout and runs the passes.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sonar/nn/layers.hpp"
#include "sonar/nn/tensor.hpp"
#include "sonar/rng.hpp"

namespace sonar::nn {

enum class LayerKind : std::uint8_t {
    kConv2d = 1,
    kRelu = 2,
    kMaxPool2x2 = 3,
    kFlatten = 4,
    kDense = 5,
    kSoftmax = 6,
};

struct LayerSpec {
    LayerKind kind = LayerKind::kRelu;
    // conv2d: {kh, kw, in_ch, out_ch}; dense: {in, out, 0, 0}; others zero.
    std::array<std::int32_t, 4> p{0, 0, 0, 0};

    bool operator==(const LayerSpec&) const = default;
};

inline constexpr std::array<int, 5> kTrunkChannels = {8, 16, 32, 64, 64};
inline constexpr int kKernel = 3;

// Shape/offset bookkeeping for one trunk. Parameters are packed per block as
// weights then biases, blocks in order.
class TrunkLayout {
public:
    struct Block {
        int in_ch, out_ch;
        int in_h, in_w;             // conv input spatial size (conv preserves it)
        int out_h, out_w;           // after the 2x2 pool
        std::size_t w_off, b_off;   // into the trunk's parameter slice
    };

    TrunkLayout(int in_ch, int in_h, int in_w) {
        if (in_ch <= 0 || in_h <= 0 || in_w <= 0)
            throw std::invalid_argument("TrunkLayout: non-positive input shape");
        in_ch_ = in_ch;
        in_h_ = in_h;
        in_w_ = in_w;
        int c = in_ch, h = in_h, w = in_w;
        std::size_t off = 0;
        for (int oc : kTrunkChannels) {
            Block b;
            b.in_ch = c;
            b.out_ch = oc;
            b.in_h = h;
            b.in_w = w;
            b.out_h = h / 2;
            b.out_w = w / 2;
            b.w_off = off;
            off += static_cast<std::size_t>(oc) * c * kKernel * kKernel;
            b.b_off = off;
            off += static_cast<std::size_t>(oc);
            if (b.out_h < 1 || b.out_w < 1)
                throw std::invalid_argument("TrunkLayout: input too small for 5 pools");
            blocks_.push_back(b);
            c = oc;
            h = b.out_h;
            w = b.out_w;
        }
        param_count_ = off;
        feature_count_ = c * h * w;
    }

    int in_ch() const { return in_ch_; }
    int in_h() const { return in_h_; }
    int in_w() const { return in_w_; }
    const std::vector<Block>& blocks() const { return blocks_; }
    std::size_t param_count() const { return param_count_; }
    int feature_count() const { return feature_count_; }

    std::vector<LayerSpec> specs() const {
        std::vector<LayerSpec> out;
        for (const Block& b : blocks_) {
            out.push_back({LayerKind::kConv2d, {kKernel, kKernel, b.in_ch, b.out_ch}});
            out.push_back({LayerKind::kRelu, {}});
            out.push_back({LayerKind::kMaxPool2x2, {}});
        }
        out.push_back({LayerKind::kFlatten, {}});
        return out;
    }

private:
    int in_ch_ = 0, in_h_ = 0, in_w_ = 0;
    std::vector<Block> blocks_;
    std::size_t param_count_ = 0;
    int feature_count_ = 0;
};

// Forward activations retained for the backward pass.
template <typename T>
struct TrunkCache {
    std::vector<std::vector<T>> conv_in;    // block input (C, H, W)
    std::vector<std::vector<T>> pre_relu;   // conv output
    std::vector<std::vector<T>> post_relu;  // relu output (pool input)
    std::vector<std::vector<std::int32_t>> argmax;
};

// params points at the trunk's slice; features must hold feature_count().
// cache may be null when no backward pass will follow.
template <typename T>
void trunk_forward(const TrunkLayout& L, const T* params, const T* x,
                   T* features, TrunkCache<T>* cache) {
    const auto& blocks = L.blocks();
    if (cache) {
        cache->conv_in.resize(blocks.size());
        cache->pre_relu.resize(blocks.size());
        cache->post_relu.resize(blocks.size());
        cache->argmax.resize(blocks.size());
    }
    std::vector<T> cur(x, x + static_cast<std::size_t>(L.in_ch()) * L.in_h() * L.in_w());
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        const auto& b = blocks[k];
        const std::size_t conv_n = static_cast<std::size_t>(b.out_ch) * b.in_h * b.in_w;
        const std::size_t pool_n = static_cast<std::size_t>(b.out_ch) * b.out_h * b.out_w;
        std::vector<T> pre(conv_n), post(conv_n), pooled(pool_n);
        std::vector<std::int32_t> amax(pool_n);
        conv2d_forward(cur.data(), b.in_ch, b.in_h, b.in_w, params + b.w_off,
                       params + b.b_off, b.out_ch, kKernel, kKernel, pre.data());
        relu_forward(pre.data(), conv_n, post.data());
        maxpool2x2_forward(post.data(), b.out_ch, b.in_h, b.in_w, pooled.data(),
                           amax.data());
        if (cache) {
            cache->conv_in[k] = std::move(cur);
            cache->pre_relu[k] = std::move(pre);
            cache->post_relu[k] = std::move(post);
            cache->argmax[k] = std::move(amax);
        }
        cur = std::move(pooled);
    }
    std::copy(cur.begin(), cur.end(), features);
}

// Accumulates parameter gradients into dparams (trunk slice) and, when dx is
// non-null, the input gradient into dx.
template <typename T>
void trunk_backward(const TrunkLayout& L, const T* params, const TrunkCache<T>& cache,
                    const T* dfeat, T* dparams, T* dx) {
    const auto& blocks = L.blocks();
    std::vector<T> dcur(dfeat, dfeat + L.feature_count());
    for (std::size_t ki = blocks.size(); ki-- > 0;) {
        const auto& b = blocks[ki];
        const std::size_t conv_n = static_cast<std::size_t>(b.out_ch) * b.in_h * b.in_w;
        const std::size_t in_n = static_cast<std::size_t>(b.in_ch) * b.in_h * b.in_w;
        std::vector<T> dpost(conv_n, T(0)), dpre(conv_n, T(0));
        maxpool2x2_backward(cache.argmax[ki].data(), dcur.data(), dcur.size(),
                            dpost.data());
        relu_backward(cache.pre_relu[ki].data(), dpost.data(), conv_n, dpre.data());
        const bool need_dx = ki > 0 || dx != nullptr;
        std::vector<T> din;
        if (need_dx) din.assign(in_n, T(0));
        conv2d_backward(cache.conv_in[ki].data(), params + b.w_off, dpre.data(),
                        b.in_ch, b.in_h, b.in_w, b.out_ch, kKernel, kKernel,
                        need_dx ? din.data() : nullptr, dparams + b.w_off,
                        dparams + b.b_off);
        dcur = std::move(din);
    }
    if (dx)
        for (std::size_t i = 0; i < dcur.size(); ++i) dx[i] += dcur[i];
}

// He-uniform: weights ~ U(-sqrt(6/fan_in), +sqrt(6/fan_in)), biases zero.
template <typename T>
void he_uniform_fill(T* w, std::size_t n, std::size_t fan_in, Rng& rng) {
    const double limit = std::sqrt(6.0 / static_cast<double>(fan_in));
    for (std::size_t i = 0; i < n; ++i)
        w[i] = static_cast<T>(rng.uniform(-limit, limit));
}

template <typename T>
void init_trunk(const TrunkLayout& L, T* params, Rng& rng) {
    for (const auto& b : L.blocks()) {
        const std::size_t n = static_cast<std::size_t>(b.out_ch) * b.in_ch * kKernel * kKernel;
        he_uniform_fill(params + b.w_off, n,
                        static_cast<std::size_t>(b.in_ch) * kKernel * kKernel, rng);
        for (int o = 0; o < b.out_ch; ++o) params[b.b_off + o] = T(0);
    }
}

// Shape-checked conveniences over the raw kernels (used directly by tests;
// the model hot path validates shapes once at the boundary instead).
template <typename T>
Tensor<T> conv2d(const Tensor<T>& x, const Tensor<T>& w, const Tensor<T>& b) {
    if (x.shape.size() != 3 || w.shape.size() != 4 || b.shape.size() != 1 ||
        x.shape[0] != w.shape[1] || b.shape[0] != w.shape[0])
        throw std::invalid_argument("conv2d: input " + shape_string(x.shape) +
                                    " incompatible with weights " + shape_string(w.shape) +
                                    " / bias " + shape_string(b.shape));
    Tensor<T> y({w.shape[0], x.shape[1], x.shape[2]});
    conv2d_forward(x.data.data(), x.shape[0], x.shape[1], x.shape[2], w.data.data(),
                   b.data.data(), w.shape[0], w.shape[2], w.shape[3], y.data.data());
    return y;
}

template <typename T>
Tensor<T> dense(const Tensor<T>& x, const Tensor<T>& w, const Tensor<T>& b) {
    if (x.shape.size() != 1 || w.shape.size() != 2 || b.shape.size() != 1 ||
        x.shape[0] != w.shape[1] || b.shape[0] != w.shape[0])
        throw std::invalid_argument("dense: input " + shape_string(x.shape) +
                                    " incompatible with weights " + shape_string(w.shape) +
                                    " / bias " + shape_string(b.shape));
    Tensor<T> y({w.shape[0]});
    dense_forward(x.data.data(), x.shape[0], w.data.data(), b.data.data(), w.shape[0],
                  y.data.data());
    return y;
}

}  // namespace sonar::nn
