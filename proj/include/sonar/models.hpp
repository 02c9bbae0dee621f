#pragma once

// The three fusion topologies over the shared trunk recipe:
//   single: one trunk on the 1-channel mixdown image  -> dense(576 -> 6)
//   early:  one trunk on a 3-channel [top, bottom, mix] image -> dense(576 -> 6)
//   late:   two independent 1-channel trunks (top, bottom), feature
//           concatenation -> dense(1152 -> 6)
// All modes share the trunk recipe so accuracy differences isolate the fusion
// strategy. Checkpoints are self-describing and embed the mode tag.

#include <array>
#include <cstdint>
#include <cstring>
#include <string>
#include <utility>
#include <vector>

#include "sonar/errors.hpp"
#include "sonar/gesture.hpp"
#include "sonar/nn/loss.hpp"
#include "sonar/nn/network.hpp"
#include "sonar/pipeline.hpp"

namespace sonar {

template <typename T>
class FusionModel {
public:
    FusionModel(FusionMode mode, std::uint64_t seed) : mode_(mode) {
        const int n_trunks = mode == FusionMode::kLate ? 2 : 1;
        const int in_ch = mode == FusionMode::kEarly ? 3 : 1;
        for (int i = 0; i < n_trunks; ++i)
            trunks_.emplace_back(in_ch, kImageSize, kImageSize);

        head_in_ = 0;
        std::size_t off = 0;
        for (const auto& t : trunks_) {
            trunk_off_.push_back(off);
            off += t.param_count();
            head_in_ += t.feature_count();
        }
        head_w_off_ = off;
        off += static_cast<std::size_t>(head_in_) * kNumGestures;
        head_b_off_ = off;
        off += kNumGestures;
        params_.resize(off);

        // One init stream per layer; trunks of the late model are seeded
        // differently because their layer counters differ.
        std::uint64_t layer = 0;
        for (std::size_t i = 0; i < trunks_.size(); ++i) {
            for (const auto& b : trunks_[i].blocks()) {
                Rng rng(derive_seed(seed, stream_tag("nn.init"), layer++));
                const std::size_t n =
                    static_cast<std::size_t>(b.out_ch) * b.in_ch * nn::kKernel * nn::kKernel;
                nn::he_uniform_fill(params_.data() + trunk_off_[i] + b.w_off, n,
                                    static_cast<std::size_t>(b.in_ch) * nn::kKernel * nn::kKernel,
                                    rng);
                for (int o = 0; o < b.out_ch; ++o)
                    params_[trunk_off_[i] + b.b_off + o] = T(0);
            }
        }
        Rng rng(derive_seed(seed, stream_tag("nn.init"), layer));
        nn::he_uniform_fill(params_.data() + head_w_off_,
                            static_cast<std::size_t>(head_in_) * kNumGestures,
                            static_cast<std::size_t>(head_in_), rng);
        for (int o = 0; o < kNumGestures; ++o) params_[head_b_off_ + o] = T(0);
    }

    FusionMode mode() const { return mode_; }
    std::size_t param_count() const { return params_.size(); }
    std::vector<T>& params() { return params_; }
    const std::vector<T>& params() const { return params_; }
    int n_trunks() const { return static_cast<int>(trunks_.size()); }
    const nn::TrunkLayout& trunk(int i) const { return trunks_.at(i); }
    int feature_count() const { return head_in_; }

    // Slices into params() for tests and surgical weight edits.
    std::size_t trunk_offset(int i) const { return trunk_off_.at(i); }
    std::size_t head_weight_offset() const { return head_w_off_; }
    std::size_t head_bias_offset() const { return head_b_off_; }

    std::vector<nn::LayerSpec> specs() const {
        std::vector<nn::LayerSpec> out;
        for (const auto& t : trunks_) {
            auto s = t.specs();
            out.insert(out.end(), s.begin(), s.end());
        }
        out.push_back({nn::LayerKind::kDense, {head_in_, kNumGestures, 0, 0}});
        out.push_back({nn::LayerKind::kSoftmax, {}});
        return out;
    }

    void check_inputs(const std::vector<nn::Tensor<T>>& inputs) const {
        if (inputs.size() != trunks_.size())
            throw std::invalid_argument(
                "model expects " + std::to_string(trunks_.size()) + " input tensor(s) for " +
                fusion_mode_name(mode_) + " mode, got " + std::to_string(inputs.size()));
        for (std::size_t i = 0; i < trunks_.size(); ++i) {
            const std::vector<int> want = {trunks_[i].in_ch(), trunks_[i].in_h(),
                                           trunks_[i].in_w()};
            if (inputs[i].shape != want)
                throw std::invalid_argument("model input " + std::to_string(i) + " has shape " +
                                            nn::shape_string(inputs[i].shape) + ", expected " +
                                            nn::shape_string(want));
        }
    }

    std::vector<T> features(const std::vector<nn::Tensor<T>>& inputs) const {
        check_inputs(inputs);
        std::vector<T> feat(head_in_);
        std::size_t off = 0;
        for (std::size_t i = 0; i < trunks_.size(); ++i) {
            nn::trunk_forward(trunks_[i], params_.data() + trunk_off_[i],
                              inputs[i].data.data(), feat.data() + off,
                              static_cast<nn::TrunkCache<T>*>(nullptr));
            off += trunks_[i].feature_count();
        }
        return feat;
    }

    std::vector<T> logits(const std::vector<nn::Tensor<T>>& inputs) const {
        const std::vector<T> feat = features(inputs);
        std::vector<T> out(kNumGestures);
        nn::dense_forward(feat.data(), head_in_, params_.data() + head_w_off_,
                          params_.data() + head_b_off_, kNumGestures, out.data());
        return out;
    }

    // Fused forward + backward: accumulates scale * dLoss/dparams into grad
    // (which must have param_count() entries) and returns the loss. With
    // scale = 1/batch over a batch this realizes the batch-mean gradient
    // (p - onehot)/batch at the logits.
    T loss_and_grad(const std::vector<nn::Tensor<T>>& inputs, int label, T scale,
                    T* grad, std::vector<T>* probs_out = nullptr) const {
        check_inputs(inputs);
        std::vector<nn::TrunkCache<T>> caches(trunks_.size());
        std::vector<T> feat(head_in_);
        std::size_t off = 0;
        for (std::size_t i = 0; i < trunks_.size(); ++i) {
            nn::trunk_forward(trunks_[i], params_.data() + trunk_off_[i],
                              inputs[i].data.data(), feat.data() + off, &caches[i]);
            off += trunks_[i].feature_count();
        }
        std::vector<T> lg(kNumGestures);
        nn::dense_forward(feat.data(), head_in_, params_.data() + head_w_off_,
                          params_.data() + head_b_off_, kNumGestures, lg.data());
        auto ce = nn::softmax_crossentropy(lg, label);
        if (probs_out) *probs_out = ce.probs;

        std::vector<T> dlogits(kNumGestures);
        for (int i = 0; i < kNumGestures; ++i)
            dlogits[i] = (ce.probs[i] - (i == label ? T(1) : T(0))) * scale;

        std::vector<T> dfeat(head_in_, T(0));
        nn::dense_backward(feat.data(), params_.data() + head_w_off_, dlogits.data(),
                           head_in_, kNumGestures, dfeat.data(), grad + head_w_off_,
                           grad + head_b_off_);
        off = 0;
        for (std::size_t i = 0; i < trunks_.size(); ++i) {
            nn::trunk_backward(trunks_[i], params_.data() + trunk_off_[i], caches[i],
                               dfeat.data() + off, grad + trunk_off_[i],
                               static_cast<T*>(nullptr));
            off += trunks_[i].feature_count();
        }
        return ce.loss;
    }

private:
    FusionMode mode_;
    std::vector<nn::TrunkLayout> trunks_;
    std::vector<std::size_t> trunk_off_;
    int head_in_ = 0;
    std::size_t head_w_off_ = 0, head_b_off_ = 0;
    std::vector<T> params_;
};

template <typename T>
FusionModel<T> build_model(FusionMode mode, std::uint64_t seed) {
    return FusionModel<T>(mode, seed);
}

// Converts a pipeline ModelInput into the tensor list the matching model
// expects. Image row 0 (lowest frequency) maps to tensor row 0.
template <typename T>
std::vector<nn::Tensor<T>> pack_input(const ModelInput& in) {
    std::vector<nn::Tensor<T>> out;
    auto fill_plane = [](nn::Tensor<T>& t, int plane, const SpectrogramImage& img) {
        const std::size_t n = static_cast<std::size_t>(img.rows) * img.cols;
        for (std::size_t k = 0; k < n; ++k)
            t.data[plane * n + k] = static_cast<T>(img.pixels[k]);
    };
    switch (in.mode) {
        case FusionMode::kSingle: {
            nn::Tensor<T> t({1, in.channels.at(0).rows, in.channels.at(0).cols});
            fill_plane(t, 0, in.channels[0]);
            out.push_back(std::move(t));
            break;
        }
        case FusionMode::kEarly: {
            nn::Tensor<T> t({3, in.channels.at(0).rows, in.channels.at(0).cols});
            for (int c = 0; c < 3; ++c) fill_plane(t, c, in.channels.at(c));
            out.push_back(std::move(t));
            break;
        }
        case FusionMode::kLate: {
            for (int c = 0; c < 2; ++c) {
                nn::Tensor<T> t({1, in.channels.at(c).rows, in.channels.at(c).cols});
                fill_plane(t, 0, in.channels[c]);
                out.push_back(std::move(t));
            }
            break;
        }
    }
    return out;
}

// Argmax prediction; ties break to the lowest class index.
template <typename T>
std::pair<GestureClass, std::array<double, kNumGestures>> predict(
    const FusionModel<T>& model, const ModelInput& in) {
    if (in.mode != model.mode())
        throw std::invalid_argument("predict: input assembled for " +
                                    fusion_mode_name(in.mode) + " but model is " +
                                    fusion_mode_name(model.mode()));
    const auto probs_t = nn::softmax(model.logits(pack_input<T>(in)));
    std::array<double, kNumGestures> probs{};
    int best = 0;
    for (int i = 0; i < kNumGestures; ++i) {
        probs[i] = static_cast<double>(probs_t[i]);
        if (probs[i] > probs[best]) best = i;
    }
    return {static_cast<GestureClass>(best), probs};
}

// ---- Checkpoints -----------------------------------------------------------
// Layout (all little-endian):
//   magic "SONARCK1" (8) | u32 version | u8 mode | u8 dtype (float bytes)
//   u32 n_specs | n_specs * (u8 kind + 4 * i32) | u64 n_params | payload
void save_checkpoint_raw(const std::string& path, FusionMode mode, int dtype_bytes,
                         const std::vector<nn::LayerSpec>& specs, const void* data,
                         std::size_t n_params);
struct RawCheckpoint {
    FusionMode mode;
    int dtype_bytes;
    std::vector<nn::LayerSpec> specs;
    std::vector<unsigned char> payload;
    std::size_t n_params;
};
RawCheckpoint load_checkpoint_raw(const std::string& path);
FusionMode peek_checkpoint_mode(const std::string& path);

template <typename T>
void save_checkpoint(const std::string& path, const FusionModel<T>& model) {
    save_checkpoint_raw(path, model.mode(), static_cast<int>(sizeof(T)), model.specs(),
                        model.params().data(), model.param_count());
}

template <typename T>
FusionModel<T> load_checkpoint(const std::string& path) {
    const RawCheckpoint raw = load_checkpoint_raw(path);
    if (raw.dtype_bytes != static_cast<int>(sizeof(T)))
        throw DataError("checkpoint '" + path + "' stores " +
                        std::to_string(raw.dtype_bytes * 8) + "-bit floats, expected " +
                        std::to_string(sizeof(T) * 8) + "-bit");
    FusionModel<T> model(raw.mode, 0);
    if (model.specs() != raw.specs)
        throw DataError("checkpoint '" + path + "' layer specs do not match the " +
                        fusion_mode_name(raw.mode) + " architecture");
    if (raw.n_params != model.param_count())
        throw DataError("checkpoint '" + path + "' has " + std::to_string(raw.n_params) +
                        " parameters, expected " + std::to_string(model.param_count()));
    std::memcpy(model.params().data(), raw.payload.data(), raw.payload.size());
    return model;
}

}  // namespace sonar
