#pragma once

// Mini-batch SGD training and evaluation over FusionModel. The loop is
// serial and the per-batch gradient is accumulated in a fixed example order,
// so training is bit-deterministic for a given seed and precision.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sonar/errors.hpp"
#include "sonar/log.hpp"
#include "sonar/models.hpp"
#include "sonar/nn/metrics.hpp"
#include "sonar/nn/tensor.hpp"
#include "sonar/rng.hpp"

namespace sonar::nn {

struct TrainConfig {
    double learning_rate = 0.01;  // 0 is allowed (no-op updates)
    int epochs = 10;
    int batch_size = 32;
    std::uint64_t seed = 0;
    // Augmentation policy: per original training image, this many extra
    // copies with clamped additive Gaussian pixel noise. Train split only.
    int gaussian_copies = 1;
    double gaussian_variance = 0.01;
};

void validate(const TrainConfig& cfg);

struct EpochStats {
    int epoch = 0;  // 1-based
    double train_loss = 0.0;
    double train_acc = 0.0;
    std::optional<double> val_loss;
    std::optional<double> val_acc;
};

struct TrainHistory {
    std::vector<EpochStats> epochs;
};

// CSV: epoch,train_loss,train_acc,val_loss,val_acc (val fields empty when no
// validation set was given).
void write_history_csv(const std::string& path, const TrainHistory& h);

template <typename T>
struct Example {
    std::vector<Tensor<T>> inputs;
    int label = 0;
};

struct EvalResult {
    double accuracy = 0.0;
    double mean_loss = 0.0;
    ConfusionMatrix confusion;
};

template <typename T>
int argmax_class(const std::vector<T>& v) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(v.size()); ++i)
        if (v[i] > v[best]) best = i;  // ties keep the lowest index
    return best;
}

template <typename T>
EvalResult evaluate(const FusionModel<T>& model, const std::vector<Example<T>>& ds) {
    if (ds.empty()) throw std::invalid_argument("evaluate: empty dataset");
    EvalResult r;
    double loss_sum = 0.0;
    for (const auto& ex : ds) {
        const auto lg = model.logits(ex.inputs);
        const auto ce = softmax_crossentropy(lg, ex.label);
        loss_sum += static_cast<double>(ce.loss);
        r.confusion.add(static_cast<GestureClass>(ex.label),
                        static_cast<GestureClass>(argmax_class(ce.probs)));
    }
    r.accuracy = r.confusion.accuracy();
    r.mean_loss = loss_sum / static_cast<double>(ds.size());
    return r;
}

// Materializes the augmentation policy: appends gaussian_copies noisy clamped
// copies of every example, with one derived noise stream per copy.
template <typename T>
std::vector<Example<T>> apply_augmentation_policy(const std::vector<Example<T>>& train_set,
                                                  const TrainConfig& cfg) {
    std::vector<Example<T>> out = train_set;
    if (cfg.gaussian_copies <= 0) return out;
    const double sigma = std::sqrt(cfg.gaussian_variance);
    std::uint64_t counter = 0;
    for (int k = 0; k < cfg.gaussian_copies; ++k) {
        for (const auto& ex : train_set) {
            Example<T> copy = ex;
            Rng rng(derive_seed(cfg.seed, stream_tag("train.augment"), counter++));
            for (auto& t : copy.inputs)
                for (auto& v : t.data)
                    v = static_cast<T>(std::clamp(static_cast<double>(v) + rng.normal(0.0, sigma),
                                                  0.0, 1.0));
            out.push_back(std::move(copy));
        }
    }
    return out;
}

template <typename T>
TrainHistory train(FusionModel<T>& model, const std::vector<Example<T>>& train_set,
                   const std::vector<Example<T>>& val_set, const TrainConfig& cfg) {
    validate(cfg);
    if (train_set.empty()) throw std::invalid_argument("train: empty training set");

    const std::vector<Example<T>> data = apply_augmentation_policy(train_set, cfg);
    const std::size_t n = data.size();
    std::vector<std::size_t> order(n);
    std::vector<T> grad(model.param_count());
    std::vector<T> probs;
    auto& params = model.params();
    const T lr = static_cast<T>(cfg.learning_rate);

    TrainHistory history;
    for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        Rng shuffle_rng(derive_seed(cfg.seed, stream_tag("train.shuffle"),
                                    static_cast<std::uint64_t>(epoch)));
        for (std::size_t i = n - 1; i > 0; --i)
            std::swap(order[i], order[shuffle_rng.uniform_int(0, static_cast<std::int64_t>(i))]);

        double loss_sum = 0.0;
        std::size_t correct = 0;
        int batch_index = 0;
        for (std::size_t start = 0; start < n; start += cfg.batch_size, ++batch_index) {
            const std::size_t stop = std::min(n, start + cfg.batch_size);
            const T scale = T(1) / static_cast<T>(stop - start);
            std::fill(grad.begin(), grad.end(), T(0));
            for (std::size_t k = start; k < stop; ++k) {
                const auto& ex = data[order[k]];
                const T loss = model.loss_and_grad(ex.inputs, ex.label, scale,
                                                   grad.data(), &probs);
                if (!std::isfinite(static_cast<double>(loss)))
                    throw NumericError("train: non-finite loss at epoch " +
                                       std::to_string(epoch) + ", batch " +
                                       std::to_string(batch_index));
                loss_sum += static_cast<double>(loss);
                if (argmax_class(probs) == ex.label) ++correct;
            }
            for (std::size_t i = 0; i < params.size(); ++i) params[i] -= lr * grad[i];
        }

        EpochStats stats;
        stats.epoch = epoch;
        stats.train_loss = loss_sum / static_cast<double>(n);
        stats.train_acc = static_cast<double>(correct) / static_cast<double>(n);
        std::string line = "epoch " + std::to_string(epoch) + "/" +
                           std::to_string(cfg.epochs) +
                           ": train_loss=" + std::to_string(stats.train_loss) +
                           " train_acc=" + std::to_string(stats.train_acc);
        if (!val_set.empty()) {
            const EvalResult er = evaluate(model, val_set);
            stats.val_loss = er.mean_loss;
            stats.val_acc = er.accuracy;
            line += " val_loss=" + std::to_string(er.mean_loss) +
                    " val_acc=" + std::to_string(er.accuracy);
        }
        log::info(line);
        history.epochs.push_back(stats);
    }
    return history;
}

}  // namespace sonar::nn
