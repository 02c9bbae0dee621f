#pragma once

// Evaluation bookkeeping: the 6x6 confusion matrix (rows = true class,
// columns = predicted, fixed class order [LR, RL, P, B, UD, DU]) and derived
// per-class precision/recall.

#include <array>
#include <cstdint>
#include <string>

#include "sonar/gesture.hpp"

namespace sonar::nn {

struct ConfusionMatrix {
    std::array<std::array<std::int64_t, kNumGestures>, kNumGestures> counts{};

    void add(GestureClass truth, GestureClass predicted);
    std::int64_t at(GestureClass truth, GestureClass predicted) const;
    std::int64_t total() const;
    std::int64_t trace() const;
    std::int64_t row_sum(GestureClass truth) const;
    double accuracy() const;  // trace/total; 0 when empty
    // Per class in enum order; 0/0 counts as 0.
    std::array<double, kNumGestures> precision() const;
    std::array<double, kNumGestures> recall() const;
    std::string to_string() const;  // aligned table with class codes
};

}  // namespace sonar::nn
