#include "sonar/nn/metrics.hpp"

#include <cstdio>

namespace sonar::nn {

void ConfusionMatrix::add(GestureClass truth, GestureClass predicted) {
    ++counts[static_cast<int>(truth)][static_cast<int>(predicted)];
}

std::int64_t ConfusionMatrix::at(GestureClass truth, GestureClass predicted) const {
    return counts[static_cast<int>(truth)][static_cast<int>(predicted)];
}

std::int64_t ConfusionMatrix::total() const {
    std::int64_t n = 0;
    for (const auto& row : counts)
        for (std::int64_t c : row) n += c;
    return n;
}

std::int64_t ConfusionMatrix::trace() const {
    std::int64_t n = 0;
    for (int i = 0; i < kNumGestures; ++i) n += counts[i][i];
    return n;
}

std::int64_t ConfusionMatrix::row_sum(GestureClass truth) const {
    std::int64_t n = 0;
    for (std::int64_t c : counts[static_cast<int>(truth)]) n += c;
    return n;
}

double ConfusionMatrix::accuracy() const {
    const std::int64_t n = total();
    return n == 0 ? 0.0 : static_cast<double>(trace()) / static_cast<double>(n);
}

std::array<double, kNumGestures> ConfusionMatrix::precision() const {
    std::array<double, kNumGestures> out{};
    for (int p = 0; p < kNumGestures; ++p) {
        std::int64_t col = 0;
        for (int t = 0; t < kNumGestures; ++t) col += counts[t][p];
        out[p] = col == 0 ? 0.0 : static_cast<double>(counts[p][p]) / static_cast<double>(col);
    }
    return out;
}

std::array<double, kNumGestures> ConfusionMatrix::recall() const {
    std::array<double, kNumGestures> out{};
    for (int t = 0; t < kNumGestures; ++t) {
        const std::int64_t row = row_sum(static_cast<GestureClass>(t));
        out[t] = row == 0 ? 0.0 : static_cast<double>(counts[t][t]) / static_cast<double>(row);
    }
    return out;
}

std::string ConfusionMatrix::to_string() const {
    std::string out = "true\\pred";
    char buf[32];
    for (GestureClass g : kAllGestures) {
        std::snprintf(buf, sizeof(buf), "%6s", gesture_code(g).c_str());
        out += buf;
    }
    out += '\n';
    for (GestureClass t : kAllGestures) {
        std::snprintf(buf, sizeof(buf), "%9s", gesture_code(t).c_str());
        out += buf;
        for (GestureClass p : kAllGestures) {
            std::snprintf(buf, sizeof(buf), "%6lld", static_cast<long long>(at(t, p)));
            out += buf;
        }
        out += '\n';
    }
    return out;
}

}  // namespace sonar::nn
