#include "sonar/gesture.hpp"

#include "sonar/errors.hpp"

namespace sonar {
namespace {

constexpr std::array<std::string_view, kNumGestures> kCodes = {
    "LR", "RL", "P", "B", "UD", "DU"};
constexpr std::array<std::string_view, kNumGestures> kNames = {
    "swipe_right", "swipe_left", "push", "block", "swipe_down", "swipe_up"};

}  // namespace

std::string gesture_code(GestureClass g) {
    return std::string(kCodes[static_cast<int>(g)]);
}

std::string gesture_name(GestureClass g) {
    return std::string(kNames[static_cast<int>(g)]);
}

GestureClass parse_gesture(std::string_view text) {
    for (int i = 0; i < kNumGestures; ++i) {
        if (text == kCodes[i] || text == kNames[i])
            return static_cast<GestureClass>(i);
    }
    throw DataError("unknown gesture class: '" + std::string(text) + "'");
}

bool is_gesture_code(std::string_view text) {
    for (const auto& c : kCodes)
        if (text == c) return true;
    return false;
}

}  // namespace sonar
