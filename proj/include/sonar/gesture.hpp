#pragma once

#include <array>
#include <string>
#include <string_view>

namespace sonar {

// The six gesture classes. Enum order is the fixed class order used by
// confusion matrices and model outputs: [LR, RL, P, B, UD, DU].
enum class GestureClass {
    kSwipeRight = 0,  // LR (left-to-right)
    kSwipeLeft = 1,   // RL
    kPush = 2,        // P
    kBlock = 3,       // B
    kSwipeDown = 4,   // UD
    kSwipeUp = 5,     // DU
};

inline constexpr int kNumGestures = 6;

inline constexpr std::array<GestureClass, kNumGestures> kAllGestures = {
    GestureClass::kSwipeRight, GestureClass::kSwipeLeft, GestureClass::kPush,
    GestureClass::kBlock,      GestureClass::kSwipeDown, GestureClass::kSwipeUp,
};

// Short codes, matching the confusion-matrix legend.
std::string gesture_code(GestureClass g);

// Human-readable name ("swipe_right", ...).
std::string gesture_name(GestureClass g);

// Parses either a code ("LR") or a name ("swipe_right").
// Throws DataError on unknown input.
GestureClass parse_gesture(std::string_view text);

bool is_gesture_code(std::string_view text);

}  // namespace sonar
