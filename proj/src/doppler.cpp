#include "sonar/doppler.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sonar {

double doppler_shift(const DopplerParams& p) {
    if (p.v_sound <= 0.0)
        throw std::invalid_argument("doppler_shift: speed of sound must be positive");
    if (p.v_source >= p.v_sound)
        throw std::invalid_argument(
            "doppler_shift: source velocity " + std::to_string(p.v_source) +
            " m/s reaches the speed of sound (singularity)");
    return p.f_emit_hz * (p.v_sound + p.v_observer) / (p.v_sound - p.v_source);
}

double echo_frequency(double f_emit_hz, double v_hand, double v_sound) {
    if (v_sound <= 0.0)
        throw std::invalid_argument("echo_frequency: speed of sound must be positive");
    if (std::abs(v_hand) >= v_sound)
        throw std::invalid_argument(
            "echo_frequency: |v_hand| = " + std::to_string(std::abs(v_hand)) +
            " m/s reaches the speed of sound (singularity)");
    return f_emit_hz * (v_sound + v_hand) / (v_sound - v_hand);
}

}  // namespace sonar
