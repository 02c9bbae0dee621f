#pragma once

namespace sonar {

// Classic moving-observer / moving-source Doppler parameters. Velocities are
// in m/s; observer velocity positive toward the source, source velocity
// positive toward the observer.
struct DopplerParams {
    double f_emit_hz = 20000.0;
    double v_sound = 343.0;
    double v_observer = 0.0;
    double v_source = 0.0;
};

// f * (v + v_o) / (v - v_s). Throws std::invalid_argument when v_s >= v
// (singularity) or v_sound <= 0.
double doppler_shift(const DopplerParams& p);

// Two-way echo shift for a reflector moving at v_hand (m/s, positive toward
// the transceiver): the hand acts as a moving observer, then re-emits as a
// moving source, giving f * (v + v_hand) / (v - v_hand).
// Throws std::invalid_argument when |v_hand| >= v_sound.
double echo_frequency(double f_emit_hz, double v_hand, double v_sound = 343.0);

}  // namespace sonar
