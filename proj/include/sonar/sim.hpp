#pragma once

// Physics-based gesture simulator: builds per-channel hand-motion profiles
// for the six gesture classes, synthesizes stereo clips (direct path + Doppler
// echo + noise) against the 20 kHz carrier, and writes class-balanced corpora.
//
// Mirrored gestures are built from shared profile tracks with the channel
// assignment exchanged, so swipe_up/swipe_down clips with equal seeds are
// exact channel swaps of each other — their mixdowns are bit-identical while
// the per-channel signals differ. That asymmetry is what makes channel-aware
// fusion strictly more informative than mixdown-only input.

#include <cstdint>
#include <string>
#include <vector>

#include "sonar/audio.hpp"
#include "sonar/gesture.hpp"
#include "sonar/manifest.hpp"

namespace sonar {

struct SimConfig {
    double sample_rate_hz = 44100.0;
    double f_emit_hz = 20000.0;
    double v_sound_mps = 343.0;
    double duration_s = 3.0;          // >= 2.7 so the analysis window exists
    double active_start_s = 1.4;      // gesture active window, within the clip
    double active_end_s = 2.6;
    double echo_ratio = 0.15;         // echo-to-direct amplitude ratio
    double noise_fraction = 0.002;    // additive uniform noise amplitude
};

// Throws std::invalid_argument when a field violates its constraints.
void validate(const SimConfig& cfg);

inline constexpr double kMaxHandSpeed = 2.0;  // m/s, keeps shifts in-band

struct ChannelTrack {
    std::vector<double> velocity_mps;  // radial hand velocity, + = approaching
    std::vector<double> echo_env;      // echo amplitude envelope, [0, 1]
    std::vector<double> direct_gain;   // direct-path gain, [0, 1]
};

struct MotionProfile {
    ChannelTrack top;
    ChannelTrack bottom;
    double sample_rate_hz = 0.0;

    std::size_t size() const { return top.velocity_mps.size(); }
};

// Deterministic per (gesture, cfg, seed). Jitter draws (velocity magnitude
// +/-15%, timing +/-100 ms) are identical across classes for a given seed, so
// mirrored classes produce exactly exchanged channel tracks.
MotionProfile motion_profile(GestureClass g, const SimConfig& cfg, std::uint64_t seed);

// Per channel: y(t) = s * (g(t)*sin(2*pi*F*t) + r*a(t)*sin(phi(t)) + n(t)),
// phi(t) = 2*pi * integral of echo_frequency(F, v(tau)) (trapezoidal per
// sample), n ~ Uniform(-noise_fraction, +noise_fraction) shared by both
// channels, s = 1/(1 + r + noise_fraction) so the peak stays <= 1.
StereoWaveform synth_from_profile(const MotionProfile& p, const SimConfig& cfg,
                                  std::uint64_t seed);

StereoWaveform synth_gesture(GestureClass g, const SimConfig& cfg, std::uint64_t seed);

// Writes 6*n_per_class clips under out_dir/<split>/<code>/<code>_<index>.wav,
// each synthesized from its own derived seed (unique across the run), and
// returns the (path-sorted) manifest. Also merges the rows into
// out_dir/manifest.csv so multi-split generation accumulates.
Manifest synth_dataset(int n_per_class, const SimConfig& cfg, std::uint64_t seed,
                       const std::string& out_dir, const std::string& split = kSplitTrain);

}  // namespace sonar
