#include "sonar/sim.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <stdexcept>

#include "sonar/doppler.hpp"
#include "sonar/errors.hpp"
#include "sonar/log.hpp"
#include "sonar/rng.hpp"
#include "sonar/wav_io.hpp"

namespace sonar {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPeakSpeed = 1.2;       // m/s before jitter
constexpr double kVelJitter = 0.15;      // +/-15% velocity magnitude
constexpr double kTimeJitterS = 0.1;     // +/-100 ms pulse timing
constexpr double kBlockGainDip = 0.98;   // direct gain bottoms out at 0.02
constexpr double kMinAnalysisLen = 2.7;  // s, clips must cover the crop window

// Raised-cosine pulse on [a, b): sin^2(pi*(t-a)/(b-a)).
double pulse(double t, double a, double b) {
    if (t < a || t >= b || b <= a) return 0.0;
    const double s = std::sin(std::numbers::pi * (t - a) / (b - a));
    return s * s;
}

ChannelTrack make_track(std::size_t n, double sr, double sign_v0, double a, double b) {
    ChannelTrack tr;
    tr.velocity_mps.resize(n);
    tr.echo_env.resize(n);
    tr.direct_gain.assign(n, 1.0);
    const double v0 = std::abs(sign_v0);
    for (std::size_t i = 0; i < n; ++i) {
        const double p = pulse(i / sr, a, b);
        tr.velocity_mps[i] = sign_v0 * p;
        tr.echo_env[i] = v0 > 0.0 ? std::abs(tr.velocity_mps[i]) / v0 : 0.0;
    }
    return tr;
}

ChannelTrack make_block_track(std::size_t n, double sr, double a, double b) {
    ChannelTrack tr;
    tr.velocity_mps.assign(n, 0.0);
    tr.echo_env.assign(n, 0.0);
    tr.direct_gain.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        tr.direct_gain[i] = 1.0 - kBlockGainDip * pulse(i / sr, a, b);
    return tr;
}

void check_track(const ChannelTrack& tr, std::size_t n, const char* which) {
    if (tr.velocity_mps.size() != n || tr.echo_env.size() != n ||
        tr.direct_gain.size() != n)
        throw std::invalid_argument(std::string("synth_from_profile: ") + which +
                                    " channel track length mismatch");
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(tr.velocity_mps[i]) > kMaxHandSpeed)
            throw NumericError(std::string("motion profile: |velocity| exceeds ") +
                               std::to_string(kMaxHandSpeed) + " m/s on " + which +
                               " channel");
        if (tr.echo_env[i] < 0.0 || tr.echo_env[i] > 1.0 ||
            tr.direct_gain[i] < 0.0 || tr.direct_gain[i] > 1.0)
            throw NumericError(std::string("motion profile: envelope outside [0,1] on ") +
                               which + " channel");
    }
}

}  // namespace

void validate(const SimConfig& cfg) {
    if (cfg.sample_rate_hz <= 0.0)
        throw std::invalid_argument("SimConfig: sample rate must be positive");
    if (cfg.f_emit_hz <= 0.0 || cfg.f_emit_hz >= cfg.sample_rate_hz / 2.0)
        throw std::invalid_argument("SimConfig: carrier must lie below Nyquist");
    if (cfg.v_sound_mps <= 0.0)
        throw std::invalid_argument("SimConfig: speed of sound must be positive");
    if (cfg.duration_s < kMinAnalysisLen)
        throw std::invalid_argument("SimConfig: duration must be >= " +
                                    std::to_string(kMinAnalysisLen) +
                                    " s so the analysis window exists");
    if (cfg.active_start_s < 0.0 || cfg.active_end_s <= cfg.active_start_s ||
        cfg.active_end_s > cfg.duration_s)
        throw std::invalid_argument(
            "SimConfig: active window must satisfy 0 <= start < end <= duration");
    if (cfg.echo_ratio < 0.0)
        throw std::invalid_argument("SimConfig: echo ratio must be >= 0");
    if (cfg.noise_fraction < 0.0)
        throw std::invalid_argument("SimConfig: noise fraction must be >= 0");
}

MotionProfile motion_profile(GestureClass g, const SimConfig& cfg, std::uint64_t seed) {
    validate(cfg);
    const double sr = cfg.sample_rate_hz;
    const auto n = static_cast<std::size_t>(std::llround(cfg.duration_s * sr));

    // Identical draw sequence for every class so that mirrored classes with
    // the same seed share jitter exactly.
    Rng jrng(derive_seed(seed, stream_tag("sim.profile"), 0));
    const double v0 = kPeakSpeed * jrng.uniform(1.0 - kVelJitter, 1.0 + kVelJitter);
    const double tj = jrng.uniform(-kTimeJitterS, kTimeJitterS);
    const double t0 = std::clamp(cfg.active_start_s + tj, 0.0, cfg.duration_s);
    const double t1 = std::clamp(cfg.active_end_s + tj, 0.0, cfg.duration_s);
    const double tm = 0.5 * (t0 + t1);

    MotionProfile p;
    p.sample_rate_hz = sr;
    switch (g) {
        case GestureClass::kPush:
            p.top = make_track(n, sr, +v0, t0, t1);
            p.bottom = make_track(n, sr, +v0, t0, t1);
            break;
        case GestureClass::kSwipeUp:  // DU: top approaches, bottom recedes
            p.top = make_track(n, sr, +v0, t0, t1);
            p.bottom = make_track(n, sr, -v0, t0, t1);
            break;
        case GestureClass::kSwipeDown:  // UD: exact channel exchange of DU
            p.top = make_track(n, sr, -v0, t0, t1);
            p.bottom = make_track(n, sr, +v0, t0, t1);
            break;
        case GestureClass::kSwipeRight:  // LR: top leads (+v), bottom trails (-v)
            p.top = make_track(n, sr, +v0, t0, tm);
            p.bottom = make_track(n, sr, -v0, tm, t1);
            break;
        case GestureClass::kSwipeLeft:  // RL: bottom leads (-v), top trails (+v)
            p.top = make_track(n, sr, +v0, tm, t1);
            p.bottom = make_track(n, sr, -v0, t0, tm);
            break;
        case GestureClass::kBlock:
            p.top = make_block_track(n, sr, t0, t1);
            p.bottom = make_block_track(n, sr, t0, t1);
            break;
    }
    return p;
}

StereoWaveform synth_from_profile(const MotionProfile& p, const SimConfig& cfg,
                                  std::uint64_t seed) {
    validate(cfg);
    const std::size_t n = p.size();
    if (n == 0) throw std::invalid_argument("synth_from_profile: empty profile");
    if (p.sample_rate_hz != cfg.sample_rate_hz)
        throw std::invalid_argument("synth_from_profile: profile sample rate " +
                                    std::to_string(p.sample_rate_hz) +
                                    " != config sample rate " +
                                    std::to_string(cfg.sample_rate_hz));
    check_track(p.top, n, "top");
    check_track(p.bottom, n, "bottom");

    const double sr = cfg.sample_rate_hz;
    const double r = cfg.echo_ratio;
    const double alpha = cfg.noise_fraction;
    const double scale = 1.0 / (1.0 + r + alpha);

    // One noise stream shared by both channels: mirrored profiles then yield
    // exact channel-swapped clips, and their mixdowns are bit-identical.
    std::vector<double> noise(n, 0.0);
    if (alpha > 0.0) {
        Rng nrng(derive_seed(seed, stream_tag("sim.noise"), 0));
        for (double& v : noise) v = nrng.uniform(-alpha, alpha);
    }

    auto synth_channel = [&](const ChannelTrack& tr) {
        Waveform w;
        w.sample_rate_hz = sr;
        w.samples.resize(n);
        double phase = 0.0;
        double f_prev = echo_frequency(cfg.f_emit_hz, tr.velocity_mps[0], cfg.v_sound_mps);
        for (std::size_t i = 0; i < n; ++i) {
            if (i > 0) {
                const double f_cur =
                    echo_frequency(cfg.f_emit_hz, tr.velocity_mps[i], cfg.v_sound_mps);
                phase += std::numbers::pi * (f_prev + f_cur) / sr;  // trapezoid
                f_prev = f_cur;
            }
            const double t = i / sr;
            const double direct = tr.direct_gain[i] * std::sin(kTwoPi * cfg.f_emit_hz * t);
            const double echo = r * tr.echo_env[i] * std::sin(phase);
            w.samples[i] = scale * (direct + echo + noise[i]);
        }
        return w;
    };

    StereoWaveform out;
    out.top = synth_channel(p.top);
    out.bottom = synth_channel(p.bottom);
    return out;
}

StereoWaveform synth_gesture(GestureClass g, const SimConfig& cfg, std::uint64_t seed) {
    return synth_from_profile(motion_profile(g, cfg, seed), cfg, seed);
}

Manifest synth_dataset(int n_per_class, const SimConfig& cfg, std::uint64_t seed,
                       const std::string& out_dir, const std::string& split) {
    if (n_per_class < 1)
        throw std::invalid_argument("synth_dataset: n_per_class must be >= 1");
    if (!is_valid_split(split))
        throw std::invalid_argument("synth_dataset: unknown split '" + split + "'");
    validate(cfg);

    namespace fs = std::filesystem;
    Manifest m;
    int counter = 0;
    for (GestureClass g : kAllGestures) {
        const std::string code = gesture_code(g);
        const fs::path class_dir = fs::path(out_dir) / split / code;
        std::error_code ec;
        fs::create_directories(class_dir, ec);
        if (ec)
            throw DataError("synth_dataset: cannot create '" + class_dir.string() +
                            "': " + ec.message());
        for (int i = 0; i < n_per_class; ++i, ++counter) {
            const std::uint64_t clip_seed =
                derive_seed(seed, stream_tag("sim.clip"), static_cast<std::uint64_t>(counter));
            const StereoWaveform w = synth_gesture(g, cfg, clip_seed);
            char name[32];
            std::snprintf(name, sizeof(name), "%s_%04d.wav", code.c_str(), i);
            const fs::path rel = fs::path(split) / code / name;
            wav_write(w, fs::path(out_dir) / rel);
            m.rows.push_back({rel.generic_string(), g, "synthetic", split, clip_seed});
        }
    }
    m.sort_by_path();
    m.validate();

    // Merge into the corpus manifest so multi-split generation accumulates.
    const fs::path manifest_path = fs::path(out_dir) / "manifest.csv";
    if (fs::exists(manifest_path)) {
        Manifest existing = read_manifest_csv(manifest_path.string());
        for (const auto& row : m.rows) {
            auto it = std::find_if(existing.rows.begin(), existing.rows.end(),
                                   [&](const ManifestRow& r) { return r.path == row.path; });
            if (it != existing.rows.end())
                *it = row;
            else
                existing.rows.push_back(row);
        }
        existing.sort_by_path();
        existing.validate();
        write_manifest_csv(manifest_path.string(), existing);
    } else {
        write_manifest_csv(manifest_path.string(), m);
    }
    log::info("synth_dataset: wrote " + std::to_string(m.size()) + " clips (" +
              std::to_string(n_per_class) + " per class) under '" + out_dir + "/" +
              split + "'");
    return m;
}

}  // namespace sonar
