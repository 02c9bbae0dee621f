#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <numbers>

#include "sonar/audio.hpp"
#include "sonar/errors.hpp"
#include "sonar/fft.hpp"
#include "sonar/image.hpp"
#include "sonar/rng.hpp"
#include "sonar/stft.hpp"

#include "support/dft_oracle.hpp"
#include "support/tmpdir.hpp"

using namespace sonar;

namespace {

std::vector<double> random_signal(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> x(n);
    for (double& v : x) v = rng.uniform(-1.0, 1.0);
    return x;
}

Waveform tone_waveform(double freq, double dur_s, double sr = 44100.0, double amp = 0.9) {
    CwConfig cfg;
    cfg.frequency_hz = freq;
    cfg.sample_rate_hz = sr;
    cfg.duration_s = dur_s;
    cfg.amplitude = amp;
    return generate_cw(cfg);
}

}  // namespace

TEST_CASE("RealFft matches the direct DFT oracle across sizes") {
    for (std::size_t n : {2ul, 4ul, 8ul, 16ul, 64ul, 256ul, 2048ul}) {
        const std::vector<double> x = random_signal(n, 1000 + n);
        const auto oracle = sonar::testing::direct_dft(x);
        RealFft fft(n);
        REQUIRE(fft.bins() == n / 2 + 1);
        std::vector<std::complex<double>> got(fft.bins());
        fft.transform(x, got.data());
        for (std::size_t k = 0; k < fft.bins(); ++k) {
            CHECK(std::abs(got[k] - oracle[k]) <= 1e-9 * static_cast<double>(n));
        }
    }
}

TEST_CASE("RealFft analytic cases") {
    SUBCASE("impulse -> flat unit spectrum") {
        std::vector<double> x(16, 0.0);
        x[0] = 1.0;
        RealFft fft(16);
        std::vector<std::complex<double>> out(fft.bins());
        fft.transform(x, out.data());
        for (const auto& c : out) {
            CHECK(c.real() == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(std::abs(c.imag()) < 1e-12);
        }
    }
    SUBCASE("constant -> all energy in bin 0") {
        std::vector<double> x(32, 1.0);
        RealFft fft(32);
        std::vector<std::complex<double>> out(fft.bins());
        fft.transform(x, out.data());
        CHECK(out[0].real() == doctest::Approx(32.0).epsilon(1e-12));
        for (std::size_t k = 1; k < out.size(); ++k) CHECK(std::abs(out[k]) < 1e-9);
    }
    SUBCASE("bin-centered cosine -> N/2 in its bin") {
        const std::size_t n = 64, k0 = 5;
        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i)
            x[i] = std::cos(2.0 * std::numbers::pi * static_cast<double>(k0 * i) / n);
        RealFft fft(n);
        std::vector<std::complex<double>> out(fft.bins());
        fft.transform(x, out.data());
        for (std::size_t k = 0; k < out.size(); ++k) {
            const double expect = (k == k0) ? n / 2.0 : 0.0;
            CHECK(std::abs(out[k]) == doctest::Approx(expect).epsilon(1e-9).scale(1.0));
        }
    }
    SUBCASE("Parseval: one-sided power equals N * signal energy") {
        const std::size_t n = 1024;
        const std::vector<double> x = random_signal(n, 77);
        RealFft fft(n);
        std::vector<std::complex<double>> out(fft.bins());
        fft.transform(x, out.data());
        double lhs = std::norm(out[0]) + std::norm(out[n / 2]);
        for (std::size_t k = 1; k < n / 2; ++k) lhs += 2.0 * std::norm(out[k]);
        double rhs = 0.0;
        for (double v : x) rhs += v * v;
        rhs *= static_cast<double>(n);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
    SUBCASE("non power-of-two length rejected") {
        CHECK_THROWS_AS(RealFft(0), std::invalid_argument);
        CHECK_THROWS_AS(RealFft(1), std::invalid_argument);
        CHECK_THROWS_AS(RealFft(12), std::invalid_argument);
    }
}

TEST_CASE("stft frame geometry at the standard settings") {
    const Waveform w = tone_waveform(20000.0, 3.0);
    REQUIRE(w.samples.size() == 132300);
    const Spectrogram s = stft(w, {});
    CHECK(s.n_bins == 1025);
    CHECK(s.n_frames == 255);  // floor((132300 - 2048)/512) + 1
    CHECK(s.bin_hz == doctest::Approx(21.533203125).epsilon(1e-15));
    CHECK(s.frame_s == doctest::Approx(512.0 / 44100.0).epsilon(1e-15));
    CHECK(s.freq_offset_bin == 0);
    CHECK(s.time_offset_frame == 0);

    // A 20 kHz tone lands between bins 928 and 929; the per-frame argmax
    // must fall there.
    for (int f = 0; f < s.n_frames; f += 17) {
        int best = 0;
        for (int b = 1; b < s.n_bins; ++b)
            if (s.at(b, f) > s.at(best, f)) best = b;
        CHECK(best >= 928);
        CHECK(best <= 929);
    }
}

TEST_CASE("stft frames match windowed direct DFTs") {
    Waveform w;
    w.sample_rate_hz = 44100.0;
    w.samples = random_signal(200, 5);
    StftConfig cfg;
    cfg.n_fft = 16;
    cfg.hop = 4;

    SUBCASE("hann window") {
        const Spectrogram s = stft(w, cfg);
        REQUIRE(s.n_frames == static_cast<int>((200 - 16) / 4) + 1);
        for (int f = 0; f < s.n_frames; ++f) {
            std::vector<double> frame(16);
            for (int i = 0; i < 16; ++i) {
                const double win = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / 16.0);
                frame[i] = w.samples[static_cast<std::size_t>(f) * 4 + i] * win;
            }
            const auto oracle = sonar::testing::direct_dft(frame);
            for (int b = 0; b < s.n_bins; ++b)
                CHECK(std::abs(s.at(b, f) - std::abs(oracle[b])) <= 1e-10);
        }
    }
    SUBCASE("rect window") {
        cfg.window = Window::kRect;
        const Spectrogram s = stft(w, cfg);
        std::vector<double> frame(w.samples.begin(), w.samples.begin() + 16);
        const auto oracle = sonar::testing::direct_dft(frame);
        for (int b = 0; b < s.n_bins; ++b)
            CHECK(std::abs(s.at(b, 0) - std::abs(oracle[b])) <= 1e-10);
    }
}

TEST_CASE("stft of one full-size frame matches the oracle at n_fft = 2048") {
    Waveform w;
    w.sample_rate_hz = 44100.0;
    w.samples = random_signal(2048, 6);
    const Spectrogram s = stft(w, {});
    REQUIRE(s.n_frames == 1);
    std::vector<double> frame(2048);
    for (int i = 0; i < 2048; ++i) {
        const double win = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / 2048.0);
        frame[i] = w.samples[i] * win;
    }
    const auto oracle = sonar::testing::direct_dft(frame);
    for (int b = 0; b < s.n_bins; ++b)
        CHECK(std::abs(s.at(b, 0) - std::abs(oracle[b])) <= 1e-8);
}

TEST_CASE("stft input validation") {
    const Waveform w = tone_waveform(1000.0, 0.1);
    StftConfig cfg;
    SUBCASE("bad n_fft") {
        cfg.n_fft = 1000;
        CHECK_THROWS_AS(stft(w, cfg), std::invalid_argument);
    }
    SUBCASE("bad hop") {
        cfg.hop = 0;
        CHECK_THROWS_AS(stft(w, cfg), std::invalid_argument);
        cfg.hop = 4096;
        CHECK_THROWS_AS(stft(w, cfg), std::invalid_argument);
    }
    SUBCASE("input shorter than one frame") {
        Waveform s;
        s.sample_rate_hz = 44100.0;
        s.samples.assign(2047, 0.0);
        CHECK_THROWS_AS(stft(s, {}), std::invalid_argument);
    }
    SUBCASE("window parsing") {
        CHECK(parse_window("hann") == Window::kHann);
        CHECK(parse_window("rect") == Window::kRect);
        CHECK_THROWS_AS(parse_window("hamming"), std::invalid_argument);
    }
}

TEST_CASE("band_time_crop selects the documented region") {
    const Waveform w = tone_waveform(20000.0, 3.0);
    const Spectrogram full = stft(w, {});
    const Spectrogram c = band_time_crop(full, {});

    CHECK(c.freq_offset_bin == 915);
    CHECK(c.n_bins == 28);  // bins 915..942
    CHECK(c.time_offset_frame == 112);
    CHECK(c.n_frames == 121);  // frames 112..232

    // Edge bins/frames actually satisfy the bounds; their neighbors do not.
    CHECK(c.bin_center_hz(0) >= 19700.0);
    CHECK(914 * c.bin_hz < 19700.0);
    CHECK(c.bin_center_hz(c.n_bins - 1) <= 20300.0);
    CHECK(943 * c.bin_hz > 20300.0);
    CHECK(c.frame_start_s(0) >= 1.3);
    CHECK(111 * c.frame_s < 1.3);
    CHECK(c.frame_start_s(c.n_frames - 1) < 2.7);
    CHECK(233 * c.frame_s >= 2.7);

    SUBCASE("values are copied untouched") {
        for (int b = 0; b < c.n_bins; ++b)
            for (int f = 0; f < c.n_frames; ++f)
                CHECK(c.at(b, f) == full.at(915 + b, 112 + f));
    }
    SUBCASE("cropping an already-cropped grid is the identity") {
        const Spectrogram c2 = band_time_crop(c, {});
        CHECK(c2.n_bins == c.n_bins);
        CHECK(c2.n_frames == c.n_frames);
        CHECK(c2.freq_offset_bin == c.freq_offset_bin);
        CHECK(c2.time_offset_frame == c.time_offset_frame);
        CHECK(c2.magnitudes == c.magnitudes);
    }
}

TEST_CASE("band_time_crop rejects empty regions with a named axis") {
    const Waveform w = tone_waveform(20000.0, 3.0);
    const Spectrogram full = stft(w, {});
    CropConfig crop;
    SUBCASE("no bins") {
        crop.f_lo_hz = 100000.0;
        crop.f_hi_hz = 100001.0;
        CHECK_THROWS_WITH_AS(band_time_crop(full, crop),
                             doctest::Contains("frequency"), DataError);
    }
    SUBCASE("no frames") {
        crop.t_lo_s = 10.0;
        crop.t_hi_s = 11.0;
        CHECK_THROWS_WITH_AS(band_time_crop(full, crop), doctest::Contains("time"),
                             DataError);
    }
}

TEST_CASE("bilinear_resize") {
    SUBCASE("identity at equal size") {
        const std::vector<double> src = {1.0, 2.0, 3.0, 4.0, 5.0, 6.0};
        CHECK(bilinear_resize(src, 2, 3, 2, 3) == src);
    }
    SUBCASE("2x2 -> 3x3 with align-corners midpoints") {
        const std::vector<double> src = {0.0, 1.0, 1.0, 0.0};
        const std::vector<double> out = bilinear_resize(src, 2, 2, 3, 3);
        const std::vector<double> expect = {0.0, 0.5, 1.0, 0.5, 0.5, 0.5, 1.0, 0.5, 0.0};
        REQUIRE(out.size() == expect.size());
        for (std::size_t i = 0; i < out.size(); ++i)
            CHECK(out[i] == doctest::Approx(expect[i]).epsilon(1e-15));
    }
    SUBCASE("corners are preserved exactly") {
        Rng rng(8);
        std::vector<double> src(5 * 7);
        for (double& v : src) v = rng.uniform(0.0, 1.0);
        const std::vector<double> out = bilinear_resize(src, 5, 7, 100, 100);
        CHECK(out[0] == src[0]);
        CHECK(out[99] == src[6]);
        CHECK(out[99 * 100] == src[4 * 7]);
        CHECK(out[99 * 100 + 99] == src[5 * 7 - 1]);
    }
    SUBCASE("upsample of a constant stays constant") {
        const std::vector<double> src(4 * 4, 0.625);
        for (double v : bilinear_resize(src, 4, 4, 9, 13))
            CHECK(v == doctest::Approx(0.625).epsilon(1e-15));
    }
}

TEST_CASE("to_image normalization and orientation") {
    SUBCASE("hand-checked 2x2 grid") {
        Spectrogram s;
        s.n_bins = 2;
        s.n_frames = 2;
        // bin-major layout: (b0,f0) (b0,f1) (b1,f0) (b1,f1)
        s.magnitudes = {0.0, 5.0, 5.0, 0.0};
        ImageConfig cfg;
        cfg.out_rows = 3;
        cfg.out_cols = 3;
        const SpectrogramImage img = to_image(s, cfg);
        // Log compression is monotone, min-max maps {0,5} to {0,1}; row 0 is
        // bin 0 (lowest frequency), so the pattern survives as a saddle.
        const std::vector<double> expect = {0.0, 0.5, 1.0, 0.5, 0.5, 0.5, 1.0, 0.5, 0.0};
        REQUIRE(img.rows == 3);
        REQUIRE(img.cols == 3);
        for (std::size_t i = 0; i < expect.size(); ++i)
            CHECK(img.pixels[i] == doctest::Approx(expect[i]).epsilon(1e-12));
    }
    SUBCASE("constant spectrogram maps to all zeros") {
        Spectrogram s;
        s.n_bins = 4;
        s.n_frames = 4;
        s.magnitudes.assign(16, 3.25);
        const SpectrogramImage img = to_image(s, {});
        CHECK(img.rows == 100);
        CHECK(img.cols == 100);
        for (double v : img.pixels) CHECK(v == 0.0);
    }
    SUBCASE("output range is [0,1] with both endpoints attained") {
        Rng rng(9);
        Spectrogram s;
        s.n_bins = 28;
        s.n_frames = 121;
        s.magnitudes.resize(28 * 121);
        for (double& v : s.magnitudes) v = rng.uniform(1.0, 49.0);
        // Pin the extremes at opposite corners: align-corners resampling
        // reproduces corner samples exactly, so 0 and 1 must survive into
        // the output (interior extremes need not land on an output sample).
        s.at(0, 0) = 0.05;
        s.at(27, 120) = 60.0;
        const SpectrogramImage img = to_image(s, {});
        const auto [lo, hi] = std::minmax_element(img.pixels.begin(), img.pixels.end());
        CHECK(*lo == 0.0);
        CHECK(*hi == 1.0);
        CHECK(img.at(0, 0) == 0.0);
        CHECK(img.at(99, 99) == 1.0);
        for (double v : img.pixels) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
    }
    SUBCASE("highest frequency lands in the last image row") {
        Spectrogram s;
        s.n_bins = 10;
        s.n_frames = 10;
        s.magnitudes.assign(100, 0.0);
        s.at(9, 4) = 1.0;  // top bin, mid frame
        const SpectrogramImage img = to_image(s, {});
        int best = 0;
        for (int i = 1; i < 100 * 100; ++i)
            if (img.pixels[i] > img.pixels[best]) best = i;
        CHECK(best / 100 == 99);  // bottom row of the in-memory image = top frequency
    }
    SUBCASE("negative or non-finite magnitudes are rejected") {
        Spectrogram s;
        s.n_bins = 2;
        s.n_frames = 2;
        s.magnitudes = {0.0, 1.0, -0.5, 2.0};
        CHECK_THROWS_AS(to_image(s, {}), NumericError);
        s.magnitudes[2] = std::nan("");
        CHECK_THROWS_AS(to_image(s, {}), NumericError);
    }
}

TEST_CASE("PGM persistence") {
    sonar::testing::TempDir tmp("pgm");

    SUBCASE("round trip is exact at 8-bit resolution") {
        Rng rng(10);
        SpectrogramImage img;
        img.rows = 17;
        img.cols = 23;
        img.pixels.resize(17 * 23);
        for (double& v : img.pixels) v = rng.uniform(0.0, 1.0);
        const std::string path = tmp.str("img.pgm");
        write_pgm(path, img);
        const SpectrogramImage back = read_pgm(path);
        REQUIRE(back.rows == img.rows);
        REQUIRE(back.cols == img.cols);
        for (std::size_t i = 0; i < img.pixels.size(); ++i) {
            const double quantized = std::floor(img.pixels[i] * 255.0 + 0.5) / 255.0;
            CHECK(std::abs(back.pixels[i] - quantized) <= 1e-12);
        }
    }
    SUBCASE("file stores the highest frequency first") {
        SpectrogramImage img;
        img.rows = 2;
        img.cols = 3;
        img.pixels = {0.0, 0.0, 0.0, 1.0, 1.0, 1.0};  // row 1 (high freq) = white
        const std::string path = tmp.str("orient.pgm");
        write_pgm(path, img);
        std::ifstream in(path, std::ios::binary);
        std::string header;
        std::getline(in, header);
        CHECK(header == "P5");
        int w = 0, h = 0, maxv = 0;
        in >> w >> h >> maxv;
        in.get();  // single whitespace after maxval
        CHECK(w == 3);
        CHECK(h == 2);
        CHECK(maxv == 255);
        unsigned char data[6];
        in.read(reinterpret_cast<char*>(data), 6);
        // First file row = in-memory last row = 255s.
        for (int i = 0; i < 3; ++i) CHECK(static_cast<int>(data[i]) == 255);
        for (int i = 3; i < 6; ++i) CHECK(static_cast<int>(data[i]) == 0);
    }
    SUBCASE("read rejects a non-PGM file") {
        const std::string path = tmp.str("bad.pgm");
        std::ofstream(path) << "P2\n2 2\n255\n0 0 0 0\n";
        CHECK_THROWS_AS(read_pgm(path), DataError);
        CHECK_THROWS_AS(read_pgm(tmp.str("missing.pgm")), DataError);
    }
}

TEST_CASE("raw float64 image persistence round-trips bit-exactly") {
    sonar::testing::TempDir tmp("f64");
    Rng rng(11);
    SpectrogramImage img;
    img.rows = kImageSize;
    img.cols = kImageSize;
    img.pixels.resize(static_cast<std::size_t>(kImageSize) * kImageSize);
    for (double& v : img.pixels) v = rng.uniform(0.0, 1.0);
    const std::string path = tmp.str("img.f64");
    write_image_f64(path, img);
    const SpectrogramImage back = read_image_f64(path);
    CHECK(back.rows == img.rows);
    CHECK(back.cols == img.cols);
    CHECK(back.pixels == img.pixels);

    SUBCASE("truncated payload is a data error") {
        std::ofstream out(tmp.str("short.f64"), std::ios::binary);
        const std::int32_t dims[2] = {100, 100};
        out.write(reinterpret_cast<const char*>(dims), sizeof(dims));
        out.write("abc", 3);
        out.close();
        CHECK_THROWS_AS(read_image_f64(tmp.str("short.f64")), DataError);
    }
}
