#include "sonar/wav_io.hpp"

#include <array>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "sonar/log.hpp"

namespace sonar {
namespace {

void put_u32(std::vector<std::uint8_t>& b, std::uint32_t v) {
    b.push_back(static_cast<std::uint8_t>(v & 0xFF));
    b.push_back(static_cast<std::uint8_t>((v >> 8) & 0xFF));
    b.push_back(static_cast<std::uint8_t>((v >> 16) & 0xFF));
    b.push_back(static_cast<std::uint8_t>(v >> 24));
}

void put_u16(std::vector<std::uint8_t>& b, std::uint16_t v) {
    b.push_back(static_cast<std::uint8_t>(v & 0xFF));
    b.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_tag(std::vector<std::uint8_t>& b, const char* tag) {
    b.insert(b.end(), tag, tag + 4);
}

void write_pcm_file(const std::filesystem::path& path, std::uint16_t channels,
                    std::uint32_t sample_rate,
                    const std::vector<std::int16_t>& interleaved) {
    const auto data_size = static_cast<std::uint32_t>(interleaved.size() * 2);
    std::vector<std::uint8_t> header;
    header.reserve(44);
    put_tag(header, "RIFF");
    put_u32(header, 36 + data_size);
    put_tag(header, "WAVE");
    put_tag(header, "fmt ");
    put_u32(header, 16);
    put_u16(header, 1);  // PCM
    put_u16(header, channels);
    put_u32(header, sample_rate);
    put_u32(header, sample_rate * channels * 2);  // byte rate
    put_u16(header, static_cast<std::uint16_t>(channels * 2));  // block align
    put_u16(header, 16);
    put_tag(header, "data");
    put_u32(header, data_size);

    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw WavError("cannot open for writing: " + path.string());
    out.write(reinterpret_cast<const char*>(header.data()),
              static_cast<std::streamsize>(header.size()));
    std::vector<std::uint8_t> payload(interleaved.size() * 2);
    for (std::size_t i = 0; i < interleaved.size(); ++i) {
        const auto v = static_cast<std::uint16_t>(interleaved[i]);
        payload[2 * i] = static_cast<std::uint8_t>(v & 0xFF);
        payload[2 * i + 1] = static_cast<std::uint8_t>(v >> 8);
    }
    out.write(reinterpret_cast<const char*>(payload.data()),
              static_cast<std::streamsize>(payload.size()));
    if (!out)
        throw WavError("write failed: " + path.string());
}

std::uint32_t get_u32(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) |
           (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t get_u16(const std::uint8_t* p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

}  // namespace

void wav_write(const StereoWaveform& s, const std::filesystem::path& path) {
    check_stereo(s);
    const std::size_t n = s.top.samples.size();
    std::vector<std::int16_t> interleaved(n * 2);
    for (std::size_t i = 0; i < n; ++i) {
        interleaved[2 * i] = pcm16_quantize(s.top.samples[i]);
        interleaved[2 * i + 1] = pcm16_quantize(s.bottom.samples[i]);
    }
    write_pcm_file(path, 2, static_cast<std::uint32_t>(s.top.sample_rate_hz),
                   interleaved);
}

void wav_write_mono(const Waveform& w, const std::filesystem::path& path) {
    std::vector<std::int16_t> pcm(w.samples.size());
    for (std::size_t i = 0; i < w.samples.size(); ++i)
        pcm[i] = pcm16_quantize(w.samples[i]);
    write_pcm_file(path, 1, static_cast<std::uint32_t>(w.sample_rate_hz), pcm);
}

StereoWaveform wav_read(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw WavError("cannot open: " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());

    if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
        std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
        throw WavFormatError("not a RIFF/WAVE file: " + path.string());

    bool have_fmt = false;
    std::uint16_t format_tag = 0, channels = 0, bits = 0;
    std::uint32_t sample_rate = 0;
    const std::uint8_t* data_ptr = nullptr;
    std::uint32_t data_size = 0;

    // Chunk scan: fmt must precede data; unknown chunks are skipped
    // (sizes are padded to even per RIFF).
    std::size_t pos = 12;
    while (pos + 8 <= bytes.size()) {
        const std::uint8_t* chunk = bytes.data() + pos;
        const std::uint32_t size = get_u32(chunk + 4);
        const std::size_t body = pos + 8;
        if (std::memcmp(chunk, "fmt ", 4) == 0) {
            if (size < 16 || body + 16 > bytes.size())
                throw WavFormatError("fmt chunk too small: " + path.string());
            format_tag = get_u16(bytes.data() + body);
            channels = get_u16(bytes.data() + body + 2);
            sample_rate = get_u32(bytes.data() + body + 4);
            bits = get_u16(bytes.data() + body + 14);
            have_fmt = true;
        } else if (std::memcmp(chunk, "data", 4) == 0) {
            if (!have_fmt)
                throw WavFormatError("data chunk before fmt: " + path.string());
            if (body + size > bytes.size())
                throw WavTruncatedError(
                    "data chunk declares " + std::to_string(size) + " bytes, only " +
                    std::to_string(bytes.size() - body) + " present: " + path.string());
            data_ptr = bytes.data() + body;
            data_size = size;
            break;
        }
        pos = body + size + (size % 2);
    }

    if (!have_fmt)
        throw WavFormatError("missing fmt chunk: " + path.string());
    if (data_ptr == nullptr)
        throw WavFormatError("missing data chunk: " + path.string());
    if (format_tag != 1)
        throw WavUnsupportedError("unsupported codec (format tag " +
                                  std::to_string(format_tag) + "): " + path.string());
    if (bits != 16)
        throw WavUnsupportedError("unsupported bit depth " + std::to_string(bits) +
                                  ": " + path.string());
    if (channels != 1 && channels != 2)
        throw WavUnsupportedError("unsupported channel count " +
                                  std::to_string(channels) + ": " + path.string());
    if (sample_rate != 44100)
        log::warn("sample rate " + std::to_string(sample_rate) +
                  " Hz (expected 44100) in " + path.string());

    const std::size_t frames = data_size / (2u * channels);
    StereoWaveform s;
    s.top.sample_rate_hz = s.bottom.sample_rate_hz = sample_rate;
    s.top.samples.resize(frames);
    s.bottom.samples.resize(frames);
    for (std::size_t i = 0; i < frames; ++i) {
        const auto v0 = static_cast<std::int16_t>(
            get_u16(data_ptr + 2 * channels * i));
        s.top.samples[i] = pcm16_dequantize(v0);
        if (channels == 2) {
            const auto v1 = static_cast<std::int16_t>(
                get_u16(data_ptr + 2 * channels * i + 2));
            s.bottom.samples[i] = pcm16_dequantize(v1);
        } else {
            s.bottom.samples[i] = s.top.samples[i];
        }
    }
    return s;
}

}  // namespace sonar
