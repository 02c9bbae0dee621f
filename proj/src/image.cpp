#include "sonar/image.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "sonar/errors.hpp"

namespace sonar {

std::vector<double> bilinear_resize(const std::vector<double>& src, int src_rows,
                                    int src_cols, int dst_rows, int dst_cols) {
    if (src_rows <= 0 || src_cols <= 0 || dst_rows <= 0 || dst_cols <= 0)
        throw std::invalid_argument("bilinear_resize: dimensions must be positive");
    if (src.size() != static_cast<std::size_t>(src_rows) * src_cols)
        throw std::invalid_argument("bilinear_resize: source size mismatch");

    std::vector<double> dst(static_cast<std::size_t>(dst_rows) * dst_cols);
    // Align-corners mapping, computed as (i * (src-1)) / (dst-1) per pixel:
    // the numerator is an exact small integer, so endpoint pixels land on
    // exact source coordinates and corner values survive bit-for-bit
    // (precomputing the ratio once would leave the last row/column one ulp
    // inside the grid).
    for (int r = 0; r < dst_rows; ++r) {
        const double sr =
            dst_rows > 1 ? static_cast<double>(r * (src_rows - 1)) / (dst_rows - 1) : 0.0;
        int r0 = static_cast<int>(sr);
        if (r0 > src_rows - 2) r0 = src_rows > 1 ? src_rows - 2 : 0;
        const double fr = sr - r0;
        for (int c = 0; c < dst_cols; ++c) {
            const double sc =
                dst_cols > 1 ? static_cast<double>(c * (src_cols - 1)) / (dst_cols - 1) : 0.0;
            int c0 = static_cast<int>(sc);
            if (c0 > src_cols - 2) c0 = src_cols > 1 ? src_cols - 2 : 0;
            const double fc = sc - c0;
            const std::size_t base = static_cast<std::size_t>(r0) * src_cols + c0;
            const double v00 = src[base];
            const double v01 = src_cols > 1 ? src[base + 1] : v00;
            const double v10 = src_rows > 1 ? src[base + src_cols] : v00;
            const double v11 = (src_rows > 1 && src_cols > 1) ? src[base + src_cols + 1] : v00;
            dst[static_cast<std::size_t>(r) * dst_cols + c] =
                (1.0 - fr) * ((1.0 - fc) * v00 + fc * v01) +
                fr * ((1.0 - fc) * v10 + fc * v11);
        }
    }
    return dst;
}

SpectrogramImage to_image(const Spectrogram& s, const ImageConfig& cfg) {
    if (s.n_bins <= 0 || s.n_frames <= 0)
        throw std::invalid_argument("to_image: empty spectrogram");
    if (cfg.log_floor <= 0.0)
        throw std::invalid_argument("to_image: log_floor must be positive");

    // Rows = bins (low frequency first), cols = frames.
    std::vector<double> grid(static_cast<std::size_t>(s.n_bins) * s.n_frames);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (int b = 0; b < s.n_bins; ++b) {
        for (int f = 0; f < s.n_frames; ++f) {
            const double m = s.at(b, f);
            if (m < 0.0 || !std::isfinite(m))
                throw NumericError("to_image: magnitude must be finite and non-negative");
            const double v = std::log10(1.0 + m / cfg.log_floor);
            grid[static_cast<std::size_t>(b) * s.n_frames + f] = v;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    const double range = hi - lo;
    if (range > 0.0) {
        for (double& v : grid) v = (v - lo) / range;
    } else {
        std::fill(grid.begin(), grid.end(), 0.0);
    }

    SpectrogramImage img;
    img.rows = cfg.out_rows;
    img.cols = cfg.out_cols;
    img.pixels = bilinear_resize(grid, s.n_bins, s.n_frames, cfg.out_rows, cfg.out_cols);
    return img;
}

void write_pgm(const std::string& path, const SpectrogramImage& img) {
    if (img.rows <= 0 || img.cols <= 0)
        throw std::invalid_argument("write_pgm: empty image");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("write_pgm: cannot open '" + path + "' for writing");
    out << "P5\n" << img.cols << " " << img.rows << "\n255\n";
    std::vector<std::uint8_t> row(img.cols);
    for (int r = img.rows - 1; r >= 0; --r) {  // file top = highest frequency
        for (int c = 0; c < img.cols; ++c) {
            const double v = std::clamp(img.at(r, c), 0.0, 1.0);
            row[c] = static_cast<std::uint8_t>(std::floor(v * 255.0 + 0.5));
        }
        out.write(reinterpret_cast<const char*>(row.data()), row.size());
    }
    if (!out) throw DataError("write_pgm: short write to '" + path + "'");
}

namespace {

int next_pgm_int(std::istream& in, const std::string& path) {
    // Skips whitespace and '#' comments, then reads one decimal integer.
    int ch = in.get();
    while (ch != EOF && (std::isspace(ch) || ch == '#')) {
        if (ch == '#') {
            while (ch != EOF && ch != '\n') ch = in.get();
        }
        ch = in.get();
    }
    if (ch == EOF || !std::isdigit(ch))
        throw DataError("read_pgm: malformed header in '" + path + "'");
    long val = 0;
    while (ch != EOF && std::isdigit(ch)) {
        val = val * 10 + (ch - '0');
        if (val > std::numeric_limits<int>::max())
            throw DataError("read_pgm: header value out of range in '" + path + "'");
        ch = in.get();
    }
    if (ch != EOF) in.unget();
    return static_cast<int>(val);
}

}  // namespace

SpectrogramImage read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("read_pgm: cannot open '" + path + "'");
    char magic[2] = {};
    in.read(magic, 2);
    if (!in || magic[0] != 'P' || magic[1] != '5')
        throw DataError("read_pgm: '" + path + "' is not a binary PGM (P5)");
    const int cols = next_pgm_int(in, path);
    const int rows = next_pgm_int(in, path);
    const int maxval = next_pgm_int(in, path);
    if (cols <= 0 || rows <= 0)
        throw DataError("read_pgm: bad dimensions in '" + path + "'");
    if (maxval != 255)
        throw DataError("read_pgm: only maxval 255 supported, got " +
                        std::to_string(maxval) + " in '" + path + "'");
    in.get();  // single whitespace byte after maxval

    SpectrogramImage img;
    img.rows = rows;
    img.cols = cols;
    img.pixels.resize(static_cast<std::size_t>(rows) * cols);
    std::vector<std::uint8_t> row(cols);
    for (int r = rows - 1; r >= 0; --r) {
        in.read(reinterpret_cast<char*>(row.data()), row.size());
        if (!in) throw DataError("read_pgm: truncated pixel data in '" + path + "'");
        for (int c = 0; c < cols; ++c) img.at(r, c) = row[c] / 255.0;
    }
    return img;
}

void write_image_f64(const std::string& path, const SpectrogramImage& img) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("write_image_f64: cannot open '" + path + "' for writing");
    const std::int32_t dims[2] = {img.rows, img.cols};
    out.write(reinterpret_cast<const char*>(dims), sizeof(dims));
    out.write(reinterpret_cast<const char*>(img.pixels.data()),
              static_cast<std::streamsize>(img.pixels.size() * sizeof(double)));
    if (!out) throw DataError("write_image_f64: short write to '" + path + "'");
}

SpectrogramImage read_image_f64(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("read_image_f64: cannot open '" + path + "'");
    std::int32_t dims[2] = {};
    in.read(reinterpret_cast<char*>(dims), sizeof(dims));
    if (!in || dims[0] <= 0 || dims[1] <= 0)
        throw DataError("read_image_f64: bad header in '" + path + "'");
    SpectrogramImage img;
    img.rows = dims[0];
    img.cols = dims[1];
    img.pixels.resize(static_cast<std::size_t>(img.rows) * img.cols);
    in.read(reinterpret_cast<char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size() * sizeof(double)));
    if (!in) throw DataError("read_image_f64: truncated data in '" + path + "'");
    return img;
}

}  // namespace sonar
