#include "sonar/manifest.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "sonar/errors.hpp"
#include "sonar/log.hpp"
#include "sonar/rng.hpp"

namespace sonar {

namespace fs = std::filesystem;

bool is_valid_split(const std::string& s) {
    return s == kSplitTrain || s == kSplitVal || s == kSplitTest;
}

std::map<std::pair<std::string, GestureClass>, int> Manifest::histogram() const {
    std::map<std::pair<std::string, GestureClass>, int> h;
    for (const auto& r : rows) ++h[{r.split, r.gesture}];
    return h;
}

std::vector<ManifestRow> Manifest::rows_for_split(const std::string& split) const {
    std::vector<ManifestRow> out;
    for (const auto& r : rows)
        if (r.split == split) out.push_back(r);
    return out;
}

void Manifest::sort_by_path() {
    std::sort(rows.begin(), rows.end(),
              [](const ManifestRow& a, const ManifestRow& b) { return a.path < b.path; });
}

void Manifest::validate() const {
    std::set<std::string> seen;
    for (const auto& r : rows) {
        if (r.path.empty()) throw DataError("manifest: empty clip path");
        if (!seen.insert(r.path).second)
            throw DataError("manifest: duplicate path '" + r.path + "'");
        if (!is_valid_split(r.split))
            throw DataError("manifest: invalid split '" + r.split + "' for '" + r.path + "'");
    }
}

namespace {

// Cheap readability probe: the file must open and start with a RIFF/WAVE tag.
void check_readable_wav(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    char hdr[12] = {};
    in.read(hdr, sizeof(hdr));
    if (!in || std::string_view(hdr, 4) != "RIFF" || std::string_view(hdr + 8, 4) != "WAVE")
        throw DataError("ingest: unreadable or non-WAV file '" + p.string() + "'");
}

}  // namespace

Manifest ingest(const std::string& dir) {
    if (!fs::is_directory(dir))
        throw DataError("ingest: '" + dir + "' is not a directory");

    Manifest m;
    for (const auto& split_entry : fs::directory_iterator(dir)) {
        if (!split_entry.is_directory()) continue;  // manifest.csv etc.
        const std::string split = split_entry.path().filename().string();
        if (!is_valid_split(split))
            throw DataError("ingest: unknown split directory '" + split +
                            "' (expected train|val|test)");
        for (const auto& class_entry : fs::directory_iterator(split_entry.path())) {
            if (!class_entry.is_directory())
                throw DataError("ingest: stray file '" + class_entry.path().string() +
                                "' at split level");
            const std::string code = class_entry.path().filename().string();
            if (!is_gesture_code(code))
                throw DataError("ingest: unknown gesture directory '" + code + "' under '" +
                                split + "'");
            const GestureClass g = parse_gesture(code);
            for (const auto& f : fs::directory_iterator(class_entry.path())) {
                if (!f.is_regular_file() || f.path().extension() != ".wav") {
                    log::info("ingest: skipping non-WAV entry '" + f.path().string() + "'");
                    continue;
                }
                check_readable_wav(f.path());
                ManifestRow row;
                row.path = fs::relative(f.path(), dir).generic_string();
                row.gesture = g;
                row.split = split;
                m.rows.push_back(std::move(row));
            }
        }
    }
    m.sort_by_path();
    m.validate();

    const auto h = m.histogram();
    for (const auto& [key, count] : h)
        log::info("ingest: " + key.first + "/" + gesture_code(key.second) + ": " +
                  std::to_string(count) + " clips");
    for (const auto& split : {kSplitTrain, kSplitVal, kSplitTest})
        for (GestureClass g : kAllGestures)
            if (m.rows_for_split(split).size() > 0 && h.find({split, g}) == h.end())
                log::warn("ingest: split '" + std::string(split) + "' has no '" +
                          gesture_code(g) + "' clips");
    return m;
}

Manifest stratified_split(const Manifest& m, double val_fraction, std::uint64_t seed) {
    if (val_fraction < 0.0 || val_fraction >= 1.0)
        throw std::invalid_argument("stratified_split: val_fraction must be in [0, 1)");
    Manifest out = m;
    if (val_fraction == 0.0) return out;

    for (std::size_t ci = 0; ci < kAllGestures.size(); ++ci) {
        const GestureClass g = kAllGestures[ci];
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < out.rows.size(); ++i)
            if (out.rows[i].split == kSplitTrain && out.rows[i].gesture == g)
                idx.push_back(i);
        if (idx.empty()) continue;

        Rng rng(derive_seed(seed, stream_tag("dataset.split"), ci));
        for (std::size_t i = idx.size() - 1; i > 0; --i)
            std::swap(idx[i], idx[rng.uniform_int(0, static_cast<std::int64_t>(i))]);

        const auto n_val = static_cast<std::size_t>(
            std::min<double>(static_cast<double>(idx.size()),
                             std::floor(idx.size() * val_fraction + 0.5)));
        for (std::size_t i = 0; i < n_val; ++i) out.rows[idx[i]].split = kSplitVal;
    }
    return out;
}

namespace {

void check_csv_field(const std::string& value, const char* field) {
    if (value.find_first_of(",\"\r\n") != std::string::npos)
        throw DataError(std::string("manifest csv: ") + field +
                        " value contains a comma, quote, or newline: '" + value + "'");
}

}  // namespace

void write_manifest_csv(const std::string& path, const Manifest& m) {
    Manifest sorted = m;
    sorted.sort_by_path();
    sorted.validate();

    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("write_manifest_csv: cannot open '" + path + "' for writing");
    out << "path,gesture,subject,split,seed\n";
    for (const auto& r : sorted.rows) {
        check_csv_field(r.path, "path");
        check_csv_field(r.subject, "subject");
        out << r.path << ',' << gesture_code(r.gesture) << ',' << r.subject << ','
            << r.split << ',';
        if (r.seed) out << *r.seed;
        out << '\n';
    }
    if (!out) throw DataError("write_manifest_csv: short write to '" + path + "'");
}

Manifest read_manifest_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("read_manifest_csv: cannot open '" + path + "'");

    auto next_line = [&](std::string& line) {
        if (!std::getline(in, line)) return false;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return true;
    };

    std::string line;
    if (!next_line(line) || line != "path,gesture,subject,split,seed")
        throw DataError("read_manifest_csv: '" + path + "' missing expected header");

    Manifest m;
    std::size_t line_no = 1;
    while (next_line(line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (line.back() == ',') fields.push_back("");  // empty trailing seed
        if (fields.size() != 5)
            throw DataError("read_manifest_csv: line " + std::to_string(line_no) + " of '" +
                            path + "' has " + std::to_string(fields.size()) +
                            " fields, expected 5");
        ManifestRow row;
        row.path = fields[0];
        row.gesture = parse_gesture(fields[1]);
        row.subject = fields[2];
        row.split = fields[3];
        if (!is_valid_split(row.split))
            throw DataError("read_manifest_csv: invalid split '" + row.split + "' at line " +
                            std::to_string(line_no));
        if (!fields[4].empty()) {
            try {
                row.seed = std::stoull(fields[4]);
            } catch (const std::exception&) {
                throw DataError("read_manifest_csv: bad seed '" + fields[4] + "' at line " +
                                std::to_string(line_no));
            }
        }
        m.rows.push_back(std::move(row));
    }
    m.validate();
    return m;
}

}  // namespace sonar
