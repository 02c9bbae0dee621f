#pragma once

// Corpus manifesting: rows of (clip path, gesture, subject, split, seed),
// directory ingestion, deterministic stratified train/val splitting, and the
// CSV on-disk format (header `path,gesture,subject,split,seed`, path-sorted).

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sonar/gesture.hpp"

namespace sonar {

inline constexpr const char* kSplitTrain = "train";
inline constexpr const char* kSplitVal = "val";
inline constexpr const char* kSplitTest = "test";

bool is_valid_split(const std::string& s);

struct ManifestRow {
    std::string path;
    GestureClass gesture = GestureClass::kSwipeRight;
    std::string subject;  // optional; empty when unknown
    std::string split = kSplitTrain;
    std::optional<std::uint64_t> seed;  // present for synthetic clips
};

struct Manifest {
    std::vector<ManifestRow> rows;

    std::size_t size() const { return rows.size(); }
    // (split, gesture) -> count
    std::map<std::pair<std::string, GestureClass>, int> histogram() const;
    std::vector<ManifestRow> rows_for_split(const std::string& split) const;
    void sort_by_path();
    // Throws DataError on duplicate paths or invalid split labels.
    void validate() const;
};

// Walks a directory tree of the form <split>/<gesture_code>/*.wav. Non-WAV
// files are skipped with a log line; unknown split or gesture directory names
// are rejected.
Manifest ingest(const std::string& dir);

// Relabels a deterministic per-class subset of the train rows as val.
// val_fraction in [0, 1); per-class counts of val rows are
// round(n_class * val_fraction).
Manifest stratified_split(const Manifest& m, double val_fraction, std::uint64_t seed);

void write_manifest_csv(const std::string& path, const Manifest& m);
Manifest read_manifest_csv(const std::string& path);

}  // namespace sonar
