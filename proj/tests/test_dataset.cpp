#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include "sonar/dataset_cache.hpp"
#include "sonar/dataset_io.hpp"
#include "sonar/errors.hpp"
#include "sonar/gesture.hpp"
#include "sonar/manifest.hpp"
#include "sonar/pipeline.hpp"
#include "sonar/sim.hpp"
#include "sonar/wav_io.hpp"

#include "support/tmpdir.hpp"

using namespace sonar;
namespace fs = std::filesystem;

namespace {

// A tiny, cheap synthetic corpus shared by several cases in this file.
Manifest make_corpus(const sonar::testing::TempDir& tmp, int per_class,
                     const std::string& split = kSplitTrain, std::uint64_t seed = 7) {
    SimConfig cfg;
    return synth_dataset(per_class, cfg, seed, tmp.str(), split);
}

Manifest sample_manifest() {
    Manifest m;
    m.rows.push_back({"train/LR/a.wav", GestureClass::kSwipeRight, "s01", kSplitTrain, 42});
    m.rows.push_back({"train/P/b.wav", GestureClass::kPush, "", kSplitTrain, std::nullopt});
    m.rows.push_back({"test/DU/c.wav", GestureClass::kSwipeUp, "s02", kSplitTest, 7});
    return m;
}

}  // namespace

TEST_CASE("gesture codes, names, and parsing") {
    CHECK(gesture_code(GestureClass::kSwipeRight) == "LR");
    CHECK(gesture_code(GestureClass::kSwipeLeft) == "RL");
    CHECK(gesture_code(GestureClass::kPush) == "P");
    CHECK(gesture_code(GestureClass::kBlock) == "B");
    CHECK(gesture_code(GestureClass::kSwipeDown) == "UD");
    CHECK(gesture_code(GestureClass::kSwipeUp) == "DU");
    for (GestureClass g : kAllGestures) {
        CHECK(parse_gesture(gesture_code(g)) == g);
        CHECK(parse_gesture(gesture_name(g)) == g);
        CHECK(is_gesture_code(gesture_code(g)));
    }
    CHECK(!is_gesture_code("XX"));
    CHECK_THROWS_AS(parse_gesture("wave"), DataError);
}

TEST_CASE("split labels") {
    CHECK(is_valid_split("train"));
    CHECK(is_valid_split("val"));
    CHECK(is_valid_split("test"));
    CHECK(!is_valid_split("validation"));
    CHECK(!is_valid_split(""));
}

TEST_CASE("manifest histogram, split filter, and validation") {
    Manifest m = sample_manifest();
    const auto h = m.histogram();
    CHECK(h.at({kSplitTrain, GestureClass::kSwipeRight}) == 1);
    CHECK(h.at({kSplitTest, GestureClass::kSwipeUp}) == 1);
    CHECK(m.rows_for_split(kSplitTrain).size() == 2);
    CHECK(m.rows_for_split(kSplitVal).empty());
    CHECK_NOTHROW(m.validate());

    SUBCASE("duplicate path rejected") {
        m.rows.push_back(m.rows[0]);
        CHECK_THROWS_AS(m.validate(), DataError);
    }
    SUBCASE("invalid split rejected") {
        m.rows[0].split = "holdout";
        CHECK_THROWS_AS(m.validate(), DataError);
    }
}

TEST_CASE("manifest CSV round trip") {
    sonar::testing::TempDir tmp("csv");
    Manifest m = sample_manifest();
    const std::string path = tmp.str("manifest.csv");
    write_manifest_csv(path, m);

    SUBCASE("header and sorted body") {
        std::ifstream in(path);
        std::string line;
        std::getline(in, line);
        CHECK(line == "path,gesture,subject,split,seed");
        std::getline(in, line);
        CHECK(line == "test/DU/c.wav,DU,s02,test,7");  // path-sorted
    }
    SUBCASE("read restores every field including optional seeds") {
        const Manifest back = read_manifest_csv(path);
        REQUIRE(back.size() == 3);
        m.sort_by_path();
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(back.rows[i].path == m.rows[i].path);
            CHECK(back.rows[i].gesture == m.rows[i].gesture);
            CHECK(back.rows[i].subject == m.rows[i].subject);
            CHECK(back.rows[i].split == m.rows[i].split);
            CHECK(back.rows[i].seed == m.rows[i].seed);
        }
    }
    SUBCASE("write rejects fields that would break the format") {
        Manifest bad = sample_manifest();
        bad.rows[0].subject = "a,b";
        CHECK_THROWS_AS(write_manifest_csv(tmp.str("bad.csv"), bad), DataError);
    }
    SUBCASE("reader tolerates CRLF line endings") {
        std::ofstream out(tmp.str("crlf.csv"), std::ios::binary);
        out << "path,gesture,subject,split,seed\r\n"
            << "train/B/x.wav,B,,train,\r\n";
        out.close();
        const Manifest back = read_manifest_csv(tmp.str("crlf.csv"));
        REQUIRE(back.size() == 1);
        CHECK(back.rows[0].gesture == GestureClass::kBlock);
        CHECK(back.rows[0].subject.empty());
        CHECK(!back.rows[0].seed.has_value());
    }
    SUBCASE("reader rejects malformed rows") {
        std::ofstream(tmp.str("short.csv")) << "path,gesture,subject,split,seed\n"
                                            << "only,two\n";
        CHECK_THROWS_AS(read_manifest_csv(tmp.str("short.csv")), DataError);
        std::ofstream(tmp.str("hdr.csv")) << "a,b,c,d,e\n";
        CHECK_THROWS_AS(read_manifest_csv(tmp.str("hdr.csv")), DataError);
        CHECK_THROWS_AS(read_manifest_csv(tmp.str("absent.csv")), DataError);
    }
}

TEST_CASE("ingest walks split/gesture trees") {
    sonar::testing::TempDir tmp("ingest");
    make_corpus(tmp, 2);  // 12 clips under train/<code>/

    SUBCASE("counts and ordering") {
        const Manifest m = ingest(tmp.str());
        CHECK(m.size() == 12);
        const auto h = m.histogram();
        for (GestureClass g : kAllGestures) CHECK(h.at({kSplitTrain, g}) == 2);
        for (std::size_t i = 1; i < m.size(); ++i)
            CHECK(m.rows[i - 1].path < m.rows[i].path);
        CHECK_NOTHROW(m.validate());
    }
    SUBCASE("non-WAV stray files are skipped") {
        std::ofstream(tmp.str("train/LR/notes.txt")) << "not audio";
        const Manifest m = ingest(tmp.str());
        CHECK(m.size() == 12);
    }
    SUBCASE("unreadable WAV is a data error naming the file") {
        std::ofstream(tmp.str("train/P/junk.wav")) << "RIFFgarbage";
        CHECK_THROWS_WITH_AS(ingest(tmp.str()), doctest::Contains("junk.wav"), DataError);
    }
    SUBCASE("unknown gesture directory rejected") {
        fs::create_directories(tmp.path() / "train" / "ZZ");
        std::ofstream(tmp.str("train/ZZ/x.wav")) << "";
        CHECK_THROWS_AS(ingest(tmp.str()), DataError);
    }
    SUBCASE("unknown split directory rejected") {
        fs::create_directories(tmp.path() / "holdout");
        CHECK_THROWS_AS(ingest(tmp.str()), DataError);
    }
    SUBCASE("missing root rejected") {
        CHECK_THROWS_AS(ingest(tmp.str("nope")), DataError);
    }
}

TEST_CASE("stratified_split relabels a deterministic per-class val subset") {
    sonar::testing::TempDir tmp("strat");
    const Manifest m = make_corpus(tmp, 10);  // 60 train rows
    const Manifest s = stratified_split(m, 0.2, 99);

    REQUIRE(s.size() == 60);
    const auto h = s.histogram();
    for (GestureClass g : kAllGestures) {
        CHECK(h.at({kSplitTrain, g}) == 8);
        CHECK(h.at({kSplitVal, g}) == 2);
    }

    SUBCASE("same seed -> same assignment; different seed -> different") {
        const Manifest s2 = stratified_split(m, 0.2, 99);
        const Manifest s3 = stratified_split(m, 0.2, 100);
        auto val_paths = [](const Manifest& mm) {
            std::set<std::string> out;
            for (const auto& r : mm.rows)
                if (r.split == kSplitVal) out.insert(r.path);
            return out;
        };
        CHECK(val_paths(s) == val_paths(s2));
        CHECK(val_paths(s) != val_paths(s3));
    }
    SUBCASE("zero fraction keeps everything in train") {
        const Manifest s0 = stratified_split(m, 0.0, 99);
        CHECK(s0.rows_for_split(kSplitVal).empty());
        CHECK(s0.rows_for_split(kSplitTrain).size() == 60);
    }
    SUBCASE("non-train rows pass through untouched") {
        Manifest mixed = m;
        mixed.rows.push_back({"test/B/t.wav", GestureClass::kBlock, "", kSplitTest, {}});
        const Manifest sm = stratified_split(mixed, 0.2, 99);
        CHECK(sm.rows_for_split(kSplitTest).size() == 1);
    }
    SUBCASE("invalid fraction rejected") {
        CHECK_THROWS_AS(stratified_split(m, 1.0, 99), std::invalid_argument);
        CHECK_THROWS_AS(stratified_split(m, -0.1, 99), std::invalid_argument);
    }
}

TEST_CASE("assemble packs channels per fusion mode") {
    const SimConfig cfg;
    const StereoWaveform w = synth_gesture(GestureClass::kSwipeUp, cfg, 31);
    const PipelineConfig pcfg{};

    const ModelInput single = assemble(w, FusionMode::kSingle, pcfg);
    const ModelInput early = assemble(w, FusionMode::kEarly, pcfg);
    const ModelInput late = assemble(w, FusionMode::kLate, pcfg);

    CHECK(single.channels.size() == 1);
    CHECK(early.channels.size() == 3);
    CHECK(late.channels.size() == 2);
    for (const auto& img : early.channels) {
        CHECK(img.rows == kImageSize);
        CHECK(img.cols == kImageSize);
    }

    SUBCASE("late channels equal the first two early channels") {
        CHECK(late.channels[0].pixels == early.channels[0].pixels);
        CHECK(late.channels[1].pixels == early.channels[1].pixels);
    }
    SUBCASE("single channel equals the early mixdown channel") {
        CHECK(single.channels[0].pixels == early.channels[2].pixels);
    }
    SUBCASE("swapped-channel gesture pairs: identical mixdown image, swapped per-channel") {
        const StereoWaveform dn = synth_gesture(GestureClass::kSwipeDown, cfg, 31);
        const ModelInput early_dn = assemble(dn, FusionMode::kEarly, pcfg);
        CHECK(early.channels[2].pixels == early_dn.channels[2].pixels);
        CHECK(early.channels[0].pixels == early_dn.channels[1].pixels);
        CHECK(early.channels[1].pixels == early_dn.channels[0].pixels);
    }
    SUBCASE("too-short clip rejected with a duration diagnostic") {
        StereoWaveform brief;
        brief.top.sample_rate_hz = brief.bottom.sample_rate_hz = 44100.0;
        brief.top.samples.assign(44100, 0.1);  // 1 s < 2.7 s window
        brief.bottom.samples = brief.top.samples;
        CHECK_THROWS_WITH_AS(assemble(brief, FusionMode::kSingle, pcfg),
                             doctest::Contains("2.7"), DataError);
    }
}

TEST_CASE("assemble from a WAV path matches in-memory assembly at PCM resolution") {
    sonar::testing::TempDir tmp("asm");
    const SimConfig cfg;
    const StereoWaveform w = synth_gesture(GestureClass::kPush, cfg, 8);
    const std::string path = tmp.str("p.wav");
    wav_write(w, path);
    const StereoWaveform back = wav_read(path);

    const PipelineConfig pcfg{};
    const ModelInput from_disk = assemble(path, FusionMode::kEarly, pcfg);
    const ModelInput from_mem = assemble(back, FusionMode::kEarly, pcfg);
    for (int k = 0; k < 3; ++k)
        CHECK(from_disk.channels[k].pixels == from_mem.channels[k].pixels);
}

TEST_CASE("fusion mode names parse and print") {
    CHECK(fusion_mode_name(FusionMode::kSingle) == "single");
    CHECK(fusion_mode_name(FusionMode::kEarly) == "early");
    CHECK(fusion_mode_name(FusionMode::kLate) == "late");
    for (FusionMode m : {FusionMode::kSingle, FusionMode::kEarly, FusionMode::kLate})
        CHECK(parse_fusion_mode(fusion_mode_name(m)) == m);
    CHECK_THROWS_AS(parse_fusion_mode("hybrid"), std::invalid_argument);
}

TEST_CASE("image cache paths and channel selection") {
    const auto paths = cache_image_paths("/cache", "train/LR/LR_0001.wav");
    CHECK(paths[0] == fs::path("/cache/train/LR/LR_0001.top.f64").string());
    CHECK(paths[1] == fs::path("/cache/train/LR/LR_0001.bottom.f64").string());
    CHECK(paths[2] == fs::path("/cache/train/LR/LR_0001.mix.f64").string());
    CHECK(cache_channel_indices(FusionMode::kSingle) == std::vector<int>{2});
    CHECK(cache_channel_indices(FusionMode::kEarly) == std::vector<int>{0, 1, 2});
    CHECK(cache_channel_indices(FusionMode::kLate) == std::vector<int>{0, 1});
}

TEST_CASE("load_example: cache transparency and label packing") {
    sonar::testing::TempDir corpus("corp");
    const Manifest m = make_corpus(corpus, 1);
    const PipelineConfig pcfg{};
    const ManifestRow& row = m.rows[0];

    const auto direct = load_example<double>(row, corpus.str(), "", FusionMode::kEarly, pcfg);
    CHECK(direct.label == static_cast<int>(row.gesture));
    REQUIRE(direct.inputs.size() == 1);  // early fusion: one 3-plane tensor

    SUBCASE("a populated cache reproduces the exact same tensors") {
        sonar::testing::TempDir cache("cache");
        const ModelInput all =
            assemble((fs::path(corpus.str()) / row.path).string(), FusionMode::kEarly, pcfg);
        const auto paths = cache_image_paths(cache.str(), row.path);
        fs::create_directories(fs::path(paths[0]).parent_path());
        for (int k = 0; k < 3; ++k) write_image_f64(paths[k], all.channels[k]);

        const auto via_cache =
            load_example<double>(row, corpus.str(), cache.str(), FusionMode::kEarly, pcfg);
        REQUIRE(via_cache.inputs.size() == direct.inputs.size());
        CHECK(via_cache.inputs[0].data == direct.inputs[0].data);

        // A partial cache (missing channel file) falls back to the WAV.
        fs::remove(paths[1]);
        const auto partial =
            load_example<double>(row, corpus.str(), cache.str(), FusionMode::kEarly, pcfg);
        CHECK(partial.inputs[0].data == direct.inputs[0].data);
    }
    SUBCASE("late mode yields two single-plane tensors") {
        const auto late = load_example<float>(row, corpus.str(), "", FusionMode::kLate, pcfg);
        REQUIRE(late.inputs.size() == 2);
        CHECK(late.inputs[0].shape == std::vector<int>{1, kImageSize, kImageSize});
    }
}

TEST_CASE("synthesized corpora ingest cleanly end to end") {
    sonar::testing::TempDir tmp("round");
    const Manifest written = make_corpus(tmp, 2, kSplitTrain, 5);
    synth_dataset(1, SimConfig{}, 6, tmp.str(), kSplitTest);

    const Manifest merged = read_manifest_csv(tmp.str("manifest.csv"));
    CHECK(merged.size() == 18);  // 12 train + 6 test, merged manifest
    const Manifest scanned = ingest(tmp.str());
    REQUIRE(scanned.size() == merged.size());
    for (std::size_t i = 0; i < merged.size(); ++i) {
        CHECK(scanned.rows[i].path == merged.rows[i].path);
        CHECK(scanned.rows[i].gesture == merged.rows[i].gesture);
        CHECK(scanned.rows[i].split == merged.rows[i].split);
    }
    CHECK(written.size() == 12);
}
