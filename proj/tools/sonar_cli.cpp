// sonar: end-to-end ultrasonic gesture pipeline driver.
//
// Subcommands: gen-tone, simulate, preprocess, augment, train, eval, report.
// Exit codes: 0 success, 2 usage error, 3 data error, 4 numeric failure.
//
// One global --seed per subcommand fans out to per-stage streams via
// derive_seed(seed, stream_tag(stage), counter), so a single flag pins every
// random draw. Verbosity comes from the SONAR_LOG env var; SONAR_LOG_FILE
// adds a timestamped file sink (timestamps never land in data artifacts).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "sonar/audio.hpp"
#include "sonar/augment.hpp"
#include "sonar/dataset_cache.hpp"
#include "sonar/dataset_io.hpp"
#include "sonar/errors.hpp"
#include "sonar/image.hpp"
#include "sonar/log.hpp"
#include "sonar/manifest.hpp"
#include "sonar/models.hpp"
#include "sonar/nn/train.hpp"
#include "sonar/pipeline.hpp"
#include "sonar/sim.hpp"
#include "sonar/wav_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace sonar;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNumeric = 4;

// ---- shared flag blocks ----------------------------------------------------

struct PipelineFlags {
    int n_fft = StftConfig{}.n_fft;
    int hop = StftConfig{}.hop;
    std::string window = "hann";
    double f_lo = CropConfig{}.f_lo_hz;
    double f_hi = CropConfig{}.f_hi_hz;
    double t_lo = CropConfig{}.t_lo_s;
    double t_hi = CropConfig{}.t_hi_s;

    PipelineConfig to_config() const {
        PipelineConfig cfg;
        cfg.stft.n_fft = n_fft;
        cfg.stft.hop = hop;
        cfg.stft.window = parse_window(window);
        cfg.crop = {f_lo, f_hi, t_lo, t_hi};
        return cfg;
    }
};

void add_pipeline_flags(CLI::App* cmd, PipelineFlags& pf) {
    cmd->add_option("--n-fft", pf.n_fft, "STFT size (power of two)")
        ->capture_default_str();
    cmd->add_option("--hop", pf.hop, "STFT hop in samples")->capture_default_str();
    cmd->add_option("--window", pf.window, "Analysis window (hann|rect)")
        ->capture_default_str();
    cmd->add_option("--f-lo", pf.f_lo, "Crop band lower edge, Hz")->capture_default_str();
    cmd->add_option("--f-hi", pf.f_hi, "Crop band upper edge, Hz")->capture_default_str();
    cmd->add_option("--t-lo", pf.t_lo, "Crop window start, s")->capture_default_str();
    cmd->add_option("--t-hi", pf.t_hi, "Crop window end, s")->capture_default_str();
}

struct SimFlags {
    double duration = SimConfig{}.duration_s;
    double active_start = SimConfig{}.active_start_s;
    double active_end = SimConfig{}.active_end_s;
    double echo_ratio = SimConfig{}.echo_ratio;
    double noise_frac = SimConfig{}.noise_fraction;

    SimConfig to_config() const {
        SimConfig cfg;
        cfg.duration_s = duration;
        cfg.active_start_s = active_start;
        cfg.active_end_s = active_end;
        cfg.echo_ratio = echo_ratio;
        cfg.noise_fraction = noise_frac;
        return cfg;
    }
};

void add_sim_flags(CLI::App* cmd, SimFlags& sf) {
    cmd->add_option("--duration", sf.duration, "Clip length, s")->capture_default_str();
    cmd->add_option("--active-start", sf.active_start, "Gesture window start, s")
        ->capture_default_str();
    cmd->add_option("--active-end", sf.active_end, "Gesture window end, s")
        ->capture_default_str();
    cmd->add_option("--echo-ratio", sf.echo_ratio, "Echo-to-direct amplitude ratio")
        ->capture_default_str();
    cmd->add_option("--noise-frac", sf.noise_frac, "Additive noise amplitude fraction")
        ->capture_default_str();
}

Manifest corpus_manifest(const std::string& corpus) {
    const fs::path csv = fs::path(corpus) / "manifest.csv";
    if (fs::exists(csv)) return read_manifest_csv(csv.string());
    log::info("no manifest.csv under '" + corpus + "'; ingesting directory tree");
    return ingest(corpus);
}

// ---- subcommand payloads ---------------------------------------------------

struct GenToneArgs {
    std::string out;
    double freq = CwConfig{}.frequency_hz;
    double sr = CwConfig{}.sample_rate_hz;
    double dur = CwConfig{}.duration_s;
    double amp = CwConfig{}.amplitude;
};

int run_gen_tone(const GenToneArgs& a) {
    CwConfig cfg;
    cfg.frequency_hz = a.freq;
    cfg.sample_rate_hz = a.sr;
    cfg.duration_s = a.dur;
    cfg.amplitude = a.amp;
    const Waveform tone = generate_cw(cfg);
    wav_write({tone, tone}, a.out);
    log::info("wrote " + std::to_string(tone.duration_s()) + " s CW tone at " +
              std::to_string(cfg.frequency_hz) + " Hz to '" + a.out + "'");
    return kExitOk;
}

struct SimulateArgs {
    std::string out;
    int per_class = 100;
    int test_per_class = 0;
    std::uint64_t seed = 0;
    SimFlags sim;
};

int run_simulate(const SimulateArgs& a) {
    const SimConfig cfg = a.sim.to_config();
    Manifest m = synth_dataset(a.per_class, cfg,
                               derive_seed(a.seed, stream_tag("cli.simulate"), 0), a.out,
                               kSplitTrain);
    if (a.test_per_class > 0) {
        const Manifest t = synth_dataset(a.test_per_class, cfg,
                                         derive_seed(a.seed, stream_tag("cli.simulate"), 1),
                                         a.out, kSplitTest);
        m.rows.insert(m.rows.end(), t.rows.begin(), t.rows.end());
    }
    std::cout << "simulated " << m.size() << " clips under " << a.out << "\n";
    return kExitOk;
}

struct PreprocessArgs {
    std::string corpus;
    std::string out;
    PipelineFlags pipeline;
};

int run_preprocess(const PreprocessArgs& a) {
    const Manifest m = corpus_manifest(a.corpus);
    if (m.rows.empty()) throw DataError("preprocess: manifest of '" + a.corpus + "' is empty");
    const PipelineConfig cfg = a.pipeline.to_config();
    std::size_t done = 0;
    for (const auto& row : m.rows) {
        const ModelInput input =
            assemble((fs::path(a.corpus) / row.path).string(), FusionMode::kEarly, cfg);
        const auto paths = cache_image_paths(a.out, row.path);
        for (int c = 0; c < 3; ++c) {
            fs::create_directories(fs::path(paths[c]).parent_path());
            write_image_f64(paths[c], input.channels[c]);
            fs::path pgm(paths[c]);
            pgm.replace_extension(".pgm");
            write_pgm(pgm.string(), input.channels[c]);
        }
        if (++done % 100 == 0)
            log::info("preprocess: " + std::to_string(done) + "/" +
                      std::to_string(m.size()) + " clips");
    }
    std::cout << "preprocessed " << done << " clips -> " << a.out << "\n";
    return kExitOk;
}

struct AugmentArgs {
    std::string images;
    int gaussian_copies = 1;
    int shift_copies = 0;
    double variance = GaussianNoiseParams{}.variance;
    double max_shift_frac = 0.1;
    std::uint64_t seed = 0;
};

int run_augment(const AugmentArgs& a) {
    if (!fs::is_directory(a.images))
        throw DataError("augment: '" + a.images + "' is not a directory");
    std::vector<fs::path> files;
    for (const auto& e : fs::recursive_directory_iterator(a.images)) {
        if (!e.is_regular_file()) continue;
        const std::string name = e.path().filename().string();
        if (e.path().extension() == ".f64" && name.find(".gauss") == std::string::npos &&
            name.find(".shift") == std::string::npos)
            files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    std::uint64_t counter = 0;
    std::size_t written = 0;
    for (const auto& f : files) {
        const SpectrogramImage img = read_image_f64(f.string());
        auto emit = [&](const SpectrogramImage& aug, const std::string& tag) {
            fs::path base = f;
            base.replace_extension();  // strip .f64
            write_image_f64(base.string() + "." + tag + ".f64", aug);
            write_pgm(base.string() + "." + tag + ".pgm", aug);
            ++written;
        };
        for (int k = 0; k < a.gaussian_copies; ++k) {
            GaussianNoiseParams p;
            p.variance = a.variance;
            p.seed = derive_seed(a.seed, stream_tag("cli.augment"), counter++);
            emit(add_gaussian_noise(img, p), "gauss" + std::to_string(k));
        }
        for (int k = 0; k < a.shift_copies; ++k) {
            const std::uint64_t s = derive_seed(a.seed, stream_tag("cli.augment"), counter++);
            emit(width_shift(img, a.max_shift_frac, s), "shift" + std::to_string(k));
        }
    }
    std::cout << "augmented " << files.size() << " images, wrote " << written
              << " copies\n";
    return kExitOk;
}

struct TrainArgs {
    std::string corpus;
    std::string mode = "single";
    std::string out = "model.ckpt";
    std::string history;
    std::string images;
    double lr = nn::TrainConfig{}.learning_rate;
    int epochs = nn::TrainConfig{}.epochs;
    int batch = nn::TrainConfig{}.batch_size;
    double val_frac = 0.2;
    int augment_copies = nn::TrainConfig{}.gaussian_copies;
    double variance = nn::TrainConfig{}.gaussian_variance;
    std::uint64_t seed = 0;
};

int run_train(const TrainArgs& a) {
    const FusionMode mode = parse_fusion_mode(a.mode);
    const PipelineConfig pcfg{};

    Manifest m = corpus_manifest(a.corpus);
    m = stratified_split(m, a.val_frac, derive_seed(a.seed, stream_tag("cli.valsplit"), 0));
    const auto train_rows = m.rows_for_split(kSplitTrain);
    const auto val_rows = m.rows_for_split(kSplitVal);
    if (train_rows.empty())
        throw DataError("train: no train rows in manifest of '" + a.corpus + "'");
    log::info("train: " + std::to_string(train_rows.size()) + " train / " +
              std::to_string(val_rows.size()) + " val clips, mode " + a.mode);

    const auto train_set = load_examples<float>(train_rows, a.corpus, a.images, mode, pcfg);
    const auto val_set = load_examples<float>(val_rows, a.corpus, a.images, mode, pcfg);

    FusionModel<float> model =
        build_model<float>(mode, derive_seed(a.seed, stream_tag("cli.model"), 0));
    log::info("train: " + std::to_string(model.param_count()) + " parameters");

    nn::TrainConfig tcfg;
    tcfg.learning_rate = a.lr;
    tcfg.epochs = a.epochs;
    tcfg.batch_size = a.batch;
    tcfg.seed = a.seed;
    tcfg.gaussian_copies = a.augment_copies;
    tcfg.gaussian_variance = a.variance;

    const nn::TrainHistory history = nn::train(model, train_set, val_set, tcfg);
    save_checkpoint(a.out, model);
    const std::string hist_path = a.history.empty() ? a.out + ".history.csv" : a.history;
    nn::write_history_csv(hist_path, history);

    const auto& last = history.epochs.back();
    std::cout << "trained " << a.mode << " model: final train_acc=" << last.train_acc;
    if (last.val_acc) std::cout << " val_acc=" << *last.val_acc;
    std::cout << "\ncheckpoint: " << a.out << "\nhistory: " << hist_path << "\n";
    return kExitOk;
}

struct EvalArgs {
    std::string corpus;
    std::string checkpoint;
    std::string out;
    std::string split = kSplitTest;
    std::string images;
};

int run_eval(const EvalArgs& a) {
    if (!is_valid_split(a.split))
        throw CLI::ValidationError("--split", "unknown split '" + a.split + "'");
    const FusionModel<float> model = load_checkpoint<float>(a.checkpoint);
    const PipelineConfig pcfg{};

    const Manifest m = corpus_manifest(a.corpus);
    const auto rows = m.rows_for_split(a.split);
    if (rows.empty())
        throw DataError("eval: no '" + a.split + "' rows in manifest of '" + a.corpus + "'");
    const auto ds = load_examples<float>(rows, a.corpus, a.images, model.mode(), pcfg);
    const nn::EvalResult r = nn::evaluate(model, ds);

    json j;
    j["mode"] = fusion_mode_name(model.mode());
    j["split"] = a.split;
    j["examples"] = ds.size();
    j["accuracy"] = r.accuracy;
    j["mean_loss"] = r.mean_loss;
    json order = json::array();
    for (GestureClass g : kAllGestures) order.push_back(gesture_code(g));
    j["class_order"] = order;
    json conf = json::array();
    for (GestureClass t : kAllGestures) {
        json row = json::array();
        for (GestureClass p : kAllGestures) row.push_back(r.confusion.at(t, p));
        conf.push_back(row);
    }
    j["confusion"] = conf;
    const auto prec = r.confusion.precision();
    const auto rec = r.confusion.recall();
    json per_class;
    for (int i = 0; i < kNumGestures; ++i) {
        per_class[gesture_code(kAllGestures[i])] = {
            {"precision", prec[static_cast<int>(kAllGestures[i])]},
            {"recall", rec[static_cast<int>(kAllGestures[i])]}};
    }
    j["per_class"] = per_class;

    if (!a.out.empty()) {
        std::ofstream f(a.out, std::ios::binary);
        if (!f) throw DataError("eval: cannot open '" + a.out + "' for writing");
        f << j.dump(2) << "\n";
    }
    std::cout << "mode " << fusion_mode_name(model.mode()) << ", split " << a.split
              << ": accuracy " << r.accuracy * 100.0 << "% over " << ds.size()
              << " clips\n"
              << r.confusion.to_string();
    return kExitOk;
}

struct ReportArgs {
    std::vector<std::string> inputs;
    std::string out;
};

int run_report(const ReportArgs& a) {
    // Consumes eval JSON only; never recomputes metrics.
    std::string table = "model     split     accuracy (%)\n";
    for (const auto& path : a.inputs) {
        std::ifstream f(path, std::ios::binary);
        if (!f) throw DataError("report: cannot open '" + path + "'");
        json j;
        try {
            f >> j;
        } catch (const json::exception& e) {
            throw DataError("report: '" + path + "' is not valid JSON: " + e.what());
        }
        if (!j.contains("mode") || !j.contains("accuracy") || !j.contains("split"))
            throw DataError("report: '" + path + "' lacks mode/split/accuracy fields");
        char line[128];
        std::snprintf(line, sizeof(line), "%-9s %-9s %7.2f\n",
                      j["mode"].get<std::string>().c_str(),
                      j["split"].get<std::string>().c_str(),
                      j["accuracy"].get<double>() * 100.0);
        table += line;
    }
    if (!a.out.empty()) {
        std::ofstream f(a.out, std::ios::binary);
        if (!f) throw DataError("report: cannot open '" + a.out + "' for writing");
        f << table;
    }
    std::cout << table;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* log_file = std::getenv("SONAR_LOG_FILE"); log_file && *log_file)
        log::set_file_sink(log_file);

    CLI::App app{"sonar: ultrasonic Doppler gesture-recognition pipeline"};
    app.require_subcommand(1);

    GenToneArgs gt;
    auto* c_gt = app.add_subcommand("gen-tone", "Write a continuous-wave probe tone WAV");
    c_gt->add_option("--out", gt.out, "Output WAV path")->required();
    c_gt->add_option("--freq", gt.freq, "Tone frequency, Hz")->capture_default_str();
    c_gt->add_option("--sr", gt.sr, "Sample rate, Hz")->capture_default_str();
    c_gt->add_option("--dur", gt.dur, "Duration, s")->capture_default_str();
    c_gt->add_option("--amp", gt.amp, "Amplitude in (0, 1]")->capture_default_str();

    SimulateArgs sim;
    auto* c_sim = app.add_subcommand("simulate", "Synthesize a gesture corpus + manifest");
    c_sim->add_option("--out", sim.out, "Corpus output directory")->required();
    c_sim->add_option("--per-class", sim.per_class, "Train clips per gesture class")
        ->capture_default_str();
    c_sim->add_option("--test-per-class", sim.test_per_class,
                      "Test clips per gesture class (0 = none)")
        ->capture_default_str();
    c_sim->add_option("--seed", sim.seed, "Master seed")->capture_default_str();
    add_sim_flags(c_sim, sim.sim);

    PreprocessArgs pre;
    auto* c_pre = app.add_subcommand(
        "preprocess", "Render per-channel spectrogram images (PGM + f64 cache)");
    c_pre->add_option("--corpus", pre.corpus, "Corpus directory")->required();
    c_pre->add_option("--out", pre.out, "Image/cache output directory")->required();
    add_pipeline_flags(c_pre, pre.pipeline);

    AugmentArgs aug;
    auto* c_aug = app.add_subcommand("augment", "Write augmented copies of cached images");
    c_aug->add_option("--images", aug.images, "Preprocessed image directory")->required();
    c_aug->add_option("--gaussian-copies", aug.gaussian_copies,
                      "Gaussian-noise copies per image")
        ->capture_default_str();
    c_aug->add_option("--shift-copies", aug.shift_copies, "Width-shift copies per image")
        ->capture_default_str();
    c_aug->add_option("--variance", aug.variance, "Gaussian noise variance")
        ->capture_default_str();
    c_aug->add_option("--max-shift-frac", aug.max_shift_frac,
                      "Width shift bound as a fraction of width")
        ->capture_default_str();
    c_aug->add_option("--seed", aug.seed, "Master seed")->capture_default_str();

    TrainArgs tr;
    auto* c_tr = app.add_subcommand("train", "Train a fusion model on a corpus");
    c_tr->add_option("--corpus", tr.corpus, "Corpus directory")->required();
    c_tr->add_option("--mode", tr.mode, "Fusion mode (single|early|late)")
        ->capture_default_str();
    c_tr->add_option("--out", tr.out, "Checkpoint output path")->capture_default_str();
    c_tr->add_option("--history", tr.history, "History CSV path (default <out>.history.csv)");
    c_tr->add_option("--images", tr.images, "Optional preprocess cache directory");
    c_tr->add_option("--lr", tr.lr, "SGD learning rate")->capture_default_str();
    c_tr->add_option("--epochs", tr.epochs, "Training epochs")->capture_default_str();
    c_tr->add_option("--batch", tr.batch, "Mini-batch size")->capture_default_str();
    c_tr->add_option("--val-frac", tr.val_frac, "Validation fraction of train split")
        ->capture_default_str();
    c_tr->add_option("--augment-copies", tr.augment_copies,
                     "Gaussian-noise copies per training image")
        ->capture_default_str();
    c_tr->add_option("--variance", tr.variance, "Training augmentation variance")
        ->capture_default_str();
    c_tr->add_option("--seed", tr.seed, "Master seed")->capture_default_str();

    EvalArgs ev;
    auto* c_ev = app.add_subcommand("eval", "Evaluate a checkpoint; write metrics JSON");
    c_ev->add_option("--corpus", ev.corpus, "Corpus directory")->required();
    c_ev->add_option("--checkpoint", ev.checkpoint, "Model checkpoint path")->required();
    c_ev->add_option("--out", ev.out, "Metrics JSON output path");
    c_ev->add_option("--split", ev.split, "Manifest split to evaluate")
        ->capture_default_str();
    c_ev->add_option("--images", ev.images, "Optional preprocess cache directory");

    ReportArgs rep;
    auto* c_rep = app.add_subcommand("report", "Tabulate accuracy across eval JSON files");
    c_rep->add_option("--in", rep.inputs, "Eval JSON files")->required()->expected(-1);
    c_rep->add_option("--out", rep.out, "Report text output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (c_gt->parsed()) return run_gen_tone(gt);
        if (c_sim->parsed()) return run_simulate(sim);
        if (c_pre->parsed()) return run_preprocess(pre);
        if (c_aug->parsed()) return run_augment(aug);
        if (c_tr->parsed()) return run_train(tr);
        if (c_ev->parsed()) return run_eval(ev);
        if (c_rep->parsed()) return run_report(rep);
    } catch (const NumericError& e) {
        log::error(e.what());
        return kExitNumeric;
    } catch (const CLI::ValidationError& e) {
        log::error(e.what());
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        log::error(e.what());
        return kExitUsage;
    } catch (const std::exception& e) {  // DataError, WavError, filesystem, ...
        log::error(e.what());
        return kExitData;
    }
    return kExitUsage;
}
