// gazekit command-line front end. Links only the public C API.

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gazekit.h"

namespace {

// Thrown for failures discovered while doing the work (bad files,
// infeasible data, algorithm errors): exit code 1.
struct ModuleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown for configuration problems detected before any work: exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void ck(gk_status status) {
    if (status != GK_OK) throw ModuleError(gk_last_error());
}

// CLI11 validates environment-supplied values but silently discards ones
// that fail, falling back to the option's default. A set GSL_* variable
// must either apply or stop the run, so after parsing treat "variable set,
// option still empty" as the configuration error it is.
void enforce_env_validation(CLI::App* cmd) {
    for (const CLI::Option* opt : cmd->get_options()) {
        if (opt->get_envname().empty() || opt->count() > 0) continue;
        const char* value = std::getenv(opt->get_envname().c_str());
        if (value != nullptr && value[0] != '\0')
            throw ConfigError("invalid value '" + std::string(value) + "' for " +
                              opt->get_name() + " (environment " + opt->get_envname() + ")");
    }
    for (CLI::App* sub : cmd->get_subcommands())
        if (sub->parsed()) enforce_env_validation(sub);
}

template <typename T>
class Owned {
  public:
    explicit Owned(void (*deleter)(T*)) : deleter_(deleter) {}
    ~Owned() { reset(); }
    Owned(const Owned&) = delete;
    Owned& operator=(const Owned&) = delete;
    T** out() {
        reset();
        return &ptr_;
    }
    T* get() const { return ptr_; }
    operator T*() const { return ptr_; }

  private:
    void reset() {
        if (ptr_) deleter_(ptr_);
        ptr_ = nullptr;
    }
    T* ptr_ = nullptr;
    void (*deleter_)(T*);
};

struct OwnedStr {
    char* s = nullptr;
    ~OwnedStr() { gk_string_free(s); }
    char** out() { return &s; }
};

std::string fmt(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, end);
}

void write_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ModuleError("cannot open " + path + " for writing");
    out << text;
    out.flush();
    if (!out) throw ModuleError("write failed for " + path);
}

std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

int parse_group_token(const std::string& token) {
    int value = 0;
    ck(gk_parse_group(token.c_str(), &value));
    return value;
}

int parse_scenario_token(const std::string& token) {
    int value = 0;
    ck(gk_parse_scenario(token.c_str(), &value));
    return value;
}

// ------------------------------------------------------------------
// simulate

struct SimulateOpts {
    std::string scenario = "info_retrieval";
    std::string group = "control";
    std::string aoi;
    std::string out;
    std::uint64_t seed = 42;
    double duration = 0, sample_rate = 0, attend_prob = 0, mean_fixation_s = 0;
    double fixation_cv = 0, jitter_px = 0, blink_rate = 0, drift_rate = 0;
    double scene_width = 1920, scene_height = 1080;
    CLI::App* cmd = nullptr;
};

int run_simulate(const SimulateOpts& o) {
    gk_profile profile;
    ck(gk_default_profile(parse_scenario_token(o.scenario), parse_group_token(o.group), &profile));
    auto given = [&](const char* flag) { return o.cmd->count(flag) > 0; };
    if (given("--duration")) profile.duration = o.duration;
    if (given("--sample-rate")) profile.sample_rate = o.sample_rate;
    if (given("--attend-prob")) profile.attend_target_prob = o.attend_prob;
    if (given("--mean-fixation-s")) profile.mean_fixation_duration = o.mean_fixation_s;
    if (given("--fixation-cv")) profile.fixation_duration_cv = o.fixation_cv;
    if (given("--jitter-px")) profile.jitter_sd = o.jitter_px;
    if (given("--blink-rate")) profile.blink_rate = o.blink_rate;
    if (given("--drift-rate")) profile.drift_rate = o.drift_rate;

    Owned<gk_aoi_set> aois(gk_aoi_set_free);
    ck(gk_aoi_set_read(o.aoi.c_str(), aois.out()));
    Owned<gk_recording> rec(gk_recording_free);
    ck(gk_generate_recording(&profile, aois, o.seed, o.scene_width, o.scene_height, rec.out()));
    ck(gk_recording_write_csv(rec, o.out.c_str()));
    std::fprintf(stderr, "wrote %s (%zu samples)\n", o.out.c_str(),
                 gk_recording_sample_count(rec));
    return 0;
}

// ------------------------------------------------------------------
// preprocess

struct PreprocessOpts {
    std::string in;
    std::string out;
    std::string calibration;
    int median_window = 3;
    double max_gap_ms = 75.0;
};

int run_preprocess(const PreprocessOpts& o) {
    Owned<gk_recording> rec(gk_recording_free);
    ck(gk_recording_read_csv(o.in.c_str(), rec.out()));
    Owned<gk_recording> filtered(gk_recording_free);
    ck(gk_median_filter(rec, o.median_window, filtered.out()));
    Owned<gk_recording> interpolated(gk_recording_free);
    ck(gk_interpolate_gaps(filtered, o.max_gap_ms / 1000.0, interpolated.out()));
    const gk_recording* result = interpolated;
    Owned<gk_recording> corrected(gk_recording_free);
    if (!o.calibration.empty()) {
        gk_calibration_window* windows = nullptr;
        size_t count = 0;
        ck(gk_read_calibration(o.calibration.c_str(), &windows, &count));
        gk_status status = gk_drift_correct(interpolated, windows, count, corrected.out());
        gk_calibration_free(windows);
        ck(status);
        result = corrected;
    }
    ck(gk_recording_write_csv(result, o.out.c_str()));
    std::fprintf(stderr, "wrote %s\n", o.out.c_str());
    return 0;
}

// ------------------------------------------------------------------
// events

struct EventsOpts {
    std::string in;
    std::string out = "-";
    double dispersion_px = 35.0;
    double min_fixation_ms = 60.0;
    double saccade_velocity = 1500.0;
};

int run_events(const EventsOpts& o) {
    Owned<gk_recording> rec(gk_recording_free);
    ck(gk_recording_read_csv(o.in.c_str(), rec.out()));
    gk_event_config config{o.dispersion_px, o.min_fixation_ms / 1000.0, o.saccade_velocity};
    Owned<gk_event_list> events(gk_event_list_free);
    ck(gk_detect_events(rec, &config, events.out()));
    OwnedStr csv;
    ck(gk_event_list_to_csv(events, csv.out()));
    write_text(o.out, csv.s);
    std::fprintf(stderr, "detected %zu fixations, %zu saccades\n",
                 gk_event_list_fixation_count(events), gk_event_list_saccade_count(events));
    return 0;
}

// ------------------------------------------------------------------
// label

struct LabelOpts {
    std::string in;
    std::string aoi;
    std::string out;
};

int run_label(const LabelOpts& o) {
    Owned<gk_recording> rec(gk_recording_free);
    ck(gk_recording_read_csv(o.in.c_str(), rec.out()));
    Owned<gk_aoi_set> aois(gk_aoi_set_free);
    ck(gk_aoi_set_read(o.aoi.c_str(), aois.out()));
    Owned<gk_labeled_set> labeled(gk_labeled_set_free);
    ck(gk_label_recording(aois, rec, labeled.out()));
    ck(gk_labeled_set_write(labeled, o.out.c_str()));
    std::fprintf(stderr, "wrote %s (%zu points)\n", o.out.c_str(),
                 gk_labeled_set_count(labeled));
    return 0;
}

// ------------------------------------------------------------------
// dwell

struct DwellOpts {
    std::string in;
    std::string aoi;
    std::string out = "-";
};

int run_dwell(const DwellOpts& o) {
    Owned<gk_recording> rec(gk_recording_free);
    ck(gk_recording_read_csv(o.in.c_str(), rec.out()));
    Owned<gk_aoi_set> aois(gk_aoi_set_free);
    ck(gk_aoi_set_read(o.aoi.c_str(), aois.out()));
    Owned<gk_dwell_report> report(gk_dwell_report_free);
    ck(gk_dwell_times(aois, rec, report.out()));
    OwnedStr csv;
    ck(gk_dwell_report_to_csv(report, csv.out()));
    write_text(o.out, csv.s);
    return 0;
}

// ------------------------------------------------------------------
// train

struct TrainOpts {
    std::vector<std::string> ins;
    std::vector<std::string> data;
    std::string aoi;
    std::string calibration;
    int median_window = 3;
    double max_gap_ms = 75.0;
    bool with_time = false;
    std::vector<double> c_grid;
    std::vector<double> gamma_grid;
    double holdout = 0.2;
    std::uint64_t seed = 42;
    double tol = 1e-3;
    int max_passes = 10;
    bool normalize = false;
    int jobs = 1;
    std::string model_out;
    std::string grid_out;
};

void build_dataset_from_recordings(gk_dataset* dataset, const std::vector<std::string>& paths,
                                   const gk_aoi_set* aois, int median_window, double max_gap_ms,
                                   const std::string& calibration, bool with_time) {
    gk_calibration_window* windows = nullptr;
    size_t window_count = 0;
    if (!calibration.empty())
        ck(gk_read_calibration(calibration.c_str(), &windows, &window_count));
    struct Guard {
        gk_calibration_window* w;
        ~Guard() { gk_calibration_free(w); }
    } guard{windows};

    for (const std::string& path : paths) {
        Owned<gk_recording> rec(gk_recording_free);
        ck(gk_recording_read_csv(path.c_str(), rec.out()));
        Owned<gk_recording> filtered(gk_recording_free);
        ck(gk_median_filter(rec, median_window, filtered.out()));
        Owned<gk_recording> interpolated(gk_recording_free);
        ck(gk_interpolate_gaps(filtered, max_gap_ms / 1000.0, interpolated.out()));
        const gk_recording* ready = interpolated;
        Owned<gk_recording> corrected(gk_recording_free);
        if (windows) {
            ck(gk_drift_correct(interpolated, windows, window_count, corrected.out()));
            ready = corrected;
        }
        ck(gk_dataset_add_recording(dataset, ready, aois, with_time ? 1 : 0));
    }
}

int run_train(const TrainOpts& o) {
    Owned<gk_dataset> dataset(gk_dataset_free);
    ck(gk_dataset_create(dataset.out()));
    if (!o.data.empty()) {
        for (const std::string& path : o.data) {
            Owned<gk_labeled_set> set(gk_labeled_set_free);
            ck(gk_labeled_set_read(path.c_str(), set.out()));
            ck(gk_dataset_add_labeled(dataset, set));
        }
    } else {
        Owned<gk_aoi_set> aois(gk_aoi_set_free);
        ck(gk_aoi_set_read(o.aoi.c_str(), aois.out()));
        build_dataset_from_recordings(dataset, o.ins, aois, o.median_window, o.max_gap_ms,
                                      o.calibration, o.with_time);
    }

    gk_train_options options = gk_default_train_options();
    options.tol = o.tol;
    options.max_passes = o.max_passes;
    options.normalize = o.normalize ? 1 : 0;

    Owned<gk_grid_result> grid(gk_grid_result_free);
    ck(gk_grid_search(dataset, o.c_grid.data(), o.c_grid.size(), o.gamma_grid.data(),
                      o.gamma_grid.size(), o.holdout, o.seed, &options, o.jobs, grid.out()));
    if (!o.grid_out.empty()) {
        OwnedStr csv;
        ck(gk_grid_result_to_csv(grid, csv.out()));
        write_text(o.grid_out, csv.s);
    }
    double best_c = 0, best_gamma = 0, best_accuracy = 0;
    ck(gk_grid_result_best(grid, &best_c, &best_gamma, &best_accuracy));
    std::fprintf(stderr, "grid search best: c=%s gamma=%s holdout_accuracy=%s\n",
                 fmt(best_c).c_str(), fmt(best_gamma).c_str(), fmt(best_accuracy).c_str());

    Owned<gk_svm_model> model(gk_svm_model_free);
    ck(gk_svm_train(dataset, best_gamma, best_c, &options, model.out()));
    ck(gk_svm_save(model, o.model_out.c_str()));
    std::fprintf(stderr, "model saved: %s (%zu training points)\n", o.model_out.c_str(),
                 gk_dataset_count(dataset));
    return 0;
}

// ------------------------------------------------------------------
// predict

struct PredictOpts {
    std::string model;
    std::string input;
    std::string aoi;
    std::string out = "-";
    bool metrics = false;
};

enum class InputKind { Gaze, Labeled };

InputKind sniff_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ModuleError("cannot open " + path + " for reading");
    std::string header;
    std::getline(in, header);
    if (!header.empty() && header.back() == '\r') header.pop_back();
    if (header.rfind("participant_id,", 0) == 0) return InputKind::Gaze;
    if (header == "x,y,label") return InputKind::Labeled;
    throw ModuleError(path + ": unrecognized header; expected a gaze recording CSV or a "
                      "labeled-point CSV (x,y,label)");
}

int run_predict(const PredictOpts& o) {
    Owned<gk_svm_model> model(gk_svm_model_free);
    ck(gk_svm_load(o.model.c_str(), model.out()));
    const size_t dim = gk_svm_model_dim(model);

    const InputKind kind = sniff_input(o.input);
    std::vector<std::array<double, 3>> features;  // x, y, t (t unused for dim 2)
    Owned<gk_labeled_set> labeled(gk_labeled_set_free);
    Owned<gk_recording> rec(gk_recording_free);
    if (kind == InputKind::Gaze) {
        ck(gk_recording_read_csv(o.input.c_str(), rec.out()));
        const size_t n = gk_recording_sample_count(rec);
        for (size_t i = 0; i < n; ++i) {
            gk_sample s;
            ck(gk_recording_sample(rec, i, &s));
            if (s.validity == GK_VALID) features.push_back({s.x, s.y, s.t});
        }
    } else {
        if (dim == 3)
            throw ModuleError("model expects 3 features (x, y, t); provide a gaze recording "
                              "as input");
        ck(gk_labeled_set_read(o.input.c_str(), labeled.out()));
        const size_t n = gk_labeled_set_count(labeled);
        for (size_t i = 0; i < n; ++i) {
            gk_labeled_point p;
            ck(gk_labeled_set_get(labeled, i, &p));
            features.push_back({p.x, p.y, 0.0});
        }
    }

    std::string csv = "x,y,label\n";
    for (const auto& f : features) {
        int label = 0;
        ck(gk_svm_predict(model, f.data(), dim, &label));
        csv += fmt(f[0]);
        csv += ',';
        csv += fmt(f[1]);
        csv += ',';
        csv += std::to_string(label);
        csv += '\n';
    }
    write_text(o.out, csv);

    if (o.metrics) {
        Owned<gk_dataset> dataset(gk_dataset_free);
        ck(gk_dataset_create(dataset.out()));
        if (kind == InputKind::Labeled) {
            ck(gk_dataset_add_labeled(dataset, labeled));
        } else {
            if (o.aoi.empty())
                throw ModuleError("--metrics on a gaze recording needs --aoi for reference "
                                  "labels");
            Owned<gk_aoi_set> aois(gk_aoi_set_free);
            ck(gk_aoi_set_read(o.aoi.c_str(), aois.out()));
            ck(gk_dataset_add_recording(dataset, rec, aois, dim == 3 ? 1 : 0));
        }
        gk_metrics m;
        ck(gk_svm_evaluate(model, dataset, &m));
        std::fprintf(stderr, "accuracy=%s precision=%s recall=%s f1=%s\n",
                     fmt(m.accuracy).c_str(), fmt(m.precision).c_str(), fmt(m.recall).c_str(),
                     fmt(m.f1).c_str());
    }
    return 0;
}

// ------------------------------------------------------------------
// seev

struct SeevOpts {
    std::string params;
    std::string in;
    std::string aoi;
    std::string out = "-";
};

int run_seev(const SeevOpts& o) {
    Owned<gk_seev_params> params(gk_seev_params_free);
    ck(gk_seev_params_read(o.params.c_str(), params.out()));
    Owned<gk_seev_prediction> prediction(gk_seev_prediction_free);
    ck(gk_seev_scores(params, prediction.out()));
    Owned<gk_recording> rec(gk_recording_free);
    ck(gk_recording_read_csv(o.in.c_str(), rec.out()));
    Owned<gk_aoi_set> aois(gk_aoi_set_free);
    ck(gk_aoi_set_read(o.aoi.c_str(), aois.out()));
    Owned<gk_dwell_report> report(gk_dwell_report_free);
    ck(gk_dwell_times(aois, rec, report.out()));
    Owned<gk_seev_comparison> comparison(gk_seev_comparison_free);
    ck(gk_seev_compare(prediction, report, comparison.out()));
    OwnedStr csv;
    ck(gk_seev_comparison_to_csv(comparison, csv.out()));
    write_text(o.out, csv.s);
    double r = 0.0;
    if (gk_seev_comparison_pearson(comparison, &r))
        std::fprintf(stderr, "total_variation=%s pearson_r=%s\n",
                     fmt(gk_seev_comparison_total_variation(comparison)).c_str(), fmt(r).c_str());
    else
        std::fprintf(stderr, "total_variation=%s pearson_r=undefined\n",
                     fmt(gk_seev_comparison_total_variation(comparison)).c_str());
    return 0;
}

// ------------------------------------------------------------------
// stats

struct StatsOpts {
    std::string dir;
    std::string metric;
    std::string group_by = "group";
    std::string test = "anova";
    std::vector<std::string> groups;
    std::string aoi;
    std::string out = "-";
    double dispersion_px = 35.0;
    double min_fixation_ms = 60.0;
    double saccade_velocity = 1500.0;
};

struct Metric {
    enum Kind { DwellProp, FixationCount, MeanFixationDuration, SaccadeCount,
                MeanSaccadeAmplitude, BlinkRate } kind = BlinkRate;
    int label = 0;
};

Metric parse_metric(const std::string& token) {
    Metric m;
    const std::string prefix = "dwell_prop:";
    if (token.rfind(prefix, 0) == 0) {
        m.kind = Metric::DwellProp;
        const std::string rest = token.substr(prefix.size());
        try {
            size_t used = 0;
            m.label = std::stoi(rest, &used);
            if (used != rest.size() || m.label < 0) throw std::invalid_argument(rest);
        } catch (...) {
            throw ConfigError("--metric dwell_prop:<label> needs a non-negative integer label, "
                              "got '" + rest + "'");
        }
        return m;
    }
    if (token == "fixation_count") m.kind = Metric::FixationCount;
    else if (token == "mean_fixation_duration") m.kind = Metric::MeanFixationDuration;
    else if (token == "saccade_count") m.kind = Metric::SaccadeCount;
    else if (token == "mean_saccade_amplitude") m.kind = Metric::MeanSaccadeAmplitude;
    else if (token == "blink_rate") m.kind = Metric::BlinkRate;
    else
        throw ConfigError("--metric must be dwell_prop:<label>, fixation_count, "
                          "mean_fixation_duration, saccade_count, mean_saccade_amplitude, or "
                          "blink_rate; got '" + token + "'");
    return m;
}

double metric_value(const Metric& metric, const gk_recording* rec, const gk_aoi_set* aois,
                    const gk_event_config& config) {
    if (metric.kind == Metric::DwellProp) {
        Owned<gk_dwell_report> report(gk_dwell_report_free);
        ck(gk_dwell_times(aois, rec, report.out()));
        double value = 0.0;
        ck(gk_dwell_report_proportion(report, metric.label, &value));
        return value;
    }
    gk_features f;
    ck(gk_extract_features(rec, &config, &f));
    switch (metric.kind) {
        case Metric::FixationCount: return f.fixation_count;
        case Metric::MeanFixationDuration: return f.mean_fixation_duration;
        case Metric::SaccadeCount: return f.saccade_count;
        case Metric::MeanSaccadeAmplitude: return f.mean_saccade_amplitude;
        case Metric::BlinkRate: return f.blink_rate;
        default: return 0.0;
    }
}

std::string stats_row(const std::string& metric, const std::string& test, double statistic,
                      const std::string& df, double p) {
    return metric + "," + test + "," + fmt(statistic) + "," + df + "," + fmt(p) + "\n";
}

int run_stats(const StatsOpts& o) {
    const Metric metric = parse_metric(o.metric);
    if (metric.kind == Metric::DwellProp && o.aoi.empty())
        throw ConfigError("--metric dwell_prop:<label> requires --aoi");
    const bool by_group = o.group_by == "group";
    std::vector<int> filter;
    for (const std::string& token : o.groups) {
        int value = 0;
        gk_status status = by_group ? gk_parse_group(token.c_str(), &value)
                                    : gk_parse_scenario(token.c_str(), &value);
        if (status != GK_OK)
            throw ConfigError(std::string("--groups: ") + gk_last_error());
        filter.push_back(value);
    }

    std::vector<std::string> files;
    {
        std::error_code ec;
        std::filesystem::directory_iterator it(o.dir, ec);
        if (ec) throw ModuleError(o.dir + ": " + ec.message());
        for (const auto& entry : it)
            if (entry.is_regular_file() && entry.path().extension() == ".csv")
                files.push_back(entry.path().string());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw ModuleError("no .csv recordings found in " + o.dir);

    Owned<gk_aoi_set> aois(gk_aoi_set_free);
    if (!o.aoi.empty()) ck(gk_aoi_set_read(o.aoi.c_str(), aois.out()));
    const gk_event_config config{o.dispersion_px, o.min_fixation_ms / 1000.0,
                                 o.saccade_velocity};

    std::map<int, std::vector<double>> buckets;
    for (const std::string& file : files) {
        Owned<gk_recording> rec(gk_recording_free);
        ck(gk_recording_read_csv(file.c_str(), rec.out()));
        const int key = by_group ? gk_recording_group(rec) : gk_recording_scenario(rec);
        if (!filter.empty() &&
            std::find(filter.begin(), filter.end(), key) == filter.end())
            continue;
        buckets[key].push_back(metric_value(metric, rec, aois, config));
    }
    if (buckets.size() < 2)
        throw ModuleError("found " + std::to_string(buckets.size()) +
                          " group(s) after filtering; need at least 2");

    std::string csv = "metric,test,statistic,df,p\n";
    if (o.test == "anova") {
        std::vector<const double*> arrays;
        std::vector<size_t> sizes;
        for (const auto& [key, values] : buckets) {
            arrays.push_back(values.data());
            sizes.push_back(values.size());
        }
        double f = 0, p = 0;
        int df_b = 0, df_w = 0;
        ck(gk_one_way_anova(arrays.data(), sizes.data(), arrays.size(), &f, &df_b, &df_w, &p));
        csv += stats_row(o.metric, "anova", f,
                         std::to_string(df_b) + "/" + std::to_string(df_w), p);
    } else {
        if (buckets.size() != 2)
            throw ModuleError("t-test needs exactly 2 groups, found " +
                              std::to_string(buckets.size()) + "; restrict with --groups");
        const bool welch = o.test == "t_welch";
        auto it = buckets.begin();
        const std::vector<double>& a = it->second;
        const std::vector<double>& b = std::next(it)->second;
        double t = 0, df = 0, p = 0;
        ck(gk_t_test(a.data(), a.size(), b.data(), b.size(),
                     welch ? GK_T_WELCH : GK_T_POOLED, &t, &df, &p));
        csv += stats_row(o.metric, welch ? "t_welch" : "t_pooled", t, fmt(df), p);
    }
    write_text(o.out, csv);
    return 0;
}

// ------------------------------------------------------------------
// demo

struct DemoOpts {
    std::uint64_t seed = 42;
    std::string outdir = "demo_out";
    int jobs = 1;
};

int run_demo(const DemoOpts& o) {
    namespace fs = std::filesystem;
    const fs::path outdir(o.outdir);
    std::error_code ec;
    fs::create_directories(outdir / "recordings", ec);
    if (ec) throw ModuleError(o.outdir + ": " + ec.message());
    fs::create_directories(outdir / "dwell", ec);
    if (ec) throw ModuleError(o.outdir + ": " + ec.message());

    const gk_aoi boxes[2] = {{1, 260.0, 290.0, 760.0, 590.0},
                             {2, 1160.0, 290.0, 1660.0, 590.0}};
    Owned<gk_aoi_set> aois(gk_aoi_set_free);
    ck(gk_aoi_set_create(boxes, 2, aois.out()));
    ck(gk_aoi_set_write(aois, (outdir / "aois.txt").string().c_str()));

    const int scenarios[3] = {GK_INFO_RETRIEVAL, GK_DYNAMIC_NAVIGATION, GK_COLLABORATIVE};
    const int groups[4] = {GK_CONTROL, GK_ADHD_LOW, GK_ADHD_MEDIUM, GK_ADHD_HIGH};

    using RecPtr = std::unique_ptr<gk_recording, void (*)(gk_recording*)>;
    std::vector<RecPtr> recordings;
    std::vector<gk_profile> profiles;
    std::vector<double> off_aoi;           // dwell proportion outside every AOI
    std::vector<gk_features> features;
    std::uint64_t chain = o.seed;

    for (int scenario : scenarios) {
        for (int group : groups) {
            gk_profile profile;
            ck(gk_default_profile(scenario, group, &profile));
            profiles.push_back(profile);
            const std::uint64_t rec_seed = splitmix64_next(chain);
            gk_recording* raw = nullptr;
            ck(gk_generate_recording(&profile, aois, rec_seed, 0, 0, &raw));
            recordings.emplace_back(raw, gk_recording_free);

            const std::string name = std::string(gk_scenario_name(scenario)) + "_" +
                                     gk_group_name(group) + ".csv";
            ck(gk_recording_write_csv(raw, (outdir / "recordings" / name).string().c_str()));

            Owned<gk_dwell_report> report(gk_dwell_report_free);
            ck(gk_dwell_times(aois, raw, report.out()));
            OwnedStr dwell_csv;
            ck(gk_dwell_report_to_csv(report, dwell_csv.out()));
            write_text((outdir / "dwell" / name).string(), dwell_csv.s);
            double p0 = 0.0;
            ck(gk_dwell_report_proportion(report, 0, &p0));
            off_aoi.push_back(p0);

            gk_features f;
            ck(gk_extract_features(raw, nullptr, &f));
            features.push_back(f);
            std::fprintf(stderr, "generated %s\n", name.c_str());
        }
    }

    // Training set: one labeled subsample per profile, shared master seed.
    Owned<gk_labeled_set> points(gk_labeled_set_free);
    ck(gk_generate_dataset(profiles.data(), profiles.size(), aois, 166, o.seed, 0, 0,
                           points.out()));
    ck(gk_labeled_set_write(points, (outdir / "training_points.csv").string().c_str()));
    Owned<gk_dataset> dataset(gk_dataset_free);
    ck(gk_dataset_create(dataset.out()));
    ck(gk_dataset_add_labeled(dataset, points));
    std::fprintf(stderr, "training on %zu labeled points\n", gk_dataset_count(dataset));

    const double* c_grid = nullptr;
    const size_t c_count = gk_default_c_grid(&c_grid);
    const double* gamma_grid = nullptr;
    const size_t gamma_count = gk_default_gamma_grid(&gamma_grid);
    Owned<gk_grid_result> grid(gk_grid_result_free);
    ck(gk_grid_search(dataset, c_grid, c_count, gamma_grid, gamma_count, 0.2, o.seed, nullptr,
                      o.jobs, grid.out()));
    OwnedStr grid_csv;
    ck(gk_grid_result_to_csv(grid, grid_csv.out()));
    write_text((outdir / "grid_search.csv").string(), grid_csv.s);
    double best_c = 0, best_gamma = 0, best_accuracy = 0;
    ck(gk_grid_result_best(grid, &best_c, &best_gamma, &best_accuracy));
    std::fprintf(stderr, "grid search best: c=%s gamma=%s holdout_accuracy=%s\n",
                 fmt(best_c).c_str(), fmt(best_gamma).c_str(), fmt(best_accuracy).c_str());

    Owned<gk_svm_model> model(gk_svm_model_free);
    ck(gk_svm_train(dataset, best_gamma, best_c, nullptr, model.out()));
    ck(gk_svm_save(model, (outdir / "svm_model.txt").string().c_str()));

    // SEEV comparison against the control / info_retrieval recording.
    const gk_seev_factor factors[2] = {{1, 0.6, 0.2, 0.7, 0.8}, {2, 0.5, 0.35, 0.45, 0.55}};
    Owned<gk_seev_params> params(gk_seev_params_free);
    ck(gk_seev_params_create(factors, 2, 1.0, 1.0, 1.0, 1.0, params.out()));
    Owned<gk_seev_prediction> prediction(gk_seev_prediction_free);
    ck(gk_seev_scores(params, prediction.out()));
    Owned<gk_dwell_report> observed(gk_dwell_report_free);
    ck(gk_dwell_times(aois, recordings.front().get(), observed.out()));
    Owned<gk_seev_comparison> comparison(gk_seev_comparison_free);
    ck(gk_seev_compare(prediction, observed, comparison.out()));
    OwnedStr seev_csv;
    ck(gk_seev_comparison_to_csv(comparison, seev_csv.out()));
    write_text((outdir / "seev_comparison.csv").string(), seev_csv.s);

    // Group statistics over the 12 recordings (scenario-major layout:
    // recording index = scenario * 4 + group).
    auto group_values = [&](const std::vector<double>& all, int group) {
        std::vector<double> values;
        for (int scenario = 0; scenario < 3; ++scenario)
            values.push_back(all[static_cast<size_t>(scenario) * 4 + group]);
        return values;
    };
    std::vector<double> mean_fix(12), blink(12);
    for (size_t i = 0; i < 12; ++i) {
        mean_fix[i] = features[i].mean_fixation_duration;
        blink[i] = features[i].blink_rate;
    }

    std::string stats_csv = "metric,test,statistic,df,p\n";
    auto anova_row = [&](const std::string& name, const std::vector<double>& all) {
        std::vector<std::vector<double>> data;
        for (int group = 0; group < 4; ++group) data.push_back(group_values(all, group));
        std::vector<const double*> arrays;
        std::vector<size_t> sizes;
        for (const auto& values : data) {
            arrays.push_back(values.data());
            sizes.push_back(values.size());
        }
        double f = 0, p = 0;
        int df_b = 0, df_w = 0;
        ck(gk_one_way_anova(arrays.data(), sizes.data(), arrays.size(), &f, &df_b, &df_w, &p));
        stats_csv += stats_row(name, "anova", f,
                               std::to_string(df_b) + "/" + std::to_string(df_w), p);
    };
    anova_row("dwell_prop:0", off_aoi);
    {
        const std::vector<double> control = group_values(off_aoi, 0);
        const std::vector<double> high = group_values(off_aoi, 3);
        double t = 0, df = 0, p = 0;
        ck(gk_t_test(control.data(), control.size(), high.data(), high.size(), GK_T_WELCH, &t,
                     &df, &p));
        stats_csv += stats_row("dwell_prop:0", "t_welch", t, fmt(df), p);
    }
    anova_row("mean_fixation_duration", mean_fix);
    anova_row("blink_rate", blink);
    write_text((outdir / "stats.csv").string(), stats_csv);

    std::fprintf(stderr, "demo reports written to %s\n", o.outdir.c_str());
    return 0;
}

// ------------------------------------------------------------------
// wiring

const CLI::Validator OddPositive(
    [](std::string& value) -> std::string {
        try {
            size_t used = 0;
            const long v = std::stol(value, &used);
            if (used != value.size() || v < 1 || v % 2 == 0)
                return "must be an odd positive integer (samples)";
        } catch (...) {
            return "must be an odd positive integer (samples)";
        }
        return {};
    },
    "ODD");

const CLI::Validator OpenUnit(
    [](std::string& value) -> std::string {
        try {
            size_t used = 0;
            const double v = std::stod(value, &used);
            if (used != value.size() || !(v > 0.0 && v < 1.0))
                return "must lie strictly between 0 and 1";
        } catch (...) {
            return "must lie strictly between 0 and 1";
        }
        return {};
    },
    "FRACTION");

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gaze-analytics toolkit: synthetic gaze, preprocessing, oculomotor events, "
                 "AOI dwell, RBF-SVM focus classification, SEEV attention prediction, and "
                 "group statistics",
                 "gazekit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(gk_version()));
    app.set_help_all_flag("--help-all", "Expand help for every subcommand");
    app.failure_message(CLI::FailureMessage::help);

    SimulateOpts sim;
    CLI::App* c_sim = app.add_subcommand("simulate", "Generate a synthetic gaze recording");
    sim.cmd = c_sim;
    c_sim->add_option("--scenario", sim.scenario, "Task scenario")
        ->check(CLI::IsMember({"info_retrieval", "dynamic_navigation", "collaborative"}))
        ->capture_default_str()
        ->envname("GSL_SCENARIO");
    c_sim->add_option("--group", sim.group, "Severity group")
        ->check(CLI::IsMember({"control", "adhd_low", "adhd_medium", "adhd_high"}))
        ->capture_default_str()
        ->envname("GSL_GROUP");
    c_sim->add_option("--duration", sim.duration, "Recording length, seconds")
        ->check(CLI::PositiveNumber)
        ->envname("GSL_DURATION");
    c_sim->add_option("--sample-rate", sim.sample_rate, "Sampling rate, Hz")
        ->check(CLI::PositiveNumber)
        ->envname("GSL_SAMPLE_RATE");
    c_sim->add_option("--seed", sim.seed, "Random seed (all randomness flows from it)")
        ->capture_default_str()
        ->envname("GSL_SEED");
    c_sim->add_option("--aoi", sim.aoi, "AOI config file: label x_min y_min x_max y_max, pixels")
        ->required()
        ->envname("GSL_AOI");
    c_sim->add_option("--out", sim.out, "Output gaze CSV path")
        ->required()
        ->envname("GSL_OUT");
    c_sim->add_option("--attend-prob", sim.attend_prob,
                      "Probability a fixation targets an AOI, 0-1")
        ->check(CLI::Range(0.0, 1.0))
        ->envname("GSL_ATTEND_PROB");
    c_sim->add_option("--mean-fixation-s", sim.mean_fixation_s, "Mean fixation duration, seconds")
        ->check(CLI::PositiveNumber)
        ->envname("GSL_MEAN_FIXATION_S");
    c_sim->add_option("--fixation-cv", sim.fixation_cv,
                      "Fixation duration coefficient of variation (unitless)")
        ->check(CLI::NonNegativeNumber)
        ->envname("GSL_FIXATION_CV");
    c_sim->add_option("--jitter-px", sim.jitter_px, "Within-fixation jitter SD, pixels")
        ->check(CLI::NonNegativeNumber)
        ->envname("GSL_JITTER_PX");
    c_sim->add_option("--blink-rate", sim.blink_rate, "Blink rate, blinks per minute")
        ->check(CLI::NonNegativeNumber)
        ->envname("GSL_BLINK_RATE");
    c_sim->add_option("--drift-rate", sim.drift_rate, "Drift along +x, pixels/second")
        ->envname("GSL_DRIFT_RATE");
    c_sim->add_option("--scene-width", sim.scene_width, "Scene width, pixels")
        ->check(CLI::PositiveNumber)
        ->capture_default_str()
        ->envname("GSL_SCENE_WIDTH");
    c_sim->add_option("--scene-height", sim.scene_height, "Scene height, pixels")
        ->check(CLI::PositiveNumber)
        ->capture_default_str()
        ->envname("GSL_SCENE_HEIGHT");

    PreprocessOpts pre;
    CLI::App* c_pre = app.add_subcommand(
        "preprocess", "Median-filter, gap-interpolate, and drift-correct a recording");
    c_pre->add_option("--in", pre.in, "Input gaze CSV")->required()->envname("GSL_IN");
    c_pre->add_option("--out", pre.out, "Output gaze CSV")->required()->envname("GSL_OUT");
    c_pre->add_option("--median-window", pre.median_window,
                      "Median filter width, samples (odd)")
        ->check(OddPositive)
        ->capture_default_str()
        ->envname("GSL_MEDIAN_WINDOW");
    c_pre->add_option("--max-gap-ms", pre.max_gap_ms,
                      "Longest interpolatable gap, milliseconds")
        ->check(CLI::PositiveNumber)
        ->capture_default_str()
        ->envname("GSL_MAX_GAP_MS");
    c_pre->add_option("--calibration", pre.calibration,
                      "Calibration file: t_start t_end target_x target_y per line "
                      "(seconds, pixels)")
        ->envname("GSL_CALIBRATION");

    EventsOpts ev;
    CLI::App* c_ev = app.add_subcommand("events", "Detect fixations and saccades");
    c_ev->add_option("--in", ev.in, "Input gaze CSV")->required()->envname("GSL_IN");
    c_ev->add_option("--out", ev.out, "Output events CSV ('-' = stdout)")
        ->capture_default_str()
        ->envname("GSL_OUT");
    c_ev->add_option("--dispersion-px", ev.dispersion_px,
                     "Fixation dispersion threshold, pixels")
        ->check(CLI::PositiveNumber)
        ->capture_default_str()
        ->envname("GSL_DISPERSION_PX");
    c_ev->add_option("--min-fixation-ms", ev.min_fixation_ms,
                     "Minimum fixation duration, milliseconds")
        ->check(CLI::PositiveNumber)
        ->capture_default_str()
        ->envname("GSL_MIN_FIXATION_MS");
    c_ev->add_option("--saccade-velocity", ev.saccade_velocity,
                     "Saccade velocity threshold, pixels/second")
        ->check(CLI::PositiveNumber)
        ->capture_default_str()
        ->envname("GSL_SACCADE_VELOCITY");

    LabelOpts lb;
    CLI::App* c_lb = app.add_subcommand("label", "Label Valid samples by AOI membership");
    c_lb->add_option("--in", lb.in, "Input gaze CSV")->required()->envname("GSL_IN");
    c_lb->add_option("--aoi", lb.aoi, "AOI config file (pixels)")->required()->envname("GSL_AOI");
    c_lb->add_option("--out", lb.out, "Output labeled CSV (x,y,label)")
        ->required()
        ->envname("GSL_OUT");

    DwellOpts dw;
    CLI::App* c_dw = app.add_subcommand("dwell", "Per-AOI dwell durations and proportions");
    c_dw->add_option("--in", dw.in, "Input gaze CSV")->required()->envname("GSL_IN");
    c_dw->add_option("--aoi", dw.aoi, "AOI config file (pixels)")->required()->envname("GSL_AOI");
    c_dw->add_option("--out", dw.out, "Output dwell CSV ('-' = stdout)")
        ->capture_default_str()
        ->envname("GSL_OUT");

    TrainOpts tr;
    {
        const double* grid = nullptr;
        size_t n = gk_default_c_grid(&grid);
        tr.c_grid.assign(grid, grid + n);
        n = gk_default_gamma_grid(&grid);
        tr.gamma_grid.assign(grid, grid + n);
    }
    CLI::App* c_tr = app.add_subcommand(
        "train", "Grid-search RBF-SVM hyperparameters and train a focus classifier");
    c_tr->add_option("--in", tr.ins, "Gaze recording CSV (repeatable; labels come from --aoi)")
        ->envname("GSL_IN");
    c_tr->add_option("--data", tr.data, "Labeled-point CSV x,y,label (repeatable)")
        ->envname("GSL_DATA");
    c_tr->add_option("--aoi", tr.aoi, "AOI config file (pixels); required with --in")
        ->envname("GSL_AOI");
    c_tr->add_option("--median-window", tr.median_window,
                     "Median filter width applied to --in recordings, samples (odd)")
        ->check(OddPositive)
        ->capture_default_str()
        ->envname("GSL_MEDIAN_WINDOW");
    c_tr->add_option("--max-gap-ms", tr.max_gap_ms,
                     "Longest interpolatable gap for --in recordings, milliseconds")
        ->check(CLI::PositiveNumber)
        ->capture_default_str()
        ->envname("GSL_MAX_GAP_MS");
    c_tr->add_option("--calibration", tr.calibration,
                     "Calibration file applied to --in recordings (seconds, pixels)")
        ->envname("GSL_CALIBRATION");
    c_tr->add_flag("--with-time", tr.with_time,
                   "Add the timestamp (seconds) as a third feature (needs --in)")
        ->envname("GSL_WITH_TIME");
    c_tr->add_option("--c-grid", tr.c_grid, "Soft-margin C candidates (unitless)")
        ->check(CLI::PositiveNumber)
        ->delimiter(',')
        ->envname("GSL_C_GRID");
    c_tr->add_option("--gamma-grid", tr.gamma_grid, "RBF gamma candidates, 1/pixels^2")
        ->check(CLI::PositiveNumber)
        ->delimiter(',')
        ->envname("GSL_GAMMA_GRID");
    c_tr->add_option("--holdout", tr.holdout, "Hold-out fraction per class, 0-1 exclusive")
        ->check(OpenUnit)
        ->capture_default_str()
        ->envname("GSL_HOLDOUT");
    c_tr->add_option("--seed", tr.seed, "Random seed for the stratified split")
        ->capture_default_str()
        ->envname("GSL_SEED");
    c_tr->add_option("--tol", tr.tol, "KKT tolerance (unitless)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str()
        ->envname("GSL_TOL");
    c_tr->add_option("--max-passes", tr.max_passes,
                     "Update-free optimizer passes before stopping, count")
        ->check(CLI::PositiveNumber)
        ->capture_default_str()
        ->envname("GSL_MAX_PASSES");
    c_tr->add_flag("--normalize", tr.normalize, "Standardize features before training")
        ->envname("GSL_NORMALIZE");
    c_tr->add_option("--jobs", tr.jobs, "Concurrent grid cells (<=0 = all hardware threads)")
        ->capture_default_str()
        ->envname("GSL_JOBS");
    c_tr->add_option("--model-out", tr.model_out, "Output model file")
        ->required()
        ->envname("GSL_MODEL_OUT");
    c_tr->add_option("--grid-out", tr.grid_out, "Optional grid report CSV (c,gamma,accuracy)")
        ->envname("GSL_GRID_OUT");

    PredictOpts pr;
    CLI::App* c_pr = app.add_subcommand("predict", "Classify gaze points with a trained model");
    c_pr->add_option("--model", pr.model, "Model file from train")->required()->envname(
        "GSL_MODEL");
    c_pr->add_option("--input", pr.input, "Gaze recording CSV or labeled CSV (x,y,label)")
        ->required()
        ->envname("GSL_INPUT");
    c_pr->add_option("--aoi", pr.aoi, "AOI config for --metrics reference labels (pixels)")
        ->envname("GSL_AOI");
    c_pr->add_option("--out", pr.out, "Output predictions CSV ('-' = stdout)")
        ->capture_default_str()
        ->envname("GSL_OUT");
    c_pr->add_flag("--metrics", pr.metrics,
                   "Print accuracy/precision/recall/F1 against reference labels to stderr")
        ->envname("GSL_METRICS");

    SeevOpts se;
    CLI::App* c_se = app.add_subcommand(
        "seev", "Predict attention distribution and compare with observed dwell");
    c_se->add_option("--params", se.params,
                     "SEEV parameter file: aoi_label S EF EX V lines plus weights line")
        ->required()
        ->envname("GSL_PARAMS");
    c_se->add_option("--in", se.in, "Observed gaze CSV")->required()->envname("GSL_IN");
    c_se->add_option("--aoi", se.aoi, "AOI config file (pixels)")->required()->envname("GSL_AOI");
    c_se->add_option("--out", se.out, "Output comparison CSV ('-' = stdout)")
        ->capture_default_str()
        ->envname("GSL_OUT");

    StatsOpts st;
    CLI::App* c_st = app.add_subcommand(
        "stats", "Group-difference tests over a directory of recordings");
    c_st->add_option("--dir", st.dir, "Directory of gaze recording CSVs")
        ->required()
        ->envname("GSL_DIR");
    c_st->add_option("--metric", st.metric,
                     "dwell_prop:<label>, fixation_count, mean_fixation_duration, "
                     "saccade_count, mean_saccade_amplitude, or blink_rate")
        ->required()
        ->envname("GSL_METRIC");
    c_st->add_option("--group-by", st.group_by, "Bucket recordings by 'group' or 'scenario'")
        ->check(CLI::IsMember({"group", "scenario"}))
        ->capture_default_str()
        ->envname("GSL_GROUP_BY");
    c_st->add_option("--test", st.test, "anova, t (pooled), t_pooled, or t_welch")
        ->check(CLI::IsMember({"anova", "t", "t_pooled", "t_welch"}))
        ->capture_default_str()
        ->envname("GSL_TEST");
    c_st->add_option("--groups", st.groups,
                     "Comma-separated bucket filter (group or scenario tokens)")
        ->delimiter(',')
        ->envname("GSL_GROUPS");
    c_st->add_option("--aoi", st.aoi, "AOI config file (pixels); required for dwell_prop")
        ->envname("GSL_AOI");
    c_st->add_option("--out", st.out, "Output stats CSV ('-' = stdout)")
        ->capture_default_str()
        ->envname("GSL_OUT");
    c_st->add_option("--dispersion-px", st.dispersion_px,
                     "Fixation dispersion threshold, pixels")
        ->check(CLI::PositiveNumber)
        ->capture_default_str()
        ->envname("GSL_DISPERSION_PX");
    c_st->add_option("--min-fixation-ms", st.min_fixation_ms,
                     "Minimum fixation duration, milliseconds")
        ->check(CLI::PositiveNumber)
        ->capture_default_str()
        ->envname("GSL_MIN_FIXATION_MS");
    c_st->add_option("--saccade-velocity", st.saccade_velocity,
                     "Saccade velocity threshold, pixels/second")
        ->check(CLI::PositiveNumber)
        ->capture_default_str()
        ->envname("GSL_SACCADE_VELOCITY");

    DemoOpts de;
    CLI::App* c_de = app.add_subcommand(
        "demo", "End-to-end pipeline on synthetic data from one seed");
    c_de->add_option("--seed", de.seed, "Random seed (all randomness flows from it)")
        ->capture_default_str()
        ->envname("GSL_SEED");
    c_de->add_option("--outdir", de.outdir, "Report directory")
        ->capture_default_str()
        ->envname("GSL_OUTDIR");
    c_de->add_option("--jobs", de.jobs, "Concurrent grid cells (<=0 = all hardware threads)")
        ->capture_default_str()
        ->envname("GSL_JOBS");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        enforce_env_validation(&app);
        if (*c_tr) {  // config cross-checks before any work
            if (tr.data.empty() == tr.ins.empty())
                throw ConfigError("provide exactly one input mode: --data or --in");
            if (!tr.ins.empty() && tr.aoi.empty()) throw ConfigError("--in requires --aoi");
            if (tr.with_time && tr.ins.empty())
                throw ConfigError("--with-time requires --in recordings");
        }
        if (*c_sim) return run_simulate(sim);
        if (*c_pre) return run_preprocess(pre);
        if (*c_ev) return run_events(ev);
        if (*c_lb) return run_label(lb);
        if (*c_dw) return run_dwell(dw);
        if (*c_tr) return run_train(tr);
        if (*c_pr) return run_predict(pr);
        if (*c_se) return run_seev(se);
        if (*c_st) return run_stats(st);
        if (*c_de) return run_demo(de);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "gazekit: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "gazekit: %s\n", e.what());
        return 1;
    }
    return 0;
}
