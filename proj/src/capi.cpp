// C API shim: maps the C++ core onto the opaque-handle interface declared
// in include/gazekit.h. All exceptions stop at this boundary.

#include "gazekit.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <iterator>
#include <new>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "aoi.hpp"
#include "events.hpp"
#include "gaze_io.hpp"
#include "preprocess.hpp"
#include "seev.hpp"
#include "simgen.hpp"
#include "stats.hpp"
#include "svm.hpp"
#include "types.hpp"

namespace gz = gazekit;

// ---------------------------------------------------------------------
// Opaque handle definitions

struct gk_recording {
    gz::GazeRecording rec;
};

struct gk_aoi_set {
    std::vector<gz::Aoi> aois;
};

struct gk_event_list {
    std::vector<gz::FixationEvent> fixations;
    std::vector<gz::SaccadeEvent> saccades;
};

struct gk_dwell_report {
    gz::DwellReport report;
};

struct gk_labeled_set {
    std::vector<gz::LabeledPoint> points;
};

struct gk_dataset {
    gz::Dataset data;
};

struct gk_svm_model {
    gz::SvmModel model;
};

struct gk_grid_result {
    gz::GridSearchResult result;
};

struct gk_seev_params {
    gz::SeevParams params;
};

struct gk_seev_prediction {
    gz::SeevPrediction prediction;
};

struct gk_seev_comparison {
    gz::SeevComparison comparison;
};

// ---------------------------------------------------------------------
// Error plumbing

namespace {

thread_local std::string g_last_error;

gk_status set_error(gk_status status, const char* message) {
    g_last_error = message;
    return status;
}

template <typename Fn>
gk_status wrap(Fn&& fn) noexcept {
    try {
        g_last_error.clear();
        fn();
        return GK_OK;
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return GK_EINVAL;
    } catch (const std::runtime_error& e) {
        g_last_error = e.what();
        return GK_EIO;
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return GK_EFAIL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return GK_EFAIL;
    } catch (...) {
        g_last_error = "unknown error";
        return GK_EFAIL;
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

gz::Validity validity_from_int(int v) {
    switch (v) {
        case GK_VALID: return gz::Validity::Valid;
        case GK_MISSING: return gz::Validity::Missing;
        case GK_BLINK: return gz::Validity::Blink;
        default: throw std::invalid_argument("unknown validity code " + std::to_string(v));
    }
}

gz::Group group_from_int(int g) {
    switch (g) {
        case GK_CONTROL: return gz::Group::Control;
        case GK_ADHD_LOW: return gz::Group::AdhdLow;
        case GK_ADHD_MEDIUM: return gz::Group::AdhdMedium;
        case GK_ADHD_HIGH: return gz::Group::AdhdHigh;
        default: throw std::invalid_argument("unknown group code " + std::to_string(g));
    }
}

gz::Scenario scenario_from_int(int s) {
    switch (s) {
        case GK_INFO_RETRIEVAL: return gz::Scenario::InfoRetrieval;
        case GK_DYNAMIC_NAVIGATION: return gz::Scenario::DynamicNavigation;
        case GK_COLLABORATIVE: return gz::Scenario::Collaborative;
        default: throw std::invalid_argument("unknown scenario code " + std::to_string(s));
    }
}

gz::EventConfig event_config_from(const gk_event_config* config) {
    gz::EventConfig out;
    if (config) {
        out.dispersion_px = config->dispersion_px;
        out.min_fixation_s = config->min_fixation_s;
        out.saccade_velocity = config->saccade_velocity;
    }
    return out;
}

gk_train_options train_options_from(const gk_train_options* options) {
    return options ? *options : gk_default_train_options();
}

gz::ScenarioProfile profile_from(const gk_profile& p) {
    gz::ScenarioProfile out;
    out.scenario = scenario_from_int(p.scenario);
    out.group = group_from_int(p.group);
    out.attend_target_prob = p.attend_target_prob;
    out.mean_fixation_duration = p.mean_fixation_duration;
    out.fixation_duration_cv = p.fixation_duration_cv;
    out.jitter_sd = p.jitter_sd;
    out.blink_rate = p.blink_rate;
    out.drift_rate = p.drift_rate;
    out.duration = p.duration;
    out.sample_rate = p.sample_rate;
    return out;
}

gz::SceneBounds bounds_from(double width, double height) {
    gz::SceneBounds bounds;
    if (width > 0.0) bounds.width = width;
    if (height > 0.0) bounds.height = height;
    return bounds;
}

constexpr const char* kNullArg = "null pointer argument";

}  // namespace

#define GK_REQUIRE(cond) \
    do { \
        if (!(cond)) return set_error(GK_EINVAL, kNullArg); \
    } while (0)

// ---------------------------------------------------------------------
// Globals

extern "C" {

const char* gk_last_error(void) { return g_last_error.c_str(); }

const char* gk_version(void) { return "1.0.0"; }

void gk_string_free(char* s) { std::free(s); }

// ---------------------------------------------------------------------
// Enum plumbing

gk_status gk_parse_group(const char* token, int* out) {
    GK_REQUIRE(token && out);
    return wrap([&] { *out = static_cast<int>(gz::parse_group(token)); });
}

gk_status gk_parse_scenario(const char* token, int* out) {
    GK_REQUIRE(token && out);
    return wrap([&] { *out = static_cast<int>(gz::parse_scenario(token)); });
}

const char* gk_group_name(int group) {
    switch (group) {
        case GK_CONTROL: return "control";
        case GK_ADHD_LOW: return "adhd_low";
        case GK_ADHD_MEDIUM: return "adhd_medium";
        case GK_ADHD_HIGH: return "adhd_high";
        default: return nullptr;
    }
}

const char* gk_scenario_name(int scenario) {
    switch (scenario) {
        case GK_INFO_RETRIEVAL: return "info_retrieval";
        case GK_DYNAMIC_NAVIGATION: return "dynamic_navigation";
        case GK_COLLABORATIVE: return "collaborative";
        default: return nullptr;
    }
}

// ---------------------------------------------------------------------
// Recordings

gk_status gk_recording_read_csv(const char* path, gk_recording** out) {
    GK_REQUIRE(path && out);
    return wrap([&] { *out = new gk_recording{gz::read_gaze_csv(path)}; });
}

gk_status gk_recording_write_csv(const gk_recording* rec, const char* path) {
    GK_REQUIRE(rec && path);
    return wrap([&] { gz::write_gaze_csv(rec->rec, path); });
}

void gk_recording_free(gk_recording* rec) { delete rec; }

size_t gk_recording_sample_count(const gk_recording* rec) {
    return rec ? rec->rec.samples.size() : 0;
}

gk_status gk_recording_sample(const gk_recording* rec, size_t index, gk_sample* out) {
    GK_REQUIRE(rec && out);
    if (index >= rec->rec.samples.size())
        return set_error(GK_EINVAL, "sample index out of range");
    const gz::GazeSample& s = rec->rec.samples[index];
    out->t = s.t;
    out->x = s.x;
    out->y = s.y;
    out->validity = static_cast<int>(s.validity);
    g_last_error.clear();
    return GK_OK;
}

const char* gk_recording_participant(const gk_recording* rec) {
    return rec ? rec->rec.participant_id.c_str() : nullptr;
}

int gk_recording_group(const gk_recording* rec) {
    return rec ? static_cast<int>(rec->rec.group) : -1;
}

int gk_recording_scenario(const gk_recording* rec) {
    return rec ? static_cast<int>(rec->rec.scenario) : -1;
}

double gk_recording_sample_rate(const gk_recording* rec) {
    return rec ? rec->rec.sample_rate_hz : 0.0;
}

double gk_recording_duration(const gk_recording* rec) {
    return rec ? rec->rec.duration() : 0.0;
}

// ---------------------------------------------------------------------
// Preprocessing

gk_status gk_median_filter(const gk_recording* rec, int window, gk_recording** out) {
    GK_REQUIRE(rec && out);
    return wrap([&] { *out = new gk_recording{gz::median_filter(rec->rec, window)}; });
}

gk_status gk_interpolate_gaps(const gk_recording* rec, double max_gap_s, gk_recording** out) {
    GK_REQUIRE(rec && out);
    return wrap([&] { *out = new gk_recording{gz::interpolate_gaps(rec->rec, max_gap_s)}; });
}

gk_status gk_drift_correct(const gk_recording* rec, const gk_calibration_window* windows,
                           size_t count, gk_recording** out) {
    GK_REQUIRE(rec && out);
    GK_REQUIRE(windows || count == 0);
    return wrap([&] {
        std::vector<gz::CalibrationWindow> cal(count);
        for (size_t i = 0; i < count; ++i) {
            cal[i].t_start = windows[i].t_start;
            cal[i].t_end = windows[i].t_end;
            cal[i].target_x = windows[i].target_x;
            cal[i].target_y = windows[i].target_y;
        }
        *out = new gk_recording{gz::drift_correct(rec->rec, cal)};
    });
}

gk_status gk_read_calibration(const char* path, gk_calibration_window** out, size_t* count) {
    GK_REQUIRE(path && out && count);
    return wrap([&] {
        std::vector<gz::CalibrationWindow> cal = gz::read_calibration(path);
        auto* windows = static_cast<gk_calibration_window*>(
            std::malloc(sizeof(gk_calibration_window) * (cal.empty() ? 1 : cal.size())));
        if (!windows) throw std::bad_alloc();
        for (size_t i = 0; i < cal.size(); ++i) {
            windows[i].t_start = cal[i].t_start;
            windows[i].t_end = cal[i].t_end;
            windows[i].target_x = cal[i].target_x;
            windows[i].target_y = cal[i].target_y;
        }
        *out = windows;
        *count = cal.size();
    });
}

void gk_calibration_free(gk_calibration_window* windows) { std::free(windows); }

// ---------------------------------------------------------------------
// AOIs, labeling, dwell

gk_status gk_aoi_set_read(const char* path, gk_aoi_set** out) {
    GK_REQUIRE(path && out);
    return wrap([&] { *out = new gk_aoi_set{gz::read_aoi_config(path)}; });
}

gk_status gk_aoi_set_create(const gk_aoi* boxes, size_t count, gk_aoi_set** out) {
    GK_REQUIRE(out);
    GK_REQUIRE(boxes || count == 0);
    return wrap([&] {
        std::vector<gz::Aoi> aois(count);
        for (size_t i = 0; i < count; ++i) {
            aois[i].label = boxes[i].label;
            aois[i].x_min = boxes[i].x_min;
            aois[i].y_min = boxes[i].y_min;
            aois[i].x_max = boxes[i].x_max;
            aois[i].y_max = boxes[i].y_max;
        }
        gz::validate(aois);
        *out = new gk_aoi_set{std::move(aois)};
    });
}

gk_status gk_aoi_set_write(const gk_aoi_set* aois, const char* path) {
    GK_REQUIRE(aois && path);
    return wrap([&] { gz::write_aoi_config(aois->aois, path); });
}

void gk_aoi_set_free(gk_aoi_set* aois) { delete aois; }

size_t gk_aoi_set_count(const gk_aoi_set* aois) { return aois ? aois->aois.size() : 0; }

gk_status gk_aoi_set_get(const gk_aoi_set* aois, size_t index, gk_aoi* out) {
    GK_REQUIRE(aois && out);
    if (index >= aois->aois.size()) return set_error(GK_EINVAL, "AOI index out of range");
    const gz::Aoi& a = aois->aois[index];
    out->label = a.label;
    out->x_min = a.x_min;
    out->y_min = a.y_min;
    out->x_max = a.x_max;
    out->y_max = a.y_max;
    g_last_error.clear();
    return GK_OK;
}

int gk_label_point(const gk_aoi_set* aois, double x, double y) {
    return aois ? gz::label_point(aois->aois, x, y) : 0;
}

gk_status gk_label_recording(const gk_aoi_set* aois, const gk_recording* rec,
                             gk_labeled_set** out) {
    GK_REQUIRE(aois && rec && out);
    return wrap([&] { *out = new gk_labeled_set{gz::label_recording(aois->aois, rec->rec)}; });
}

gk_status gk_labeled_set_read(const char* path, gk_labeled_set** out) {
    GK_REQUIRE(path && out);
    return wrap([&] { *out = new gk_labeled_set{gz::read_labeled_csv(path)}; });
}

gk_status gk_labeled_set_write(const gk_labeled_set* set, const char* path) {
    GK_REQUIRE(set && path);
    return wrap([&] { gz::write_labeled_csv(set->points, path); });
}

gk_status gk_labeled_set_create(const gk_labeled_point* points, size_t count,
                                gk_labeled_set** out) {
    GK_REQUIRE(out);
    GK_REQUIRE(points || count == 0);
    return wrap([&] {
        std::vector<gz::LabeledPoint> pts(count);
        for (size_t i = 0; i < count; ++i) {
            pts[i].x = points[i].x;
            pts[i].y = points[i].y;
            pts[i].label = points[i].label;
        }
        *out = new gk_labeled_set{std::move(pts)};
    });
}

void gk_labeled_set_free(gk_labeled_set* set) { delete set; }

size_t gk_labeled_set_count(const gk_labeled_set* set) { return set ? set->points.size() : 0; }

gk_status gk_labeled_set_get(const gk_labeled_set* set, size_t index, gk_labeled_point* out) {
    GK_REQUIRE(set && out);
    if (index >= set->points.size())
        return set_error(GK_EINVAL, "labeled point index out of range");
    out->x = set->points[index].x;
    out->y = set->points[index].y;
    out->label = set->points[index].label;
    g_last_error.clear();
    return GK_OK;
}

gk_status gk_dwell_times(const gk_aoi_set* aois, const gk_recording* rec,
                         gk_dwell_report** out) {
    GK_REQUIRE(aois && rec && out);
    return wrap([&] { *out = new gk_dwell_report{gz::dwell_times(aois->aois, rec->rec)}; });
}

void gk_dwell_report_free(gk_dwell_report* report) { delete report; }

size_t gk_dwell_report_count(const gk_dwell_report* report) {
    return report ? report->report.duration_s.size() : 0;
}

gk_status gk_dwell_report_entry(const gk_dwell_report* report, size_t index, int* label,
                                double* duration_s, double* proportion) {
    GK_REQUIRE(report && label && duration_s && proportion);
    if (index >= report->report.duration_s.size())
        return set_error(GK_EINVAL, "dwell entry index out of range");
    auto it = std::next(report->report.duration_s.begin(),
                        static_cast<std::ptrdiff_t>(index));
    *label = it->first;
    *duration_s = it->second;
    *proportion = report->report.proportion.at(it->first);
    g_last_error.clear();
    return GK_OK;
}

double gk_dwell_report_total(const gk_dwell_report* report) {
    return report ? report->report.total_s : 0.0;
}

gk_status gk_dwell_report_proportion(const gk_dwell_report* report, int label, double* out) {
    GK_REQUIRE(report && out);
    auto it = report->report.proportion.find(label);
    if (it == report->report.proportion.end())
        return set_error(GK_EINVAL, "label not present in dwell report");
    *out = it->second;
    g_last_error.clear();
    return GK_OK;
}

gk_status gk_dwell_report_to_csv(const gk_dwell_report* report, char** out) {
    GK_REQUIRE(report && out);
    return wrap([&] { *out = dup_string(gz::dwell_to_csv(report->report)); });
}

// ---------------------------------------------------------------------
// Event detection

gk_event_config gk_default_event_config(void) {
    gz::EventConfig defaults;
    return gk_event_config{defaults.dispersion_px, defaults.min_fixation_s,
                           defaults.saccade_velocity};
}

gk_status gk_detect_events(const gk_recording* rec, const gk_event_config* config,
                           gk_event_list** out) {
    GK_REQUIRE(rec && out);
    return wrap([&] {
        gz::EventConfig cfg = event_config_from(config);
        auto events = new gk_event_list{
            gz::detect_fixations(rec->rec, cfg.dispersion_px, cfg.min_fixation_s),
            gz::detect_saccades(rec->rec, cfg.saccade_velocity)};
        *out = events;
    });
}

void gk_event_list_free(gk_event_list* events) { delete events; }

size_t gk_event_list_fixation_count(const gk_event_list* events) {
    return events ? events->fixations.size() : 0;
}

size_t gk_event_list_saccade_count(const gk_event_list* events) {
    return events ? events->saccades.size() : 0;
}

gk_status gk_event_list_fixation(const gk_event_list* events, size_t index, gk_fixation* out) {
    GK_REQUIRE(events && out);
    if (index >= events->fixations.size())
        return set_error(GK_EINVAL, "fixation index out of range");
    const gz::FixationEvent& f = events->fixations[index];
    out->t_start = f.t_start;
    out->t_end = f.t_end;
    out->centroid_x = f.centroid_x;
    out->centroid_y = f.centroid_y;
    out->dispersion = f.dispersion;
    g_last_error.clear();
    return GK_OK;
}

gk_status gk_event_list_saccade(const gk_event_list* events, size_t index, gk_saccade* out) {
    GK_REQUIRE(events && out);
    if (index >= events->saccades.size())
        return set_error(GK_EINVAL, "saccade index out of range");
    const gz::SaccadeEvent& s = events->saccades[index];
    out->t_start = s.t_start;
    out->t_end = s.t_end;
    out->amplitude = s.amplitude;
    out->peak_velocity = s.peak_velocity;
    g_last_error.clear();
    return GK_OK;
}

gk_status gk_event_list_to_csv(const gk_event_list* events, char** out) {
    GK_REQUIRE(events && out);
    return wrap([&] { *out = dup_string(gz::events_to_csv(events->fixations, events->saccades)); });
}

gk_status gk_blink_rate(const gk_recording* rec, double* out) {
    GK_REQUIRE(rec && out);
    return wrap([&] { *out = gz::blink_rate(rec->rec); });
}

gk_status gk_extract_features(const gk_recording* rec, const gk_event_config* config,
                              gk_features* out) {
    GK_REQUIRE(rec && out);
    return wrap([&] {
        gz::FeatureVector f = gz::extract_features(rec->rec, event_config_from(config));
        out->fixation_count = f.fixation_count;
        out->mean_fixation_duration = f.mean_fixation_duration;
        out->saccade_count = f.saccade_count;
        out->mean_saccade_amplitude = f.mean_saccade_amplitude;
        out->blink_rate = f.blink_rate;
    });
}

// ---------------------------------------------------------------------
// SVM

gk_status gk_dataset_create(gk_dataset** out) {
    GK_REQUIRE(out);
    return wrap([&] { *out = new gk_dataset{}; });
}

void gk_dataset_free(gk_dataset* data) { delete data; }

size_t gk_dataset_count(const gk_dataset* data) { return data ? data->data.x.size() : 0; }

gk_status gk_dataset_add_labeled(gk_dataset* data, const gk_labeled_set* set) {
    GK_REQUIRE(data && set);
    return wrap([&] {
        if (!data->data.x.empty() && data->data.x.front().size() != 2)
            throw std::invalid_argument("dataset already holds features of a different size");
        for (const gz::LabeledPoint& p : set->points) {
            data->data.x.push_back({p.x, p.y});
            data->data.y.push_back(p.label);
        }
    });
}

gk_status gk_dataset_add_recording(gk_dataset* data, const gk_recording* rec,
                                   const gk_aoi_set* aois, int with_time) {
    GK_REQUIRE(data && rec && aois);
    return wrap([&] {
        const size_t dim = with_time ? 3 : 2;
        if (!data->data.x.empty() && data->data.x.front().size() != dim)
            throw std::invalid_argument("dataset already holds features of a different size");
        std::vector<gz::LabeledPoint> labeled = gz::label_recording(aois->aois, rec->rec);
        std::vector<double> times = gz::valid_times(rec->rec);
        for (size_t i = 0; i < labeled.size(); ++i) {
            std::vector<double> row = {labeled[i].x, labeled[i].y};
            if (with_time) row.push_back(times[i]);
            data->data.x.push_back(std::move(row));
            data->data.y.push_back(labeled[i].label);
        }
    });
}

gk_train_options gk_default_train_options(void) { return gk_train_options{1e-3, 10, 0}; }

gk_status gk_svm_train(const gk_dataset* data, double gamma, double c,
                       const gk_train_options* options, gk_svm_model** out) {
    GK_REQUIRE(data && out);
    return wrap([&] {
        gk_train_options opt = train_options_from(options);
        gz::RbfParams params{gamma, c};
        *out = new gk_svm_model{gz::train_multiclass(data->data, params, opt.tol,
                                                     opt.max_passes, opt.normalize != 0)};
    });
}

void gk_svm_model_free(gk_svm_model* model) { delete model; }

size_t gk_svm_model_dim(const gk_svm_model* model) { return model ? model->model.dim : 0; }

gk_status gk_svm_predict(const gk_svm_model* model, const double* features, size_t dim,
                         int* label_out) {
    GK_REQUIRE(model && features && label_out);
    return wrap([&] {
        std::vector<double> point(features, features + dim);
        *label_out = gz::predict(model->model, point);
    });
}

gk_status gk_svm_evaluate(const gk_svm_model* model, const gk_dataset* data, gk_metrics* out) {
    GK_REQUIRE(model && data && out);
    return wrap([&] {
        gz::EvalMetrics m = gz::evaluate(model->model, data->data);
        out->accuracy = m.accuracy;
        out->precision = m.precision;
        out->recall = m.recall;
        out->f1 = m.f1;
    });
}

gk_status gk_svm_save(const gk_svm_model* model, const char* path) {
    GK_REQUIRE(model && path);
    return wrap([&] { gz::save_model(model->model, path); });
}

gk_status gk_svm_load(const char* path, gk_svm_model** out) {
    GK_REQUIRE(path && out);
    return wrap([&] { *out = new gk_svm_model{gz::load_model(path)}; });
}

size_t gk_default_c_grid(const double** out) {
    static const std::vector<double> grid = gz::default_c_grid();
    if (out) *out = grid.data();
    return grid.size();
}

size_t gk_default_gamma_grid(const double** out) {
    static const std::vector<double> grid = gz::default_gamma_grid();
    if (out) *out = grid.data();
    return grid.size();
}

gk_status gk_grid_search(const gk_dataset* data, const double* c_grid, size_t c_count,
                         const double* gamma_grid, size_t gamma_count, double holdout_fraction,
                         uint64_t seed, const gk_train_options* options, int jobs,
                         gk_grid_result** out) {
    GK_REQUIRE(data && out);
    GK_REQUIRE(c_grid || c_count == 0);
    GK_REQUIRE(gamma_grid || gamma_count == 0);
    return wrap([&] {
        gk_train_options opt = train_options_from(options);
        std::vector<double> cs(c_grid, c_grid + c_count);
        std::vector<double> gammas(gamma_grid, gamma_grid + gamma_count);
        *out = new gk_grid_result{gz::grid_search(data->data, cs, gammas, holdout_fraction,
                                                  seed, opt.tol, opt.max_passes, jobs)};
    });
}

void gk_grid_result_free(gk_grid_result* result) { delete result; }

size_t gk_grid_result_cell_count(const gk_grid_result* result) {
    return result ? result->result.cells.size() : 0;
}

gk_status gk_grid_result_cell(const gk_grid_result* result, size_t index, double* c,
                              double* gamma, double* accuracy) {
    GK_REQUIRE(result && c && gamma && accuracy);
    if (index >= result->result.cells.size())
        return set_error(GK_EINVAL, "grid cell index out of range");
    const gz::GridCell& cell = result->result.cells[index];
    *c = cell.c;
    *gamma = cell.gamma;
    *accuracy = cell.accuracy;
    g_last_error.clear();
    return GK_OK;
}

gk_status gk_grid_result_best(const gk_grid_result* result, double* c, double* gamma,
                              double* accuracy) {
    GK_REQUIRE(result && c && gamma && accuracy);
    *c = result->result.best_c;
    *gamma = result->result.best_gamma;
    *accuracy = result->result.best_accuracy;
    g_last_error.clear();
    return GK_OK;
}

gk_status gk_grid_result_to_csv(const gk_grid_result* result, char** out) {
    GK_REQUIRE(result && out);
    return wrap([&] { *out = dup_string(gz::grid_to_csv(result->result)); });
}

// ---------------------------------------------------------------------
// SEEV

gk_status gk_seev_params_read(const char* path, gk_seev_params** out) {
    GK_REQUIRE(path && out);
    return wrap([&] { *out = new gk_seev_params{gz::read_seev_params(path)}; });
}

gk_status gk_seev_params_create(const gk_seev_factor* factors, size_t count, double w_salience,
                                double w_effort, double w_expectancy, double w_value,
                                gk_seev_params** out) {
    GK_REQUIRE(out);
    GK_REQUIRE(factors || count == 0);
    return wrap([&] {
        gz::SeevParams params;
        params.factors.resize(count);
        for (size_t i = 0; i < count; ++i) {
            params.factors[i].aoi_label = factors[i].aoi_label;
            params.factors[i].salience = factors[i].salience;
            params.factors[i].effort = factors[i].effort;
            params.factors[i].expectancy = factors[i].expectancy;
            params.factors[i].value = factors[i].value;
        }
        params.w_salience = w_salience;
        params.w_effort = w_effort;
        params.w_expectancy = w_expectancy;
        params.w_value = w_value;
        gz::validate(params);
        *out = new gk_seev_params{std::move(params)};
    });
}

gk_status gk_seev_params_write(const gk_seev_params* params, const char* path) {
    GK_REQUIRE(params && path);
    return wrap([&] { gz::write_seev_params(params->params, path); });
}

void gk_seev_params_free(gk_seev_params* params) { delete params; }

gk_status gk_seev_scores(const gk_seev_params* params, gk_seev_prediction** out) {
    GK_REQUIRE(params && out);
    return wrap([&] { *out = new gk_seev_prediction{gz::seev_scores(params->params)}; });
}

void gk_seev_prediction_free(gk_seev_prediction* prediction) { delete prediction; }

size_t gk_seev_prediction_count(const gk_seev_prediction* prediction) {
    return prediction ? prediction->prediction.aoi_labels.size() : 0;
}

gk_status gk_seev_prediction_entry(const gk_seev_prediction* prediction, size_t index,
                                   int* aoi_label, double* probability) {
    GK_REQUIRE(prediction && aoi_label && probability);
    if (index >= prediction->prediction.aoi_labels.size())
        return set_error(GK_EINVAL, "prediction index out of range");
    *aoi_label = prediction->prediction.aoi_labels[index];
    *probability = prediction->prediction.probability[index];
    g_last_error.clear();
    return GK_OK;
}

gk_status gk_seev_compare(const gk_seev_prediction* prediction, const gk_dwell_report* observed,
                          gk_seev_comparison** out) {
    GK_REQUIRE(prediction && observed && out);
    return wrap([&] {
        *out = new gk_seev_comparison{gz::compare(prediction->prediction, observed->report)};
    });
}

void gk_seev_comparison_free(gk_seev_comparison* comparison) { delete comparison; }

double gk_seev_comparison_total_variation(const gk_seev_comparison* comparison) {
    return comparison ? comparison->comparison.total_variation : 0.0;
}

int gk_seev_comparison_pearson(const gk_seev_comparison* comparison, double* r) {
    if (!comparison || !comparison->comparison.pearson_r.has_value()) return 0;
    if (r) *r = *comparison->comparison.pearson_r;
    return 1;
}

gk_status gk_seev_comparison_to_csv(const gk_seev_comparison* comparison, char** out) {
    GK_REQUIRE(comparison && out);
    return wrap([&] { *out = dup_string(gz::comparison_to_csv(comparison->comparison)); });
}

// ---------------------------------------------------------------------
// Synthetic gaze generator

gk_status gk_default_profile(int scenario, int group, gk_profile* out) {
    GK_REQUIRE(out);
    return wrap([&] {
        gz::ScenarioProfile p =
            gz::default_profile(scenario_from_int(scenario), group_from_int(group));
        out->scenario = static_cast<int>(p.scenario);
        out->group = static_cast<int>(p.group);
        out->attend_target_prob = p.attend_target_prob;
        out->mean_fixation_duration = p.mean_fixation_duration;
        out->fixation_duration_cv = p.fixation_duration_cv;
        out->jitter_sd = p.jitter_sd;
        out->blink_rate = p.blink_rate;
        out->drift_rate = p.drift_rate;
        out->duration = p.duration;
        out->sample_rate = p.sample_rate;
    });
}

gk_status gk_generate_recording(const gk_profile* profile, const gk_aoi_set* aois, uint64_t seed,
                                double scene_width, double scene_height, gk_recording** out) {
    GK_REQUIRE(profile && aois && out);
    return wrap([&] {
        *out = new gk_recording{gz::generate_recording(profile_from(*profile), aois->aois, seed,
                                                       bounds_from(scene_width, scene_height))};
    });
}

gk_status gk_generate_dataset(const gk_profile* profiles, size_t profile_count,
                              const gk_aoi_set* aois, size_t n_per_profile, uint64_t seed,
                              double scene_width, double scene_height, gk_labeled_set** out) {
    GK_REQUIRE(profiles && aois && out);
    return wrap([&] {
        std::vector<gz::ScenarioProfile> list(profile_count);
        for (size_t i = 0; i < profile_count; ++i) list[i] = profile_from(profiles[i]);
        *out = new gk_labeled_set{gz::generate_dataset(
            list, aois->aois, n_per_profile, seed, bounds_from(scene_width, scene_height))};
    });
}

// ---------------------------------------------------------------------
// Statistics

gk_status gk_t_test(const double* a, size_t n_a, const double* b, size_t n_b, int variant,
                    double* t, double* df, double* p) {
    GK_REQUIRE(a && b && t && df && p);
    return wrap([&] {
        gz::TTestVariant v;
        if (variant == GK_T_POOLED) {
            v = gz::TTestVariant::Pooled;
        } else if (variant == GK_T_WELCH) {
            v = gz::TTestVariant::Welch;
        } else {
            throw std::invalid_argument("unknown t-test variant code " + std::to_string(variant));
        }
        gz::TTestResult r =
            gz::t_test(std::vector<double>(a, a + n_a), std::vector<double>(b, b + n_b), v);
        *t = r.t;
        *df = r.df;
        *p = r.p;
    });
}

gk_status gk_one_way_anova(const double* const* groups, const size_t* sizes, size_t group_count,
                           double* f, int* df_between, int* df_within, double* p) {
    GK_REQUIRE(groups && sizes && f && df_between && df_within && p);
    return wrap([&] {
        std::vector<std::vector<double>> data(group_count);
        for (size_t i = 0; i < group_count; ++i) {
            if (!groups[i]) throw std::invalid_argument(kNullArg);
            data[i].assign(groups[i], groups[i] + sizes[i]);
        }
        gz::AnovaResult r = gz::one_way_anova(data);
        *f = r.f;
        *df_between = r.df_between;
        *df_within = r.df_within;
        *p = r.p;
    });
}

gk_status gk_t_cdf(double x, double df, double* out) {
    GK_REQUIRE(out);
    return wrap([&] { *out = gz::t_cdf(x, df); });
}

gk_status gk_f_cdf(double x, double d1, double d2, double* out) {
    GK_REQUIRE(out);
    return wrap([&] { *out = gz::f_cdf(x, d1, d2); });
}

}  // extern "C"
