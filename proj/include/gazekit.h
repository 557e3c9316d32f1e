/* gazekit — gaze-analytics toolkit C API.
 *
 * Conventions:
 *   - Every fallible function returns gk_status (GK_OK == 0). On failure a
 *     human-readable diagnostic is available from gk_last_error() until the
 *     next gazekit call on the same thread.
 *   - Objects returned through gk_*** out-parameters are owned by the caller
 *     and released with the matching gk_*_free function. Strings returned
 *     through char** out-parameters are released with gk_string_free.
 *   - Borrowed pointers (const char* getters) stay valid while the owning
 *     object is alive.
 *   - All functions are thread-safe on distinct objects; a single object may
 *     be read concurrently but not mutated concurrently.
 */
#ifndef GAZEKIT_H
#define GAZEKIT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gk_status {
    GK_OK = 0,
    GK_EINVAL = 1, /* invalid argument / precondition violation */
    GK_EIO = 2,    /* file or data failure: missing, unwritable, malformed,
                      or data that cannot support the operation */
    GK_EFAIL = 3   /* internal failure */
} gk_status;

/* Last error message for the current thread; empty string if none. */
const char* gk_last_error(void);

const char* gk_version(void);

void gk_string_free(char* s);

/* ------------------------------------------------------------------ */
/* Enums mirrored as ints                                              */

typedef enum gk_validity { GK_VALID = 0, GK_MISSING = 1, GK_BLINK = 2 } gk_validity;

typedef enum gk_group {
    GK_CONTROL = 0,
    GK_ADHD_LOW = 1,
    GK_ADHD_MEDIUM = 2,
    GK_ADHD_HIGH = 3
} gk_group;

typedef enum gk_scenario {
    GK_INFO_RETRIEVAL = 0,
    GK_DYNAMIC_NAVIGATION = 1,
    GK_COLLABORATIVE = 2
} gk_scenario;

/* Case-insensitive token parsers matching the CSV vocabulary
 * (control/adhd_low/..., info_retrieval/...). */
gk_status gk_parse_group(const char* token, int* out);
gk_status gk_parse_scenario(const char* token, int* out);
const char* gk_group_name(int group);       /* NULL for unknown values */
const char* gk_scenario_name(int scenario); /* NULL for unknown values */

/* ------------------------------------------------------------------ */
/* Recordings                                                          */

typedef struct gk_recording gk_recording;

typedef struct gk_sample {
    double t; /* seconds */
    double x; /* pixels */
    double y; /* pixels */
    int validity;
} gk_sample;

gk_status gk_recording_read_csv(const char* path, gk_recording** out);
gk_status gk_recording_write_csv(const gk_recording* rec, const char* path);
void gk_recording_free(gk_recording* rec);

size_t gk_recording_sample_count(const gk_recording* rec);
gk_status gk_recording_sample(const gk_recording* rec, size_t index, gk_sample* out);
const char* gk_recording_participant(const gk_recording* rec);
int gk_recording_group(const gk_recording* rec);
int gk_recording_scenario(const gk_recording* rec);
double gk_recording_sample_rate(const gk_recording* rec);
double gk_recording_duration(const gk_recording* rec);

/* ------------------------------------------------------------------ */
/* Preprocessing                                                       */

typedef struct gk_calibration_window {
    double t_start;
    double t_end;
    double target_x;
    double target_y;
} gk_calibration_window;

gk_status gk_median_filter(const gk_recording* rec, int window, gk_recording** out);
gk_status gk_interpolate_gaps(const gk_recording* rec, double max_gap_s, gk_recording** out);
gk_status gk_drift_correct(const gk_recording* rec, const gk_calibration_window* windows,
                           size_t count, gk_recording** out);

/* Reads `t_start t_end target_x target_y` lines into a malloc'd array;
 * release with gk_calibration_free. */
gk_status gk_read_calibration(const char* path, gk_calibration_window** out, size_t* count);
void gk_calibration_free(gk_calibration_window* windows);

/* ------------------------------------------------------------------ */
/* AOIs, labeling, dwell                                               */

typedef struct gk_aoi_set gk_aoi_set;

typedef struct gk_aoi {
    int label; /* >= 1 */
    double x_min;
    double y_min;
    double x_max;
    double y_max;
} gk_aoi;

gk_status gk_aoi_set_read(const char* path, gk_aoi_set** out);
gk_status gk_aoi_set_create(const gk_aoi* boxes, size_t count, gk_aoi_set** out);
gk_status gk_aoi_set_write(const gk_aoi_set* aois, const char* path);
void gk_aoi_set_free(gk_aoi_set* aois);
size_t gk_aoi_set_count(const gk_aoi_set* aois);
gk_status gk_aoi_set_get(const gk_aoi_set* aois, size_t index, gk_aoi* out);

/* Label of the first AOI containing (x, y) under half-open containment,
 * 0 when outside all AOIs. */
int gk_label_point(const gk_aoi_set* aois, double x, double y);

typedef struct gk_labeled_set gk_labeled_set;

typedef struct gk_labeled_point {
    double x;
    double y;
    int label;
} gk_labeled_point;

gk_status gk_label_recording(const gk_aoi_set* aois, const gk_recording* rec,
                             gk_labeled_set** out);
gk_status gk_labeled_set_read(const char* path, gk_labeled_set** out);
gk_status gk_labeled_set_write(const gk_labeled_set* set, const char* path);
gk_status gk_labeled_set_create(const gk_labeled_point* points, size_t count,
                                gk_labeled_set** out);
void gk_labeled_set_free(gk_labeled_set* set);
size_t gk_labeled_set_count(const gk_labeled_set* set);
gk_status gk_labeled_set_get(const gk_labeled_set* set, size_t index, gk_labeled_point* out);

typedef struct gk_dwell_report gk_dwell_report;

gk_status gk_dwell_times(const gk_aoi_set* aois, const gk_recording* rec,
                         gk_dwell_report** out);
void gk_dwell_report_free(gk_dwell_report* report);
size_t gk_dwell_report_count(const gk_dwell_report* report);
gk_status gk_dwell_report_entry(const gk_dwell_report* report, size_t index, int* label,
                                double* duration_s, double* proportion);
double gk_dwell_report_total(const gk_dwell_report* report);
/* Proportion recorded for one label; GK_EINVAL if absent. */
gk_status gk_dwell_report_proportion(const gk_dwell_report* report, int label, double* out);
gk_status gk_dwell_report_to_csv(const gk_dwell_report* report, char** out);

/* ------------------------------------------------------------------ */
/* Event detection                                                     */

typedef struct gk_event_config {
    double dispersion_px;     /* fixation dispersion threshold, pixels */
    double min_fixation_s;    /* minimum fixation duration, seconds */
    double saccade_velocity;  /* saccade threshold, pixels/second */
} gk_event_config;

/* The documented defaults: 35 px, 0.060 s, 1500 px/s. */
gk_event_config gk_default_event_config(void);

typedef struct gk_fixation {
    double t_start;
    double t_end;
    double centroid_x;
    double centroid_y;
    double dispersion;
} gk_fixation;

typedef struct gk_saccade {
    double t_start;
    double t_end;
    double amplitude;
    double peak_velocity;
} gk_saccade;

typedef struct gk_features {
    int fixation_count;
    double mean_fixation_duration;
    int saccade_count;
    double mean_saccade_amplitude;
    double blink_rate; /* per minute */
} gk_features;

typedef struct gk_event_list gk_event_list;

/* config == NULL uses the defaults. */
gk_status gk_detect_events(const gk_recording* rec, const gk_event_config* config,
                           gk_event_list** out);
void gk_event_list_free(gk_event_list* events);
size_t gk_event_list_fixation_count(const gk_event_list* events);
size_t gk_event_list_saccade_count(const gk_event_list* events);
gk_status gk_event_list_fixation(const gk_event_list* events, size_t index, gk_fixation* out);
gk_status gk_event_list_saccade(const gk_event_list* events, size_t index, gk_saccade* out);
gk_status gk_event_list_to_csv(const gk_event_list* events, char** out);

gk_status gk_blink_rate(const gk_recording* rec, double* out);
gk_status gk_extract_features(const gk_recording* rec, const gk_event_config* config,
                              gk_features* out);

/* ------------------------------------------------------------------ */
/* SVM                                                                 */

typedef struct gk_dataset gk_dataset;

gk_status gk_dataset_create(gk_dataset** out);
void gk_dataset_free(gk_dataset* data);
size_t gk_dataset_count(const gk_dataset* data);
gk_status gk_dataset_add_labeled(gk_dataset* data, const gk_labeled_set* set);
/* Appends one feature row per Valid sample: (x, y) plus the timestamp as
 * a third feature when with_time != 0; labels come from the AOI oracle. */
gk_status gk_dataset_add_recording(gk_dataset* data, const gk_recording* rec,
                                   const gk_aoi_set* aois, int with_time);

typedef struct gk_svm_model gk_svm_model;

typedef struct gk_train_options {
    double tol;      /* KKT tolerance, > 0 (default 1e-3) */
    int max_passes;  /* consecutive update-free passes before stop (default 10) */
    int normalize;   /* standardize features when != 0 (default 0) */
} gk_train_options;

gk_train_options gk_default_train_options(void);

/* options == NULL uses the defaults. */
gk_status gk_svm_train(const gk_dataset* data, double gamma, double c,
                       const gk_train_options* options, gk_svm_model** out);
void gk_svm_model_free(gk_svm_model* model);
size_t gk_svm_model_dim(const gk_svm_model* model);
gk_status gk_svm_predict(const gk_svm_model* model, const double* features, size_t dim,
                         int* label_out);

typedef struct gk_metrics {
    double accuracy;
    double precision; /* macro */
    double recall;    /* macro */
    double f1;
} gk_metrics;

gk_status gk_svm_evaluate(const gk_svm_model* model, const gk_dataset* data, gk_metrics* out);

gk_status gk_svm_save(const gk_svm_model* model, const char* path);
gk_status gk_svm_load(const char* path, gk_svm_model** out);

/* The published default grids; returns the element count and leaves the
 * borrowed arrays valid for the process lifetime. */
size_t gk_default_c_grid(const double** out);
size_t gk_default_gamma_grid(const double** out);

typedef struct gk_grid_result gk_grid_result;

/* jobs > 1 evaluates cells concurrently (identical results regardless of
 * scheduling); jobs <= 0 uses one thread per hardware core.
 * options->normalize is ignored here: grid cells train on raw features. */
gk_status gk_grid_search(const gk_dataset* data, const double* c_grid, size_t c_count,
                         const double* gamma_grid, size_t gamma_count, double holdout_fraction,
                         uint64_t seed, const gk_train_options* options, int jobs,
                         gk_grid_result** out);
void gk_grid_result_free(gk_grid_result* result);
size_t gk_grid_result_cell_count(const gk_grid_result* result);
gk_status gk_grid_result_cell(const gk_grid_result* result, size_t index, double* c,
                              double* gamma, double* accuracy);
gk_status gk_grid_result_best(const gk_grid_result* result, double* c, double* gamma,
                              double* accuracy);
gk_status gk_grid_result_to_csv(const gk_grid_result* result, char** out);

/* ------------------------------------------------------------------ */
/* SEEV attention model                                                */

typedef struct gk_seev_params gk_seev_params;
typedef struct gk_seev_prediction gk_seev_prediction;
typedef struct gk_seev_comparison gk_seev_comparison;

typedef struct gk_seev_factor {
    int aoi_label;
    double salience;   /* [0, 1] */
    double effort;     /* [0, 1] */
    double expectancy; /* [0, 1] */
    double value;      /* [0, 1] */
} gk_seev_factor;

gk_status gk_seev_params_read(const char* path, gk_seev_params** out);
gk_status gk_seev_params_create(const gk_seev_factor* factors, size_t count, double w_salience,
                                double w_effort, double w_expectancy, double w_value,
                                gk_seev_params** out);
gk_status gk_seev_params_write(const gk_seev_params* params, const char* path);
void gk_seev_params_free(gk_seev_params* params);

gk_status gk_seev_scores(const gk_seev_params* params, gk_seev_prediction** out);
void gk_seev_prediction_free(gk_seev_prediction* prediction);
size_t gk_seev_prediction_count(const gk_seev_prediction* prediction);
gk_status gk_seev_prediction_entry(const gk_seev_prediction* prediction, size_t index,
                                   int* aoi_label, double* probability);

gk_status gk_seev_compare(const gk_seev_prediction* prediction, const gk_dwell_report* observed,
                          gk_seev_comparison** out);
void gk_seev_comparison_free(gk_seev_comparison* comparison);
double gk_seev_comparison_total_variation(const gk_seev_comparison* comparison);
/* Returns 1 and writes r when Pearson r is defined, else returns 0. */
int gk_seev_comparison_pearson(const gk_seev_comparison* comparison, double* r);
gk_status gk_seev_comparison_to_csv(const gk_seev_comparison* comparison, char** out);

/* ------------------------------------------------------------------ */
/* Synthetic gaze generator                                            */

typedef struct gk_profile {
    int scenario;
    int group;
    double attend_target_prob;     /* [0, 1] */
    double mean_fixation_duration; /* seconds */
    double fixation_duration_cv;
    double jitter_sd;              /* pixels */
    double blink_rate;             /* per minute */
    double drift_rate;             /* pixels/second */
    double duration;               /* seconds */
    double sample_rate;            /* Hz */
} gk_profile;

gk_status gk_default_profile(int scenario, int group, gk_profile* out);

/* scene_width/scene_height <= 0 fall back to the 1920x1080 default. */
gk_status gk_generate_recording(const gk_profile* profile, const gk_aoi_set* aois, uint64_t seed,
                                double scene_width, double scene_height, gk_recording** out);
gk_status gk_generate_dataset(const gk_profile* profiles, size_t profile_count,
                              const gk_aoi_set* aois, size_t n_per_profile, uint64_t seed,
                              double scene_width, double scene_height, gk_labeled_set** out);

/* ------------------------------------------------------------------ */
/* Statistics                                                          */

typedef enum gk_t_variant { GK_T_POOLED = 0, GK_T_WELCH = 1 } gk_t_variant;

gk_status gk_t_test(const double* a, size_t n_a, const double* b, size_t n_b, int variant,
                    double* t, double* df, double* p);
gk_status gk_one_way_anova(const double* const* groups, const size_t* sizes, size_t group_count,
                           double* f, int* df_between, int* df_within, double* p);
gk_status gk_t_cdf(double x, double df, double* out);
gk_status gk_f_cdf(double x, double d1, double d2, double* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* GAZEKIT_H */
