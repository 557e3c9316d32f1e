#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "types.hpp"

namespace gazekit {

struct RbfParams {
    double gamma = 0.0;  // 1/pixels^2
    double c = 1.0;      // box constraint
};

/// exp(-gamma * ||u - v||^2). gamma = 0 (degenerate, constant 1) is
/// permitted here but rejected by the trainers.
double rbf_kernel(const std::vector<double>& u, const std::vector<double>& v, double gamma);

struct BinarySvm {
    std::vector<std::vector<double>> support_points;
    std::vector<double> dual_coefficients;  // alpha_i * y_i per support point
    double bias = 0.0;
    RbfParams params;
    /// Indices of the support points in the training set passed to
    /// train_binary. Diagnostic only; not serialized.
    std::vector<std::size_t> support_indices;

    /// f(x) = sum_i dual_coefficients[i] * K(sv_i, x) + bias.
    double decision_function(const std::vector<double>& x) const;
};

/// Trains a soft-margin RBF SVM with sequential minimal optimization.
/// `labels` must be -1/+1 with both classes present. The solver keeps a
/// full error cache, picks the second index by the largest |E_i - E_j|
/// among non-bound points (ties to the smallest index) with deterministic
/// full scans as fallback, and stops after `max_passes` consecutive
/// passes without an alpha update.
BinarySvm train_binary(const std::vector<std::vector<double>>& points,
                       const std::vector<int>& labels, const RbfParams& params,
                       double tol = 1e-3, int max_passes = 10);

/// Largest KKT violation of a trained binary model over its training
/// set: alpha=0 points must have y*f >= 1, interior points y*f = 1,
/// bound points y*f <= 1 (violations measured as positive distances).
double max_kkt_violation(const BinarySvm& model, const std::vector<std::vector<double>>& points,
                         const std::vector<int>& labels, double c);

/// Feature matrix + integer labels (any label values).
struct Dataset {
    std::vector<std::vector<double>> x;
    std::vector<int> y;
};

Dataset to_dataset(const std::vector<LabeledPoint>& points);

/// Per-dimension standardization applied as (x - mean) / scale.
struct Normalization {
    std::vector<double> mean;
    std::vector<double> scale;
};

struct SvmModel {
    std::vector<int> classes;                // sorted ascending
    std::vector<BinarySvm> pairwise_models;  // (c_i, c_j), i < j, lexicographic
    RbfParams params;
    std::size_t dim = 0;
    std::optional<Normalization> normalization;
};

/// One-vs-one multiclass training: one binary model per class pair, the
/// smaller label mapped to +1. Requires >= 2 distinct labels.
SvmModel train_multiclass(const Dataset& data, const RbfParams& params, double tol = 1e-3,
                          int max_passes = 10, bool normalize = false);
SvmModel train_multiclass(const std::vector<LabeledPoint>& data, const RbfParams& params,
                          double tol = 1e-3, int max_passes = 10, bool normalize = false);

/// Majority vote over the pairwise decision functions; ties go to the
/// smallest label.
int predict(const SvmModel& model, const std::vector<double>& point);
std::vector<int> predict_all(const SvmModel& model, const std::vector<std::vector<double>>& points);

struct EvalMetrics {
    double accuracy = 0.0;
    double precision = 0.0;  // macro
    double recall = 0.0;     // macro
    double f1 = 0.0;         // harmonic mean of macro precision/recall
};

/// Confusion-matrix metrics; per-class precision/recall use 0/0 = 0 and
/// are macro-averaged over the union of true and predicted labels.
EvalMetrics evaluate(const SvmModel& model, const Dataset& data);
EvalMetrics evaluate(const SvmModel& model, const std::vector<LabeledPoint>& data);

struct SplitIndices {
    std::vector<std::size_t> train;
    std::vector<std::size_t> holdout;
};

/// Seeded stratified split: per class, a Fisher-Yates shuffle sends
/// clamp(round(fraction * n_c), 1, n_c - 1) points to the hold-out side.
/// Requires every class to have >= 2 points. Output index lists are
/// sorted ascending.
SplitIndices stratified_split(const std::vector<int>& labels, double holdout_fraction,
                              std::uint64_t seed);

struct GridCell {
    double c = 0.0;
    double gamma = 0.0;
    double accuracy = 0.0;
};

struct GridSearchResult {
    std::vector<GridCell> cells;  // C-major over the grids as given
    double best_c = 0.0;
    double best_gamma = 0.0;
    double best_accuracy = 0.0;
    std::uint64_t split_seed = 0;
};

/// The exact published grids this toolkit defaults to.
std::vector<double> default_c_grid();    // {26.5, 26.75, 27, 27.25, 27.5, 27.75, 28}
std::vector<double> default_gamma_grid();  // {2^-14.5, 2^-14.75, ..., 2^-16}

/// Documented reference operating point; both values sit inside the
/// default grids.
inline constexpr double kReferenceC = 27.0;
inline constexpr double kReferenceGamma = 3.0517578125e-05;  // 2^-15

/// Hold-out grid search: one seeded stratified split shared by every
/// (C, gamma) cell; accuracy scored on the hold-out portion. Best cell =
/// max accuracy, ties broken by smaller C then smaller gamma. `jobs` > 1
/// evaluates cells concurrently; results are identical regardless of
/// scheduling. jobs <= 0 means one thread per hardware core.
GridSearchResult grid_search(const Dataset& data, const std::vector<double>& c_grid,
                             const std::vector<double>& gamma_grid, double holdout_fraction,
                             std::uint64_t seed, double tol = 1e-3, int max_passes = 10,
                             int jobs = 1);

/// Rows `c,gamma,accuracy` in cell order.
std::string grid_to_csv(const GridSearchResult& result);

/// Structured-text model round-trip, exact to 17 significant digits.
void save_model(const SvmModel& model, const std::string& path);
SvmModel load_model(const std::string& path);

}  // namespace gazekit
