#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aoi.hpp"

namespace gazekit {

/// SEEV coefficients: per-AOI Salience/Effort/Expectancy/Value factors
/// in [0,1] plus global non-negative weights.
struct SeevFactors {
    int aoi_label = 0;
    double salience = 0.0;
    double effort = 0.0;
    double expectancy = 0.0;
    double value = 0.0;
};

struct SeevParams {
    std::vector<SeevFactors> factors;  // >= 1 AOI, unique labels
    double w_salience = 1.0;
    double w_effort = 1.0;
    double w_expectancy = 1.0;
    double w_value = 1.0;
};

struct SeevPrediction {
    std::vector<int> aoi_labels;
    std::vector<double> probability;  // non-negative, sums to 1
};

struct SeevComparison {
    double total_variation = 0.0;           // 1/2 sum |p - q|, in [0, 1]
    std::optional<double> pearson_r;        // absent when a vector is constant
    std::vector<int> aoi_labels;
    std::vector<double> predicted;
    std::vector<double> observed;  // restricted to the prediction's AOIs, renormalized
};

void validate(const SeevParams& params);

/// raw_i = s*S_i - ef*EF_i + ex*EX_i + v*V_i, clamped below at 0, then
/// normalized; the all-zero case falls back to uniform.
SeevPrediction seev_scores(const SeevParams& params);

/// Restricts the observed dwell proportions to the prediction's AOIs,
/// renormalizes them, and reports total variation plus Pearson r (absent
/// for constant vectors). Throws when a predicted AOI label has no entry
/// in the report; zero observed mass renormalizes to uniform.
SeevComparison compare(const SeevPrediction& prediction, const DwellReport& observed);

/// Line-oriented parameter file: one `aoi_label S EF EX V` line per AOI
/// and a single `weights s ef ex v` line; `#` comments allowed.
SeevParams read_seev_params(const std::string& path);
void write_seev_params(const SeevParams& params, const std::string& path);

/// Rows `aoi_label,predicted_p,observed_p`.
std::string comparison_to_csv(const SeevComparison& comparison);

}  // namespace gazekit
