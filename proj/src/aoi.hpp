#pragma once

#include <map>
#include <string>
#include <vector>

#include "types.hpp"

namespace gazekit {

/// Per-label dwell durations over a recording. Contains an entry for
/// label 0 and for every configured AOI label, even when zero.
struct DwellReport {
    std::map<int, double> duration_s;
    std::map<int, double> proportion;
    double total_s = 0.0;  // t_last - t_first
};

/// Label of the first AOI in list order containing (x, y); containment
/// includes min edges and excludes max edges. 0 when no AOI contains it.
int label_point(const std::vector<Aoi>& aois, double x, double y);

/// One LabeledPoint per Valid sample, in time order.
std::vector<LabeledPoint> label_recording(const std::vector<Aoi>& aois,
                                          const GazeRecording& recording);

/// Timestamps of the Valid samples, aligned with label_recording output.
std::vector<double> valid_times(const GazeRecording& recording);

/// Attributes each interval [t_i, t_i+1) to sample i's label (0 for
/// non-Valid samples); the last sample contributes nothing. Requires at
/// least 2 samples.
DwellReport dwell_times(const std::vector<Aoi>& aois, const GazeRecording& recording);

/// Rows `label,duration_s,proportion` in ascending label order.
std::string dwell_to_csv(const DwellReport& report);

}  // namespace gazekit
