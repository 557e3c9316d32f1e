#pragma once

#include <string>
#include <vector>

#include "types.hpp"

namespace gazekit {

/// True fixation target over a known time window, used for drift
/// correction.
struct CalibrationWindow {
    double t_start = 0.0;
    double t_end = 0.0;
    double target_x = 0.0;
    double target_y = 0.0;
};

/// Reads a gaze recording from CSV with header
/// `participant_id,group,scenario,sample_rate_hz,t,x,y,validity`.
/// The recording-level columns must agree on every row. x and y may be
/// empty on rows whose validity is not `valid`; they are stored as 0.
/// Throws std::runtime_error with the offending line number on malformed
/// rows, unknown tokens, or non-increasing timestamps.
GazeRecording read_gaze_csv(const std::string& path);

/// Writes the CSV accepted by read_gaze_csv. Floating values use
/// shortest round-trip formatting, so read-back reproduces the recording
/// exactly. Throws std::invalid_argument on empty recordings and
/// std::runtime_error on unwritable paths.
void write_gaze_csv(const GazeRecording& recording, const std::string& path);

/// Reads a line-oriented AOI config: `label x_min y_min x_max y_max`,
/// one AOI per line, `#` starts a comment. AOIs are returned in file
/// order and validated (unique positive labels, non-degenerate boxes).
std::vector<Aoi> read_aoi_config(const std::string& path);

void write_aoi_config(const std::vector<Aoi>& aois, const std::string& path);

/// Line format: `t_start t_end target_x target_y`, `#` comments allowed.
std::vector<CalibrationWindow> read_calibration(const std::string& path);

/// Labeled-point CSV with header `x,y,label`.
std::vector<LabeledPoint> read_labeled_csv(const std::string& path);
void write_labeled_csv(const std::vector<LabeledPoint>& points, const std::string& path);

}  // namespace gazekit
