#pragma once

#include <vector>

#include "gaze_io.hpp"
#include "types.hpp"

namespace gazekit {

/// Per-axis median filter over the Valid samples only. `window` must be
/// odd and positive; it is truncated symmetrically near the ends of the
/// Valid subsequence so every median is taken over an odd-sized set.
/// Missing/Blink samples pass through untouched and never enter a
/// neighbor's window. Timestamps, validity, and count are preserved.
GazeRecording median_filter(const GazeRecording& recording, int window);

/// Replaces every maximal run of Missing samples that is bounded by
/// Valid samples on both sides and whose bounding gap (t_after -
/// t_before) is at most `max_gap` seconds with linear interpolation,
/// marking it Valid. All other Missing runs are relabeled Blink. The
/// output never contains a Missing sample.
GazeRecording interpolate_gaps(const GazeRecording& recording, double max_gap);

/// Subtracts per-window offsets (mean observed Valid position minus the
/// window's target) from every Valid sample. Offsets are linearly
/// interpolated in time between window midpoints and held constant
/// before the first and after the last midpoint. Throws
/// std::runtime_error if a window contains no Valid sample.
GazeRecording drift_correct(const GazeRecording& recording,
                            const std::vector<CalibrationWindow>& calibrations);

}  // namespace gazekit
