#pragma once

#include <string>
#include <vector>

#include "types.hpp"

namespace gazekit {

struct FixationEvent {
    double t_start = 0.0;
    double t_end = 0.0;
    double centroid_x = 0.0;
    double centroid_y = 0.0;
    double dispersion = 0.0;  // (x range) + (y range) over the window

    double duration() const { return t_end - t_start; }
};

struct SaccadeEvent {
    double t_start = 0.0;
    double t_end = 0.0;
    double amplitude = 0.0;      // straight-line distance start -> end
    double peak_velocity = 0.0;  // pixels/second
};

/// Per-recording summary features.
struct FeatureVector {
    int fixation_count = 0;
    double mean_fixation_duration = 0.0;  // 0 when fixation_count == 0
    int saccade_count = 0;
    double mean_saccade_amplitude = 0.0;  // 0 when saccade_count == 0
    double blink_rate = 0.0;              // blinks per minute
};

struct EventConfig {
    double dispersion_px = 35.0;
    double min_fixation_s = 0.060;
    double saccade_velocity = 1500.0;  // pixels/second
};

/// Dispersion-threshold fixation detection over Valid samples. A window
/// grows while (x range + y range) stays within `dispersion_threshold`;
/// when the next sample would exceed it (or a non-Valid sample / the end
/// of the recording cuts the run) a fixation is emitted if the window
/// spans at least `min_duration` seconds, and the search restarts at the
/// breaking sample.
std::vector<FixationEvent> detect_fixations(const GazeRecording& recording,
                                            double dispersion_threshold, double min_duration);

/// Velocity-threshold saccade detection. Velocities are computed between
/// adjacent Valid samples only; each maximal run of velocities >=
/// `velocity_threshold` becomes one event.
std::vector<SaccadeEvent> detect_saccades(const GazeRecording& recording,
                                          double velocity_threshold);

/// Maximal runs of Blink samples per minute of recording (t_last -
/// t_first); a single-sample recording yields 0.
double blink_rate(const GazeRecording& recording);

FeatureVector extract_features(const GazeRecording& recording, const EventConfig& config);

/// Serializes fixations and saccades as `type,t_start,t_end,a,b` rows,
/// time-ordered (ties: fixation first). For fixations a,b =
/// centroid_x,centroid_y; for saccades a,b = amplitude,peak_velocity.
std::string events_to_csv(const std::vector<FixationEvent>& fixations,
                          const std::vector<SaccadeEvent>& saccades);

}  // namespace gazekit
