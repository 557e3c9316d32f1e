#pragma once

#include <cstdint>
#include <vector>

#include "types.hpp"

namespace gazekit {

struct SceneBounds {
    double width = 1920.0;
    double height = 1080.0;
};

/// Generator knobs for one scenario x group cell.
struct ScenarioProfile {
    Scenario scenario = Scenario::InfoRetrieval;
    Group group = Group::Control;
    double attend_target_prob = 0.85;     // chance a fixation targets a task AOI
    double mean_fixation_duration = 0.28; // seconds
    double fixation_duration_cv = 0.35;   // coefficient of variation
    double jitter_sd = 2.0;               // within-fixation Gaussian noise, pixels
    double blink_rate = 12.0;             // blinks per minute
    double drift_rate = 0.0;              // pixels/second, applied along +x
    double duration = 60.0;               // seconds
    double sample_rate = 100.0;           // Hz
};

void validate(const ScenarioProfile& profile);

/// Documented default table. Scenario sets the task tempo
/// (mean fixation duration, blink rate, baseline attention); group folds
/// in severity: attention drops and jitter/duration variability grow
/// monotonically from Control through AdhdHigh.
ScenarioProfile default_profile(Scenario scenario, Group group);

/// Synthesizes a recording as a fixation/saccade alternation: each
/// fixation targets a uniformly drawn point in a random task AOI with
/// probability attend_target_prob, otherwise a uniform point in the
/// scene; durations are log-normal with the profile's mean/CV; samples
/// carry Gaussian jitter around the fixation point; saccades interpolate
/// linearly between fixation centers over 0.020 s + 50 us/px of travel.
/// Blink runs arrive as a Poisson process at blink_rate and overwrite
/// samples with Blink validity at (0, 0). Deterministic in (profile,
/// aois, seed).
GazeRecording generate_recording(const ScenarioProfile& profile, const std::vector<Aoi>& aois,
                                 std::uint64_t seed, const SceneBounds& bounds = SceneBounds());

/// Generates one recording per profile (seeds derived from `seed` in
/// profile order), labels Valid samples geometrically, and subsamples
/// n_per_profile labeled points per profile, kept in time order.
std::vector<LabeledPoint> generate_dataset(const std::vector<ScenarioProfile>& profiles,
                                           const std::vector<Aoi>& aois,
                                           std::size_t n_per_profile, std::uint64_t seed,
                                           const SceneBounds& bounds = SceneBounds());

}  // namespace gazekit
