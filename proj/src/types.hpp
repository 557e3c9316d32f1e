#pragma once

#include <string>
#include <vector>

namespace gazekit {

enum class Validity { Valid, Missing, Blink };

enum class Group { Control, AdhdLow, AdhdMedium, AdhdHigh };

enum class Scenario { InfoRetrieval, DynamicNavigation, Collaborative };

/// One timestamped gaze point. When validity != Valid the coordinates are
/// carried as placeholders and must not be interpreted by consumers.
struct GazeSample {
    double t = 0.0;        // seconds, >= 0
    double x = 0.0;        // pixels
    double y = 0.0;        // pixels
    Validity validity = Validity::Valid;
};

struct GazeRecording {
    std::string participant_id;
    Group group = Group::Control;
    Scenario scenario = Scenario::InfoRetrieval;
    double sample_rate_hz = 0.0;
    std::vector<GazeSample> samples;  // timestamps strictly increasing

    double duration() const {
        return samples.empty() ? 0.0 : samples.back().t - samples.front().t;
    }
};

/// Axis-aligned rectangular area of interest. Containment is half-open:
/// [x_min, x_max) x [y_min, y_max).
struct Aoi {
    int label = 1;  // >= 1; label 0 is reserved for "outside all AOIs"
    double x_min = 0.0;
    double y_min = 0.0;
    double x_max = 0.0;
    double y_max = 0.0;

    bool contains(double x, double y) const {
        return x >= x_min && x < x_max && y >= y_min && y < y_max;
    }
};

struct LabeledPoint {
    double x = 0.0;
    double y = 0.0;
    int label = 0;  // 0 or an AOI label
};

const char* to_string(Validity v);
const char* to_string(Group g);
const char* to_string(Scenario s);

// Case-insensitive token parsers. Throw std::invalid_argument on unknown
// tokens, naming the offending value.
Validity parse_validity(const std::string& token);
Group parse_group(const std::string& token);
Scenario parse_scenario(const std::string& token);

/// Throws std::invalid_argument unless the recording satisfies its
/// invariants (non-empty, positive rate, finite non-negative strictly
/// increasing timestamps).
void validate(const GazeRecording& recording);

/// Throws std::invalid_argument unless every rectangle is non-degenerate
/// with a unique label >= 1.
void validate(const std::vector<Aoi>& aois);

}  // namespace gazekit
