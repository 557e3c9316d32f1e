#include "types.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <stdexcept>

namespace gazekit {

namespace {

std::string lower(const std::string& s) {
    std::string out = s;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace

const char* to_string(Validity v) {
    switch (v) {
        case Validity::Valid: return "valid";
        case Validity::Missing: return "missing";
        case Validity::Blink: return "blink";
    }
    return "valid";
}

const char* to_string(Group g) {
    switch (g) {
        case Group::Control: return "control";
        case Group::AdhdLow: return "adhd_low";
        case Group::AdhdMedium: return "adhd_medium";
        case Group::AdhdHigh: return "adhd_high";
    }
    return "control";
}

const char* to_string(Scenario s) {
    switch (s) {
        case Scenario::InfoRetrieval: return "info_retrieval";
        case Scenario::DynamicNavigation: return "dynamic_navigation";
        case Scenario::Collaborative: return "collaborative";
    }
    return "info_retrieval";
}

Validity parse_validity(const std::string& token) {
    const std::string t = lower(token);
    if (t == "valid") return Validity::Valid;
    if (t == "missing") return Validity::Missing;
    if (t == "blink") return Validity::Blink;
    throw std::invalid_argument("unknown validity token '" + token + "'");
}

Group parse_group(const std::string& token) {
    const std::string t = lower(token);
    if (t == "control") return Group::Control;
    if (t == "adhd_low") return Group::AdhdLow;
    if (t == "adhd_medium") return Group::AdhdMedium;
    if (t == "adhd_high") return Group::AdhdHigh;
    throw std::invalid_argument("unknown group token '" + token + "'");
}

Scenario parse_scenario(const std::string& token) {
    const std::string t = lower(token);
    if (t == "info_retrieval") return Scenario::InfoRetrieval;
    if (t == "dynamic_navigation") return Scenario::DynamicNavigation;
    if (t == "collaborative") return Scenario::Collaborative;
    throw std::invalid_argument("unknown scenario token '" + token + "'");
}

void validate(const GazeRecording& recording) {
    if (recording.samples.empty())
        throw std::invalid_argument("recording must contain at least one sample");
    if (!(recording.sample_rate_hz > 0.0))
        throw std::invalid_argument("sample rate must be positive");
    double prev = -1.0;
    for (const GazeSample& s : recording.samples) {
        if (!std::isfinite(s.t) || s.t < 0.0)
            throw std::invalid_argument("sample timestamps must be finite and non-negative");
        if (s.t <= prev)
            throw std::invalid_argument("sample timestamps must be strictly increasing");
        prev = s.t;
    }
}

void validate(const std::vector<Aoi>& aois) {
    std::set<int> labels;
    for (const Aoi& a : aois) {
        if (a.label == 0)
            throw std::invalid_argument("AOI label 0 is reserved for points outside all AOIs");
        if (a.label < 0)
            throw std::invalid_argument("AOI labels must be positive");
        if (!(a.x_min < a.x_max) || !(a.y_min < a.y_max))
            throw std::invalid_argument("degenerate AOI rectangle for label " +
                                        std::to_string(a.label));
        if (!labels.insert(a.label).second)
            throw std::invalid_argument("duplicate AOI label " + std::to_string(a.label));
    }
}

}  // namespace gazekit
