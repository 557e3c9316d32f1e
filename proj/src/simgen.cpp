#include "simgen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "aoi.hpp"
#include "rng.hpp"

namespace gazekit {

void validate(const ScenarioProfile& profile) {
    if (!(profile.attend_target_prob >= 0.0 && profile.attend_target_prob <= 1.0))
        throw std::invalid_argument("attend_target_prob must lie in [0, 1]");
    if (!(profile.mean_fixation_duration > 0.0))
        throw std::invalid_argument("mean fixation duration must be positive");
    if (!(profile.fixation_duration_cv >= 0.0))
        throw std::invalid_argument("fixation duration CV must be non-negative");
    if (!(profile.jitter_sd >= 0.0)) throw std::invalid_argument("jitter_sd must be non-negative");
    if (!(profile.blink_rate >= 0.0))
        throw std::invalid_argument("blink rate must be non-negative");
    if (!std::isfinite(profile.drift_rate))
        throw std::invalid_argument("drift rate must be finite");
    if (!(profile.duration > 0.0)) throw std::invalid_argument("duration must be positive");
    if (!(profile.sample_rate > 0.0)) throw std::invalid_argument("sample rate must be positive");
}

ScenarioProfile default_profile(Scenario scenario, Group group) {
    ScenarioProfile p;
    p.scenario = scenario;
    p.group = group;

    double base_attend;
    switch (scenario) {
        case Scenario::InfoRetrieval:
            base_attend = 0.85;
            p.mean_fixation_duration = 0.28;
            p.blink_rate = 12.0;
            break;
        case Scenario::DynamicNavigation:
            base_attend = 0.80;
            p.mean_fixation_duration = 0.22;
            p.blink_rate = 15.0;
            break;
        case Scenario::Collaborative:
            base_attend = 0.75;
            p.mean_fixation_duration = 0.25;
            p.blink_rate = 18.0;
            break;
        default:
            throw std::invalid_argument("unknown scenario");
    }

    double attend_drop;
    switch (group) {
        case Group::Control:
            attend_drop = 0.0;
            p.jitter_sd = 2.0;
            p.fixation_duration_cv = 0.35;
            break;
        case Group::AdhdLow:
            attend_drop = 0.10;
            p.jitter_sd = 3.0;
            p.fixation_duration_cv = 0.45;
            break;
        case Group::AdhdMedium:
            attend_drop = 0.22;
            p.jitter_sd = 4.0;
            p.fixation_duration_cv = 0.55;
            break;
        case Group::AdhdHigh:
            attend_drop = 0.36;
            p.jitter_sd = 5.0;
            p.fixation_duration_cv = 0.65;
            break;
        default:
            throw std::invalid_argument("unknown group");
    }

    p.attend_target_prob = base_attend - attend_drop;
    p.drift_rate = 0.0;
    p.duration = 60.0;
    p.sample_rate = 100.0;
    validate(p);
    return p;
}

namespace {

struct Segment {
    double t0, t1;
    double x0, y0;
    double x1, y1;
    bool fixation;
};

struct Point {
    double x, y;
};

Point pick_target(Rng& rng, const ScenarioProfile& profile, const std::vector<Aoi>& aois,
                  const SceneBounds& bounds) {
    if (rng.uniform01() < profile.attend_target_prob) {
        const Aoi& a = aois[rng.uniform_index(aois.size())];
        return {rng.uniform(a.x_min, a.x_max), rng.uniform(a.y_min, a.y_max)};
    }
    return {rng.uniform(0.0, bounds.width), rng.uniform(0.0, bounds.height)};
}

}  // namespace

GazeRecording generate_recording(const ScenarioProfile& profile, const std::vector<Aoi>& aois,
                                 std::uint64_t seed, const SceneBounds& bounds) {
    validate(profile);
    validate(aois);
    if (aois.empty()) throw std::invalid_argument("generator needs at least one AOI");
    if (!(bounds.width > 0.0 && bounds.height > 0.0))
        throw std::invalid_argument("scene bounds must be positive");

    Rng rng(seed);

    // Blink schedule: exponential gaps between runs, uniform run lengths.
    std::vector<std::pair<double, double>> blinks;
    if (profile.blink_rate > 0.0) {
        const double per_second = profile.blink_rate / 60.0;
        double t = rng.exponential(per_second);
        while (t < profile.duration) {
            const double len = rng.uniform(0.10, 0.25);
            blinks.emplace_back(t, t + len);
            t += len + rng.exponential(per_second);
        }
    }

    // Fixation/saccade alternation covering [0, duration].
    std::vector<Segment> segments;
    Point pos = pick_target(rng, profile, aois, bounds);
    double t = 0.0;
    while (t < profile.duration) {
        const double fix_len =
            rng.lognormal_mean_cv(profile.mean_fixation_duration, profile.fixation_duration_cv);
        segments.push_back({t, t + fix_len, pos.x, pos.y, pos.x, pos.y, true});
        t += fix_len;
        if (t >= profile.duration) break;
        const Point next = pick_target(rng, profile, aois, bounds);
        const double travel = std::hypot(next.x - pos.x, next.y - pos.y);
        const double sac_len = 0.020 + travel / 20000.0;
        segments.push_back({t, t + sac_len, pos.x, pos.y, next.x, next.y, false});
        t += sac_len;
        pos = next;
    }

    GazeRecording rec;
    rec.participant_id = std::string("sim-") + to_string(profile.scenario) + "-" +
                         to_string(profile.group) + "-" + std::to_string(seed);
    rec.group = profile.group;
    rec.scenario = profile.scenario;
    rec.sample_rate_hz = profile.sample_rate;

    std::size_t seg = 0;
    std::size_t blink = 0;
    for (std::size_t k = 0;; ++k) {
        const double tk = static_cast<double>(k) / profile.sample_rate;
        if (!(tk < profile.duration)) break;
        while (seg + 1 < segments.size() && tk >= segments[seg].t1) ++seg;
        const Segment& s = segments[seg];

        double x, y;
        if (s.fixation) {
            x = s.x0 + rng.normal(0.0, profile.jitter_sd);
            y = s.y0 + rng.normal(0.0, profile.jitter_sd);
        } else {
            const double w = std::clamp((tk - s.t0) / (s.t1 - s.t0), 0.0, 1.0);
            x = s.x0 + w * (s.x1 - s.x0);
            y = s.y0 + w * (s.y1 - s.y0);
        }
        x = std::clamp(x + profile.drift_rate * tk, 0.0, bounds.width);
        y = std::clamp(y, 0.0, bounds.height);

        GazeSample sample{tk, x, y, Validity::Valid};
        while (blink < blinks.size() && tk >= blinks[blink].second) ++blink;
        if (blink < blinks.size() && tk >= blinks[blink].first) {
            sample.validity = Validity::Blink;
            sample.x = 0.0;
            sample.y = 0.0;
        }
        rec.samples.push_back(sample);
    }

    validate(rec);
    return rec;
}

std::vector<LabeledPoint> generate_dataset(const std::vector<ScenarioProfile>& profiles,
                                           const std::vector<Aoi>& aois,
                                           std::size_t n_per_profile, std::uint64_t seed,
                                           const SceneBounds& bounds) {
    if (profiles.empty()) throw std::invalid_argument("no profiles given");
    if (n_per_profile < 1) throw std::invalid_argument("n_per_profile must be at least 1");

    Rng master(seed);
    std::vector<LabeledPoint> out;
    out.reserve(profiles.size() * n_per_profile);
    for (const ScenarioProfile& profile : profiles) {
        const std::uint64_t sub_seed = master.next_u64();
        const GazeRecording rec = generate_recording(profile, aois, sub_seed, bounds);
        const std::vector<LabeledPoint> labeled = label_recording(aois, rec);
        if (labeled.size() < n_per_profile)
            throw std::runtime_error("profile produced only " + std::to_string(labeled.size()) +
                                     " valid samples, need " + std::to_string(n_per_profile));
        std::vector<std::size_t> idx(labeled.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        master.shuffle(idx);
        idx.resize(n_per_profile);
        std::sort(idx.begin(), idx.end());
        for (std::size_t i : idx) out.push_back(labeled[i]);
    }
    return out;
}

}  // namespace gazekit
