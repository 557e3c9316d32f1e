#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "aoi.hpp"
#include "doctest.h"
#include "events.hpp"
#include "rng.hpp"
#include "simgen.hpp"
#include "types.hpp"

using namespace gazekit;

namespace {

const std::vector<Aoi> task_aois = {
    {1, 260, 290, 760, 590},
    {2, 1160, 290, 1660, 590},
};

const Group kGroups[] = {Group::Control, Group::AdhdLow, Group::AdhdMedium, Group::AdhdHigh};
const Scenario kScenarios[] = {Scenario::InfoRetrieval, Scenario::DynamicNavigation,
                               Scenario::Collaborative};

double label0_proportion(const GazeRecording& rec) {
    return dwell_times(task_aois, rec).proportion.at(0);
}

}  // namespace

TEST_CASE("default profile table: 12 distinct valid cells with severity orderings") {
    std::set<std::tuple<double, double, double, double, double>> distinct;
    for (Scenario s : kScenarios) {
        double prev_attend = 2.0;
        double prev_jitter = -1.0;
        double prev_cv = -1.0;
        for (Group g : kGroups) {
            const ScenarioProfile p = default_profile(s, g);
            CHECK_NOTHROW(validate(p));
            CHECK(p.scenario == s);
            CHECK(p.group == g);
            CHECK(p.duration == 60.0);
            CHECK(p.sample_rate == 100.0);
            // Severity strictly lowers attention, raises jitter and spread.
            CHECK(p.attend_target_prob < prev_attend);
            CHECK(p.jitter_sd > prev_jitter);
            CHECK(p.fixation_duration_cv > prev_cv);
            prev_attend = p.attend_target_prob;
            prev_jitter = p.jitter_sd;
            prev_cv = p.fixation_duration_cv;
            distinct.insert({p.attend_target_prob, p.mean_fixation_duration,
                             p.fixation_duration_cv, p.jitter_sd, p.blink_rate});
        }
    }
    CHECK(distinct.size() == 12);

    // Same cell twice -> identical profile.
    const ScenarioProfile a = default_profile(Scenario::Collaborative, Group::AdhdLow);
    const ScenarioProfile b = default_profile(Scenario::Collaborative, Group::AdhdLow);
    CHECK(a.attend_target_prob == b.attend_target_prob);
    CHECK(a.mean_fixation_duration == b.mean_fixation_duration);
    CHECK(a.jitter_sd == b.jitter_sd);
    CHECK(a.blink_rate == b.blink_rate);

    const ScenarioProfile control = default_profile(Scenario::InfoRetrieval, Group::Control);
    const ScenarioProfile high = default_profile(Scenario::InfoRetrieval, Group::AdhdHigh);
    CHECK(control.attend_target_prob > high.attend_target_prob);
    CHECK(control.attend_target_prob == 0.85);
    CHECK(control.mean_fixation_duration == 0.28);
    CHECK(control.blink_rate == 12.0);
}

TEST_CASE("profile validation rejects out-of-range knobs") {
    ScenarioProfile p = default_profile(Scenario::InfoRetrieval, Group::Control);
    p.attend_target_prob = 1.5;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
    p = default_profile(Scenario::InfoRetrieval, Group::Control);
    p.mean_fixation_duration = 0.0;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
    p = default_profile(Scenario::InfoRetrieval, Group::Control);
    p.duration = -5.0;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
    p = default_profile(Scenario::InfoRetrieval, Group::Control);
    p.jitter_sd = -1.0;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
    p = default_profile(Scenario::InfoRetrieval, Group::Control);
    p.sample_rate = 0.0;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
}

TEST_CASE("10 s at 100 Hz yields exactly 1000 strictly increasing samples") {
    ScenarioProfile p = default_profile(Scenario::InfoRetrieval, Group::Control);
    p.duration = 10.0;
    const GazeRecording rec = generate_recording(p, task_aois, 42);
    CHECK(rec.samples.size() == 1000);
    CHECK_NOTHROW(validate(rec));
    CHECK(rec.sample_rate_hz == 100.0);
    CHECK(rec.group == Group::Control);
    CHECK(rec.scenario == Scenario::InfoRetrieval);
    for (std::size_t i = 1; i < rec.samples.size(); ++i)
        CHECK(rec.samples[i].t > rec.samples[i - 1].t);
}

TEST_CASE("identical (profile, aois, seed) give bit-identical recordings") {
    ScenarioProfile p = default_profile(Scenario::DynamicNavigation, Group::AdhdMedium);
    p.duration = 20.0;
    const GazeRecording a = generate_recording(p, task_aois, 777);
    const GazeRecording b = generate_recording(p, task_aois, 777);
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        CHECK(a.samples[i].t == b.samples[i].t);
        CHECK(a.samples[i].x == b.samples[i].x);
        CHECK(a.samples[i].y == b.samples[i].y);
        CHECK(a.samples[i].validity == b.samples[i].validity);
    }
    // A different seed perturbs the stream.
    const GazeRecording c = generate_recording(p, task_aois, 778);
    bool any_difference = false;
    for (std::size_t i = 0; i < std::min(a.samples.size(), c.samples.size()); ++i)
        any_difference = any_difference || a.samples[i].x != c.samples[i].x;
    CHECK(any_difference);
}

TEST_CASE("Valid samples stay inside the scene bounds; blinks are placeholders") {
    ScenarioProfile p = default_profile(Scenario::Collaborative, Group::AdhdHigh);
    p.duration = 30.0;
    const SceneBounds bounds{1280.0, 720.0};
    const GazeRecording rec = generate_recording(p, task_aois, 9, bounds);
    int blink_samples = 0;
    for (const GazeSample& s : rec.samples) {
        if (s.validity == Validity::Blink) {
            ++blink_samples;
            CHECK(s.x == 0.0);
            CHECK(s.y == 0.0);
        } else {
            CHECK(s.x >= 0.0);
            CHECK(s.x <= bounds.width);
            CHECK(s.y >= 0.0);
            CHECK(s.y <= bounds.height);
        }
    }
    CHECK(blink_samples > 0);  // 18/min for 30 s makes a blank run near-certain
}

TEST_CASE("generated blink rate is near the configured rate") {
    ScenarioProfile p = default_profile(Scenario::InfoRetrieval, Group::Control);
    p.duration = 300.0;  // long window to tame Poisson noise
    const GazeRecording rec = generate_recording(p, task_aois, 4);
    const double measured = blink_rate(rec);
    CHECK(measured >= 8.0);   // configured 12/min
    CHECK(measured <= 16.0);
}

TEST_CASE("higher severity spends strictly more time off the task AOIs") {
    ScenarioProfile low = default_profile(Scenario::InfoRetrieval, Group::AdhdLow);
    ScenarioProfile high = default_profile(Scenario::InfoRetrieval, Group::AdhdHigh);
    low.duration = 600.0;
    high.duration = 600.0;
    const double p_low = label0_proportion(generate_recording(low, task_aois, 7));
    const double p_high = label0_proportion(generate_recording(high, task_aois, 7));
    CHECK(p_high > p_low);
}

TEST_CASE("severity tiers order off-AOI dwell Low < Medium < High at scale") {
    double prev = -1.0;
    for (Group g : {Group::AdhdLow, Group::AdhdMedium, Group::AdhdHigh}) {
        ScenarioProfile p = default_profile(Scenario::InfoRetrieval, g);
        p.duration = 600.0;  // 60 000 samples
        const double off = label0_proportion(generate_recording(p, task_aois, 7));
        CHECK(off > prev);
        prev = off;
    }
}

TEST_CASE("higher severity produces at least as many saccades") {
    ScenarioProfile low = default_profile(Scenario::InfoRetrieval, Group::AdhdLow);
    ScenarioProfile high = default_profile(Scenario::InfoRetrieval, Group::AdhdHigh);
    low.duration = 300.0;
    high.duration = 300.0;
    const FeatureVector f_low =
        extract_features(generate_recording(low, task_aois, 7), EventConfig{});
    const FeatureVector f_high =
        extract_features(generate_recording(high, task_aois, 7), EventConfig{});
    CHECK(f_high.saccade_count >= f_low.saccade_count);
}

TEST_CASE("generator preconditions") {
    const ScenarioProfile p = default_profile(Scenario::InfoRetrieval, Group::Control);
    CHECK_THROWS_AS(generate_recording(p, {}, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_recording(p, task_aois, 1, SceneBounds{0.0, 1080.0}),
                    std::invalid_argument);
    ScenarioProfile bad = p;
    bad.duration = 0.0;
    CHECK_THROWS_AS(generate_recording(bad, task_aois, 1), std::invalid_argument);
}

TEST_CASE("dataset: exact counts, ground-truth labels, deterministic") {
    std::vector<ScenarioProfile> profiles = {
        default_profile(Scenario::InfoRetrieval, Group::Control),
        default_profile(Scenario::InfoRetrieval, Group::AdhdHigh),
    };
    const std::vector<LabeledPoint> pts = generate_dataset(profiles, task_aois, 500, 11);
    CHECK(pts.size() == 1000);
    for (const LabeledPoint& q : pts) CHECK(q.label == label_point(task_aois, q.x, q.y));

    const std::vector<LabeledPoint> again = generate_dataset(profiles, task_aois, 500, 11);
    REQUIRE(again.size() == pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK(again[i].x == pts[i].x);
        CHECK(again[i].y == pts[i].y);
        CHECK(again[i].label == pts[i].label);
    }
}

TEST_CASE("dataset subsampling keeps per-profile time order") {
    // Labels agree with geometry and the per-profile blocks arrive in time
    // order; verify by regenerating the first profile's recording and
    // checking the subsampled points appear in recording order.
    std::vector<ScenarioProfile> profiles = {
        default_profile(Scenario::Collaborative, Group::Control)};
    profiles[0].duration = 30.0;
    const std::vector<LabeledPoint> pts = generate_dataset(profiles, task_aois, 100, 3);
    REQUIRE(pts.size() == 100);

    // Reconstruct the labeled pool the generator sampled from.
    Rng master(3);
    const std::uint64_t sub_seed = master.next_u64();
    const GazeRecording rec = generate_recording(profiles[0], task_aois, sub_seed);
    const std::vector<LabeledPoint> pool = label_recording(task_aois, rec);
    std::size_t cursor = 0;
    for (const LabeledPoint& q : pts) {
        while (cursor < pool.size() &&
               !(pool[cursor].x == q.x && pool[cursor].y == q.y &&
                 pool[cursor].label == q.label))
            ++cursor;
        CHECK_MESSAGE(cursor < pool.size(), "subsampled point out of order or missing");
    }
}

TEST_CASE("with 30% AOI coverage and no task attention, label 0 holds ~70%") {
    // One AOI covering 31.25% of a 1920x1080 scene... use (0,0)-(960,648):
    // area 960*648 / (1920*1080) = 0.3 exactly. attend_target_prob = 0
    // makes every fixation uniform over the scene.
    const std::vector<Aoi> third = {{1, 0, 0, 960, 648}};
    ScenarioProfile p = default_profile(Scenario::InfoRetrieval, Group::Control);
    p.attend_target_prob = 0.0;
    p.jitter_sd = 0.0;
    p.duration = 1200.0;
    const std::vector<LabeledPoint> pts = generate_dataset({p}, third, 10000, 42);
    REQUIRE(pts.size() == 10000);
    std::size_t off = 0;
    for (const LabeledPoint& q : pts)
        if (q.label == 0) ++off;
    const double frac = static_cast<double>(off) / 10000.0;
    CHECK(frac >= 0.65);
    CHECK(frac <= 0.75);
}

TEST_CASE("dataset preconditions") {
    const std::vector<ScenarioProfile> profiles = {
        default_profile(Scenario::InfoRetrieval, Group::Control)};
    CHECK_THROWS_AS(generate_dataset({}, task_aois, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_dataset(profiles, task_aois, 0, 1), std::invalid_argument);
    // 60 s at 100 Hz cannot supply 10 000 valid samples.
    CHECK_THROWS_AS(generate_dataset(profiles, task_aois, 10000, 1), std::runtime_error);
}
