#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "preprocess.hpp"
#include "types.hpp"

using namespace gazekit;

namespace {

GazeRecording make_rec(const std::vector<GazeSample>& samples, double rate = 100.0) {
    GazeRecording rec;
    rec.participant_id = "p";
    rec.sample_rate_hz = rate;
    rec.samples = samples;
    return rec;
}

GazeRecording from_xs(const std::vector<double>& xs, double y = 7.0) {
    std::vector<GazeSample> s;
    for (std::size_t i = 0; i < xs.size(); ++i)
        s.push_back({0.01 * static_cast<double>(i), xs[i], y, Validity::Valid});
    return make_rec(s);
}

std::vector<double> xs_of(const GazeRecording& rec) {
    std::vector<double> out;
    for (const GazeSample& s : rec.samples) out.push_back(s.x);
    return out;
}

}  // namespace

TEST_CASE("median filter: constant signal unchanged; window 1 is identity") {
    // Median of constants / singleton median.
    const GazeRecording rec = from_xs({200, 200, 200, 200});
    CHECK(xs_of(median_filter(rec, 3)) == std::vector<double>{200, 200, 200, 200});

    const GazeRecording spiky = from_xs({1, 9, 2, 8, 3});
    CHECK(xs_of(median_filter(spiky, 1)) == std::vector<double>{1, 9, 2, 8, 3});
}

TEST_CASE("median filter removes an isolated spike") {
    // Hand-computed medians per position for x = [0,0,100,0,0], window 3:
    //   j=0: edge-truncated to itself -> 0
    //   j=1: median(0,0,100) = 0
    //   j=2: median(0,100,0) = 0
    //   j=3: median(100,0,0) = 0
    //   j=4: edge-truncated -> 0
    const GazeRecording rec = from_xs({0, 0, 100, 0, 0});
    CHECK(xs_of(median_filter(rec, 3)) == std::vector<double>{0, 0, 0, 0, 0});
}

TEST_CASE("median filter acts on the Valid subsequence only") {
    // Valid xs are [10, 30, 50] at indices 0, 2, 3; the Missing sample at
    // index 1 is skipped entirely, so index 2's window is (10, 30, 50).
    // Hand-computed medians: j=0 edge -> 10, j=1 -> 30, j=2 edge -> 50.
    const GazeRecording rec = make_rec({
        {0.00, 10, 1, Validity::Valid},
        {0.01, 999, 999, Validity::Missing},
        {0.02, 30, 2, Validity::Valid},
        {0.03, 50, 3, Validity::Valid},
    });
    const GazeRecording out = median_filter(rec, 3);
    CHECK(out.samples[0].x == 10);
    CHECK(out.samples[1].x == 999);  // untouched placeholder
    CHECK(out.samples[1].validity == Validity::Missing);
    CHECK(out.samples[2].x == 30);
    CHECK(out.samples[3].x == 50);

    // A spike adjacent to a Blink sample is still repaired using the
    // Valid neighbors on both sides of the blink.
    const GazeRecording rec2 = make_rec({
        {0.00, 5, 0, Validity::Valid},
        {0.01, 0, 0, Validity::Blink},
        {0.02, 400, 0, Validity::Valid},
        {0.03, 5, 0, Validity::Valid},
    });
    const GazeRecording out2 = median_filter(rec2, 3);
    CHECK(out2.samples[2].x == 5);  // median(5, 400, 5)
    CHECK(out2.samples[1].x == 0);  // blink untouched
}

TEST_CASE("median filter filters x and y independently") {
    GazeRecording rec = from_xs({0, 100, 0});
    rec.samples[0].y = 50;
    rec.samples[1].y = 50;
    rec.samples[2].y = 900;
    const GazeRecording out = median_filter(rec, 3);
    CHECK(out.samples[1].x == 0);   // median(0, 100, 0)
    CHECK(out.samples[1].y == 50);  // median(50, 50, 900)
}

TEST_CASE("median filter preserves timestamps, validity, and count") {
    const GazeRecording rec = make_rec({
        {0.00, 1, 2, Validity::Valid},
        {0.01, 3, 4, Validity::Blink},
        {0.02, 5, 6, Validity::Valid},
        {0.03, 7, 8, Validity::Missing},
        {0.04, 9, 10, Validity::Valid},
    });
    const GazeRecording out = median_filter(rec, 3);
    REQUIRE(out.samples.size() == rec.samples.size());
    for (std::size_t i = 0; i < rec.samples.size(); ++i) {
        CHECK(out.samples[i].t == rec.samples[i].t);
        CHECK(out.samples[i].validity == rec.samples[i].validity);
    }
}

TEST_CASE("median filter output values come from the input multiset") {
    // Medians of odd-sized sets are always elements of the set.
    const std::vector<double> xs = {3.5, -1, 8, 8, 0.25, 17, -6, 2, 2, 11};
    const GazeRecording out = median_filter(from_xs(xs), 5);
    for (const GazeSample& s : out.samples) {
        bool found = false;
        for (double v : xs) found = found || v == s.x;
        CHECK(found);
    }
}

TEST_CASE("median filter rejects bad windows") {
    const GazeRecording rec = from_xs({1, 2, 3});
    CHECK_THROWS_AS(median_filter(rec, 0), std::invalid_argument);
    CHECK_THROWS_AS(median_filter(rec, -3), std::invalid_argument);
    CHECK_THROWS_AS(median_filter(rec, 4), std::invalid_argument);
    CHECK_THROWS_AS(median_filter(rec, 5), std::invalid_argument);  // > sample count
}

TEST_CASE("gap interpolation: hand case fills a one-sample gap") {
    // Hand-checked: linear interpolation between (t=0, x=0) and (t=0.02, x=10):
    // the sample at t=0.01 becomes Valid with x=5.
    GazeRecording rec = make_rec({
        {0.00, 0, 100, Validity::Valid},
        {0.01, 0, 0, Validity::Missing},
        {0.02, 10, 120, Validity::Valid},
    });
    const GazeRecording out = interpolate_gaps(rec, 0.05);
    CHECK(out.samples[1].validity == Validity::Valid);
    CHECK(out.samples[1].x == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(out.samples[1].y == doctest::Approx(110.0).epsilon(1e-12));
}

TEST_CASE("gap interpolation: no Missing samples -> identity") {
    const GazeRecording rec = make_rec({
        {0.00, 1, 2, Validity::Valid},
        {0.01, 3, 4, Validity::Blink},
        {0.02, 5, 6, Validity::Valid},
    });
    const GazeRecording out = interpolate_gaps(rec, 0.075);
    for (std::size_t i = 0; i < rec.samples.size(); ++i) {
        CHECK(out.samples[i].x == rec.samples[i].x);
        CHECK(out.samples[i].y == rec.samples[i].y);
        CHECK(out.samples[i].validity == rec.samples[i].validity);
    }
}

TEST_CASE("gap interpolation: long runs become Blink") {
    // 40 Missing samples spanning 0.4 s with max_gap 0.075 all turn Blink.
    std::vector<GazeSample> s;
    s.push_back({0.0, 0, 0, Validity::Valid});
    for (int i = 1; i <= 40; ++i)
        s.push_back({0.01 * i, 0, 0, Validity::Missing});
    s.push_back({0.41, 10, 10, Validity::Valid});
    const GazeRecording out = interpolate_gaps(make_rec(s), 0.075);
    for (int i = 1; i <= 40; ++i) CHECK(out.samples[i].validity == Validity::Blink);
    CHECK(out.samples[0].validity == Validity::Valid);
    CHECK(out.samples[41].validity == Validity::Valid);
}

TEST_CASE("gap interpolation: boundary gap exactly max_gap interpolates") {
    const GazeRecording rec = make_rec({
        {0.000, 0, 0, Validity::Valid},
        {0.025, 0, 0, Validity::Missing},
        {0.050, 100, 0, Validity::Valid},
    });
    const GazeRecording out = interpolate_gaps(rec, 0.05);  // gap == max_gap
    CHECK(out.samples[1].validity == Validity::Valid);
    CHECK(out.samples[1].x == doctest::Approx(50.0).epsilon(1e-12));
}

TEST_CASE("gap interpolation: runs touching the recording ends become Blink") {
    const GazeRecording rec = make_rec({
        {0.00, 0, 0, Validity::Missing},
        {0.01, 5, 5, Validity::Valid},
        {0.02, 0, 0, Validity::Missing},
    });
    const GazeRecording out = interpolate_gaps(rec, 10.0);
    CHECK(out.samples[0].validity == Validity::Blink);
    CHECK(out.samples[2].validity == Validity::Blink);
}

TEST_CASE("gap interpolation: runs bounded by Blink are not interpolated") {
    const GazeRecording rec = make_rec({
        {0.00, 0, 0, Validity::Valid},
        {0.01, 0, 0, Validity::Blink},
        {0.02, 0, 0, Validity::Missing},
        {0.03, 9, 9, Validity::Valid},
    });
    const GazeRecording out = interpolate_gaps(rec, 10.0);
    CHECK(out.samples[1].validity == Validity::Blink);
    CHECK(out.samples[2].validity == Validity::Blink);
}

TEST_CASE("gap interpolation output never contains Missing") {
    // Randomized validity patterns; property from the contract.
    std::vector<GazeSample> s;
    unsigned state = 12345;
    for (int i = 0; i < 200; ++i) {
        state = state * 1664525u + 1013904223u;
        Validity v = (state >> 28) < 6    ? Validity::Valid
                     : (state >> 28) < 11 ? Validity::Missing
                                          : Validity::Blink;
        s.push_back({0.01 * i, static_cast<double>(i), 0, v});
    }
    const GazeRecording out = interpolate_gaps(make_rec(s), 0.075);
    REQUIRE(out.samples.size() == s.size());
    for (const GazeSample& q : out.samples) CHECK(q.validity != Validity::Missing);
    CHECK_THROWS_AS(interpolate_gaps(make_rec(s), 0.0), std::invalid_argument);
}

TEST_CASE("drift correction: single window shifts every Valid sample") {
    // Hand-checked: observed mean (205, 97) vs target (200, 100): offset
    // (+5, -3), so samples shift by (-5, +3).
    GazeRecording rec = make_rec({
        {0.0, 204, 96, Validity::Valid},
        {0.5, 206, 98, Validity::Valid},
        {1.0, 300, 300, Validity::Blink},
        {1.5, 210, 90, Validity::Valid},
    });
    const std::vector<CalibrationWindow> cal = {{0.0, 1.0, 200.0, 100.0}};
    const GazeRecording out = drift_correct(rec, cal);
    CHECK(out.samples[0].x == doctest::Approx(199.0).epsilon(1e-12));
    CHECK(out.samples[0].y == doctest::Approx(99.0).epsilon(1e-12));
    CHECK(out.samples[1].x == doctest::Approx(201.0).epsilon(1e-12));
    CHECK(out.samples[3].x == doctest::Approx(205.0).epsilon(1e-12));  // held constant after
    CHECK(out.samples[2].x == 300.0);  // non-Valid untouched
    CHECK(out.samples[2].y == 300.0);
}

TEST_CASE("drift correction: zero offset is the identity") {
    const GazeRecording rec = make_rec({
        {0.0, 200, 100, Validity::Valid},
        {1.0, 200, 100, Validity::Valid},
    });
    const GazeRecording out = drift_correct(rec, {{0.0, 1.0, 200.0, 100.0}});
    CHECK(out.samples[0].x == 200.0);
    CHECK(out.samples[0].y == 100.0);
    CHECK(out.samples[1].x == 200.0);
}

TEST_CASE("drift correction: offsets interpolate between window midpoints") {
    // Hand-checked: window A = [0, 2] (midpoint 1) with observed mean x 96 vs
    // target 100 -> offset -4; window B = [8, 10] (midpoint 9) with
    // observed mean x 92 vs target 100 -> offset -8. A Valid sample at
    // t = 5 (midway) gets offset -6, i.e. x 50 -> 56. Samples before the
    // first midpoint and after the last hold the end offsets.
    GazeRecording rec = make_rec({
        {0.5, 96, 0, Validity::Valid},   // inside window A
        {1.5, 96, 0, Validity::Valid},   // inside window A
        {5.0, 50, 0, Validity::Valid},   // midway between midpoints
        {8.5, 92, 0, Validity::Valid},   // inside window B
        {9.5, 92, 0, Validity::Valid},   // inside window B
        {12.0, 10, 0, Validity::Valid},  // after last midpoint
    });
    const std::vector<CalibrationWindow> cal = {
        {0.0, 2.0, 100.0, 0.0},
        {8.0, 10.0, 100.0, 0.0},
    };
    const GazeRecording out = drift_correct(rec, cal);
    CHECK(out.samples[2].x == doctest::Approx(56.0).epsilon(1e-12));
    CHECK(out.samples[0].x == doctest::Approx(100.0).epsilon(1e-12));  // before first midpoint
    CHECK(out.samples[5].x == doctest::Approx(18.0).epsilon(1e-12));   // after last midpoint
}

TEST_CASE("drift correction: window order in the file does not matter") {
    GazeRecording rec = make_rec({
        {0.5, 96, 0, Validity::Valid},
        {5.0, 50, 0, Validity::Valid},
        {9.0, 92, 0, Validity::Valid},
    });
    const std::vector<CalibrationWindow> fwd = {{0.0, 1.0, 96.0, 0.0}, {8.5, 9.5, 100.0, 0.0}};
    const std::vector<CalibrationWindow> rev = {{8.5, 9.5, 100.0, 0.0}, {0.0, 1.0, 96.0, 0.0}};
    const GazeRecording a = drift_correct(rec, fwd);
    const GazeRecording b = drift_correct(rec, rev);
    for (std::size_t i = 0; i < rec.samples.size(); ++i) {
        CHECK(a.samples[i].x == b.samples[i].x);
        CHECK(a.samples[i].y == b.samples[i].y);
    }
}

TEST_CASE("drift correction: empty window list is the identity") {
    const GazeRecording rec = make_rec({{0.0, 42, 7, Validity::Valid}});
    const GazeRecording out = drift_correct(rec, {});
    CHECK(out.samples[0].x == 42.0);
}

TEST_CASE("drift correction: window without Valid samples is an error") {
    const GazeRecording rec = make_rec({
        {0.0, 1, 1, Validity::Valid},
        {5.0, 0, 0, Validity::Blink},
        {10.0, 2, 2, Validity::Valid},
    });
    CHECK_THROWS_AS(drift_correct(rec, {{4.0, 6.0, 0.0, 0.0}}), std::runtime_error);
}

TEST_CASE("preprocessing preserves timestamps, count, and order") {
    std::vector<GazeSample> s;
    unsigned state = 777;
    for (int i = 0; i < 120; ++i) {
        state = state * 1664525u + 1013904223u;
        Validity v = (state >> 29) < 5 ? Validity::Valid : Validity::Missing;
        s.push_back({0.01 * i, static_cast<double>(state % 1000), 10.0, v});
    }
    const GazeRecording rec = make_rec(s);
    const GazeRecording piped =
        drift_correct(interpolate_gaps(median_filter(rec, 3), 0.075),
                      {{0.0, 1.19, 500.0, 10.0}});
    REQUIRE(piped.samples.size() == rec.samples.size());
    for (std::size_t i = 0; i < rec.samples.size(); ++i)
        CHECK(piped.samples[i].t == rec.samples[i].t);
}
