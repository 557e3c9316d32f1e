#include <cmath>
#include <stdexcept>
#include <vector>

#include "aoi.hpp"
#include "doctest.h"
#include "text.hpp"
#include "types.hpp"

using namespace gazekit;

namespace {

const std::vector<Aoi> two_panels = {
    {1, 0, 0, 200, 200},
    {2, 200, 0, 400, 200},
};

GazeRecording make_rec(const std::vector<GazeSample>& samples) {
    GazeRecording rec;
    rec.participant_id = "p";
    rec.sample_rate_hz = 100.0;
    rec.samples = samples;
    return rec;
}

}  // namespace

TEST_CASE("point labeling is half-open: min edges in, max edges out") {
    CHECK(label_point(two_panels, 100, 100) == 1);
    CHECK(label_point(two_panels, 0, 0) == 1);        // min corner included
    CHECK(label_point(two_panels, 200, 100) == 2);    // AOI 1's x_max == AOI 2's x_min
    CHECK(label_point(two_panels, 300, 200) == 0);    // y_max excluded
    CHECK(label_point(two_panels, 400, 100) == 0);    // x_max excluded
    CHECK(label_point(two_panels, 399.999, 199.999) == 2);
    CHECK(label_point(two_panels, -1, 50) == 0);
    CHECK(label_point(two_panels, 500, 500) == 0);
    CHECK(label_point({}, 100, 100) == 0);
}

TEST_CASE("overlapping AOIs: first in list order wins") {
    const std::vector<Aoi> overlap = {{1, 0, 0, 100, 100}, {2, 50, 50, 150, 150}};
    CHECK(label_point(overlap, 75, 75) == 1);
    CHECK(label_point(overlap, 120, 120) == 2);
    const std::vector<Aoi> reversed = {{2, 50, 50, 150, 150}, {1, 0, 0, 100, 100}};
    CHECK(label_point(reversed, 75, 75) == 2);
}

TEST_CASE("recording labeling covers Valid samples in time order") {
    const GazeRecording rec = make_rec({
        {0.00, 100, 100, Validity::Valid},
        {0.01, 0, 0, Validity::Blink},
        {0.02, 250, 50, Validity::Valid},
        {0.03, 900, 900, Validity::Valid},
    });
    const std::vector<LabeledPoint> pts = label_recording(two_panels, rec);
    REQUIRE(pts.size() == 3);
    CHECK(pts[0].label == 1);
    CHECK(pts[0].x == 100);
    CHECK(pts[1].label == 2);
    CHECK(pts[2].label == 0);

    const std::vector<double> times = valid_times(rec);
    REQUIRE(times.size() == 3);
    CHECK(times[0] == 0.00);
    CHECK(times[1] == 0.02);
    CHECK(times[2] == 0.03);
}

TEST_CASE("dwell: each interval goes to the left sample's label") {
    // Labels [1, 1, 0] -> label 1 holds [t0, t2) = 0.02 s, the last sample
    // contributes nothing.
    const GazeRecording rec = make_rec({
        {0.00, 100, 100, Validity::Valid},
        {0.01, 120, 100, Validity::Valid},
        {0.02, 900, 900, Validity::Valid},
    });
    const DwellReport report = dwell_times(two_panels, rec);
    CHECK(report.total_s == doctest::Approx(0.02).epsilon(1e-12));
    CHECK(report.duration_s.at(1) == doctest::Approx(0.02).epsilon(1e-12));
    CHECK(report.duration_s.at(0) == 0.0);
    CHECK(report.duration_s.at(2) == 0.0);
    CHECK(report.proportion.at(1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(report.proportion.at(0) == 0.0);
}

TEST_CASE("dwell: alternating labels split by interval, not by count") {
    // Labels [1, 2, 1, 2]: label 1 gets intervals 0 and 2, label 2 gets
    // interval 1; the final sample adds nothing.
    const GazeRecording rec = make_rec({
        {0.00, 100, 100, Validity::Valid},
        {0.01, 250, 100, Validity::Valid},
        {0.02, 100, 100, Validity::Valid},
        {0.03, 250, 100, Validity::Valid},
    });
    const DwellReport report = dwell_times(two_panels, rec);
    CHECK(report.duration_s.at(1) == doctest::Approx(0.02).epsilon(1e-12));
    CHECK(report.duration_s.at(2) == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(report.duration_s.at(0) == 0.0);
}

TEST_CASE("dwell: non-Valid samples count toward label 0") {
    const GazeRecording rec = make_rec({
        {0.00, 100, 100, Validity::Valid},
        {0.01, 0, 0, Validity::Blink},
        {0.03, 100, 100, Validity::Valid},
        {0.04, 100, 100, Validity::Valid},
    });
    const DwellReport report = dwell_times(two_panels, rec);
    CHECK(report.duration_s.at(0) == doctest::Approx(0.02).epsilon(1e-12));  // blink interval
    CHECK(report.duration_s.at(1) == doctest::Approx(0.02).epsilon(1e-12));
}

TEST_CASE("dwell: non-uniform sampling weights intervals by length") {
    const GazeRecording rec = make_rec({
        {0.0, 100, 100, Validity::Valid},   // [0, 0.5) -> 1
        {0.5, 250, 100, Validity::Valid},   // [0.5, 2.0) -> 2
        {2.0, 100, 100, Validity::Valid},
    });
    const DwellReport report = dwell_times(two_panels, rec);
    CHECK(report.duration_s.at(1) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(report.duration_s.at(2) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(report.proportion.at(2) == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("dwell report always includes label 0 and every configured label") {
    const GazeRecording rec = make_rec({
        {0.00, 100, 100, Validity::Valid},
        {0.01, 100, 100, Validity::Valid},
    });
    const DwellReport report = dwell_times(two_panels, rec);
    REQUIRE(report.duration_s.size() == 3);  // 0, 1, 2
    CHECK(report.duration_s.count(0) == 1);
    CHECK(report.duration_s.count(1) == 1);
    CHECK(report.duration_s.count(2) == 1);
    CHECK(report.duration_s.at(2) == 0.0);
    CHECK(report.proportion.at(2) == 0.0);
}

TEST_CASE("dwell durations conserve total time; proportions sum to one") {
    std::vector<GazeSample> s;
    unsigned state = 31;
    double t = 0.0;
    for (int i = 0; i < 500; ++i) {
        state = state * 1664525u + 1013904223u;
        t += 0.005 + (state % 100) * 1e-4;
        Validity v = (state >> 30) == 3 ? Validity::Blink : Validity::Valid;
        s.push_back({t, static_cast<double>(state % 450), static_cast<double>(state % 250), v});
    }
    const DwellReport report = dwell_times(two_panels, make_rec(s));
    double sum_d = 0.0, sum_p = 0.0;
    for (const auto& [label, d] : report.duration_s) sum_d += d;
    for (const auto& [label, p] : report.proportion) sum_p += p;
    CHECK(sum_d == doctest::Approx(report.total_s).epsilon(1e-9));
    CHECK(sum_p == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("dwell is invariant under joint translation of AOIs and gaze") {
    std::vector<GazeSample> s;
    unsigned state = 55;
    for (int i = 0; i < 200; ++i) {
        state = state * 1664525u + 1013904223u;
        s.push_back({0.01 * i, static_cast<double>(state % 450),
                     static_cast<double>(state % 250), Validity::Valid});
    }
    const GazeRecording rec = make_rec(s);
    const DwellReport base = dwell_times(two_panels, rec);

    const double dx = 37.5, dy = -12.25;
    GazeRecording moved = rec;
    for (GazeSample& q : moved.samples) {
        q.x += dx;
        q.y += dy;
    }
    std::vector<Aoi> moved_aois = two_panels;
    for (Aoi& a : moved_aois) {
        a.x_min += dx;
        a.x_max += dx;
        a.y_min += dy;
        a.y_max += dy;
    }
    const DwellReport shifted = dwell_times(moved_aois, moved);
    for (const auto& [label, d] : base.duration_s)
        CHECK(shifted.duration_s.at(label) == doctest::Approx(d).epsilon(1e-12));
}

TEST_CASE("dwell requires at least two samples") {
    const GazeRecording rec = make_rec({{0.0, 1, 1, Validity::Valid}});
    CHECK_THROWS_AS(dwell_times(two_panels, rec), std::invalid_argument);
}

TEST_CASE("dwell rejects invalid AOI lists") {
    const GazeRecording rec = make_rec({
        {0.00, 1, 1, Validity::Valid},
        {0.01, 1, 1, Validity::Valid},
    });
    CHECK_THROWS_AS(dwell_times({{0, 0, 0, 10, 10}}, rec), std::invalid_argument);
    CHECK_THROWS_AS(dwell_times({{1, 0, 0, 10, 10}, {1, 20, 20, 30, 30}}, rec),
                    std::invalid_argument);
}

TEST_CASE("dwell CSV rows ascend by label with exact formatting") {
    const GazeRecording rec = make_rec({
        {0.00, 100, 100, Validity::Valid},   // 1
        {0.25, 250, 100, Validity::Valid},   // 2
        {0.50, 900, 900, Validity::Valid},   // 0
        {1.00, 100, 100, Validity::Valid},
    });
    const DwellReport report = dwell_times(two_panels, rec);
    const std::string csv = dwell_to_csv(report);
    const std::string expected = "label,duration_s,proportion\n"
                                 "0," + format_double(report.duration_s.at(0)) + "," +
                                 format_double(report.proportion.at(0)) + "\n"
                                 "1," + format_double(report.duration_s.at(1)) + "," +
                                 format_double(report.proportion.at(1)) + "\n"
                                 "2," + format_double(report.duration_s.at(2)) + "," +
                                 format_double(report.proportion.at(2)) + "\n";
    CHECK(csv == expected);
    CHECK(report.duration_s.at(0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(report.duration_s.at(1) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(report.duration_s.at(2) == doctest::Approx(0.25).epsilon(1e-12));
}
