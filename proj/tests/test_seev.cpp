#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "aoi.hpp"
#include "doctest.h"
#include "seev.hpp"
#include "test_util.hpp"

using namespace gazekit;
using gazekit::testutil::write_file;

namespace {

SeevParams two_aoi_params(SeevFactors a, SeevFactors b) {
    SeevParams p;
    p.factors = {a, b};
    return p;
}

DwellReport report_from(const std::vector<int>& labels, const std::vector<double>& props) {
    DwellReport r;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        r.proportion[labels[i]] = props[i];
        r.duration_s[labels[i]] = props[i];  // scale irrelevant to compare()
    }
    r.total_s = 1.0;
    return r;
}

bool within(double got, double want, double abs_tol) {
    return std::abs(got - want) <= abs_tol;
}

}  // namespace

TEST_CASE("identical factors split attention evenly") {
    const SeevFactors f{1, 0.4, 0.2, 0.6, 0.3};
    SeevFactors g = f;
    g.aoi_label = 2;
    const SeevPrediction pred = seev_scores(two_aoi_params(f, g));
    CHECK(pred.probability[0] == 0.5);
    CHECK(pred.probability[1] == 0.5);
}

TEST_CASE("salience-only contrast (1, 0) maps to probabilities (1, 0)") {
    SeevParams p = two_aoi_params({1, 1.0, 0, 0, 0}, {2, 0.0, 0, 0, 0});
    p.w_salience = 1.0;
    p.w_effort = p.w_expectancy = p.w_value = 0.0;
    const SeevPrediction pred = seev_scores(p);
    CHECK(pred.probability[0] == 1.0);
    CHECK(pred.probability[1] == 0.0);
    CHECK(pred.aoi_labels == std::vector<int>{1, 2});
}

TEST_CASE("all-zero weights fall back to uniform") {
    SeevParams p = two_aoi_params({1, 0.9, 0.1, 0.8, 0.7}, {2, 0.2, 0.9, 0.1, 0.3});
    p.w_salience = p.w_effort = p.w_expectancy = p.w_value = 0.0;
    const SeevPrediction pred = seev_scores(p);
    CHECK(pred.probability[0] == 0.5);
    CHECK(pred.probability[1] == 0.5);
}

TEST_CASE("effort enters negatively and raw scores clamp at zero") {
    // AOI 1: 0.2 - 0.9 < 0 -> clamped to 0; AOI 2 carries all the mass.
    SeevParams p = two_aoi_params({1, 0.2, 0.9, 0, 0}, {2, 0.5, 0.1, 0, 0});
    const SeevPrediction pred = seev_scores(p);
    CHECK(pred.probability[0] == 0.0);
    CHECK(pred.probability[1] == 1.0);
}

TEST_CASE("predictions are valid distributions on randomized inputs") {
    unsigned state = 321;
    auto next01 = [&state]() {
        state = state * 1664525u + 1013904223u;
        return static_cast<double>(state >> 8) / 16777216.0;
    };
    for (int trial = 0; trial < 200; ++trial) {
        SeevParams p;
        const int n = 1 + static_cast<int>(next01() * 5);
        for (int i = 0; i < n; ++i)
            p.factors.push_back({i, next01(), next01(), next01(), next01()});
        p.w_salience = next01() * 3;
        p.w_effort = next01() * 3;
        p.w_expectancy = next01() * 3;
        p.w_value = next01() * 3;
        const SeevPrediction pred = seev_scores(p);
        double sum = 0.0;
        for (double q : pred.probability) {
            CHECK(q >= 0.0);
            sum += q;
        }
        CHECK(within(sum, 1.0, 1e-12));
    }
}

TEST_CASE("monotonicity in each factor") {
    const SeevParams base =
        two_aoi_params({1, 0.5, 0.4, 0.5, 0.5}, {2, 0.6, 0.2, 0.4, 0.3});
    const double p0 = seev_scores(base).probability[0];

    SeevParams up = base;
    up.factors[0].salience = 0.8;
    CHECK(seev_scores(up).probability[0] >= p0);

    up = base;
    up.factors[0].expectancy = 0.9;
    CHECK(seev_scores(up).probability[0] >= p0);

    up = base;
    up.factors[0].value = 1.0;
    CHECK(seev_scores(up).probability[0] >= p0);

    up = base;
    up.factors[0].effort = 0.9;  // higher effort -> no more attention
    CHECK(seev_scores(up).probability[0] <= p0);
}

TEST_CASE("scaling all weights by a power of two leaves the output bitwise equal") {
    SeevParams p = two_aoi_params({1, 0.7, 0.3, 0.45, 0.8}, {2, 0.2, 0.6, 0.9, 0.1});
    p.w_salience = 1.25;
    p.w_effort = 0.5;
    p.w_expectancy = 2.0;
    p.w_value = 0.75;
    const SeevPrediction base = seev_scores(p);
    for (double lambda : {2.0, 0.25, 1024.0}) {
        SeevParams scaled = p;
        scaled.w_salience *= lambda;
        scaled.w_effort *= lambda;
        scaled.w_expectancy *= lambda;
        scaled.w_value *= lambda;
        const SeevPrediction out = seev_scores(scaled);
        CHECK(out.probability == base.probability);  // exact: dyadic scaling cancels
    }
}

TEST_CASE("parameter validation") {
    SeevParams p;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);  // no AOIs
    p.factors = {{1, 0.5, 0.5, 0.5, 0.5}, {1, 0.1, 0.1, 0.1, 0.1}};
    CHECK_THROWS_AS(validate(p), std::invalid_argument);  // duplicate label
    p.factors = {{1, 1.5, 0.5, 0.5, 0.5}};
    CHECK_THROWS_AS(validate(p), std::invalid_argument);  // factor out of [0,1]
    p.factors = {{1, 0.5, 0.5, 0.5, 0.5}};
    p.w_effort = -1.0;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);  // negative weight
    p.w_effort = 1.0;
    CHECK_NOTHROW(validate(p));
}

TEST_CASE("comparison: total variation hand values") {
    SeevPrediction pred;
    pred.aoi_labels = {1, 2};
    pred.probability = {0.7, 0.3};

    const SeevComparison same = compare(pred, report_from({1, 2}, {0.7, 0.3}));
    CHECK(within(same.total_variation, 0.0, 1e-15));

    const SeevComparison half = compare(pred, report_from({1, 2}, {0.5, 0.5}));
    CHECK(within(half.total_variation, 0.2, 1e-15));

    pred.probability = {1.0, 0.0};
    const SeevComparison disjoint = compare(pred, report_from({1, 2}, {0.0, 1.0}));
    CHECK(within(disjoint.total_variation, 1.0, 1e-15));
}

TEST_CASE("comparison restricts the observed report and renormalizes") {
    // Dwell mass 0.45 / 0.15 on the predicted AOIs plus 0.4 elsewhere:
    // restricted and rescaled to (0.75, 0.25).
    SeevPrediction pred;
    pred.aoi_labels = {1, 2};
    pred.probability = {0.5, 0.5};
    const DwellReport rep = report_from({0, 1, 2}, {0.4, 0.45, 0.15});
    const SeevComparison cmp = compare(pred, rep);
    REQUIRE(cmp.observed.size() == 2);
    CHECK(within(cmp.observed[0], 0.75, 1e-12));
    CHECK(within(cmp.observed[1], 0.25, 1e-12));
    CHECK(within(cmp.total_variation, 0.25, 1e-12));
}

TEST_CASE("comparison: Pearson correlation oracle and undefined cases") {
    SeevPrediction pred;
    pred.aoi_labels = {1, 2, 3};
    pred.probability = {0.5, 0.3, 0.2};
    const SeevComparison cmp = compare(pred, report_from({1, 2, 3}, {0.4, 0.4, 0.2}));
    // Expected values computed independently at high precision: r = 0.75592894601845445443, TV = 0.1.
    REQUIRE(cmp.pearson_r.has_value());
    CHECK(within(*cmp.pearson_r, 0.75592894601845445443, 1e-12));
    CHECK(within(cmp.total_variation, 0.1, 1e-12));

    // Constant prediction vector -> undefined correlation.
    SeevPrediction flat;
    flat.aoi_labels = {1, 2};
    flat.probability = {0.5, 0.5};
    const SeevComparison c1 = compare(flat, report_from({1, 2}, {0.9, 0.1}));
    CHECK(!c1.pearson_r.has_value());

    // Constant observed vector -> undefined correlation.
    SeevPrediction steep;
    steep.aoi_labels = {1, 2};
    steep.probability = {0.8, 0.2};
    const SeevComparison c2 = compare(steep, report_from({1, 2}, {0.3, 0.3}));
    CHECK(!c2.pearson_r.has_value());
}

TEST_CASE("comparison: zero observed mass renormalizes to uniform") {
    SeevPrediction pred;
    pred.aoi_labels = {1, 2};
    pred.probability = {1.0, 0.0};
    const SeevComparison cmp = compare(pred, report_from({0, 1, 2}, {1.0, 0.0, 0.0}));
    CHECK(cmp.observed == std::vector<double>{0.5, 0.5});
    CHECK(within(cmp.total_variation, 0.5, 1e-15));
}

TEST_CASE("comparison: predicted label missing from the report throws") {
    SeevPrediction pred;
    pred.aoi_labels = {1, 7};
    pred.probability = {0.5, 0.5};
    CHECK_THROWS_AS(compare(pred, report_from({0, 1, 2}, {0.2, 0.5, 0.3})),
                    std::invalid_argument);
    SeevPrediction empty;
    CHECK_THROWS_AS(compare(empty, report_from({1}, {1.0})), std::invalid_argument);
}

TEST_CASE("total variation is symmetric and satisfies the triangle inequality") {
    const std::vector<std::vector<double>> dists = {
        {0.5, 0.3, 0.2}, {0.1, 0.6, 0.3}, {0.25, 0.25, 0.5}, {1.0, 0.0, 0.0}};
    auto tv_of = [](const std::vector<double>& p, const std::vector<double>& q) {
        SeevPrediction pred;
        pred.aoi_labels = {1, 2, 3};
        pred.probability = p;
        return compare(pred, report_from({1, 2, 3}, q)).total_variation;
    };
    for (const auto& p : dists)
        for (const auto& q : dists) {
            const double pq = tv_of(p, q);
            CHECK(within(pq, tv_of(q, p), 1e-12));  // symmetry
            CHECK(pq >= 0.0);
            CHECK(pq <= 1.0);
            for (const auto& r : dists)
                CHECK(pq <= tv_of(p, r) + tv_of(r, q) + 1e-12);  // triangle
        }
}

TEST_CASE("SEEV parameter files round-trip") {
    const std::string path = "t_seev_params.txt";
    SeevParams p;
    p.factors = {{1, 0.6, 0.2, 0.7, 0.8}, {2, 0.5, 0.35, 0.45, 0.55}};
    p.w_salience = 1.0;
    p.w_effort = 0.5;
    p.w_expectancy = 1.25;
    p.w_value = 2.0;
    write_seev_params(p, path);
    const SeevParams back = read_seev_params(path);
    REQUIRE(back.factors.size() == 2);
    CHECK(back.factors[0].aoi_label == 1);
    CHECK(back.factors[0].salience == 0.6);
    CHECK(back.factors[0].effort == 0.2);
    CHECK(back.factors[0].expectancy == 0.7);
    CHECK(back.factors[0].value == 0.8);
    CHECK(back.factors[1].value == 0.55);
    CHECK(back.w_salience == 1.0);
    CHECK(back.w_effort == 0.5);
    CHECK(back.w_expectancy == 1.25);
    CHECK(back.w_value == 2.0);
    std::remove(path.c_str());
}

TEST_CASE("SEEV parameter file errors") {
    const std::string path = "t_seev_bad.txt";
    write_file(path, "1 0.5 0.5 0.5 0.5\n");  // no weights line
    CHECK_THROWS_AS(read_seev_params(path), std::runtime_error);

    write_file(path, "1 0.5 0.5 0.5 0.5\nweights 1 1 1 1\nweights 1 1 1 1\n");
    CHECK_THROWS_AS(read_seev_params(path), std::runtime_error);

    write_file(path, "1 0.5 0.5 0.5\nweights 1 1 1 1\n");  // short factor row
    CHECK_THROWS_WITH_AS(read_seev_params(path), doctest::Contains(":1:"),
                         std::runtime_error);

    write_file(path, "1 1.5 0.5 0.5 0.5\nweights 1 1 1 1\n");  // out-of-range factor
    CHECK_THROWS_AS(read_seev_params(path), std::invalid_argument);

    write_file(path, "# comments only\nweights 1 1 1 1\n");  // no AOIs
    CHECK_THROWS_AS(read_seev_params(path), std::invalid_argument);

    CHECK_THROWS_AS(read_seev_params("t_seev_no_such_file.txt"), std::runtime_error);
    std::remove(path.c_str());
}

TEST_CASE("comparison CSV carries labels and both distributions") {
    SeevComparison cmp;
    cmp.aoi_labels = {1, 2};
    cmp.predicted = {0.75, 0.25};
    cmp.observed = {0.5, 0.5};
    CHECK(comparison_to_csv(cmp) ==
          "aoi_label,predicted_p,observed_p\n1,0.75,0.5\n2,0.25,0.5\n");
}
