#pragma once

#include <vector>

namespace gazekit {

enum class TTestVariant { Pooled, Welch };

struct TTestResult {
    double t = 0.0;
    double df = 0.0;
    double p = 1.0;  // two-sided
    TTestVariant variant = TTestVariant::Pooled;
};

struct AnovaResult {
    double f = 0.0;
    int df_between = 0;
    int df_within = 0;
    double p = 1.0;
};

/// Two-sample t-test, two-sided. Pooled assumes equal variances
/// (df = n_a + n_b - 2); Welch uses the Welch–Satterthwaite df. Each
/// group needs >= 2 values and a positive variance estimate where the
/// statistic divides by it.
TTestResult t_test(const std::vector<double>& a, const std::vector<double>& b,
                   TTestVariant variant);

/// One-way ANOVA over >= 2 groups of >= 2 values each; requires a
/// positive within-group sum of squares.
AnovaResult one_way_anova(const std::vector<std::vector<double>>& groups);

/// Student's t CDF, via the regularized incomplete beta function.
/// Satisfies t_cdf(x, df) + t_cdf(-x, df) == 1 exactly by construction.
double t_cdf(double x, double df);

/// F distribution CDF; 0 for x <= 0.
double f_cdf(double x, double d1, double d2);

/// Regularized incomplete beta function I_x(a, b), continued-fraction
/// evaluation, absolute error <= 1e-10 over the tested range.
double reg_inc_beta(double a, double b, double x);

}  // namespace gazekit
