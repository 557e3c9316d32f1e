#include "stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace gazekit {
namespace {

struct Moments {
    double n = 0.0;
    double mean = 0.0;
    double var = 0.0;  // sample variance, n - 1 denominator
};

Moments moments(const std::vector<double>& values, const char* name) {
    if (values.size() < 2)
        throw std::invalid_argument(std::string(name) + " needs at least 2 values");
    Moments m;
    m.n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) {
        if (!std::isfinite(v)) throw std::invalid_argument(std::string(name) + " has non-finite value");
        sum += v;
    }
    m.mean = sum / m.n;
    double ss = 0.0;
    for (double v : values) ss += (v - m.mean) * (v - m.mean);
    m.var = ss / (m.n - 1.0);
    return m;
}

// Continued-fraction core of the regularized incomplete beta function
// (modified Lentz's method).
double betacf(double a, double b, double x) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr double fpmin = 1e-300;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < fpmin) d = fpmin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 500; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) <= eps) break;
    }
    return h;
}

}  // namespace

double reg_inc_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0))
        throw std::invalid_argument("incomplete beta parameters must be positive");
    if (std::isnan(x)) throw std::invalid_argument("incomplete beta argument is NaN");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front =
        std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    // Use the continued fraction on whichever side converges fast.
    if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
    return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double t_cdf(double x, double df) {
    if (!(df > 0.0)) throw std::invalid_argument("t distribution df must be positive");
    if (!std::isfinite(x)) throw std::invalid_argument("t_cdf argument must be finite");
    if (x == 0.0) return 0.5;
    const double tail = 0.5 * reg_inc_beta(0.5 * df, 0.5, df / (df + x * x));
    return x < 0.0 ? tail : 1.0 - tail;
}

double f_cdf(double x, double d1, double d2) {
    if (!(d1 > 0.0) || !(d2 > 0.0))
        throw std::invalid_argument("F distribution dfs must be positive");
    if (std::isnan(x)) throw std::invalid_argument("f_cdf argument is NaN");
    if (x <= 0.0) return 0.0;
    return reg_inc_beta(0.5 * d1, 0.5 * d2, d1 * x / (d1 * x + d2));
}

TTestResult t_test(const std::vector<double>& a, const std::vector<double>& b,
                   TTestVariant variant) {
    const Moments ma = moments(a, "group a");
    const Moments mb = moments(b, "group b");

    TTestResult r;
    r.variant = variant;
    if (variant == TTestVariant::Pooled) {
        const double pooled =
            ((ma.n - 1.0) * ma.var + (mb.n - 1.0) * mb.var) / (ma.n + mb.n - 2.0);
        if (!(pooled > 0.0)) throw std::invalid_argument("pooled variance must be positive");
        r.df = ma.n + mb.n - 2.0;
        r.t = (ma.mean - mb.mean) / std::sqrt(pooled * (1.0 / ma.n + 1.0 / mb.n));
    } else {
        const double va = ma.var / ma.n;
        const double vb = mb.var / mb.n;
        if (!(va + vb > 0.0)) throw std::invalid_argument("both group variances are zero");
        r.t = (ma.mean - mb.mean) / std::sqrt(va + vb);
        r.df = (va + vb) * (va + vb) /
               (va * va / (ma.n - 1.0) + vb * vb / (mb.n - 1.0));
    }
    r.p = 2.0 * t_cdf(-std::fabs(r.t), r.df);
    return r;
}

AnovaResult one_way_anova(const std::vector<std::vector<double>>& groups) {
    if (groups.size() < 2) throw std::invalid_argument("ANOVA needs at least 2 groups");

    std::vector<Moments> ms;
    ms.reserve(groups.size());
    double total_n = 0.0;
    double grand_sum = 0.0;
    for (const std::vector<double>& g : groups) {
        ms.push_back(moments(g, "ANOVA group"));
        total_n += ms.back().n;
        grand_sum += ms.back().mean * ms.back().n;
    }
    const double grand_mean = grand_sum / total_n;

    double ssb = 0.0, ssw = 0.0;
    for (const Moments& m : ms) {
        ssb += m.n * (m.mean - grand_mean) * (m.mean - grand_mean);
        ssw += (m.n - 1.0) * m.var;
    }
    if (!(ssw > 0.0)) throw std::invalid_argument("within-group sum of squares must be positive");

    AnovaResult r;
    r.df_between = static_cast<int>(groups.size()) - 1;
    r.df_within = static_cast<int>(total_n) - static_cast<int>(groups.size());
    r.f = (ssb / r.df_between) / (ssw / r.df_within);
    r.p = 1.0 - f_cdf(r.f, r.df_between, r.df_within);
    return r;
}

}  // namespace gazekit
