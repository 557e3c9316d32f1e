#include "seev.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "text.hpp"

namespace gazekit {

void validate(const SeevParams& params) {
    if (params.factors.empty()) throw std::invalid_argument("SEEV needs at least one AOI");
    std::set<int> labels;
    for (const SeevFactors& f : params.factors) {
        if (f.aoi_label < 0) throw std::invalid_argument("SEEV AOI labels must be non-negative");
        if (!labels.insert(f.aoi_label).second)
            throw std::invalid_argument("duplicate SEEV AOI label " + std::to_string(f.aoi_label));
        for (double v : {f.salience, f.effort, f.expectancy, f.value})
            if (!(v >= 0.0 && v <= 1.0))
                throw std::invalid_argument("SEEV factors must lie in [0, 1]");
    }
    for (double w : {params.w_salience, params.w_effort, params.w_expectancy, params.w_value})
        if (!(w >= 0.0) || !std::isfinite(w))
            throw std::invalid_argument("SEEV weights must be non-negative");
}

SeevPrediction seev_scores(const SeevParams& params) {
    validate(params);
    SeevPrediction pred;
    double sum = 0.0;
    for (const SeevFactors& f : params.factors) {
        const double raw = params.w_salience * f.salience - params.w_effort * f.effort +
                           params.w_expectancy * f.expectancy + params.w_value * f.value;
        const double clamped = std::max(0.0, raw);
        pred.aoi_labels.push_back(f.aoi_label);
        pred.probability.push_back(clamped);
        sum += clamped;
    }
    if (sum > 0.0) {
        for (double& p : pred.probability) p /= sum;
    } else {
        const double uniform = 1.0 / static_cast<double>(pred.probability.size());
        for (double& p : pred.probability) p = uniform;
    }
    return pred;
}

SeevComparison compare(const SeevPrediction& prediction, const DwellReport& observed) {
    if (prediction.aoi_labels.empty()) throw std::invalid_argument("empty SEEV prediction");

    SeevComparison cmp;
    cmp.aoi_labels = prediction.aoi_labels;
    cmp.predicted = prediction.probability;
    double observed_sum = 0.0;
    for (int label : prediction.aoi_labels) {
        auto it = observed.proportion.find(label);
        if (it == observed.proportion.end())
            throw std::invalid_argument("dwell report has no entry for AOI label " +
                                        std::to_string(label));
        cmp.observed.push_back(it->second);
        observed_sum += it->second;
    }
    if (observed_sum > 0.0) {
        for (double& q : cmp.observed) q /= observed_sum;
    } else {
        // No observed mass on any compared AOI: fall back to uniform,
        // mirroring the predictor's all-zero convention.
        const double uniform = 1.0 / static_cast<double>(cmp.observed.size());
        for (double& q : cmp.observed) q = uniform;
    }

    double tv = 0.0;
    for (std::size_t i = 0; i < cmp.predicted.size(); ++i)
        tv += std::fabs(cmp.predicted[i] - cmp.observed[i]);
    cmp.total_variation = 0.5 * tv;

    const std::size_t n = cmp.predicted.size();
    double mean_p = 0.0, mean_q = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_p += cmp.predicted[i];
        mean_q += cmp.observed[i];
    }
    mean_p /= static_cast<double>(n);
    mean_q /= static_cast<double>(n);
    double spp = 0.0, sqq = 0.0, spq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dp = cmp.predicted[i] - mean_p;
        const double dq = cmp.observed[i] - mean_q;
        spp += dp * dp;
        sqq += dq * dq;
        spq += dp * dq;
    }
    if (spp > 0.0 && sqq > 0.0) {
        // Clamp: rounding can push a perfect correlation a few ulps past 1.
        cmp.pearson_r = std::clamp(spq / std::sqrt(spp * sqq), -1.0, 1.0);
    }
    return cmp;
}

SeevParams read_seev_params(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path + " for reading");

    SeevParams params;
    bool have_weights = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::size_t hash = line.find('#');
        const std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
        if (body.empty()) continue;
        const std::vector<std::string> tok = split_ws(body);
        const std::string at = path + ":" + std::to_string(line_no) + ": ";
        try {
            if (tok[0] == "weights") {
                if (have_weights) throw std::runtime_error(at + "duplicate weights line");
                if (tok.size() != 5) throw std::runtime_error(at + "expected 'weights s ef ex v'");
                params.w_salience = parse_double(tok[1]);
                params.w_effort = parse_double(tok[2]);
                params.w_expectancy = parse_double(tok[3]);
                params.w_value = parse_double(tok[4]);
                have_weights = true;
            } else {
                if (tok.size() != 5)
                    throw std::runtime_error(at + "expected 'aoi_label S EF EX V'");
                SeevFactors f;
                f.aoi_label = static_cast<int>(parse_long(tok[0]));
                f.salience = parse_double(tok[1]);
                f.effort = parse_double(tok[2]);
                f.expectancy = parse_double(tok[3]);
                f.value = parse_double(tok[4]);
                params.factors.push_back(f);
            }
        } catch (const std::runtime_error&) {
            throw;
        } catch (const std::exception& e) {
            throw std::runtime_error(at + e.what());
        }
    }
    if (!have_weights) throw std::runtime_error(path + ": missing weights line");
    validate(params);
    return params;
}

void write_seev_params(const SeevParams& params, const std::string& path) {
    validate(params);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << "# aoi_label S EF EX V\n";
    for (const SeevFactors& f : params.factors)
        out << f.aoi_label << " " << format_double(f.salience) << " " << format_double(f.effort)
            << " " << format_double(f.expectancy) << " " << format_double(f.value) << "\n";
    out << "weights " << format_double(params.w_salience) << " " << format_double(params.w_effort)
        << " " << format_double(params.w_expectancy) << " " << format_double(params.w_value)
        << "\n";
    if (!out) throw std::runtime_error("write failed for " + path);
}

std::string comparison_to_csv(const SeevComparison& comparison) {
    std::ostringstream out;
    out << "aoi_label,predicted_p,observed_p\n";
    for (std::size_t i = 0; i < comparison.aoi_labels.size(); ++i)
        out << comparison.aoi_labels[i] << "," << format_double(comparison.predicted[i]) << ","
            << format_double(comparison.observed[i]) << "\n";
    return out.str();
}

}  // namespace gazekit
