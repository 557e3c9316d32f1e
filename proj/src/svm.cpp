#include "svm.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "rng.hpp"
#include "text.hpp"

namespace gazekit {
namespace {

double squared_distance(const std::vector<double>& u, const std::vector<double>& v) {
    double d2 = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        const double d = u[k] - v[k];
        d2 += d * d;
    }
    return d2;
}

void check_params(const RbfParams& params) {
    if (!(params.gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
    if (!(params.c > 0.0)) throw std::invalid_argument("C must be positive");
}

// SMO working state for one binary problem; kernel matrix precomputed.
class SmoSolver {
public:
    SmoSolver(const std::vector<std::vector<double>>& points, const std::vector<int>& labels,
              const RbfParams& params, double tol, int max_passes)
        : x_(points),
          y_(labels),
          c_(params.c),
          tol_(tol),
          max_passes_(max_passes),
          n_(points.size()),
          alpha_(points.size(), 0.0),
          error_(points.size()) {
        kernel_.resize(n_ * n_);
        for (std::size_t i = 0; i < n_; ++i) {
            kernel_[i * n_ + i] = 1.0;
            for (std::size_t j = i + 1; j < n_; ++j) {
                const double k = std::exp(-params.gamma * squared_distance(x_[i], x_[j]));
                kernel_[i * n_ + j] = k;
                kernel_[j * n_ + i] = k;
            }
        }
        for (std::size_t i = 0; i < n_; ++i) error_[i] = -y_[i];  // f == 0 initially
    }

    void solve() {
        int idle_passes = 0;
        bool examine_all = true;
        long guard = 0;
        while (idle_passes < max_passes_) {
            int changed = 0;
            for (std::size_t i = 0; i < n_; ++i) {
                if (!examine_all && !non_bound(i)) continue;
                changed += examine(i);
            }
            idle_passes = changed == 0 ? idle_passes + 1 : 0;
            if (examine_all)
                examine_all = false;
            else if (changed == 0)
                examine_all = true;
            if (++guard > 100000) break;  // safety net; never hit on sane inputs
        }
    }

    double alpha(std::size_t i) const { return alpha_[i]; }
    double bias() const { return b_; }

private:
    bool non_bound(std::size_t i) const { return alpha_[i] > 0.0 && alpha_[i] < c_; }
    double k(std::size_t i, std::size_t j) const { return kernel_[i * n_ + j]; }

    int examine(std::size_t i2) {
        const double y2 = y_[i2];
        const double a2 = alpha_[i2];
        const double e2 = error_[i2];
        const double r2 = e2 * y2;
        if (!((r2 < -tol_ && a2 < c_) || (r2 > tol_ && a2 > 0.0))) return 0;

        // Heuristic: the non-bound partner with the largest |E1 - E2|
        // (first index on ties), then deterministic full scans.
        std::size_t best = n_;
        double best_gap = -1.0;
        for (std::size_t i = 0; i < n_; ++i) {
            if (i == i2 || !non_bound(i)) continue;
            const double gap = std::fabs(error_[i] - e2);
            if (gap > best_gap) {
                best_gap = gap;
                best = i;
            }
        }
        if (best < n_ && take_step(best, i2)) return 1;
        for (std::size_t i = 0; i < n_; ++i)
            if (i != i2 && non_bound(i) && take_step(i, i2)) return 1;
        for (std::size_t i = 0; i < n_; ++i)
            if (i != i2 && !non_bound(i) && take_step(i, i2)) return 1;
        return 0;
    }

    bool take_step(std::size_t i1, std::size_t i2) {
        if (i1 == i2) return false;
        constexpr double eps = 1e-9;  // relative progress threshold
        const double alph1 = alpha_[i1];
        const double alph2 = alpha_[i2];
        const double y1 = y_[i1];
        const double y2 = y_[i2];
        const double e1 = error_[i1];
        const double e2 = error_[i2];
        const double s = y1 * y2;

        double lo, hi;
        if (s < 0.0) {
            lo = std::max(0.0, alph2 - alph1);
            hi = std::min(c_, c_ + alph2 - alph1);
        } else {
            lo = std::max(0.0, alph1 + alph2 - c_);
            hi = std::min(c_, alph1 + alph2);
        }
        if (lo >= hi) return false;

        const double k11 = k(i1, i1);
        const double k12 = k(i1, i2);
        const double k22 = k(i2, i2);
        const double eta = k11 + k22 - 2.0 * k12;

        double a2;
        if (eta > 0.0) {
            a2 = alph2 + y2 * (e1 - e2) / eta;
            a2 = std::clamp(a2, lo, hi);
        } else {
            // Flat or concave direction: evaluate the (minimization)
            // objective at both ends of the segment.
            const double v1 = y1 * (e1 - b_) - alph1 * k11 - s * alph2 * k12;
            const double v2 = y2 * (e2 - b_) - s * alph1 * k12 - alph2 * k22;
            const double l1 = alph1 + s * (alph2 - lo);
            const double h1 = alph1 + s * (alph2 - hi);
            const double obj_lo = l1 * v1 + lo * v2 + 0.5 * l1 * l1 * k11 + 0.5 * lo * lo * k22 +
                                  s * lo * l1 * k12;
            const double obj_hi = h1 * v1 + hi * v2 + 0.5 * h1 * h1 * k11 + 0.5 * hi * hi * k22 +
                                  s * hi * h1 * k12;
            if (obj_lo < obj_hi - eps)
                a2 = lo;
            else if (obj_lo > obj_hi + eps)
                a2 = hi;
            else
                return false;
        }
        if (std::fabs(a2 - alph2) < eps * (a2 + alph2 + eps)) return false;
        const double a1 = alph1 + s * (alph2 - a2);

        const double d1 = y1 * (a1 - alph1);
        const double d2 = y2 * (a2 - alph2);
        const double b1 = b_ - e1 - d1 * k11 - d2 * k12;
        const double b2 = b_ - e2 - d1 * k12 - d2 * k22;
        double b_new;
        if (a1 > 0.0 && a1 < c_)
            b_new = b1;
        else if (a2 > 0.0 && a2 < c_)
            b_new = b2;
        else
            b_new = 0.5 * (b1 + b2);
        const double db = b_new - b_;

        alpha_[i1] = a1;
        alpha_[i2] = a2;
        b_ = b_new;
        for (std::size_t i = 0; i < n_; ++i)
            error_[i] += d1 * k(i1, i) + d2 * k(i2, i) + db;
        return true;
    }

    const std::vector<std::vector<double>>& x_;
    const std::vector<int>& y_;
    const double c_;
    const double tol_;
    const int max_passes_;
    const std::size_t n_;
    std::vector<double> alpha_;
    std::vector<double> error_;
    std::vector<double> kernel_;
    double b_ = 0.0;
};

// Runs fn(0..count-1) on up to `jobs` threads; each index is computed
// exactly once and may be claimed by any thread.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
    unsigned threads = jobs > 0 ? static_cast<unsigned>(jobs) : std::thread::hardware_concurrency();
    if (threads == 0) threads = 1;
    threads = std::min<unsigned>(threads, static_cast<unsigned>(count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    }
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

double rbf_kernel(const std::vector<double>& u, const std::vector<double>& v, double gamma) {
    if (u.size() != v.size())
        throw std::invalid_argument("kernel arguments have different dimensions");
    if (!(gamma >= 0.0)) throw std::invalid_argument("gamma must be non-negative");
    return std::exp(-gamma * squared_distance(u, v));
}

double BinarySvm::decision_function(const std::vector<double>& x) const {
    double f = bias;
    for (std::size_t i = 0; i < support_points.size(); ++i)
        f += dual_coefficients[i] * rbf_kernel(support_points[i], x, params.gamma);
    return f;
}

BinarySvm train_binary(const std::vector<std::vector<double>>& points,
                       const std::vector<int>& labels, const RbfParams& params, double tol,
                       int max_passes) {
    check_params(params);
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
    if (max_passes < 1) throw std::invalid_argument("max_passes must be at least 1");
    if (points.size() != labels.size())
        throw std::invalid_argument("points and labels differ in length");
    if (points.size() < 2) throw std::invalid_argument("training needs at least 2 points");
    const std::size_t dim = points.front().size();
    if (dim == 0) throw std::invalid_argument("points must have at least one dimension");
    bool has_pos = false, has_neg = false;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].size() != dim)
            throw std::invalid_argument("inconsistent point dimensions");
        if (labels[i] == 1)
            has_pos = true;
        else if (labels[i] == -1)
            has_neg = true;
        else
            throw std::invalid_argument("binary labels must be -1 or +1");
    }
    if (!has_pos || !has_neg) throw std::invalid_argument("both classes must be present");

    SmoSolver solver(points, labels, params, tol, max_passes);
    solver.solve();

    BinarySvm model;
    model.params = params;
    model.bias = solver.bias();
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double a = solver.alpha(i);
        if (a <= 0.0) continue;
        model.support_points.push_back(points[i]);
        model.dual_coefficients.push_back(a * labels[i]);
        model.support_indices.push_back(i);
    }
    if (model.support_points.empty())
        throw std::runtime_error("training produced no support vectors");
    return model;
}

double max_kkt_violation(const BinarySvm& model, const std::vector<std::vector<double>>& points,
                         const std::vector<int>& labels, double c) {
    std::vector<double> alpha(points.size(), 0.0);
    for (std::size_t s = 0; s < model.support_indices.size(); ++s)
        alpha[model.support_indices[s]] = std::fabs(model.dual_coefficients[s]);

    const double at_bound = c * (1.0 - 1e-12);
    double worst = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double margin = labels[i] * model.decision_function(points[i]);
        double v;
        if (alpha[i] <= 0.0)
            v = std::max(0.0, 1.0 - margin);
        else if (alpha[i] >= at_bound)
            v = std::max(0.0, margin - 1.0);
        else
            v = std::fabs(margin - 1.0);
        worst = std::max(worst, v);
    }
    return worst;
}

Dataset to_dataset(const std::vector<LabeledPoint>& points) {
    Dataset d;
    d.x.reserve(points.size());
    d.y.reserve(points.size());
    for (const LabeledPoint& p : points) {
        d.x.push_back({p.x, p.y});
        d.y.push_back(p.label);
    }
    return d;
}

namespace {

std::vector<int> sorted_classes(const std::vector<int>& labels) {
    std::set<int> s(labels.begin(), labels.end());
    return std::vector<int>(s.begin(), s.end());
}

std::vector<double> apply_normalization(const Normalization& norm, const std::vector<double>& x) {
    std::vector<double> out(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) out[k] = (x[k] - norm.mean[k]) / norm.scale[k];
    return out;
}

}  // namespace

SvmModel train_multiclass(const Dataset& data, const RbfParams& params, double tol,
                          int max_passes, bool normalize) {
    check_params(params);
    if (data.x.size() != data.y.size())
        throw std::invalid_argument("points and labels differ in length");
    if (data.x.empty()) throw std::invalid_argument("training data is empty");
    const std::size_t dim = data.x.front().size();
    for (const std::vector<double>& p : data.x)
        if (p.size() != dim) throw std::invalid_argument("inconsistent point dimensions");

    SvmModel model;
    model.classes = sorted_classes(data.y);
    if (model.classes.size() < 2)
        throw std::invalid_argument("multiclass training needs at least 2 distinct labels");
    model.params = params;
    model.dim = dim;

    const std::vector<std::vector<double>>* features = &data.x;
    std::vector<std::vector<double>> scaled;
    if (normalize) {
        Normalization norm;
        norm.mean.assign(dim, 0.0);
        norm.scale.assign(dim, 0.0);
        const double n = static_cast<double>(data.x.size());
        for (const std::vector<double>& p : data.x)
            for (std::size_t k = 0; k < dim; ++k) norm.mean[k] += p[k];
        for (std::size_t k = 0; k < dim; ++k) norm.mean[k] /= n;
        for (const std::vector<double>& p : data.x)
            for (std::size_t k = 0; k < dim; ++k) {
                const double d = p[k] - norm.mean[k];
                norm.scale[k] += d * d;
            }
        for (std::size_t k = 0; k < dim; ++k) {
            norm.scale[k] = std::sqrt(norm.scale[k] / n);
            if (!(norm.scale[k] > 0.0)) norm.scale[k] = 1.0;
        }
        scaled.reserve(data.x.size());
        for (const std::vector<double>& p : data.x) scaled.push_back(apply_normalization(norm, p));
        model.normalization = std::move(norm);
        features = &scaled;
    }

    for (std::size_t a = 0; a < model.classes.size(); ++a) {
        for (std::size_t b = a + 1; b < model.classes.size(); ++b) {
            std::vector<std::vector<double>> px;
            std::vector<int> py;
            for (std::size_t i = 0; i < data.y.size(); ++i) {
                if (data.y[i] == model.classes[a]) {
                    px.push_back((*features)[i]);
                    py.push_back(1);
                } else if (data.y[i] == model.classes[b]) {
                    px.push_back((*features)[i]);
                    py.push_back(-1);
                }
            }
            model.pairwise_models.push_back(train_binary(px, py, params, tol, max_passes));
        }
    }
    return model;
}

SvmModel train_multiclass(const std::vector<LabeledPoint>& data, const RbfParams& params,
                          double tol, int max_passes, bool normalize) {
    return train_multiclass(to_dataset(data), params, tol, max_passes, normalize);
}

int predict(const SvmModel& model, const std::vector<double>& point) {
    if (point.size() != model.dim)
        throw std::invalid_argument("point dimension does not match the trained model");
    std::vector<double> x = point;
    if (model.normalization) x = apply_normalization(*model.normalization, x);

    std::vector<int> votes(model.classes.size(), 0);
    std::size_t m = 0;
    for (std::size_t a = 0; a < model.classes.size(); ++a)
        for (std::size_t b = a + 1; b < model.classes.size(); ++b, ++m)
            ++votes[model.pairwise_models[m].decision_function(x) >= 0.0 ? a : b];

    std::size_t winner = 0;
    for (std::size_t i = 1; i < votes.size(); ++i)
        if (votes[i] > votes[winner]) winner = i;  // ties keep the smaller label
    return model.classes[winner];
}

std::vector<int> predict_all(const SvmModel& model,
                             const std::vector<std::vector<double>>& points) {
    std::vector<int> out;
    out.reserve(points.size());
    for (const std::vector<double>& p : points) out.push_back(predict(model, p));
    return out;
}

EvalMetrics evaluate(const SvmModel& model, const Dataset& data) {
    if (data.x.empty()) throw std::invalid_argument("evaluation data is empty");
    if (data.x.size() != data.y.size())
        throw std::invalid_argument("points and labels differ in length");

    const std::vector<int> predicted = predict_all(model, data.x);
    std::set<int> label_union(data.y.begin(), data.y.end());
    label_union.insert(predicted.begin(), predicted.end());

    std::size_t correct = 0;
    for (std::size_t i = 0; i < data.y.size(); ++i)
        if (predicted[i] == data.y[i]) ++correct;

    double precision_sum = 0.0, recall_sum = 0.0;
    for (int cls : label_union) {
        std::size_t tp = 0, fp = 0, fn = 0;
        for (std::size_t i = 0; i < data.y.size(); ++i) {
            const bool is_true = data.y[i] == cls;
            const bool is_pred = predicted[i] == cls;
            if (is_true && is_pred)
                ++tp;
            else if (is_pred)
                ++fp;
            else if (is_true)
                ++fn;
        }
        precision_sum += tp + fp == 0 ? 0.0 : static_cast<double>(tp) / (tp + fp);
        recall_sum += tp + fn == 0 ? 0.0 : static_cast<double>(tp) / (tp + fn);
    }

    EvalMetrics m;
    m.accuracy = static_cast<double>(correct) / static_cast<double>(data.y.size());
    m.precision = precision_sum / static_cast<double>(label_union.size());
    m.recall = recall_sum / static_cast<double>(label_union.size());
    m.f1 = m.precision + m.recall > 0.0
               ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
               : 0.0;
    return m;
}

EvalMetrics evaluate(const SvmModel& model, const std::vector<LabeledPoint>& data) {
    return evaluate(model, to_dataset(data));
}

SplitIndices stratified_split(const std::vector<int>& labels, double holdout_fraction,
                              std::uint64_t seed) {
    if (!(holdout_fraction > 0.0 && holdout_fraction < 1.0))
        throw std::invalid_argument("holdout fraction must be in (0, 1)");
    if (labels.empty()) throw std::invalid_argument("no labels to split");

    std::map<int, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);

    Rng rng(seed);
    SplitIndices split;
    for (auto& [cls, idx] : by_class) {
        if (idx.size() < 2)
            throw std::invalid_argument("class " + std::to_string(cls) +
                                        " has fewer than 2 points; cannot stratify");
        rng.shuffle(idx);
        const auto n = static_cast<long long>(idx.size());
        long long h = std::llround(holdout_fraction * static_cast<double>(n));
        h = std::clamp(h, 1LL, n - 1);
        split.holdout.insert(split.holdout.end(), idx.begin(), idx.begin() + h);
        split.train.insert(split.train.end(), idx.begin() + h, idx.end());
    }
    std::sort(split.train.begin(), split.train.end());
    std::sort(split.holdout.begin(), split.holdout.end());
    return split;
}

std::vector<double> default_c_grid() {
    return {26.5, 26.75, 27.0, 27.25, 27.5, 27.75, 28.0};
}

std::vector<double> default_gamma_grid() {
    return {std::exp2(-14.5), std::exp2(-14.75), std::exp2(-15.0), std::exp2(-15.25),
            std::exp2(-15.5), std::exp2(-15.75), std::exp2(-16.0)};
}

GridSearchResult grid_search(const Dataset& data, const std::vector<double>& c_grid,
                             const std::vector<double>& gamma_grid, double holdout_fraction,
                             std::uint64_t seed, double tol, int max_passes, int jobs) {
    if (c_grid.empty() || gamma_grid.empty())
        throw std::invalid_argument("hyperparameter grids must be non-empty");
    for (double c : c_grid)
        if (!(c > 0.0)) throw std::invalid_argument("C grid values must be positive");
    for (double g : gamma_grid)
        if (!(g > 0.0)) throw std::invalid_argument("gamma grid values must be positive");

    const SplitIndices split = stratified_split(data.y, holdout_fraction, seed);
    Dataset train, holdout;
    for (std::size_t i : split.train) {
        train.x.push_back(data.x[i]);
        train.y.push_back(data.y[i]);
    }
    for (std::size_t i : split.holdout) {
        holdout.x.push_back(data.x[i]);
        holdout.y.push_back(data.y[i]);
    }

    GridSearchResult result;
    result.split_seed = seed;
    result.cells.resize(c_grid.size() * gamma_grid.size());

    parallel_for(result.cells.size(), jobs, [&](std::size_t cell) {
        const double c = c_grid[cell / gamma_grid.size()];
        const double gamma = gamma_grid[cell % gamma_grid.size()];
        const SvmModel model = train_multiclass(train, {gamma, c}, tol, max_passes);
        std::size_t correct = 0;
        for (std::size_t i = 0; i < holdout.x.size(); ++i)
            if (predict(model, holdout.x[i]) == holdout.y[i]) ++correct;
        result.cells[cell] = {c, gamma,
                              static_cast<double>(correct) / static_cast<double>(holdout.x.size())};
    });

    const GridCell* best = &result.cells.front();
    for (const GridCell& cell : result.cells) {
        const bool better = cell.accuracy > best->accuracy ||
                            (cell.accuracy == best->accuracy &&
                             (cell.c < best->c || (cell.c == best->c && cell.gamma < best->gamma)));
        if (better) best = &cell;
    }
    result.best_c = best->c;
    result.best_gamma = best->gamma;
    result.best_accuracy = best->accuracy;
    return result;
}

std::string grid_to_csv(const GridSearchResult& result) {
    std::ostringstream out;
    out << "c,gamma,accuracy\n";
    for (const GridCell& cell : result.cells)
        out << format_double(cell.c) << "," << format_double(cell.gamma) << ","
            << format_double(cell.accuracy) << "\n";
    return out.str();
}

void save_model(const SvmModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << "gazekit_svm 1\n";
    out << "dim " << model.dim << "\n";
    out << "classes " << model.classes.size();
    for (int c : model.classes) out << " " << c;
    out << "\n";
    out << "gamma " << format_double(model.params.gamma) << "\n";
    out << "c " << format_double(model.params.c) << "\n";
    out << "normalize " << (model.normalization ? 1 : 0) << "\n";
    if (model.normalization) {
        out << "norm_mean";
        for (double v : model.normalization->mean) out << " " << format_double(v);
        out << "\nnorm_scale";
        for (double v : model.normalization->scale) out << " " << format_double(v);
        out << "\n";
    }
    out << "pairs " << model.pairwise_models.size() << "\n";
    std::size_t m = 0;
    for (std::size_t a = 0; a < model.classes.size(); ++a) {
        for (std::size_t b = a + 1; b < model.classes.size(); ++b, ++m) {
            const BinarySvm& bin = model.pairwise_models[m];
            out << "pair " << model.classes[a] << " " << model.classes[b] << " sv "
                << bin.support_points.size() << " bias " << format_double(bin.bias) << "\n";
            for (std::size_t i = 0; i < bin.support_points.size(); ++i) {
                out << "sv " << format_double(bin.dual_coefficients[i]);
                for (double v : bin.support_points[i]) out << " " << format_double(v);
                out << "\n";
            }
        }
    }
    if (!out) throw std::runtime_error("write failed for " + path);
}

namespace {

std::vector<std::string> expect_line(std::istream& in, const std::string& path,
                                     const char* keyword, std::size_t tokens_at_least) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": truncated model file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> tok = split_ws(line);
    if (tok.empty() || tok[0] != keyword || tok.size() < tokens_at_least)
        throw std::runtime_error(path + ": malformed model line, expected '" +
                                 std::string(keyword) + "'");
    return tok;
}

}  // namespace

SvmModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path + " for reading");

    SvmModel model;
    try {
        std::vector<std::string> tok = expect_line(in, path, "gazekit_svm", 2);
        if (parse_long(tok[1]) != 1) throw std::runtime_error("unsupported model version");

        tok = expect_line(in, path, "dim", 2);
        model.dim = static_cast<std::size_t>(parse_long(tok[1]));
        if (model.dim == 0) throw std::runtime_error("model dimension must be positive");

        tok = expect_line(in, path, "classes", 2);
        const std::size_t k = static_cast<std::size_t>(parse_long(tok[1]));
        if (k < 2 || tok.size() != 2 + k) throw std::runtime_error("bad class list");
        for (std::size_t i = 0; i < k; ++i)
            model.classes.push_back(static_cast<int>(parse_long(tok[2 + i])));
        if (!std::is_sorted(model.classes.begin(), model.classes.end()))
            throw std::runtime_error("model classes must be sorted");

        tok = expect_line(in, path, "gamma", 2);
        model.params.gamma = parse_double(tok[1]);
        tok = expect_line(in, path, "c", 2);
        model.params.c = parse_double(tok[1]);
        check_params(model.params);

        tok = expect_line(in, path, "normalize", 2);
        if (parse_long(tok[1]) == 1) {
            Normalization norm;
            tok = expect_line(in, path, "norm_mean", 1 + model.dim);
            for (std::size_t i = 0; i < model.dim; ++i) norm.mean.push_back(parse_double(tok[1 + i]));
            tok = expect_line(in, path, "norm_scale", 1 + model.dim);
            for (std::size_t i = 0; i < model.dim; ++i)
                norm.scale.push_back(parse_double(tok[1 + i]));
            model.normalization = std::move(norm);
        }

        tok = expect_line(in, path, "pairs", 2);
        const std::size_t pairs = static_cast<std::size_t>(parse_long(tok[1]));
        if (pairs != k * (k - 1) / 2) throw std::runtime_error("pair count mismatch");

        std::size_t m = 0;
        for (std::size_t a = 0; a < k; ++a) {
            for (std::size_t b = a + 1; b < k; ++b, ++m) {
                tok = expect_line(in, path, "pair", 6);
                if (parse_long(tok[1]) != model.classes[a] ||
                    parse_long(tok[2]) != model.classes[b] || tok[3] != "sv" || tok[5] != "bias")
                    throw std::runtime_error("unexpected pair header");
                const std::size_t nsv = static_cast<std::size_t>(parse_long(tok[4]));
                if (nsv == 0) throw std::runtime_error("pair with no support vectors");
                BinarySvm bin;
                bin.params = model.params;
                bin.bias = parse_double(tok[6]);
                for (std::size_t i = 0; i < nsv; ++i) {
                    tok = expect_line(in, path, "sv", 2 + model.dim);
                    if (tok.size() != 2 + model.dim)
                        throw std::runtime_error("support vector dimension mismatch");
                    bin.dual_coefficients.push_back(parse_double(tok[1]));
                    std::vector<double> p;
                    for (std::size_t d = 0; d < model.dim; ++d)
                        p.push_back(parse_double(tok[2 + d]));
                    bin.support_points.push_back(std::move(p));
                }
                model.pairwise_models.push_back(std::move(bin));
            }
        }
    } catch (const std::runtime_error&) {
        throw;
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    return model;
}

}  // namespace gazekit
