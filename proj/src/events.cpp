#include "events.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "text.hpp"

namespace gazekit {
namespace {

double distance(const GazeSample& a, const GazeSample& b) {
    return std::hypot(b.x - a.x, b.y - a.y);
}

// Appends the fixations found in the run of Valid samples [begin, end).
void scan_run(const std::vector<GazeSample>& samples, std::size_t begin, std::size_t end,
              double dispersion_threshold, double min_duration,
              std::vector<FixationEvent>& out) {
    std::size_t i = begin;
    while (i < end) {
        double min_x = samples[i].x, max_x = samples[i].x;
        double min_y = samples[i].y, max_y = samples[i].y;
        std::size_t j = i;
        while (j + 1 < end) {
            const GazeSample& nxt = samples[j + 1];
            const double d = (std::max(max_x, nxt.x) - std::min(min_x, nxt.x)) +
                             (std::max(max_y, nxt.y) - std::min(min_y, nxt.y));
            if (d > dispersion_threshold) break;
            ++j;
            min_x = std::min(min_x, nxt.x);
            max_x = std::max(max_x, nxt.x);
            min_y = std::min(min_y, nxt.y);
            max_y = std::max(max_y, nxt.y);
        }
        if (samples[j].t - samples[i].t >= min_duration) {
            FixationEvent f;
            f.t_start = samples[i].t;
            f.t_end = samples[j].t;
            double sx = 0.0, sy = 0.0;
            for (std::size_t k = i; k <= j; ++k) {
                sx += samples[k].x;
                sy += samples[k].y;
            }
            const double n = static_cast<double>(j - i + 1);
            f.centroid_x = sx / n;
            f.centroid_y = sy / n;
            f.dispersion = (max_x - min_x) + (max_y - min_y);
            out.push_back(f);
        }
        i = j + 1;  // restart at the sample that broke the window
    }
}

}  // namespace

std::vector<FixationEvent> detect_fixations(const GazeRecording& recording,
                                            double dispersion_threshold, double min_duration) {
    validate(recording);
    if (!(dispersion_threshold > 0.0))
        throw std::invalid_argument("dispersion threshold must be positive");
    if (!(min_duration > 0.0)) throw std::invalid_argument("min fixation duration must be positive");

    const std::vector<GazeSample>& s = recording.samples;
    std::vector<FixationEvent> out;
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i].validity != Validity::Valid) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < s.size() && s[j].validity == Validity::Valid) ++j;
        scan_run(s, i, j, dispersion_threshold, min_duration, out);
        i = j;
    }
    return out;
}

std::vector<SaccadeEvent> detect_saccades(const GazeRecording& recording,
                                          double velocity_threshold) {
    validate(recording);
    if (!(velocity_threshold > 0.0))
        throw std::invalid_argument("saccade velocity threshold must be positive");

    const std::vector<GazeSample>& s = recording.samples;
    std::vector<SaccadeEvent> out;
    // Open run state: indices of the first/last sample of the run so far.
    bool open = false;
    std::size_t run_start = 0, run_end = 0;
    double peak = 0.0;
    auto close = [&] {
        if (!open) return;
        SaccadeEvent e;
        e.t_start = s[run_start].t;
        e.t_end = s[run_end].t;
        e.amplitude = distance(s[run_start], s[run_end]);
        e.peak_velocity = peak;
        out.push_back(e);
        open = false;
    };
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        if (s[i].validity != Validity::Valid || s[i + 1].validity != Validity::Valid) {
            close();
            continue;
        }
        const double v = distance(s[i], s[i + 1]) / (s[i + 1].t - s[i].t);
        if (v >= velocity_threshold) {
            if (!open) {
                open = true;
                run_start = i;
                peak = 0.0;
            }
            run_end = i + 1;
            peak = std::max(peak, v);
        } else {
            close();
        }
    }
    close();
    return out;
}

double blink_rate(const GazeRecording& recording) {
    validate(recording);
    const std::vector<GazeSample>& s = recording.samples;
    const double duration = s.back().t - s.front().t;
    if (!(duration > 0.0)) return 0.0;
    std::size_t runs = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i].validity == Validity::Blink &&
            (i == 0 || s[i - 1].validity != Validity::Blink))
            ++runs;
    return static_cast<double>(runs) / (duration / 60.0);
}

FeatureVector extract_features(const GazeRecording& recording, const EventConfig& config) {
    const std::vector<FixationEvent> fixations =
        detect_fixations(recording, config.dispersion_px, config.min_fixation_s);
    const std::vector<SaccadeEvent> saccades =
        detect_saccades(recording, config.saccade_velocity);

    FeatureVector fv;
    fv.fixation_count = static_cast<int>(fixations.size());
    if (!fixations.empty()) {
        double sum = 0.0;
        for (const FixationEvent& f : fixations) sum += f.duration();
        fv.mean_fixation_duration = sum / static_cast<double>(fixations.size());
    }
    fv.saccade_count = static_cast<int>(saccades.size());
    if (!saccades.empty()) {
        double sum = 0.0;
        for (const SaccadeEvent& e : saccades) sum += e.amplitude;
        fv.mean_saccade_amplitude = sum / static_cast<double>(saccades.size());
    }
    fv.blink_rate = blink_rate(recording);
    return fv;
}

std::string events_to_csv(const std::vector<FixationEvent>& fixations,
                          const std::vector<SaccadeEvent>& saccades) {
    struct Row {
        double t_start;
        double t_end;
        double a;
        double b;
        int kind;  // 0 fixation, 1 saccade — fixation first on equal t_start
    };
    std::vector<Row> rows;
    rows.reserve(fixations.size() + saccades.size());
    for (const FixationEvent& f : fixations)
        rows.push_back({f.t_start, f.t_end, f.centroid_x, f.centroid_y, 0});
    for (const SaccadeEvent& e : saccades)
        rows.push_back({e.t_start, e.t_end, e.amplitude, e.peak_velocity, 1});
    std::stable_sort(rows.begin(), rows.end(), [](const Row& l, const Row& r) {
        return l.t_start != r.t_start ? l.t_start < r.t_start : l.kind < r.kind;
    });

    std::ostringstream out;
    out << "type,t_start,t_end,a,b\n";
    for (const Row& r : rows) {
        out << (r.kind == 0 ? "fixation" : "saccade") << "," << format_double(r.t_start) << ","
            << format_double(r.t_end) << "," << format_double(r.a) << "," << format_double(r.b)
            << "\n";
    }
    return out.str();
}

}  // namespace gazekit
