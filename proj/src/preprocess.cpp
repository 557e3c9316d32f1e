#include "preprocess.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace gazekit {

GazeRecording median_filter(const GazeRecording& recording, int window) {
    validate(recording);
    if (window <= 0 || window % 2 == 0)
        throw std::invalid_argument("median window must be odd and positive, got " +
                                    std::to_string(window));
    if (static_cast<std::size_t>(window) > recording.samples.size())
        throw std::invalid_argument("median window exceeds sample count");

    std::vector<std::size_t> valid_idx;
    for (std::size_t i = 0; i < recording.samples.size(); ++i)
        if (recording.samples[i].validity == Validity::Valid) valid_idx.push_back(i);

    GazeRecording out = recording;
    if (valid_idx.empty()) return out;

    const std::size_t m = valid_idx.size();
    const std::size_t h = static_cast<std::size_t>(window / 2);
    std::vector<double> buf;
    for (std::size_t j = 0; j < m; ++j) {
        // Shrink symmetrically near the ends so the set stays odd-sized.
        const std::size_t r = std::min({h, j, m - 1 - j});
        for (int axis = 0; axis < 2; ++axis) {
            buf.clear();
            for (std::size_t k = j - r; k <= j + r; ++k) {
                const GazeSample& s = recording.samples[valid_idx[k]];
                buf.push_back(axis == 0 ? s.x : s.y);
            }
            std::nth_element(buf.begin(), buf.begin() + r, buf.end());
            GazeSample& dst = out.samples[valid_idx[j]];
            (axis == 0 ? dst.x : dst.y) = buf[r];
        }
    }
    return out;
}

GazeRecording interpolate_gaps(const GazeRecording& recording, double max_gap) {
    validate(recording);
    if (!(max_gap > 0.0)) throw std::invalid_argument("max_gap must be positive");

    GazeRecording out = recording;
    std::vector<GazeSample>& s = out.samples;
    const std::size_t n = s.size();
    std::size_t i = 0;
    while (i < n) {
        if (s[i].validity != Validity::Missing) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < n && s[j].validity == Validity::Missing) ++j;
        // Run is s[i..j): interpolate only when flanked by Valid samples
        // and the gap between them is short enough.
        const bool bounded = i > 0 && j < n && s[i - 1].validity == Validity::Valid &&
                             s[j].validity == Validity::Valid;
        if (bounded && s[j].t - s[i - 1].t <= max_gap) {
            const GazeSample& a = s[i - 1];
            const GazeSample& b = s[j];
            const double span = b.t - a.t;
            for (std::size_t k = i; k < j; ++k) {
                const double w = (s[k].t - a.t) / span;
                s[k].x = a.x + w * (b.x - a.x);
                s[k].y = a.y + w * (b.y - a.y);
                s[k].validity = Validity::Valid;
            }
        } else {
            for (std::size_t k = i; k < j; ++k) s[k].validity = Validity::Blink;
        }
        i = j;
    }
    return out;
}

GazeRecording drift_correct(const GazeRecording& recording,
                            const std::vector<CalibrationWindow>& calibrations) {
    validate(recording);
    GazeRecording out = recording;
    if (calibrations.empty()) return out;

    struct Offset {
        double t = 0.0;  // window midpoint
        double dx = 0.0;
        double dy = 0.0;
    };
    std::vector<Offset> offsets;
    offsets.reserve(calibrations.size());
    for (const CalibrationWindow& w : calibrations) {
        if (!(w.t_start < w.t_end))
            throw std::invalid_argument("calibration window must have t_start < t_end");
        double sum_x = 0.0, sum_y = 0.0;
        std::size_t count = 0;
        for (const GazeSample& s : recording.samples) {
            if (s.validity != Validity::Valid) continue;
            if (s.t < w.t_start || s.t > w.t_end) continue;
            sum_x += s.x;
            sum_y += s.y;
            ++count;
        }
        if (count == 0)
            throw std::runtime_error("calibration window [" + std::to_string(w.t_start) + ", " +
                                     std::to_string(w.t_end) + "] contains no valid samples");
        Offset o;
        o.t = 0.5 * (w.t_start + w.t_end);
        o.dx = sum_x / static_cast<double>(count) - w.target_x;
        o.dy = sum_y / static_cast<double>(count) - w.target_y;
        offsets.push_back(o);
    }
    std::sort(offsets.begin(), offsets.end(),
              [](const Offset& a, const Offset& b) { return a.t < b.t; });

    auto offset_at = [&offsets](double t) -> std::pair<double, double> {
        if (t <= offsets.front().t) return {offsets.front().dx, offsets.front().dy};
        if (t >= offsets.back().t) return {offsets.back().dx, offsets.back().dy};
        std::size_t k = 1;
        while (offsets[k].t < t) ++k;
        const Offset& a = offsets[k - 1];
        const Offset& b = offsets[k];
        const double w = (t - a.t) / (b.t - a.t);
        return {a.dx + w * (b.dx - a.dx), a.dy + w * (b.dy - a.dy)};
    };

    for (GazeSample& s : out.samples) {
        if (s.validity != Validity::Valid) continue;
        auto [dx, dy] = offset_at(s.t);
        s.x -= dx;
        s.y -= dy;
    }
    return out;
}

}  // namespace gazekit
