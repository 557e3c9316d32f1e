#include "aoi.hpp"

#include <sstream>
#include <stdexcept>

#include "text.hpp"

namespace gazekit {

int label_point(const std::vector<Aoi>& aois, double x, double y) {
    for (const Aoi& a : aois)
        if (a.contains(x, y)) return a.label;
    return 0;
}

std::vector<LabeledPoint> label_recording(const std::vector<Aoi>& aois,
                                          const GazeRecording& recording) {
    validate(recording);
    validate(aois);
    std::vector<LabeledPoint> points;
    for (const GazeSample& s : recording.samples) {
        if (s.validity != Validity::Valid) continue;
        points.push_back({s.x, s.y, label_point(aois, s.x, s.y)});
    }
    return points;
}

std::vector<double> valid_times(const GazeRecording& recording) {
    std::vector<double> times;
    for (const GazeSample& s : recording.samples)
        if (s.validity == Validity::Valid) times.push_back(s.t);
    return times;
}

DwellReport dwell_times(const std::vector<Aoi>& aois, const GazeRecording& recording) {
    validate(recording);
    validate(aois);
    if (recording.samples.size() < 2)
        throw std::invalid_argument("dwell computation needs at least 2 samples");

    DwellReport report;
    report.duration_s[0] = 0.0;
    for (const Aoi& a : aois) report.duration_s[a.label] = 0.0;

    const std::vector<GazeSample>& s = recording.samples;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        const int label =
            s[i].validity == Validity::Valid ? label_point(aois, s[i].x, s[i].y) : 0;
        report.duration_s[label] += s[i + 1].t - s[i].t;
    }

    report.total_s = s.back().t - s.front().t;
    for (const auto& [label, d] : report.duration_s)
        report.proportion[label] = report.total_s > 0.0 ? d / report.total_s : 0.0;
    return report;
}

std::string dwell_to_csv(const DwellReport& report) {
    std::ostringstream out;
    out << "label,duration_s,proportion\n";
    for (const auto& [label, d] : report.duration_s)
        out << label << "," << format_double(d) << "," << format_double(report.proportion.at(label))
            << "\n";
    return out.str();
}

}  // namespace gazekit
