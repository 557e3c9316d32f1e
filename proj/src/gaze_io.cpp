#include "gaze_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "text.hpp"

namespace gazekit {
namespace {

const char* k_gaze_header = "participant_id,group,scenario,sample_rate_hz,t,x,y,validity";

[[noreturn]] void fail_line(const std::string& path, std::size_t line, const std::string& what) {
    throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

std::ifstream open_for_read(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path + " for reading");
    return in;
}

std::ofstream open_for_write(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    return out;
}

// Strips a trailing '\r' so CRLF input parses the same as LF.
bool get_line(std::istream& in, std::string& line) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

}  // namespace

GazeRecording read_gaze_csv(const std::string& path) {
    std::ifstream in = open_for_read(path);

    std::string line;
    if (!get_line(in, line)) throw std::runtime_error(path + ": empty file");
    if (trim(line) != k_gaze_header)
        fail_line(path, 1, "expected header '" + std::string(k_gaze_header) + "'");

    GazeRecording rec;
    bool have_meta = false;
    std::size_t line_no = 1;
    while (get_line(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        std::vector<std::string> cells = split(line, ',');
        if (cells.size() != 8)
            fail_line(path, line_no, "expected 8 fields, got " + std::to_string(cells.size()));
        for (std::string& c : cells) c = trim(c);

        GazeSample s;
        try {
            s.validity = parse_validity(cells[7]);
            s.t = parse_double(cells[4]);
            // Non-valid rows may leave coordinates empty; store 0.
            bool allow_empty_xy = s.validity != Validity::Valid;
            s.x = (allow_empty_xy && cells[5].empty()) ? 0.0 : parse_double(cells[5]);
            s.y = (allow_empty_xy && cells[6].empty()) ? 0.0 : parse_double(cells[6]);
        } catch (const std::exception& e) {
            fail_line(path, line_no, e.what());
        }

        std::string participant = cells[0];
        Group group;
        Scenario scenario;
        double rate = 0.0;
        try {
            group = parse_group(cells[1]);
            scenario = parse_scenario(cells[2]);
            rate = parse_double(cells[3]);
        } catch (const std::exception& e) {
            fail_line(path, line_no, e.what());
        }

        if (!have_meta) {
            rec.participant_id = participant;
            rec.group = group;
            rec.scenario = scenario;
            rec.sample_rate_hz = rate;
            have_meta = true;
        } else {
            if (participant != rec.participant_id || group != rec.group ||
                scenario != rec.scenario || rate != rec.sample_rate_hz)
                fail_line(path, line_no, "recording-level fields differ from first sample");
        }

        if (!rec.samples.empty() && !(s.t > rec.samples.back().t))
            fail_line(path, line_no, "timestamps must be strictly increasing");
        rec.samples.push_back(s);
    }

    if (rec.samples.empty()) throw std::runtime_error(path + ": no samples");
    validate(rec);
    return rec;
}

void write_gaze_csv(const GazeRecording& recording, const std::string& path) {
    validate(recording);
    std::ofstream out = open_for_write(path);
    out << k_gaze_header << "\n";
    const std::string prefix = recording.participant_id + "," + to_string(recording.group) + "," +
                               to_string(recording.scenario) + "," +
                               format_double(recording.sample_rate_hz) + ",";
    for (const GazeSample& s : recording.samples) {
        out << prefix << format_double(s.t) << "," << format_double(s.x) << ","
            << format_double(s.y) << "," << to_string(s.validity) << "\n";
    }
    if (!out) throw std::runtime_error("write failed for " + path);
}

namespace {

// Returns the content of a config line with comments removed, or an
// empty string for blank/comment-only lines.
std::string strip_comment(const std::string& line) {
    std::size_t hash = line.find('#');
    return trim(hash == std::string::npos ? line : line.substr(0, hash));
}

}  // namespace

std::vector<Aoi> read_aoi_config(const std::string& path) {
    std::ifstream in = open_for_read(path);
    std::vector<Aoi> aois;
    std::string line;
    std::size_t line_no = 0;
    while (get_line(in, line)) {
        ++line_no;
        std::string body = strip_comment(line);
        if (body.empty()) continue;
        std::vector<std::string> tok = split_ws(body);
        if (tok.size() != 5)
            fail_line(path, line_no, "expected 'label x_min y_min x_max y_max'");
        Aoi a;
        try {
            a.label = static_cast<int>(parse_long(tok[0]));
            a.x_min = parse_double(tok[1]);
            a.y_min = parse_double(tok[2]);
            a.x_max = parse_double(tok[3]);
            a.y_max = parse_double(tok[4]);
        } catch (const std::exception& e) {
            fail_line(path, line_no, e.what());
        }
        aois.push_back(a);
    }
    if (aois.empty()) throw std::runtime_error(path + ": no AOIs defined");
    try {
        validate(aois);
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    return aois;
}

void write_aoi_config(const std::vector<Aoi>& aois, const std::string& path) {
    validate(aois);
    std::ofstream out = open_for_write(path);
    out << "# label x_min y_min x_max y_max\n";
    for (const Aoi& a : aois) {
        out << a.label << " " << format_double(a.x_min) << " " << format_double(a.y_min) << " "
            << format_double(a.x_max) << " " << format_double(a.y_max) << "\n";
    }
    if (!out) throw std::runtime_error("write failed for " + path);
}

std::vector<CalibrationWindow> read_calibration(const std::string& path) {
    std::ifstream in = open_for_read(path);
    std::vector<CalibrationWindow> windows;
    std::string line;
    std::size_t line_no = 0;
    while (get_line(in, line)) {
        ++line_no;
        std::string body = strip_comment(line);
        if (body.empty()) continue;
        std::vector<std::string> tok = split_ws(body);
        if (tok.size() != 4)
            fail_line(path, line_no, "expected 't_start t_end target_x target_y'");
        CalibrationWindow w;
        try {
            w.t_start = parse_double(tok[0]);
            w.t_end = parse_double(tok[1]);
            w.target_x = parse_double(tok[2]);
            w.target_y = parse_double(tok[3]);
        } catch (const std::exception& e) {
            fail_line(path, line_no, e.what());
        }
        if (!(w.t_start < w.t_end))
            fail_line(path, line_no, "t_start must be less than t_end");
        windows.push_back(w);
    }
    if (windows.empty()) throw std::runtime_error(path + ": no calibration windows");
    return windows;
}

std::vector<LabeledPoint> read_labeled_csv(const std::string& path) {
    std::ifstream in = open_for_read(path);
    std::string line;
    if (!get_line(in, line)) throw std::runtime_error(path + ": empty file");
    if (trim(line) != "x,y,label") fail_line(path, 1, "expected header 'x,y,label'");

    std::vector<LabeledPoint> points;
    std::size_t line_no = 1;
    while (get_line(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        std::vector<std::string> cells = split(line, ',');
        if (cells.size() != 3)
            fail_line(path, line_no, "expected 3 fields, got " + std::to_string(cells.size()));
        LabeledPoint p;
        try {
            p.x = parse_double(trim(cells[0]));
            p.y = parse_double(trim(cells[1]));
            p.label = static_cast<int>(parse_long(trim(cells[2])));
        } catch (const std::exception& e) {
            fail_line(path, line_no, e.what());
        }
        points.push_back(p);
    }
    if (points.empty()) throw std::runtime_error(path + ": no data rows");
    return points;
}

void write_labeled_csv(const std::vector<LabeledPoint>& points, const std::string& path) {
    std::ofstream out = open_for_write(path);
    out << "x,y,label\n";
    for (const LabeledPoint& p : points)
        out << format_double(p.x) << "," << format_double(p.y) << "," << p.label << "\n";
    if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace gazekit
