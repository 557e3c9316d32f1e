#include "text.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <stdexcept>

namespace gazekit {

std::string format_double(double value) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& token) {
    if (token.empty()) throw std::invalid_argument("empty numeric field");
    // strtod skips leading whitespace on its own; reject it up front so the
    // whole token really is the number.
    if (std::isspace(static_cast<unsigned char>(token.front())))
        throw std::invalid_argument("malformed number '" + token + "'");
    const char* begin = token.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end != begin + token.size())
        throw std::invalid_argument("malformed number '" + token + "'");
    return v;
}

long parse_long(const std::string& token) {
    if (token.empty()) throw std::invalid_argument("empty integer field");
    if (std::isspace(static_cast<unsigned char>(token.front())))
        throw std::invalid_argument("malformed integer '" + token + "'");
    const char* begin = token.c_str();
    char* end = nullptr;
    const long v = std::strtol(begin, &end, 10);
    if (end != begin + token.size())
        throw std::invalid_argument("malformed integer '" + token + "'");
    if (v < 0) throw std::invalid_argument("negative integer '" + token + "'");
    return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::string::size_type start = 0;
    while (true) {
        auto pos = line.find(sep, start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) {
                fields.push_back(cur);
                cur.clear();
            }
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) fields.push_back(cur);
    return fields;
}

std::string trim(const std::string& s) {
    std::string::size_type b = 0;
    std::string::size_type e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

}  // namespace gazekit
