#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace gazekit::testutil {

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("test setup: cannot write " + path);
    out << content;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("test setup: cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace gazekit::testutil
