#pragma once

#include "civet/error.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace civet {

inline std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& dir, const std::string& name,
              const std::string& header)
        : out_(dir / name) {
        if (!out_) throw Error(errc::io_error, "cannot write " + (dir / name).string());
        out_ << header << '\n';
    }

    template <typename... Fields>
    void row(const Fields&... fields) {
        bool first = true;
        ((out_ << (first ? "" : ",") << field(fields), first = false), ...);
        out_ << '\n';
    }

private:
    static std::string field(const std::string& s) { return s; }
    static std::string field(const char* s) { return s; }
    static std::string field(double v) { return fmt_double(v); }
    static std::string field(size_t v) { return std::to_string(v); }
    static std::string field(int v) { return std::to_string(v); }
    static std::string field(bool v) { return v ? "true" : "false"; }

    std::ofstream out_;
};

} // namespace civet
