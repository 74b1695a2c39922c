#pragma once

// Metric serialization. CSV carries per-epoch series, a flat JSON object the
// final summary; both render float64 at full precision so reruns are
// byte-comparable. Timestamps and wall-clock figures belong in log lines
// only, never in artifacts.

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace boon {

inline std::string format_full(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// The reporting convention for a metric pair: relative error with the
// boundary error in parentheses.
inline std::string metric_pair(double rel_l2, double boundary_l2) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%.6g (%.6g)", rel_l2, boundary_l2);
    return buf;
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> cells) {
        if (cells.size() != header.size())
            throw std::invalid_argument("CsvTable: row width disagrees with the header");
        rows.push_back(std::move(cells));
    }

    std::string to_string() const {
        std::string out;
        auto line = [&out](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (i)
                    out += ',';
                out += cells[i];
            }
            out += '\n';
        };
        line(header);
        for (const auto& r : rows)
            line(r);
        return out;
    }
};

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw std::runtime_error("write_text_file: cannot open " + path);
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f)
        throw std::runtime_error("write_text_file: short write to " + path);
}

// Insertion-ordered JSON keeps summaries diffable across runs.
using Json = nlohmann::ordered_json;

} // namespace boon
