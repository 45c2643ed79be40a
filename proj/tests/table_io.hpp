#pragma once
// Readers for the files written by the runner.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace table_io {

struct Table {
    std::vector<std::string> comments;  // '#' lines without the leading "# "
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::size_t index(const std::string& name) const {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (columns[i] == name) return i;
        }
        throw std::out_of_range("no column " + name);
    }
    std::vector<double> column(const std::string& name) const {
        const std::size_t i = index(name);
        std::vector<double> out;
        for (const auto& r : rows) out.push_back(r[i]);
        return out;
    }
};

inline std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Table read_csv(const std::filesystem::path& path) {
    Table t;
    std::istringstream in(slurp(path));
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("# ", 0) == 0) {
            t.comments.push_back(line.substr(2));
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
        if (t.columns.empty()) {
            t.columns = cells;
        } else {
            std::vector<double> row;
            for (const auto& c : cells) row.push_back(std::strtod(c.c_str(), nullptr));
            t.rows.push_back(std::move(row));
        }
    }
    return t;
}

inline std::vector<nlohmann::ordered_json> read_ndjson(const std::filesystem::path& path) {
    std::vector<nlohmann::ordered_json> out;
    std::istringstream in(slurp(path));
    for (std::string line; std::getline(in, line);) {
        if (!line.empty()) out.push_back(nlohmann::ordered_json::parse(line));
    }
    return out;
}

}  // namespace table_io
