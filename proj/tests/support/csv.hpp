// csv.hpp — reader for the tool's CSV output, shared by the CLI test and the
// acceptance runner.

#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace sqent::testing {

struct Csv {
    std::string version_line;
    std::map<std::string, std::string> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::size_t index(const std::string& name) const {
        for (std::size_t j = 0; j < columns.size(); ++j)
            if (columns[j] == name) return j;
        throw std::runtime_error("no column " + name);
    }
};

inline std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

inline Csv parse_csv(const std::string& text) {
    Csv csv;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (csv.version_line.empty()) {
                csv.version_line = line;
                continue;
            }
            const auto eq = line.find(" = ");
            if (eq != std::string::npos) csv.meta[line.substr(2, eq - 2)] = line.substr(eq + 3);
            continue;
        }
        if (csv.columns.empty()) {
            csv.columns = split(line);
            continue;
        }
        std::vector<double> row;
        for (const auto& cell : split(line)) row.push_back(std::stod(cell));
        csv.rows.push_back(std::move(row));
    }
    return csv;
}

inline Csv read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_csv(ss.str());
}

}  // namespace sqent::testing
