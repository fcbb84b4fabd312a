#include "ehh/csv.hpp"

#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

namespace ehh {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

bool try_parse(const std::string& cell, double* out) {
    const char* begin = cell.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) return false;
    while (*end == ' ' || *end == '\t' || *end == '\r') ++end;
    if (*end != '\0') return false;
    *out = v;
    return true;
}

}  // namespace

IoData load_csv(const std::string& path, const CsvColumns& columns) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open '" + path + "'");
    }
    const int needed = std::max(columns.input, columns.output) + 1;
    std::vector<double> us, ys;
    std::string line;
    long line_no = 0;
    bool first_data_line = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = split_line(line);
        if (static_cast<int>(cells.size()) < needed) {
            throw MissingColumn("line " + std::to_string(line_no) + " has " +
                                std::to_string(cells.size()) +
                                " columns, need at least " +
                                std::to_string(needed));
        }
        double u, y;
        const bool u_ok = try_parse(cells[columns.input], &u);
        const bool y_ok = try_parse(cells[columns.output], &y);
        if (!u_ok || !y_ok) {
            if (first_data_line) {
                first_data_line = false;  // header row
                continue;
            }
            throw ParseError("non-numeric cell '" +
                                 (u_ok ? cells[columns.output]
                                       : cells[columns.input]) +
                                 "'",
                             line_no);
        }
        first_data_line = false;
        us.push_back(u);
        ys.push_back(y);
    }
    IoData data;
    data.u = Eigen::Map<Eigen::VectorXd>(us.data(),
                                         static_cast<Eigen::Index>(us.size()));
    data.y = Eigen::Map<Eigen::VectorXd>(ys.data(),
                                         static_cast<Eigen::Index>(ys.size()));
    return data;
}

void save_csv(const std::string& path, const IoData& data) {
    if (data.u.size() != data.y.size()) {
        throw DimensionMismatch("input and output sequences differ in length");
    }
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    out.precision(std::numeric_limits<double>::max_digits10);
    out << "u,y\n";
    for (Eigen::Index k = 0; k < data.u.size(); ++k) {
        out << data.u(k) << ',' << data.y(k) << '\n';
    }
    if (!out) {
        throw IoError("write to '" + path + "' failed");
    }
}

}  // namespace ehh
