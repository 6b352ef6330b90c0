#include "regsplit/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>

#include "regsplit/errors.hpp"

namespace regsplit {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string trimmed(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

}  // namespace

long CsvTable::column(const std::string& name) const {
    for (std::size_t j = 0; j < header.size(); ++j)
        if (header[j] == name) return static_cast<long>(j);
    return -1;
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::io, "cannot open file: " + path);
    CsvTable table;
    std::string line;
    if (!std::getline(in, line))
        throw Error(ErrorKind::parse, "empty CSV file: " + path);
    for (auto& h : split_line(line)) table.header.push_back(trimmed(h));
    long lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trimmed(line).empty()) continue;
        auto cells = split_line(line);
        if (cells.size() != table.header.size())
            throw Error(ErrorKind::parse,
                        path + ": line " + std::to_string(lineno) + " has " +
                            std::to_string(cells.size()) + " cells, expected " +
                            std::to_string(table.header.size()));
        for (auto& c : cells) c = trimmed(c);
        table.rows.push_back(std::move(cells));
    }
    return table;
}

double parse_cell(const std::string& cell, long row, const std::string& col) {
    double v = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last)
        throw Error(ErrorKind::parse, "non-numeric cell '" + cell +
                                          "' at data row " + std::to_string(row) +
                                          ", column '" + col + "'");
    return v;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace regsplit
