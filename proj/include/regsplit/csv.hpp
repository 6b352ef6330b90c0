#pragma once

#include <string>
#include <vector>

namespace regsplit {

// Minimal CSV table: header row plus string cells. Numeric parsing is done
// by the caller with from_chars, so no locale dependence anywhere.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    long column(const std::string& name) const;  // -1 if absent
};

CsvTable read_csv(const std::string& path);

// Locale-free numeric parse; throws Error(parse) with row/column context.
double parse_cell(const std::string& cell, long row, const std::string& col);

// %.17g so doubles round-trip bit-exactly.
std::string format_double(double v);

}  // namespace regsplit
