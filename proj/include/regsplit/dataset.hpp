#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "regsplit/quarter.hpp"

namespace regsplit {

// Aligned quarterly macro series. Immutable after load; safe to share
// across threads. gdp/gov/news are stored in trend-scaled units once
// apply_trend_scaling has run (trend_scaled flag), raw columns are kept
// for audit.
struct Dataset {
    std::vector<Quarter> index;  // strictly increasing, gap-free
    std::vector<double> gdp;     // real per-capita GDP / trend GDP
    std::vector<double> gov;     // real government spending / trend GDP
    std::vector<double> unemp;   // unemployment rate, percent
    std::vector<double> news;    // defense news shock / trend GDP
    std::vector<double> trend;   // trend GDP level, > 0
    std::vector<double> raw_gdp;
    std::vector<double> raw_gov;
    std::vector<double> raw_news;
    std::vector<double> bp_shock;  // optional precomputed column; empty if absent
    bool trend_scaled = false;

    std::size_t size() const { return index.size(); }
    bool has_bp_column() const { return !bp_shock.empty(); }

    const std::vector<double>& series(const std::string& name) const;
};

// Logical-to-actual column mapping plus load options. The CLI reads this
// from a JSON object ({"gdp": "rgdp_pot", ...}); unmapped logical names
// default to themselves.
struct Schema {
    std::map<std::string, std::string> columns;
    bool pre_scaled = false;     // gdp/gov/news columns already trend-scaled
    int trend_poly_degree = 6;   // fallback fit when no trend column mapped

    std::string actual(const std::string& logical) const {
        auto it = columns.find(logical);
        return it == columns.end() ? logical : it->second;
    }
};

Dataset load_dataset(const std::string& path, const Schema& schema = {});

// Divides gdp/gov/news by trend. Idempotent: a second call is a no-op.
Dataset apply_trend_scaling(Dataset ds);

// Used by the round-trip property and by simulate traces.
void write_dataset_csv(const Dataset& ds, const std::string& path);

// Degree-d polynomial in time fit to log(raw), exponentiated. Fallback
// trend when the input file carries none.
std::vector<double> fit_trend(const std::vector<double>& raw, int degree);

}  // namespace regsplit
