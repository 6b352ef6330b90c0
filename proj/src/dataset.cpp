#include "regsplit/dataset.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>

#include "regsplit/csv.hpp"
#include "regsplit/errors.hpp"

namespace regsplit {

namespace {

int parse_int_cell(const std::string& cell, long row, const std::string& col) {
    // Accept "1950" and "1950.0" style cells.
    double v = parse_cell(cell, row, col);
    double r = std::round(v);
    if (std::fabs(v - r) > 1e-9)
        throw Error(ErrorKind::parse, "expected integer in column '" + col +
                                          "' at data row " + std::to_string(row) +
                                          ", got '" + cell + "'");
    return static_cast<int>(r);
}

long require_column(const CsvTable& t, const Schema& schema,
                    const std::string& logical) {
    const std::string actual = schema.actual(logical);
    long j = t.column(actual);
    if (j < 0)
        throw Error(ErrorKind::schema, "missing column '" + actual +
                                           "' (mapped from logical '" + logical +
                                           "')");
    return j;
}

}  // namespace

const std::vector<double>& Dataset::series(const std::string& name) const {
    if (name == "gdp") return gdp;
    if (name == "gov") return gov;
    if (name == "unemp") return unemp;
    if (name == "news") return news;
    if (name == "trend") return trend;
    throw Error(ErrorKind::contract, "unknown series: " + name);
}

std::vector<double> fit_trend(const std::vector<double>& raw, int degree) {
    const long n = static_cast<long>(raw.size());
    if (n < degree + 2)
        throw Error(ErrorKind::estimation, "too few rows to fit trend polynomial");
    Eigen::VectorXd logy(n);
    for (long i = 0; i < n; ++i) {
        if (raw[i] <= 0.0)
            throw Error(ErrorKind::domain,
                        "trend fit needs positive raw GDP, got " +
                            format_double(raw[i]) + " at row " + std::to_string(i));
        logy[i] = std::log(raw[i]);
    }
    // Chebyshev-style normalized time for conditioning.
    Eigen::MatrixXd V(n, degree + 1);
    for (long i = 0; i < n; ++i) {
        double t = n == 1 ? 0.0 : 2.0 * static_cast<double>(i) / (n - 1) - 1.0;
        double p = 1.0;
        for (int d = 0; d <= degree; ++d) {
            V(i, d) = p;
            p *= t;
        }
    }
    Eigen::VectorXd coef = V.colPivHouseholderQr().solve(logy);
    Eigen::VectorXd fitted = V * coef;
    std::vector<double> trend(n);
    for (long i = 0; i < n; ++i) trend[i] = std::exp(fitted[i]);
    return trend;
}

Dataset load_dataset(const std::string& path, const Schema& schema) {
    CsvTable table = read_csv(path);

    const long jy = require_column(table, schema, "year");
    const long jq = require_column(table, schema, "quarter");
    const long jgdp = require_column(table, schema, "gdp");
    const long jgov = require_column(table, schema, "gov");
    const long ju = require_column(table, schema, "unemp");
    const long jn = require_column(table, schema, "news");
    const long jtrend = table.column(schema.actual("trend"));
    const long jbp = table.column(schema.actual("bp_shock"));
    if (jtrend < 0 && !schema.pre_scaled &&
        schema.columns.count("trend"))
        throw Error(ErrorKind::schema,
                    "missing column '" + schema.actual("trend") +
                        "' (mapped from logical 'trend')");

    struct Row {
        Quarter quarter;
        double gdp, gov, unemp, news, trend, bp;
        bool has_trend;
    };
    std::vector<Row> rows;
    rows.reserve(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& cells = table.rows[i];
        const long r = static_cast<long>(i) + 1;
        Row row{};
        row.quarter = make_quarter(parse_int_cell(cells[jy], r, "year"),
                                   parse_int_cell(cells[jq], r, "quarter"));
        row.gdp = parse_cell(cells[jgdp], r, schema.actual("gdp"));
        row.gov = parse_cell(cells[jgov], r, schema.actual("gov"));
        row.unemp = parse_cell(cells[ju], r, schema.actual("unemp"));
        row.news = parse_cell(cells[jn], r, schema.actual("news"));
        row.has_trend = jtrend >= 0;
        row.trend = jtrend >= 0 ? parse_cell(cells[jtrend], r, "trend") : 1.0;
        row.bp = jbp >= 0 ? parse_cell(cells[jbp], r, "bp_shock") : 0.0;
        rows.push_back(row);
    }
    if (rows.empty()) throw Error(ErrorKind::parse, "no data rows in " + path);

    std::sort(rows.begin(), rows.end(),
              [](const Row& a, const Row& b) { return a.quarter < b.quarter; });

    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].quarter == rows[i - 1].quarter)
            throw Error(ErrorKind::continuity,
                        "duplicate quarter " + rows[i].quarter.str());
        Quarter expect = rows[i - 1].quarter.next();
        if (rows[i].quarter != expect)
            throw Error(ErrorKind::continuity,
                        "calendar gap: missing " + expect.str());
    }

    Dataset ds;
    const std::size_t n = rows.size();
    ds.index.reserve(n);
    for (const auto& row : rows) {
        ds.index.push_back(row.quarter);
        if (row.unemp < 0.0)
            throw Error(ErrorKind::domain, "negative unemployment at " +
                                               row.quarter.str());
        if (row.has_trend && row.trend <= 0.0)
            throw Error(ErrorKind::domain,
                        "trend must be positive, got " + format_double(row.trend) +
                            " at " + row.quarter.str());
        ds.raw_gdp.push_back(row.gdp);
        ds.raw_gov.push_back(row.gov);
        ds.raw_news.push_back(row.news);
        ds.gdp.push_back(row.gdp);
        ds.gov.push_back(row.gov);
        ds.unemp.push_back(row.unemp);
        ds.news.push_back(row.news);
        ds.trend.push_back(row.trend);
    }
    if (jbp >= 0) {
        ds.bp_shock.reserve(n);
        for (const auto& row : rows) ds.bp_shock.push_back(row.bp);
    }

    if (schema.pre_scaled) {
        ds.trend_scaled = true;
    } else if (jtrend < 0) {
        ds.trend = fit_trend(ds.raw_gdp, schema.trend_poly_degree);
    }
    return ds;
}

Dataset apply_trend_scaling(Dataset ds) {
    if (ds.trend_scaled) return ds;  // idempotent
    const std::size_t n = ds.size();
    if (ds.trend.size() != n)
        throw Error(ErrorKind::contract, "trend column missing or misaligned");
    const auto& src_gdp = ds.raw_gdp.empty() ? ds.gdp : ds.raw_gdp;
    const auto& src_gov = ds.raw_gov.empty() ? ds.gov : ds.raw_gov;
    const auto& src_news = ds.raw_news.empty() ? ds.news : ds.raw_news;
    for (std::size_t i = 0; i < n; ++i) {
        if (ds.trend[i] <= 0.0)
            throw Error(ErrorKind::domain,
                        "trend must be positive, got " +
                            format_double(ds.trend[i]) + " at " +
                            ds.index[i].str());
    }
    if (ds.raw_gdp.empty()) ds.raw_gdp = ds.gdp;
    if (ds.raw_gov.empty()) ds.raw_gov = ds.gov;
    if (ds.raw_news.empty()) ds.raw_news = ds.news;
    for (std::size_t i = 0; i < n; ++i) {
        ds.gdp[i] = src_gdp[i] / ds.trend[i];
        ds.gov[i] = src_gov[i] / ds.trend[i];
        ds.news[i] = src_news[i] / ds.trend[i];
    }
    ds.trend_scaled = true;
    return ds;
}

void write_dataset_csv(const Dataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::io, "cannot write file: " + path);
    out << "year,quarter,gdp,gov,unemp,news,trend";
    if (ds.has_bp_column()) out << ",bp_shock";
    out << "\n";
    for (std::size_t i = 0; i < ds.size(); ++i) {
        out << ds.index[i].year << ',' << ds.index[i].q << ','
            << format_double(ds.gdp[i]) << ',' << format_double(ds.gov[i]) << ','
            << format_double(ds.unemp[i]) << ',' << format_double(ds.news[i])
            << ',' << format_double(ds.trend[i]);
        if (ds.has_bp_column()) out << ',' << format_double(ds.bp_shock[i]);
        out << "\n";
    }
    if (!out) throw Error(ErrorKind::io, "failed writing file: " + path);
}

}  // namespace regsplit
