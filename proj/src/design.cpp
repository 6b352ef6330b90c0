#include "regsplit/design.hpp"

#include "regsplit/errors.hpp"

namespace regsplit {

Eigen::MatrixXd RegressorMatrix::full() const {
    Eigen::MatrixXd X(rows(), params());
    X.leftCols(controls.cols()) = controls;
    X.col(controls.cols()) = shock;
    return X;
}

RegressorMatrix build_design(const Dataset& ds, int lag_order,
                             const std::string& response) {
    if (lag_order < 1)
        throw Error(ErrorKind::contract, "lag_order must be >= 1");
    const long n = static_cast<long>(ds.size());
    if (n <= lag_order + 1)
        throw Error(ErrorKind::estimation,
                    "dataset too short for lag order " +
                        std::to_string(lag_order) + ": " + std::to_string(n) +
                        " rows");

    const auto& y = ds.series(response);
    const std::vector<const std::vector<double>*> lagged = {&ds.gdp, &ds.gov,
                                                            &ds.news};
    const std::vector<std::string> lag_names = {"gdp", "gov", "news"};

    const long rows = n - lag_order;
    RegressorMatrix d;
    d.lag_order = lag_order;
    d.first_row = lag_order;
    d.response.resize(rows);
    d.shock.resize(rows);
    d.threshold_var.resize(rows);
    d.controls.resize(rows, 1 + lag_order * static_cast<long>(lagged.size()));
    d.control_names.push_back("intercept");
    for (std::size_t v = 0; v < lagged.size(); ++v)
        for (int k = 1; k <= lag_order; ++k)
            d.control_names.push_back(lag_names[v] + "_lag" + std::to_string(k));

    d.index.reserve(rows);
    for (long t = lag_order; t < n; ++t) {
        const long r = t - lag_order;
        d.index.push_back(ds.index[t]);
        d.response[r] = y[t];
        d.shock[r] = ds.news[t];
        d.threshold_var[r] = ds.unemp[t - 1];
        d.controls(r, 0) = 1.0;
        long c = 1;
        for (const auto* series : lagged)
            for (int k = 1; k <= lag_order; ++k) d.controls(r, c++) = (*series)[t - k];
    }
    return d;
}

RegressorMatrix restrict_below(const RegressorMatrix& d, double cap) {
    std::vector<long> keep;
    for (long t = 0; t < d.rows(); ++t)
        if (d.threshold_var[t] < cap) keep.push_back(t);
    return subset_rows(d, keep);
}

RegressorMatrix subset_rows(const RegressorMatrix& d,
                            const std::vector<long>& keep) {
    RegressorMatrix out;
    const long m = static_cast<long>(keep.size());
    out.lag_order = d.lag_order;
    out.first_row = d.first_row;
    out.control_names = d.control_names;
    out.response.resize(m);
    out.shock.resize(m);
    out.threshold_var.resize(m);
    out.controls.resize(m, d.controls.cols());
    out.index.reserve(m);
    for (long i = 0; i < m; ++i) {
        const long r = keep[i];
        if (r < 0 || r >= d.rows())
            throw Error(ErrorKind::contract, "subset_rows: index out of range");
        out.response[i] = d.response[r];
        out.shock[i] = d.shock[r];
        out.threshold_var[i] = d.threshold_var[r];
        out.controls.row(i) = d.controls.row(r);
        out.index.push_back(d.index[r]);
    }
    return out;
}

}  // namespace regsplit
