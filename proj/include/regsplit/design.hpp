#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "regsplit/dataset.hpp"

namespace regsplit {

// Regression-ready view of a Dataset: response at t, intercept plus
// lags 1..L of gdp/gov/news as controls, the contemporaneous news shock,
// and lagged unemployment as the threshold variable. The first L rows of
// the dataset are dropped (no imputation of pre-sample lags).
struct RegressorMatrix {
    Eigen::VectorXd response;
    Eigen::MatrixXd controls;  // column 0 is the intercept
    Eigen::VectorXd shock;
    Eigen::VectorXd threshold_var;  // unemp_{t-1}
    std::vector<Quarter> index;     // quarter of each retained row t
    std::vector<std::string> control_names;
    int lag_order = 0;
    long first_row = 0;  // dataset row of index[0]

    long rows() const { return response.size(); }
    long n_controls() const { return controls.cols(); }
    // Per-regime parameter count (controls + shock).
    long params() const { return controls.cols() + 1; }
    // [controls | shock]
    Eigen::MatrixXd full() const;
    // Minimum observations a regime needs before a split is feasible.
    long min_regime_obs() const { return n_controls() + 2; }
};

RegressorMatrix build_design(const Dataset& ds, int lag_order = 4,
                             const std::string& response = "gdp");

// Row subset keeping order; used by the second-threshold subsample scan.
RegressorMatrix subset_rows(const RegressorMatrix& d,
                            const std::vector<long>& keep);

// Rows with threshold_var strictly below cap.
RegressorMatrix restrict_below(const RegressorMatrix& d, double cap);

}  // namespace regsplit
