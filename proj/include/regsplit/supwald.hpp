#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "regsplit/design.hpp"
#include "regsplit/threshold.hpp"

namespace regsplit {

// Heteroskedasticity-robust Wald statistics for H0: no coefficient change
// across the threshold, evaluated over a trimmed candidate grid, with a
// fixed-regressor wild bootstrap for the sup statistic.
struct SupWaldResult {
    std::vector<std::pair<double, double>> wald_curve;  // (tau, wald)
    double sup_stat = 0.0;
    std::vector<double> bootstrap_stats;  // slot r = replication r
    double p_value = 0.0;
    double critical_95 = 0.0;
    std::uint64_t seed = 0;
    int B = 0;
    double trimming = 0.05;
    std::string weight_scheme = "rademacher";
    bool recentered = false;
    long n_grid = 0;
    long n_skipped = 0;  // grid points dropped as infeasible/singular
};

std::vector<std::pair<double, double>> wald_curve(const RegressorMatrix& design,
                                                  const GridSpec& grid);

struct SupWaldOptions {
    bool recenter_residuals = false;  // demean null residuals before reweighting
};

// Under H0 the bootstrap response is (null fitted values) + (null residuals
// times independent Rademacher draws); the full sup statistic is recomputed
// per replication. p_value = fraction of bootstrap stats >= observed sup.
SupWaldResult sup_wald_bootstrap(const RegressorMatrix& design,
                                 const GridSpec& grid, int B,
                                 std::uint64_t seed,
                                 const SupWaldOptions& options = {});

}  // namespace regsplit
