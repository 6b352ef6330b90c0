#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "regsplit/dataset.hpp"
#include "regsplit/threshold.hpp"

namespace regsplit {

struct Ar1Law {
    double rho = 0.95;
    double mean = 6.0;
    double sd = 3.0;  // stationary standard deviation; truncated at 0
};

// Synthetic DGP with a known (possibly factor-shifted) threshold, used to
// validate the estimators. The response follows the two-regime structure of
// the estimation model: intercept, own lags, spending and news lags, and a
// contemporaneous shock, with regime coefficients theta_B and theta_B+delta.
struct DgpSpec {
    long T = 400;
    std::optional<double> tau_star;          // none: no regime split
    std::optional<double> tau1_star;         // factor shift on the post-break dummy
    Quarter break_quarter{1945, 4};          // dummy turns on at this quarter
    Eigen::VectorXd delta_star;              // regime gap; empty = zeros
    double noise_sd = 1.0;
    Ar1Law threshold_law;
    std::optional<std::vector<double>> empirical_pool;  // resample instead of AR(1)
    std::uint64_t seed = 1;
    int lag_order = 4;
    Quarter start{1900, 1};

    // Per-regime parameter count implied by lag_order (1 + 3L + 1).
    long params() const { return 2 + 3L * lag_order; }

    // Break concentrated on intercept and shock response.
    static DgpSpec with_break(double tau, double intercept_shift,
                              double shock_shift, long T = 400,
                              std::uint64_t seed = 1);
};

Dataset generate(const DgpSpec& spec);

struct McOptions {
    int boot_B = 499;
    double ci_level = 0.95;
    double test_level = 0.05;
    GridSpec grid;
};

struct MonteCarloSummary {
    std::string estimator;
    long reps = 0;
    long failures = 0;
    double bias = 0.0;
    double median_abs_error = 0.0;
    double coverage = 0.0;        // NaN when not applicable
    double size = 0.0;            // NaN when not applicable
    double median_grid_step = 0.0;
    std::vector<double> estimates;  // per-replication point estimates (NaN on failure)
};

// estimator: "threshold" (tau recovery), "threshold_ci" (recovery + CI
// coverage), "supwald_size" (null rejection rate). Replication r uses a
// seed derived from (spec.seed, r); aggregation order is fixed, so results
// do not depend on the parallel schedule.
MonteCarloSummary monte_carlo(const DgpSpec& spec, long reps,
                              const std::string& estimator,
                              const McOptions& options = {});

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t r);

}  // namespace regsplit
