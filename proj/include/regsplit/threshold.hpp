#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "regsplit/design.hpp"

namespace regsplit {

// Candidate-threshold grid. Observed-value grids are exact (the profiled
// objective is piecewise constant between observed values); the
// equally-spaced mode exists for smooth plotting.
struct GridSpec {
    double lower_quantile = 0.05;
    double upper_quantile = 0.95;
    enum class Points { observed, equally_spaced } points = Points::observed;
    int n_points = 200;  // equally_spaced only

    static GridSpec parse(const std::string& text);  // "observed" | "equally-spaced:N"
    std::string str() const;
};

std::vector<double> make_grid(const Eigen::VectorXd& threshold_var,
                              const GridSpec& grid);

// Two-regime least squares at a fixed threshold. Regime A is
// threshold_var > tau (strict), regime B the complement.
struct SplitFit {
    double sse = 0.0;
    Eigen::VectorXd coeffs_A;
    Eigen::VectorXd coeffs_B;
    long n_A = 0;
    long n_B = 0;
};

SplitFit objective_qt(const RegressorMatrix& design, double tau);

struct ProfilePoint {
    double tau = 0.0;
    double sse = 0.0;
    double one_minus_r2 = 0.0;            // centered
    double one_minus_r2_uncentered = 0.0;
    bool feasible = false;
};

struct ThresholdFit {
    double tau_hat = 0.0;
    double sse = 0.0;
    double mse = 0.0;  // sse / effective sample size
    std::vector<ProfilePoint> profile;
    Eigen::VectorXd coeffs_A;
    Eigen::VectorXd coeffs_B;
    std::vector<bool> regime_indicator;  // threshold_var > tau_hat, per design row
    long n_obs = 0;
};

ThresholdFit profile_grid(const RegressorMatrix& design,
                          const GridSpec& grid = {});

// Restricts to rows with threshold_var < cap, then profiles the subsample.
ThresholdFit second_threshold_scan(const RegressorMatrix& design, double cap,
                                   const GridSpec& grid = {});

struct ThresholdCI {
    double level = 0.95;
    double lower = 0.0;
    double upper = 0.0;
    std::string method;
};

// Inverts LR(tau) = T (sse(tau) - sse_min) / sse_min against the closed-form
// quantile -2 log(1 - sqrt(level)) of the threshold LR limit law.
ThresholdCI threshold_ci(const RegressorMatrix& design, const ThresholdFit& fit,
                         double level = 0.95);

// Per-quarter slack labels: true when lagged unemployment exceeds tau.
// The first dataset row has no lag and is not labeled.
std::vector<std::pair<Quarter, bool>> regime_labels(const Dataset& ds,
                                                    double tau);

}  // namespace regsplit
