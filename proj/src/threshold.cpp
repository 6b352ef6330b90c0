#include "regsplit/threshold.hpp"

#include <algorithm>
#include <cmath>

#include "regsplit/errors.hpp"
#include "regsplit/mathutil.hpp"
#include "regsplit/parallel.hpp"
#include "regsplit/regress.hpp"

namespace regsplit {

GridSpec GridSpec::parse(const std::string& text) {
    GridSpec g;
    if (text == "observed" || text.empty()) {
        g.points = Points::observed;
        return g;
    }
    const std::string prefix = "equally-spaced:";
    if (text.rfind(prefix, 0) == 0) {
        g.points = Points::equally_spaced;
        g.n_points = std::stoi(text.substr(prefix.size()));
        if (g.n_points < 2)
            throw Error(ErrorKind::contract, "equally-spaced grid needs >= 2 points");
        return g;
    }
    throw Error(ErrorKind::contract,
                "unknown grid spec '" + text +
                    "' (expected 'observed' or 'equally-spaced:N')");
}

std::string GridSpec::str() const {
    return points == Points::observed
               ? "observed"
               : "equally-spaced:" + std::to_string(n_points);
}

std::vector<double> make_grid(const Eigen::VectorXd& threshold_var,
                              const GridSpec& grid) {
    if (!(grid.lower_quantile > 0.0 && grid.lower_quantile < grid.upper_quantile &&
          grid.upper_quantile < 1.0))
        throw Error(ErrorKind::contract, "grid quantiles must satisfy 0 < lo < hi < 1");
    std::vector<double> sorted(threshold_var.data(),
                               threshold_var.data() + threshold_var.size());
    std::sort(sorted.begin(), sorted.end());
    const long n = static_cast<long>(sorted.size());
    if (n == 0) throw Error(ErrorKind::estimation, "empty threshold variable");
    const double lo =
        order_statistic_quantile(sorted.data(), n, grid.lower_quantile);
    const double hi =
        order_statistic_quantile(sorted.data(), n, grid.upper_quantile);

    std::vector<double> out;
    if (grid.points == GridSpec::Points::observed) {
        for (long i = 0; i < n; ++i) {
            const double v = sorted[i];
            if (v < lo || v > hi) continue;
            if (out.empty() || v > out.back()) out.push_back(v);
        }
    } else {
        const int m = grid.n_points;
        out.reserve(m);
        for (int i = 0; i < m; ++i)
            out.push_back(lo + (hi - lo) * static_cast<double>(i) / (m - 1));
    }
    if (out.empty())
        throw Error(ErrorKind::estimation, "empty threshold grid after trimming");
    return out;
}

SplitFit objective_qt(const RegressorMatrix& design, double tau) {
    const long n = design.rows();
    const long floor = design.min_regime_obs();
    std::vector<long> rows_a, rows_b;
    rows_a.reserve(n);
    rows_b.reserve(n);
    for (long t = 0; t < n; ++t)
        (design.threshold_var[t] > tau ? rows_a : rows_b).push_back(t);
    if (static_cast<long>(rows_a.size()) < floor ||
        static_cast<long>(rows_b.size()) < floor)
        throw Error(ErrorKind::degenerate,
                    "degenerate split at tau=" + std::to_string(tau) + " (" +
                        std::to_string(rows_a.size()) + "/" +
                        std::to_string(rows_b.size()) + " rows)");

    const Eigen::MatrixXd X = design.full();
    auto fit_side = [&](const std::vector<long>& rows) {
        Eigen::MatrixXd Xr(rows.size(), X.cols());
        Eigen::VectorXd yr(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            Xr.row(i) = X.row(rows[i]);
            yr[i] = design.response[rows[i]];
        }
        return ols(yr, Xr);
    };
    OlsFit fa = fit_side(rows_a);
    OlsFit fb = fit_side(rows_b);

    SplitFit out;
    out.sse = fa.sse + fb.sse;
    out.coeffs_A = fa.coefficients;
    out.coeffs_B = fb.coefficients;
    out.n_A = static_cast<long>(rows_a.size());
    out.n_B = static_cast<long>(rows_b.size());
    return out;
}

namespace {

ThresholdFit profile_over(const RegressorMatrix& design,
                          const std::vector<double>& grid) {
    const long n = design.rows();
    const double mean = design.response.mean();
    const double tss_centered = (design.response.array() - mean).square().sum();
    const double tss_uncentered = design.response.squaredNorm();

    std::vector<ProfilePoint> points(grid.size());
    std::vector<SplitFit> fits(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        ProfilePoint p;
        p.tau = grid[i];
        try {
            fits[i] = objective_qt(design, grid[i]);
            p.sse = fits[i].sse;
            p.one_minus_r2 = tss_centered > 0.0 ? p.sse / tss_centered : 0.0;
            p.one_minus_r2_uncentered =
                tss_uncentered > 0.0 ? p.sse / tss_uncentered : 0.0;
            p.feasible = true;
        } catch (const Error&) {
            p.feasible = false;  // infeasible grid points are skipped, not fatal
        }
        points[i] = p;
    });

    long best = -1;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!points[i].feasible) continue;
        if (best < 0 || points[i].sse < points[best].sse)
            best = static_cast<long>(i);  // ties keep the smaller tau
    }
    if (best < 0)
        throw Error(ErrorKind::estimation,
                    "no feasible grid point for threshold estimation");

    ThresholdFit fit;
    fit.tau_hat = points[best].tau;
    fit.sse = points[best].sse;
    fit.mse = fit.sse / static_cast<double>(n);
    fit.profile = std::move(points);
    fit.coeffs_A = fits[best].coeffs_A;
    fit.coeffs_B = fits[best].coeffs_B;
    fit.n_obs = n;
    fit.regime_indicator.resize(n);
    for (long t = 0; t < n; ++t)
        fit.regime_indicator[t] = design.threshold_var[t] > fit.tau_hat;
    return fit;
}

}  // namespace

ThresholdFit profile_grid(const RegressorMatrix& design, const GridSpec& grid) {
    return profile_over(design, make_grid(design.threshold_var, grid));
}

ThresholdFit second_threshold_scan(const RegressorMatrix& design, double cap,
                                   const GridSpec& grid) {
    RegressorMatrix sub = restrict_below(design, cap);
    if (sub.rows() <= design.params())
        throw Error(ErrorKind::estimation,
                    "subsample below cap " + std::to_string(cap) +
                        " too small: " + std::to_string(sub.rows()) + " rows");
    return profile_grid(sub, grid);
}

ThresholdCI threshold_ci(const RegressorMatrix& design, const ThresholdFit& fit,
                         double level) {
    if (fit.n_obs != design.rows())
        throw Error(ErrorKind::contract, "threshold_ci: fit does not match design");
    if (!(level > 0.0 && level < 1.0))
        throw Error(ErrorKind::contract, "threshold_ci: level must be in (0,1)");
    const double critical = -2.0 * std::log(1.0 - std::sqrt(level));
    const double tn = static_cast<double>(fit.n_obs);

    ThresholdCI ci;
    ci.level = level;
    ci.method = "inverted-LR, pivotal limit quantile -2*log(1-sqrt(level))";
    bool any = false;
    for (const auto& p : fit.profile) {
        if (!p.feasible || fit.sse <= 0.0) continue;
        const double lr = tn * (p.sse - fit.sse) / fit.sse;
        if (lr <= critical) {
            if (!any || p.tau < ci.lower) ci.lower = p.tau;
            if (!any || p.tau > ci.upper) ci.upper = p.tau;
            any = true;
        }
    }
    if (!any) {
        // Degenerate inversion (e.g. a zero-sse fit): point interval.
        ci.lower = ci.upper = fit.tau_hat;
    }
    return ci;
}

std::vector<std::pair<Quarter, bool>> regime_labels(const Dataset& ds,
                                                    double tau) {
    std::vector<std::pair<Quarter, bool>> out;
    out.reserve(ds.size() > 0 ? ds.size() - 1 : 0);
    for (std::size_t t = 1; t < ds.size(); ++t)
        out.emplace_back(ds.index[t], ds.unemp[t - 1] > tau);
    return out;
}

}  // namespace regsplit
