#include "regsplit/supwald.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "regsplit/errors.hpp"
#include "regsplit/mathutil.hpp"
#include "regsplit/parallel.hpp"
#include "regsplit/regress.hpp"
#include "regsplit/rng.hpp"

namespace regsplit {

namespace {

// Grid evaluation engine over rows sorted by the threshold variable.
// Everything that depends only on the regressors (cut positions, prefix
// moments, bread factorizations) is built once; each response evaluation
// then costs one pass of solves and sandwich meats per grid point.
class SupWaldEngine {
  public:
    SupWaldEngine(const RegressorMatrix& design, const std::vector<double>& grid)
        : p_(design.params()) {
        const long n = design.rows();
        std::vector<long> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](long a, long b) {
            return design.threshold_var[a] < design.threshold_var[b];
        });
        Eigen::MatrixXd full = design.full();
        X_.resize(n, p_);
        sorted_values_.resize(n);
        for (long i = 0; i < n; ++i) {
            X_.row(i) = full.row(order[i]);
            sorted_values_[i] = design.threshold_var[order[i]];
        }
        order_ = std::move(order);

        const long floor = design.min_regime_obs();
        Eigen::MatrixXd total = Eigen::MatrixXd::Zero(p_, p_);
        total.selfadjointView<Eigen::Lower>().rankUpdate(X_.transpose());
        total = total.selfadjointView<Eigen::Lower>();

        for (double tau : grid) {
            // regime B: threshold_var <= tau  ->  rows [0, k)
            const long k = std::upper_bound(sorted_values_.begin(),
                                            sorted_values_.end(), tau) -
                           sorted_values_.begin();
            if (!cuts_.empty() && cuts_.back().k == k) continue;  // same split
            Cut cut;
            cut.tau = tau;
            cut.k = k;
            cut.feasible = (k >= floor && n - k >= floor);
            if (cut.feasible) {
                Eigen::MatrixXd xtx_b = Eigen::MatrixXd::Zero(p_, p_);
                xtx_b.selfadjointView<Eigen::Lower>().rankUpdate(
                    X_.topRows(k).transpose());
                xtx_b = xtx_b.selfadjointView<Eigen::Lower>();
                Eigen::MatrixXd xtx_a = total - xtx_b;
                cut.ldlt_b.compute(xtx_b);
                cut.ldlt_a.compute(xtx_a);
                if (cut.ldlt_b.info() != Eigen::Success ||
                    cut.ldlt_a.info() != Eigen::Success ||
                    !well_conditioned(cut.ldlt_b) || !well_conditioned(cut.ldlt_a))
                    cut.feasible = false;
            }
            cuts_.push_back(std::move(cut));
        }
        n_grid_ = static_cast<long>(cuts_.size());
        n_skipped_ = static_cast<long>(
            std::count_if(cuts_.begin(), cuts_.end(),
                          [](const Cut& c) { return !c.feasible; }));
        if (n_grid_ - n_skipped_ == 0)
            throw Error(ErrorKind::estimation, "no feasible sup-Wald grid point");
    }

    long rows() const { return X_.rows(); }
    long n_grid() const { return n_grid_; }
    long n_skipped() const { return n_skipped_; }
    const std::vector<long>& order() const { return order_; }
    const Eigen::MatrixXd& sorted_design() const { return X_; }

    struct Workspace {
        Eigen::MatrixXd scaled;  // rows scaled by residuals
        Eigen::VectorXd resid;
        Eigen::MatrixXd meat, v_sum;
        Eigen::VectorXd b_a, b_b, delta, xty_b, xty_a;
    };

    // Wald statistic per feasible cut for a response given in sorted order.
    // Infeasible/singular cuts yield NaN.
    void curve(const Eigen::VectorXd& y_sorted, std::vector<double>& out,
               Workspace& w) const {
        const long n = X_.rows();
        out.assign(cuts_.size(), std::numeric_limits<double>::quiet_NaN());
        Eigen::VectorXd xty_total = X_.transpose() * y_sorted;
        w.scaled.resize(n, p_);
        for (std::size_t i = 0; i < cuts_.size(); ++i) {
            const Cut& cut = cuts_[i];
            if (!cut.feasible) continue;
            const long k = cut.k;
            w.xty_b.noalias() = X_.topRows(k).transpose() * y_sorted.head(k);
            w.xty_a = xty_total - w.xty_b;
            w.b_b = cut.ldlt_b.solve(w.xty_b);
            w.b_a = cut.ldlt_a.solve(w.xty_a);

            // HC meat per regime via row-scaled Gram products.
            w.resid = y_sorted.head(k) - X_.topRows(k) * w.b_b;
            w.scaled.topRows(k) =
                X_.topRows(k).array().colwise() * w.resid.array();
            w.meat = Eigen::MatrixXd::Zero(p_, p_);
            w.meat.selfadjointView<Eigen::Lower>().rankUpdate(
                w.scaled.topRows(k).transpose());
            w.meat = w.meat.selfadjointView<Eigen::Lower>();
            w.v_sum = cut.ldlt_b.solve(cut.ldlt_b.solve(w.meat).transpose());

            w.resid = y_sorted.tail(n - k) - X_.bottomRows(n - k) * w.b_a;
            w.scaled.topRows(n - k) =
                X_.bottomRows(n - k).array().colwise() * w.resid.array();
            w.meat.setZero();
            w.meat.selfadjointView<Eigen::Lower>().rankUpdate(
                w.scaled.topRows(n - k).transpose());
            w.meat = w.meat.selfadjointView<Eigen::Lower>();
            w.v_sum += cut.ldlt_a.solve(cut.ldlt_a.solve(w.meat).transpose());

            w.delta = w.b_a - w.b_b;
            Eigen::LDLT<Eigen::MatrixXd> v_ldlt(w.v_sum);
            if (v_ldlt.info() != Eigen::Success || !v_ldlt.isPositive()) continue;
            const double stat = w.delta.dot(v_ldlt.solve(w.delta));
            if (std::isfinite(stat) && stat >= 0.0) out[i] = stat;
        }
    }

    double tau_at(std::size_t i) const { return cuts_[i].tau; }
    std::size_t n_cuts() const { return cuts_.size(); }

  private:
    struct Cut {
        double tau = 0.0;
        long k = 0;
        bool feasible = false;
        Eigen::LDLT<Eigen::MatrixXd> ldlt_b, ldlt_a;
    };

    static bool well_conditioned(const Eigen::LDLT<Eigen::MatrixXd>& ldlt) {
        const auto& d = ldlt.vectorD();
        const double dmax = d.maxCoeff();
        const double dmin = d.minCoeff();
        return dmin > 0.0 && dmin > dmax * 1e-13;
    }

    long p_;
    Eigen::MatrixXd X_;
    std::vector<double> sorted_values_;
    std::vector<long> order_;
    std::vector<Cut> cuts_;
    long n_grid_ = 0;
    long n_skipped_ = 0;
};

std::vector<std::pair<double, double>> collect_curve(
    const SupWaldEngine& engine, const std::vector<double>& stats) {
    std::vector<std::pair<double, double>> curve;
    curve.reserve(stats.size());
    for (std::size_t i = 0; i < stats.size(); ++i)
        if (std::isfinite(stats[i])) curve.emplace_back(engine.tau_at(i), stats[i]);
    return curve;
}

double sup_of(const std::vector<double>& stats) {
    double sup = -1.0;
    for (double s : stats)
        if (std::isfinite(s) && s > sup) sup = s;
    return sup;
}

}  // namespace

std::vector<std::pair<double, double>> wald_curve(const RegressorMatrix& design,
                                                  const GridSpec& grid) {
    SupWaldEngine engine(design, make_grid(design.threshold_var, grid));
    Eigen::VectorXd y_sorted(design.rows());
    for (long i = 0; i < design.rows(); ++i)
        y_sorted[i] = design.response[engine.order()[i]];
    std::vector<double> stats;
    SupWaldEngine::Workspace w;
    engine.curve(y_sorted, stats, w);
    return collect_curve(engine, stats);
}

SupWaldResult sup_wald_bootstrap(const RegressorMatrix& design,
                                 const GridSpec& grid, int B,
                                 std::uint64_t seed,
                                 const SupWaldOptions& options) {
    if (B < 1) throw Error(ErrorKind::contract, "bootstrap needs B >= 1");
    SupWaldEngine engine(design, make_grid(design.threshold_var, grid));
    const long n = design.rows();
    Eigen::VectorXd y_sorted(n);
    for (long i = 0; i < n; ++i)
        y_sorted[i] = design.response[engine.order()[i]];

    SupWaldResult result;
    result.seed = seed;
    result.B = B;
    result.trimming = grid.lower_quantile;
    result.recentered = options.recenter_residuals;
    result.n_grid = engine.n_grid();
    result.n_skipped = engine.n_skipped();

    {
        std::vector<double> stats;
        SupWaldEngine::Workspace w;
        engine.curve(y_sorted, stats, w);
        result.wald_curve = collect_curve(engine, stats);
        result.sup_stat = sup_of(stats);
        if (result.sup_stat < 0.0)
            throw Error(ErrorKind::estimation, "sup-Wald statistic not computable");
    }

    // Null model: pooled regression with no threshold.
    OlsFit null_fit = ols(y_sorted, engine.sorted_design());
    Eigen::VectorXd base_resid = null_fit.residuals;
    if (options.recenter_residuals)
        base_resid.array() -= base_resid.mean();
    const Eigen::VectorXd& fitted0 = null_fit.fitted;

    result.bootstrap_stats.assign(B, std::numeric_limits<double>::quiet_NaN());
    parallel_for(static_cast<std::size_t>(B), [&](std::size_t r) {
        Rng rng = Rng::substream(seed, r);
        Eigen::VectorXd y_star(n);
        for (long i = 0; i < n; ++i)
            y_star[i] = fitted0[i] + base_resid[i] * rng.rademacher();
        std::vector<double> stats;
        SupWaldEngine::Workspace w;
        engine.curve(y_star, stats, w);
        result.bootstrap_stats[r] = sup_of(stats);
    });

    long exceed = 0;
    std::vector<double> finite;
    finite.reserve(B);
    for (double s : result.bootstrap_stats) {
        if (!std::isfinite(s) || s < 0.0) continue;
        finite.push_back(s);
        if (s >= result.sup_stat) ++exceed;
    }
    result.p_value = static_cast<double>(exceed) / static_cast<double>(B);
    std::sort(finite.begin(), finite.end());
    result.critical_95 = finite.empty()
                             ? std::numeric_limits<double>::quiet_NaN()
                             : order_statistic_quantile(
                                   finite.data(),
                                   static_cast<long>(finite.size()), 0.95);
    return result;
}

}  // namespace regsplit
