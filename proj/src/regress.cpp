#include "regsplit/regress.hpp"

#include <cmath>
#include <limits>

#include "regsplit/errors.hpp"

namespace regsplit {

namespace {

bool has_intercept(const Eigen::MatrixXd& X) {
    for (long j = 0; j < X.cols(); ++j) {
        const double v = X(0, j);
        if (v == 0.0) continue;
        if ((X.col(j).array() == v).all()) return true;
    }
    return false;
}

// Meat of the sandwich: X'diag(e^2)X plus, for bandwidth > 0, the
// Bartlett-weighted autocovariance terms.
Eigen::MatrixXd nw_meat(const Eigen::MatrixXd& X, const Eigen::VectorXd& e,
                        int bandwidth) {
    const long p = X.cols();
    Eigen::MatrixXd meat = Eigen::MatrixXd::Zero(p, p);
    {
        Eigen::MatrixXd scaled = X.array().colwise() * e.array();
        meat.selfadjointView<Eigen::Lower>().rankUpdate(scaled.transpose());
        meat = meat.selfadjointView<Eigen::Lower>();
    }
    const long n = X.rows();
    for (int j = 1; j <= bandwidth; ++j) {
        const double w = 1.0 - static_cast<double>(j) / (bandwidth + 1);
        Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(p, p);
        for (long t = j; t < n; ++t)
            gamma.noalias() += (e[t] * e[t - j]) * X.row(t).transpose() * X.row(t - j);
        meat.noalias() += w * (gamma + gamma.transpose());
    }
    return meat;
}

CovMatrix sandwich(const Eigen::MatrixXd& X, const Eigen::VectorXd& e,
                   int bandwidth, CovKind kind) {
    if (X.rows() != e.size())
        throw Error(ErrorKind::contract,
                    "covariance: residual length does not match design rows");
    if (bandwidth < 0)
        throw Error(ErrorKind::contract, "bandwidth must be >= 0");
    if (bandwidth >= X.rows())
        throw Error(ErrorKind::contract, "bandwidth must be below sample size");
    Eigen::MatrixXd xtx = X.transpose() * X;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(xtx);
    if (ldlt.info() != Eigen::Success)
        throw Error(ErrorKind::singular, "covariance: X'X not factorable");
    Eigen::MatrixXd meat = nw_meat(X, e, bandwidth);
    Eigen::MatrixXd half = ldlt.solve(meat);
    Eigen::MatrixXd V = ldlt.solve(half.transpose());
    V = 0.5 * (V + V.transpose());  // enforce exact symmetry
    CovMatrix out;
    out.matrix = std::move(V);
    out.kind = kind;
    out.bandwidth = bandwidth;
    return out;
}

}  // namespace

OlsFit ols(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
           const std::vector<std::string>& col_names) {
    if (X.rows() != y.size())
        throw Error(ErrorKind::contract, "ols: y length does not match X rows");
    if (X.rows() <= X.cols())
        throw Error(ErrorKind::estimation,
                    "ols: need more rows than columns (" +
                        std::to_string(X.rows()) + " x " +
                        std::to_string(X.cols()) + ")");

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    // Rank cut: |R(i,i)| <= eps * max dimension * |R(0,0)|. Eigen applies the
    // threshold relative to the largest diagonal, so pass eps * maxdim.
    qr.setThreshold(std::numeric_limits<double>::epsilon() *
                    static_cast<double>(std::max(X.rows(), X.cols())));
    if (qr.rank() < X.cols()) {
        // Columns permuted past the numerical rank are the dependent ones.
        const auto& perm = qr.colsPermutation().indices();
        const long offending = perm[X.cols() - 1];
        std::string name = offending < static_cast<long>(col_names.size())
                               ? col_names[offending]
                               : "column " + std::to_string(offending);
        throw Error(ErrorKind::singular,
                    "rank-deficient design (rank " + std::to_string(qr.rank()) +
                        " of " + std::to_string(X.cols()) + "); offending " +
                        name);
    }

    OlsFit fit;
    fit.coefficients = qr.solve(y);
    fit.fitted = X * fit.coefficients;
    fit.residuals = y - fit.fitted;
    fit.sse = fit.residuals.squaredNorm();
    fit.dof = X.rows() - X.cols();

    double tss;
    if (has_intercept(X)) {
        const double mean = y.mean();
        tss = (y.array() - mean).square().sum();
    } else {
        tss = y.squaredNorm();
    }
    fit.r_squared = tss > 0.0 ? 1.0 - fit.sse / tss : 1.0;
    if (fit.r_squared < 0.0 && fit.r_squared > -1e-12) fit.r_squared = 0.0;
    if (fit.r_squared > 1.0) fit.r_squared = 1.0;
    return fit;
}

CovMatrix hc_cov(const Eigen::MatrixXd& X, const Eigen::VectorXd& residuals) {
    return sandwich(X, residuals, 0, CovKind::hc);
}

CovMatrix hc_cov(const OlsFit& fit, const Eigen::MatrixXd& X) {
    return hc_cov(X, fit.residuals);
}

CovMatrix hac_cov(const Eigen::MatrixXd& X, const Eigen::VectorXd& residuals,
                  int bandwidth) {
    return sandwich(X, residuals, bandwidth, CovKind::hac);
}

CovMatrix hac_cov(const OlsFit& fit, const Eigen::MatrixXd& X, int bandwidth) {
    return hac_cov(X, fit.residuals, bandwidth);
}

IvFit iv_2sls(const Eigen::VectorXd& y, const Eigen::MatrixXd& endog,
              const Eigen::MatrixXd& exog, const Eigen::MatrixXd& instruments,
              const std::vector<std::string>& instrument_names) {
    const long n = y.size();
    const long k_endog = endog.cols();
    const long k_exog = exog.cols();
    const long k_inst = instruments.cols();
    if (endog.rows() != n || (k_exog > 0 && exog.rows() != n) ||
        instruments.rows() != n)
        throw Error(ErrorKind::contract, "iv_2sls: row mismatch");
    if (k_inst < k_endog)
        throw Error(ErrorKind::singular,
                    "under-identified: " + std::to_string(k_inst) +
                        " instruments for " + std::to_string(k_endog) +
                        " endogenous regressors");

    // First stage: each endogenous column on [exog, instruments].
    Eigen::MatrixXd Z(n, k_exog + k_inst);
    if (k_exog > 0) Z.leftCols(k_exog) = exog;
    Z.rightCols(k_inst) = instruments;

    Eigen::MatrixXd endog_hat(n, k_endog);
    IvFit out;
    for (long j = 0; j < k_endog; ++j) {
        OlsFit fs = ols(endog.col(j), Z);
        endog_hat.col(j) = fs.fitted;
        if (j == 0) {
            out.first_stage = fs;
            // Joint F for the instrument block (homoskedastic form).
            OlsFit restricted =
                k_exog > 0 ? ols(endog.col(j), Eigen::MatrixXd(exog))
                           : OlsFit{};
            const double sse_r =
                k_exog > 0 ? restricted.sse : endog.col(j).squaredNorm();
            const double sse_u = fs.sse;
            const long q = k_inst;
            const long dof = n - Z.cols();
            if (sse_u > 0.0 && dof > 0)
                out.first_stage_f = ((sse_r - sse_u) / q) / (sse_u / dof);
        }
    }

    Eigen::MatrixXd Xhat(n, k_endog + k_exog);
    Xhat.leftCols(k_endog) = endog_hat;
    if (k_exog > 0) Xhat.rightCols(k_exog) = exog;

    OlsFit second = ols(y, Xhat);
    out.coefficients = second.coefficients;
    out.instrument_names = instrument_names;
    out.projected_design = std::move(Xhat);

    // Structural residuals use the original endogenous regressors.
    Eigen::MatrixXd Xorig(n, k_endog + k_exog);
    Xorig.leftCols(k_endog) = endog;
    if (k_exog > 0) Xorig.rightCols(k_exog) = exog;
    out.residuals = y - Xorig * out.coefficients;
    return out;
}

double wald(const Eigen::MatrixXd& R, const Eigen::VectorXd& r,
            const Eigen::VectorXd& b, const CovMatrix& cov) {
    if (R.cols() != b.size() || R.rows() != r.size() ||
        cov.matrix.rows() != b.size())
        throw Error(ErrorKind::contract, "wald: dimension mismatch");
    Eigen::VectorXd gap = R * b - r;
    Eigen::MatrixXd middle = R * cov.matrix * R.transpose();
    Eigen::LDLT<Eigen::MatrixXd> ldlt(middle);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
        throw Error(ErrorKind::singular, "wald: R V R' not positive definite");
    const double stat = gap.dot(ldlt.solve(gap));
    return stat < 0.0 ? 0.0 : stat;
}

}  // namespace regsplit
