#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace regsplit {

struct OlsFit {
    Eigen::VectorXd coefficients;
    Eigen::VectorXd residuals;
    Eigen::VectorXd fitted;
    double sse = 0.0;
    double r_squared = 0.0;  // centered when an intercept column is present
    long dof = 0;            // rows - cols
};

enum class CovKind { hc, hac };

struct CovMatrix {
    Eigen::MatrixXd matrix;
    CovKind kind = CovKind::hc;
    int bandwidth = 0;  // hac only
};

// Least squares by column-pivoted Householder QR. Throws
// Error(singular) naming an offending column on rank deficiency.
OlsFit ols(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
           const std::vector<std::string>& col_names = {});

// Heteroskedasticity-robust sandwich (X'X)^-1 X'diag(e^2)X (X'X)^-1.
CovMatrix hc_cov(const OlsFit& fit, const Eigen::MatrixXd& X);
CovMatrix hc_cov(const Eigen::MatrixXd& X, const Eigen::VectorXd& residuals);

// Newey-West with Bartlett weights 1 - j/(bandwidth+1).
CovMatrix hac_cov(const OlsFit& fit, const Eigen::MatrixXd& X, int bandwidth);
CovMatrix hac_cov(const Eigen::MatrixXd& X, const Eigen::VectorXd& residuals,
                  int bandwidth);

struct IvFit {
    Eigen::VectorXd coefficients;  // endogenous columns first, then exogenous
    Eigen::VectorXd residuals;     // from structural coefficients
    OlsFit first_stage;            // fit of the first endogenous column
    std::vector<std::string> instrument_names;
    Eigen::MatrixXd projected_design;  // [P_Z endog | exog]; bread for sandwiches
    double first_stage_f = 0.0;        // joint instrument F in the first stage
};

// Two-stage least squares. Instruments count must be >= endog count; exog
// columns instrument themselves.
IvFit iv_2sls(const Eigen::VectorXd& y, const Eigen::MatrixXd& endog,
              const Eigen::MatrixXd& exog, const Eigen::MatrixXd& instruments,
              const std::vector<std::string>& instrument_names = {});

// (Rb - r)' (R V R')^-1 (Rb - r)
double wald(const Eigen::MatrixXd& R, const Eigen::VectorXd& r,
            const Eigen::VectorXd& b, const CovMatrix& cov);

}  // namespace regsplit
