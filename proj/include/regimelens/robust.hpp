#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "regimelens/ols.hpp"

namespace regimelens {

struct IrlsOptions {
  double tuning_constant = 4.685;  // Tukey bisquare
  double tolerance = 1e-8;         // max relative coefficient change
  int max_iterations = 200;
  double conf_level = 0.95;
};

struct RobustFitResult {
  std::vector<Term> terms;
  Eigen::VectorXd coefficients;
  Eigen::VectorXd std_errors;
  std::vector<std::pair<double, double>> conf_intervals;
  Eigen::VectorXd weights;  // in [0,1]; 0 marks a rejected observation
  Eigen::VectorXd residuals;
  int iterations = 0;
  bool converged = false;
};

RobustFitResult fit_irls(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                         std::vector<Term> terms, IrlsOptions opts = {});

struct OutlierFlag {
  AuctionMonth month;  // zeroed when the fit carries no month labels
  std::size_t row = 0;
  double studentized_residual = 0;
  double p_value = 0;
};

struct OutlierReport {
  std::vector<OutlierFlag> flagged;
  Eigen::VectorXd studentized;  // all rows, for diagnostics
  double alpha = 0.05;
  bool bonferroni = false;
};

// Externally studentized residuals against the t distribution with
// df_resid - 1 degrees of freedom. Bonferroni divides alpha by n_obs.
OutlierReport detect_outliers(const FitResult& fit, const Eigen::MatrixXd& X,
                              double alpha, bool bonferroni = false);

}  // namespace regimelens
